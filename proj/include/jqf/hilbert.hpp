#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace jqf {

// Dense complex operators on truncated bosonic modes. Levels are indexed
// from 0; joint spaces are Kronecker products in subsystem order with the
// data qubit first and the filter qubit second.
using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Truncated lowering operator: entry (j, j+1) = sqrt(j+1).
Matrix annihilation(int n_levels);

// Identity of the given dimension.
Matrix identity(int dim);

// |level><level| on an n_levels-dimensional mode.
Matrix projector(int level, int n_levels);

// I x ... x op x ... x I with `op` acting on subsystem `index` of `dims`.
Matrix embed(const Matrix& op, int index, const std::vector<int>& dims);

// Tr(rho * op).
Complex expectation(const Matrix& rho, const Matrix& op);

// Diagnostics for density matrices.
double hermiticity_error(const Matrix& rho);   // max elementwise |rho - rho^dag|
double trace_error(const Matrix& rho);         // |Tr rho - 1|
double min_eigenvalue(const Matrix& rho);      // smallest eigenvalue of (rho+rho^dag)/2

}  // namespace jqf
