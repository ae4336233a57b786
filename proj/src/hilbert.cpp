#include "jqf/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "jqf/errors.hpp"

namespace jqf {

Matrix annihilation(int n_levels) {
  if (n_levels < 2) {
    throw InvalidDimensionError("annihilation: n_levels must be >= 2, got " +
                                std::to_string(n_levels));
  }
  Matrix a = Matrix::Zero(n_levels, n_levels);
  for (int j = 0; j + 1 < n_levels; ++j) {
    a(j, j + 1) = std::sqrt(static_cast<double>(j + 1));
  }
  return a;
}

Matrix identity(int dim) {
  if (dim < 1) {
    throw InvalidDimensionError("identity: dim must be >= 1, got " +
                                std::to_string(dim));
  }
  return Matrix::Identity(dim, dim);
}

Matrix projector(int level, int n_levels) {
  if (n_levels < 1 || level < 0 || level >= n_levels) {
    throw std::invalid_argument("projector: level " + std::to_string(level) +
                                " out of range for " +
                                std::to_string(n_levels) + " levels");
  }
  Matrix p = Matrix::Zero(n_levels, n_levels);
  p(level, level) = 1.0;
  return p;
}

Matrix embed(const Matrix& op, int index, const std::vector<int>& dims) {
  const int n_sub = static_cast<int>(dims.size());
  if (index < 0 || index >= n_sub) {
    throw InvalidDimensionError("embed: subsystem index " +
                                std::to_string(index) + " out of range");
  }
  for (int d : dims) {
    if (d < 1) throw InvalidDimensionError("embed: subsystem dim must be >= 1");
  }
  if (op.rows() != op.cols() || op.rows() != dims[index]) {
    throw InvalidDimensionError(
        "embed: operator dim " + std::to_string(op.rows()) +
        " does not match subsystem dim " + std::to_string(dims[index]));
  }
  Matrix result = (index == 0) ? op : identity(dims[0]);
  for (int k = 1; k < n_sub; ++k) {
    const Matrix& factor_ref = (k == index) ? op : identity(dims[k]);
    Matrix next(result.rows() * factor_ref.rows(),
                result.cols() * factor_ref.cols());
    for (Eigen::Index i = 0; i < result.rows(); ++i) {
      for (Eigen::Index j = 0; j < result.cols(); ++j) {
        next.block(i * factor_ref.rows(), j * factor_ref.cols(),
                   factor_ref.rows(), factor_ref.cols()) =
            result(i, j) * factor_ref;
      }
    }
    result = std::move(next);
  }
  return result;
}

Complex expectation(const Matrix& rho, const Matrix& op) {
  if (rho.rows() != rho.cols() || op.rows() != op.cols() ||
      rho.rows() != op.rows()) {
    throw InvalidDimensionError("expectation: dimension mismatch (" +
                                std::to_string(rho.rows()) + " vs " +
                                std::to_string(op.rows()) + ")");
  }
  return (rho * op).trace();
}

double hermiticity_error(const Matrix& rho) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double trace_error(const Matrix& rho) { return std::abs(rho.trace() - 1.0); }

double min_eigenvalue(const Matrix& rho) {
  const Matrix sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace jqf
