#include "jqf/drives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jqf {

namespace {

constexpr double kPi = std::numbers::pi;
const double kFourLn2 = 4.0 * std::numbers::ln2;

double gaussian_value(double t, double t0, double sigma) {
  const double x = (t - t0) / sigma;
  return std::exp(-kFourLn2 * x * x);
}

// integral_0^T exp(-4 ln2 (t-t0)^2/sigma^2) dt
double gaussian_head_area(double T, double t0, double sigma) {
  const double k = 2.0 * std::sqrt(std::numbers::ln2) / sigma;
  return std::sqrt(kPi) / (2.0 * k) * (std::erf(k * (T - t0)) + std::erf(k * t0));
}

}  // namespace

double gaussian_area_constant() { return std::sqrt(kPi / kFourLn2); }

double envelope_value(const DriveEnvelope& env, double t) {
  if (t < 0.0) return 0.0;
  return std::visit(
      [t](const auto& e) -> double {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, CwEnvelope>) {
          return e.e_amp;
        } else if constexpr (std::is_same_v<T, StepEnvelope>) {
          return t >= e.t_on ? e.e_amp : 0.0;
        } else if constexpr (std::is_same_v<T, GaussianRampEnvelope>) {
          return t >= e.t0 ? e.e_amp : e.e_amp * gaussian_value(t, e.t0, e.sigma);
        } else {
          return e.e_amp * gaussian_value(t, e.t0, e.sigma);
        }
      },
      env);
}

double pulse_area(const DriveEnvelope& env, double t_end) {
  if (t_end < 0.0) {
    throw std::invalid_argument("pulse_area: t_end must be >= 0");
  }
  return std::visit(
      [t_end](const auto& e) -> double {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, CwEnvelope>) {
          return e.e_amp * t_end;
        } else if constexpr (std::is_same_v<T, StepEnvelope>) {
          return e.e_amp * std::max(0.0, t_end - e.t_on);
        } else if constexpr (std::is_same_v<T, GaussianRampEnvelope>) {
          if (t_end <= e.t0) {
            return e.e_amp * gaussian_head_area(t_end, e.t0, e.sigma);
          }
          return e.e_amp *
                 (gaussian_head_area(e.t0, e.t0, e.sigma) + (t_end - e.t0));
        } else {
          return e.e_amp * gaussian_head_area(t_end, e.t0, e.sigma);
        }
      },
      env);
}

double spectral_fwhm(double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("spectral_fwhm: sigma must be > 0");
  return kFourLn2 / (kPi * sigma);
}

double matched_step_onset(double t0, double sigma) {
  return t0 - gaussian_head_area(t0, t0, sigma);
}

double pi_pulse_amplitude(double sigma, double gamma1) {
  if (sigma <= 0.0) throw std::invalid_argument("pi_pulse_amplitude: sigma must be > 0");
  if (gamma1 <= 0.0) throw std::invalid_argument("pi_pulse_amplitude: gamma1 must be > 0");
  // Full gaussian area is E_amp * sigma * sqrt(pi/(4 ln2)); the pi condition
  // 2 * sqrt(2 gamma1) * area = pi fixes E_amp.
  const double rabi_amp = kPi / (2.0 * sigma * gaussian_area_constant());
  return rabi_amp / std::sqrt(2.0 * gamma1);
}

void validate_envelope(const DriveEnvelope& env) {
  std::visit(
      [](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if (e.e_amp < 0.0 || !std::isfinite(e.e_amp)) {
          throw std::invalid_argument("drive envelope: e_amp must be finite and >= 0");
        }
        if constexpr (std::is_same_v<T, GaussianRampEnvelope> ||
                      std::is_same_v<T, GaussianEnvelope>) {
          if (e.sigma <= 0.0 || !std::isfinite(e.sigma)) {
            throw std::invalid_argument("drive envelope: sigma must be > 0");
          }
        }
      },
      env);
}

}  // namespace jqf
