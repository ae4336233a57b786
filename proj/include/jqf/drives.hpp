#pragma once

#include <variant>

namespace jqf {

// Drive envelopes E_d(t). Amplitudes carry units of sqrt(rad/ns) so that
// sqrt(2*gamma1)*E_d is an angular Rabi rate. Envelopes are zero for t < 0;
// the control field switches on at t = 0.
struct CwEnvelope {
  double e_amp = 0.0;
};

struct StepEnvelope {
  double e_amp = 0.0;
  double t_on = 0.0;  // onset time t0' (ns); theta(0) = 1
};

// Gaussian rise that levels off at e_amp for t >= t0.
struct GaussianRampEnvelope {
  double e_amp = 0.0;
  double t0 = 0.0;     // end of the ramp (ns)
  double sigma = 1.0;  // FWHM of the underlying gaussian (ns)
};

// exp(-4 ln2 (t-t0)^2 / sigma^2); sigma is the full width at half maximum.
struct GaussianEnvelope {
  double e_amp = 0.0;
  double t0 = 0.0;
  double sigma = 1.0;
};

using DriveEnvelope = std::variant<CwEnvelope, StepEnvelope,
                                   GaussianRampEnvelope, GaussianEnvelope>;

double envelope_value(const DriveEnvelope& env, double t);

// Integral of E_d over [0, t_end] (closed form for every shape).
double pulse_area(const DriveEnvelope& env, double t_end);

// Full width at half maximum of the gaussian pulse in frequency space,
// 4 ln2 / (pi sigma), in cycles per ns (GHz).
double spectral_fwhm(double sigma);

// Step onset time that matches the total area of a gaussian ramp with the
// given (t0, sigma): t_on = t0 - (head area)/e_amp.
double matched_step_onset(double t0, double sigma);

// Peak amplitude E_amp of a full gaussian pi pulse: the pulse area satisfies
// integral of 2*Omega(t) dt = pi with Omega(t) = sqrt(2*gamma1) E_d(t).
double pi_pulse_amplitude(double sigma, double gamma1);

// sqrt(pi / (4 ln2)): full gaussian area is e_amp * sigma * this constant.
double gaussian_area_constant();

void validate_envelope(const DriveEnvelope& env);

}  // namespace jqf
