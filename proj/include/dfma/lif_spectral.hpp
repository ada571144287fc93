#pragma once

#include <numbers>
#include <optional>
#include <vector>

#include "dfma/spectrum.hpp"

namespace dfma {

// Closed-form frequency-domain description of the leaky integrator:
// the DC-normalized power template, its half-power cutoff / effective
// bandwidth, nearest-bin quantization, and the tau <-> beta mappings.

enum class DecayScheme { euler, exponential };

// Membrane decay parameterization. Step size is fixed to one sample.
//   euler:       beta = 1 - 1/tau      (tau >= 1  =>  beta in [0,1))
//   exponential: beta = exp(-1/tau)    (tau > 0   =>  beta in (0,1))
struct LeakParam {
  double beta{0.0};
  double tau{1.0};
  DecayScheme scheme{DecayScheme::euler};
};

LeakParam leak_from_tau(double tau, DecayScheme scheme);
LeakParam leak_from_beta(double beta, DecayScheme scheme);

// The sweep-axis reparameterization tau = 1/(1-beta), beta in [0,1).
double tau_from_beta(double beta);

// Smallest beta for which the half-power cutoff exists inside (0, pi];
// below it the template stays above 1/2 on the whole band.
inline constexpr double kBetaCutoffExists = 3.0 - 2.0 * std::numbers::sqrt2;

// DC-normalized power template
//   (1-beta)^2 / ((1-beta)^2 + 2*beta*(1 - cos omega)),
// equal to 1 at omega = 0, non-increasing in omega on [0, pi] and in beta.
// Requires beta in [0,1) and omega in [0, pi].
double template_at(double omega, double beta);

struct LifTemplate {
  FrequencyGrid grid;
  std::vector<double> values;  // template_at(omega_k, beta), values[0] == 1
  double beta{0.0};
};

LifTemplate sample_template(const FrequencyGrid& grid, double beta);

// Half-power cutoff. `cutoff` is empty when no half-power crossing exists
// (beta < 3 - 2*sqrt(2)); the effective bandwidth then saturates at pi.
// At beta == 3 - 2*sqrt(2) the cutoff is present and equals pi.
struct Bandwidth {
  double beta{0.0};
  std::optional<double> cutoff;     // omega_c in (0, pi] when present
  std::optional<int> quantized_bin; // set by quantize_cutoff

  bool saturated() const { return !cutoff.has_value(); }
  double effective() const;         // omega_c, or pi when saturated
};

// omega_c(beta) = arccos((4*beta - 1 - beta^2) / (2*beta)) when it exists.
// The arccos argument is clamped to [-1, 1] with 1e-12 tolerance to absorb
// rounding at the existence boundary.
Bandwidth cutoff(double beta);

// Nearest grid bin to the cutoff, ties broken toward the lower bin;
// |omega_k - omega_c| <= pi/L. A saturated bandwidth maps to bin K.
int quantize_cutoff(const Bandwidth& bw, const FrequencyGrid& grid);

}  // namespace dfma
