#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dfma/lif_spectral.hpp"
#include "dfma/spectrum.hpp"

namespace dfma {

// Discrete-time LIF simulator: both input-decay conventions, hard/soft
// reset, spike-rate statistics, the beta-sweep validity flag, and an
// empirical frequency-gain probe.

enum class ResetMode { hard, soft };

struct LifConfig {
  LeakParam leak;
  bool decay_input{false};  // true: input scaled by 1/tau
  double v_th{1.0};         // firing threshold; +inf disables spiking
  double v_reset{0.0};
  ResetMode reset_mode{ResetMode::hard};

  // Input gain alpha: 1 without input decay, 1/tau with it.
  double input_gain() const;
  // Throws ParameterError on a bad threshold/reset combination.
  void validate() const;
};

struct StepResult {
  double u_next{0.0};
  bool spike{false};
};

// One update: candidate u = beta*u_prev + alpha*I. If u >= v_th the neuron
// spikes and the state resets (hard: to v_reset, soft: u - v_th); otherwise
// the candidate is kept.
StepResult step(const LifConfig& config, double u_prev, double input);

struct SpikeTrace {
  std::vector<double> potentials;  // post-reset membrane state per step
  std::vector<std::uint8_t> spikes;

  int length() const { return static_cast<int>(potentials.size()); }
};

// Iterates step() for T steps from u0, consuming inputs[0..T-1].
SpikeTrace run(const LifConfig& config, const ScalarSeries& inputs, int steps, double u0 = 0.0);

// Mean spike rate over a set of equal-length traces:
// spikes / (steps * neurons), in [0,1].
double mean_spike_rate(const std::vector<SpikeTrace>& traces);

// Per-layer spike rates keyed by beta.
using LayerRates = std::map<std::string, std::map<double, double>>;

struct LayerValidity {
  std::string layer;
  bool out_of_bounds{false};  // some rate left [gamma_min, gamma_max]
  bool ratio_exceeded{false}; // max/(min+eps) > kappa
  double min_rate{0.0};
  double max_rate{0.0};
  double ratio{0.0};

  bool flagged() const { return out_of_bounds || ratio_exceeded; }
};

struct ValidityReport {
  bool flagged{false};
  std::vector<LayerValidity> layers;
};

// Flags beta sweeps whose spike activity saturates, collapses, or spans a
// ratio larger than kappa; such regimes fall outside the subthreshold
// analysis. Requires 0 < gamma_min < gamma_max < 1, kappa > 1, eps > 0.
ValidityReport validity_flag(const LayerRates& rates, double gamma_min, double gamma_max,
                             double kappa, double eps);

// Empirical gain at a tone frequency: drives cos(omega*t) through a
// threshold-disabled neuron, discards a transient of >= 10 time constants,
// then measures the output/input amplitude ratio with a single-bin DFT over
// whole periods. omega must be a grid frequency (a rational multiple of
// 2*pi) in (0, pi]; use dc_gain_probe for omega = 0.
double gain_probe(const LifConfig& config, double omega, int cycles);

// DC gain via step response: drives a unit constant input until the state
// settles; converges to alpha/(1-beta).
double dc_gain_probe(const LifConfig& config);

}  // namespace dfma
