#include "dfma/lif_sim.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dfma/errors.hpp"

namespace dfma {

double LifConfig::input_gain() const { return decay_input ? 1.0 / leak.tau : 1.0; }

void LifConfig::validate() const {
  if (!(leak.beta >= 0.0 && leak.beta < 1.0)) {
    throw ParameterError("lif_sim: beta must lie in [0,1)");
  }
  if (leak.scheme == DecayScheme::euler && !(leak.tau >= 1.0)) {
    throw ParameterError("lif_sim: euler scheme requires tau >= 1");
  }
  if (!(v_th > 0.0)) {
    throw ParameterError("lif_sim: v_th must be > 0");
  }
  if (reset_mode == ResetMode::hard && !(v_th > v_reset)) {
    throw ParameterError("lif_sim: hard reset requires v_th > v_reset");
  }
}

StepResult step(const LifConfig& config, double u_prev, double input) {
  const double u = config.leak.beta * u_prev + config.input_gain() * input;
  StepResult r;
  if (u >= config.v_th) {  // spike condition uses >= by convention
    r.spike = true;
    r.u_next = config.reset_mode == ResetMode::hard ? config.v_reset : u - config.v_th;
  } else {
    r.spike = false;
    r.u_next = u;
  }
  return r;
}

SpikeTrace run(const LifConfig& config, const ScalarSeries& inputs, int steps, double u0) {
  config.validate();
  if (steps <= 0) throw ParameterError("lif_sim: step count must be positive");
  if (inputs.length() < steps) {
    throw FormatError("lif_sim: input series has " + std::to_string(inputs.length()) +
                      " values but " + std::to_string(steps) + " steps were requested");
  }
  SpikeTrace trace;
  trace.potentials.resize(static_cast<std::size_t>(steps));
  trace.spikes.resize(static_cast<std::size_t>(steps));
  double u = u0;
  for (int t = 0; t < steps; ++t) {
    const StepResult r = step(config, u, inputs.values[static_cast<std::size_t>(t)]);
    u = r.u_next;
    trace.potentials[static_cast<std::size_t>(t)] = r.u_next;
    trace.spikes[static_cast<std::size_t>(t)] = r.spike ? 1 : 0;
  }
  return trace;
}

double mean_spike_rate(const std::vector<SpikeTrace>& traces) {
  if (traces.empty()) throw ParameterError("lif_sim: no traces given");
  const int steps = traces[0].length();
  if (steps == 0) throw ParameterError("lif_sim: empty traces");
  std::size_t total = 0;
  for (const auto& tr : traces) {
    if (tr.length() != steps) throw FormatError("lif_sim: traces must share one length");
    for (std::uint8_t s : tr.spikes) total += s;
  }
  return static_cast<double>(total) /
         (static_cast<double>(steps) * static_cast<double>(traces.size()));
}

ValidityReport validity_flag(const LayerRates& rates, double gamma_min, double gamma_max,
                             double kappa, double eps) {
  if (!(gamma_min > 0.0 && gamma_min < gamma_max && gamma_max < 1.0)) {
    throw ParameterError("lif_sim: need 0 < gamma_min < gamma_max < 1");
  }
  if (!(kappa > 1.0)) throw ParameterError("lif_sim: kappa must be > 1");
  if (!(eps > 0.0)) throw ParameterError("lif_sim: eps must be > 0");

  ValidityReport report;
  for (const auto& [layer, by_beta] : rates) {
    if (by_beta.empty()) {
      throw ParameterError("lif_sim: layer '" + layer + "' has no rates");
    }
    LayerValidity lv;
    lv.layer = layer;
    lv.min_rate = by_beta.begin()->second;
    lv.max_rate = lv.min_rate;
    for (const auto& [beta, gamma] : by_beta) {
      (void)beta;
      lv.min_rate = std::min(lv.min_rate, gamma);
      lv.max_rate = std::max(lv.max_rate, gamma);
      if (gamma < gamma_min || gamma > gamma_max) lv.out_of_bounds = true;
    }
    lv.ratio = lv.max_rate / (lv.min_rate + eps);
    lv.ratio_exceeded = lv.ratio > kappa;
    report.flagged = report.flagged || lv.flagged();
    report.layers.push_back(std::move(lv));
  }
  return report;
}

namespace {

// Smallest window holding a whole number of tone periods, scaled up until it
// covers at least `cycles` of them.
int periodic_window(double omega, int cycles) {
  constexpr int kMaxBase = 1 << 14;
  for (int w = 1; w <= kMaxBase; ++w) {
    const double turns = static_cast<double>(w) * omega / (2.0 * std::numbers::pi);
    const double frac = std::fabs(turns - std::round(turns));
    if (frac < 1e-9 && std::round(turns) >= 1.0) {
      const int periods = static_cast<int>(std::round(turns));
      const int reps = (cycles + periods - 1) / periods;
      return w * reps;
    }
  }
  throw ParameterError("lif_sim: omega is not a grid frequency (no whole-period window found)");
}

}  // namespace

double gain_probe(const LifConfig& config, double omega, int cycles) {
  config.validate();
  if (!std::isinf(config.v_th)) {
    throw ParameterError("lif_sim: gain probe requires a disabled threshold (v_th = inf)");
  }
  if (omega == 0.0) {
    throw ParameterError("lif_sim: omega = 0 has no periodic window; use dc_gain_probe");
  }
  if (!(omega > 0.0 && omega <= std::numbers::pi)) {
    throw ParameterError("lif_sim: omega must lie in (0,pi]");
  }
  if (cycles < 1) throw ParameterError("lif_sim: cycles must be >= 1");

  const double beta = config.leak.beta;
  const int transient = static_cast<int>(std::ceil(10.0 / (1.0 - beta)));
  const int window = periodic_window(omega, cycles);
  const int total = transient + window;

  ScalarSeries drive;
  drive.values.resize(static_cast<std::size_t>(total));
  for (int t = 0; t < total; ++t) {
    drive.values[static_cast<std::size_t>(t)] = std::cos(omega * static_cast<double>(t));
  }
  const SpikeTrace trace = run(config, drive, total);

  // Single-bin DFT of both drive and response over the same absolute time
  // indices; the ratio cancels the window factor (and the Nyquist doubling).
  double in_re = 0.0, in_im = 0.0, out_re = 0.0, out_im = 0.0;
  for (int t = transient; t < total; ++t) {
    const double angle = omega * static_cast<double>(t);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double x = drive.values[static_cast<std::size_t>(t)];
    const double y = trace.potentials[static_cast<std::size_t>(t)];
    in_re += x * c;
    in_im -= x * s;
    out_re += y * c;
    out_im -= y * s;
  }
  return std::hypot(out_re, out_im) / std::hypot(in_re, in_im);
}

double dc_gain_probe(const LifConfig& config) {
  config.validate();
  if (!std::isinf(config.v_th)) {
    throw ParameterError("lif_sim: gain probe requires a disabled threshold (v_th = inf)");
  }
  const double beta = config.leak.beta;
  const int settle = static_cast<int>(std::ceil(10.0 / (1.0 - beta))) + 1;
  double u = 0.0;
  for (int t = 0; t < settle; ++t) u = step(config, u, 1.0).u_next;
  return u;
}

}  // namespace dfma
