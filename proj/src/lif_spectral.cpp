#include "dfma/lif_spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dfma/errors.hpp"

namespace dfma {

namespace {

void require_beta(double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw ParameterError("lif_spectral: beta must lie in [0,1), got " + std::to_string(beta));
  }
}

}  // namespace

LeakParam leak_from_tau(double tau, DecayScheme scheme) {
  LeakParam p;
  p.scheme = scheme;
  p.tau = tau;
  switch (scheme) {
    case DecayScheme::euler:
      if (!(tau >= 1.0)) {
        throw ParameterError("lif_spectral: euler scheme requires tau >= 1");
      }
      p.beta = 1.0 - 1.0 / tau;
      break;
    case DecayScheme::exponential:
      if (!(tau > 0.0)) {
        throw ParameterError("lif_spectral: exponential scheme requires tau > 0");
      }
      p.beta = std::exp(-1.0 / tau);
      break;
  }
  return p;
}

LeakParam leak_from_beta(double beta, DecayScheme scheme) {
  require_beta(beta);
  LeakParam p;
  p.scheme = scheme;
  p.beta = beta;
  switch (scheme) {
    case DecayScheme::euler:
      p.tau = 1.0 / (1.0 - beta);
      break;
    case DecayScheme::exponential:
      if (beta == 0.0) {
        throw ParameterError("lif_spectral: exponential scheme requires beta > 0");
      }
      p.tau = -1.0 / std::log(beta);
      break;
  }
  return p;
}

double tau_from_beta(double beta) {
  require_beta(beta);
  return 1.0 / (1.0 - beta);
}

double template_at(double omega, double beta) {
  require_beta(beta);
  if (!(omega >= 0.0 && omega <= std::numbers::pi)) {
    throw ParameterError("lif_spectral: omega must lie in [0,pi], got " + std::to_string(omega));
  }
  const double one_minus = 1.0 - beta;
  const double num = one_minus * one_minus;
  // 2*(1 - cos omega) = 4*sin^2(omega/2); the sin form avoids cancellation
  // near omega = 0.
  const double s = std::sin(0.5 * omega);
  const double denom = num + 4.0 * beta * s * s;
  return num / denom;
}

LifTemplate sample_template(const FrequencyGrid& grid, double beta) {
  require_beta(beta);
  LifTemplate tpl;
  tpl.grid = grid;
  tpl.beta = beta;
  tpl.values.resize(grid.omegas.size());
  for (std::size_t k = 0; k < grid.omegas.size(); ++k) {
    tpl.values[k] = template_at(grid.omegas[k], beta);
  }
  return tpl;
}

double Bandwidth::effective() const { return cutoff.value_or(std::numbers::pi); }

Bandwidth cutoff(double beta) {
  require_beta(beta);
  Bandwidth bw;
  bw.beta = beta;
  if (beta < kBetaCutoffExists) {
    return bw;  // template stays above 1/2 everywhere; bandwidth saturates at pi
  }
  double x = (4.0 * beta - 1.0 - beta * beta) / (2.0 * beta);
  if (x < -1.0) {
    if (x < -1.0 - 1e-12) {
      throw ParameterError("lif_spectral: arccos argument out of range");
    }
    x = -1.0;
  } else if (x > 1.0) {
    if (x > 1.0 + 1e-12) {
      throw ParameterError("lif_spectral: arccos argument out of range");
    }
    x = 1.0;
  }
  bw.cutoff = std::acos(x);
  return bw;
}

int quantize_cutoff(const Bandwidth& bw, const FrequencyGrid& grid) {
  if (bw.saturated()) return grid.max_bin();
  const double target = *bw.cutoff;
  int best = 0;
  double best_dist = std::fabs(grid.omegas[0] - target);
  for (int k = 1; k <= grid.max_bin(); ++k) {
    const double dist = std::fabs(grid.omegas[static_cast<std::size_t>(k)] - target);
    if (dist < best_dist) {  // strict: ties keep the lower bin
      best = k;
      best_dist = dist;
    }
  }
  return best;
}

}  // namespace dfma
