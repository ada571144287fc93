#pragma once

#include <vector>

#include "dfma/di.hpp"

namespace dfma {

// Frequency-matching score, the beta sweep, and the maximum-deviation rule
// that selects the reference boundary beta-dagger.

// FMS_avg(beta) = sum_k di_norm[k] * template_at(omega_k, beta).
// The class-weighted fraction of discriminative spectral content retained
// at leak beta; lies in [0, 1].
double fms_avg(const DiSpectrum& di, double beta);

struct FmsCurve {
  std::vector<double> betas;  // strictly ascending, each in [0,1)
  std::vector<double> fms;    // same length, each in [0,1]
};

// Evaluates fms_avg over a strictly ascending candidate set. At least three
// candidates are required (the diagonal construction needs interior points).
FmsCurve fms_sweep(const DiSpectrum& di, const std::vector<double>& betas);

// Geometry of the maximum-deviation selection over the curve:
//   tau_r  = 1/(1 - beta_r)
//   phi_r  = minmax-normalized log(tau_r)
//   psi_r  = minmax-normalized fms_r
//   d_r    = | (1 - phi_r)*psi_1 + phi_r*psi_R  -  psi_r |
//   beta_dagger = betas[argmax_r d_r]   (smallest index on ties)
// A constant fms range cannot be normalized; the result is then flagged
// degenerate, all coordinates map to 0 and beta_dagger = betas[0].
struct KneeResult {
  double beta_dagger{0.0};
  int index{0};  // 0-based argmax position
  std::vector<double> phis;
  std::vector<double> psis;
  std::vector<double> deviations;
  bool degenerate{false};
};

KneeResult select_boundary(const FmsCurve& curve);

enum class BetaRegime { under_filter, stability_window, over_low_pass };

// beta >= beta_dagger       -> over_low_pass
// beta <  under_threshold   -> under_filter
// otherwise                 -> stability_window
BetaRegime classify_regime(double beta, double beta_dagger, double under_threshold = 0.05);

const char* regime_name(BetaRegime regime);

// Default candidate set: beta in {0.05, 0.10, ..., 0.95}.
std::vector<double> default_beta_candidates();

}  // namespace dfma
