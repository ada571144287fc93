#include "dfma/matching.hpp"

#include <cmath>
#include <string>

#include "dfma/errors.hpp"
#include "dfma/lif_spectral.hpp"
#include "dfma/parallel.hpp"

namespace dfma {

double fms_avg(const DiSpectrum& di, double beta) {
  if (di.di_norm.size() != di.grid.omegas.size()) {
    throw FormatError("matching: di_norm length does not match grid");
  }
  double score = 0.0;
  for (std::size_t k = 0; k < di.di_norm.size(); ++k) {
    score += di.di_norm[k] * template_at(di.grid.omegas[k], beta);
  }
  return score;
}

namespace {

void validate_candidates(const std::vector<double>& betas) {
  if (betas.size() < 3) {
    throw ParameterError("matching: need at least 3 beta candidates, got " +
                         std::to_string(betas.size()));
  }
  for (std::size_t r = 0; r < betas.size(); ++r) {
    if (!(betas[r] >= 0.0 && betas[r] < 1.0)) {
      throw ParameterError("matching: beta candidates must lie in [0,1)");
    }
    if (r > 0 && !(betas[r] > betas[r - 1])) {
      throw ParameterError("matching: beta candidates must be strictly ascending");
    }
  }
}

// Min-max normalization over the sampled points. A zero range cannot be
// normalized; everything maps to 0 and the caller flags the result.
bool minmax_normalize(const std::vector<double>& x, std::vector<double>& out) {
  double lo = x[0], hi = x[0];
  for (double v : x) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  out.assign(x.size(), 0.0);
  if (hi == lo) return false;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - lo) / (hi - lo);
  return true;
}

}  // namespace

FmsCurve fms_sweep(const DiSpectrum& di, const std::vector<double>& betas) {
  validate_candidates(betas);
  FmsCurve curve;
  curve.betas = betas;
  curve.fms.resize(betas.size());
  parallel_for(betas.size(), [&](std::size_t r) { curve.fms[r] = fms_avg(di, betas[r]); });
  return curve;
}

KneeResult select_boundary(const FmsCurve& curve) {
  validate_candidates(curve.betas);
  if (curve.fms.size() != curve.betas.size()) {
    throw FormatError("matching: curve betas/fms length mismatch");
  }
  for (double f : curve.fms) {
    if (!std::isfinite(f) || f < -1e-9 || f > 1.0 + 1e-9) {
      throw FormatError("matching: fms values must lie in [0,1]");
    }
  }

  const std::size_t n = curve.betas.size();
  KneeResult res;

  std::vector<double> log_tau(n);
  for (std::size_t r = 0; r < n; ++r) log_tau[r] = std::log(tau_from_beta(curve.betas[r]));

  // Strictly ascending betas give a strictly ascending log-tau axis, so only
  // the fms range can degenerate.
  minmax_normalize(log_tau, res.phis);
  const bool has_range = minmax_normalize(curve.fms, res.psis);

  res.deviations.assign(n, 0.0);
  if (!has_range) {
    res.degenerate = true;
    res.index = 0;
    res.beta_dagger = curve.betas[0];
    return res;
  }

  const double psi_first = res.psis.front();
  const double psi_last = res.psis.back();
  std::size_t best = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const double diag = (1.0 - res.phis[r]) * psi_first + res.phis[r] * psi_last;
    res.deviations[r] = std::fabs(diag - res.psis[r]);
    if (res.deviations[r] > res.deviations[best]) best = r;  // strict: first max wins
  }
  res.index = static_cast<int>(best);
  res.beta_dagger = curve.betas[best];
  return res;
}

BetaRegime classify_regime(double beta, double beta_dagger, double under_threshold) {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0 && v < 1.0)) {
      throw ParameterError(std::string("matching: ") + name + " must lie in [0,1)");
    }
  };
  check(beta, "beta");
  check(beta_dagger, "beta_dagger");
  check(under_threshold, "under_threshold");
  if (beta >= beta_dagger) return BetaRegime::over_low_pass;
  if (beta < under_threshold) return BetaRegime::under_filter;
  return BetaRegime::stability_window;
}

const char* regime_name(BetaRegime regime) {
  switch (regime) {
    case BetaRegime::under_filter: return "under-filter";
    case BetaRegime::stability_window: return "stability-window";
    case BetaRegime::over_low_pass: return "over-low-pass";
  }
  return "unknown";
}

std::vector<double> default_beta_candidates() {
  std::vector<double> betas;
  for (int i = 1; i <= 19; ++i) {
    // Snapped to 12 decimals, matching the CLI's range grammar so an
    // explicit 0.05:0.95:0.05 reproduces the default bit for bit.
    betas.push_back(std::round(0.05 * static_cast<double>(i) * 1e12) / 1e12);
  }
  return betas;
}

}  // namespace dfma
