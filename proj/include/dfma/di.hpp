#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dfma/spectrum.hpp"

namespace dfma {

// Per-bin discriminative index: Fisher-style between/within scatter ratio of
// amplitude spectra, computed from train-split class statistics only, and its
// normalized PMF over the one-sided grid.

struct ClassStats {
  FrequencyGrid grid;
  int num_classes{0};
  std::vector<int> class_ids;             // distinct labels, ascending
  std::vector<int> counts;                // per-class sample counts, >= 2
  std::vector<double> priors;             // counts / total, sums to 1
  std::vector<std::vector<double>> mu;    // [class][bin] mean amplitude
  std::vector<std::vector<double>> var;   // [class][bin] unbiased variance
};

struct DiSpectrum {
  FrequencyGrid grid;
  std::vector<double> di;       // S_B / (S_W + epsilon), >= 0
  std::vector<double> di_norm;  // di normalized to a PMF over the grid
  double epsilon{0.0};
};

// Empirical per-class per-bin means and unbiased (N_c - 1 divisor)
// variances plus class priors. All spectra must share one grid and every
// class must contribute at least two samples.
ClassStats class_statistics(std::span<const AmplitudeSpectrum> spectra,
                            std::span<const int> labels);

// Between- and within-class scatters per bin:
//   sb[k] = sum_c pi_c * (mu_c[k] - mubar[k])^2
//   sw[k] = sum_c pi_c * var_c[k]
// with mubar[k] = sum_c pi_c * mu_c[k].
std::pair<std::vector<double>, std::vector<double>> scatters(const ClassStats& stats);

// di[k] = sb[k] / (sw[k] + epsilon); di_norm = di / sum(di). Throws
// DomainError when sum(di) == 0 (class means identical at every bin)
// instead of fabricating an arbitrary PMF.
DiSpectrum di_spectrum(const ClassStats& stats, double epsilon);

// Diagnostics used to compare di_norm spectra across scalarization variants.

// Spearman rank correlation; ties receive average ranks. Returns 0 when
// either sequence has zero rank variance.
double spearman_rho(std::span<const double> x, std::span<const double> y);

// Jensen-Shannon divergence between two PMFs, base-2 logarithm,
// 0*log(0) treated as 0. Result is in [0, 1].
double js_divergence_bits(std::span<const double> p, std::span<const double> q);

}  // namespace dfma
