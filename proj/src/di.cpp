#include "dfma/di.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "dfma/errors.hpp"

namespace dfma {

ClassStats class_statistics(std::span<const AmplitudeSpectrum> spectra,
                            std::span<const int> labels) {
  if (spectra.size() != labels.size()) {
    throw FormatError("di: got " + std::to_string(spectra.size()) + " spectra but " +
                      std::to_string(labels.size()) + " labels");
  }
  if (spectra.empty()) throw ParameterError("di: empty sample set");

  const FrequencyGrid& grid = spectra[0].grid;
  for (const auto& s : spectra) {
    if (!(s.grid == grid) || s.amps.size() != grid.omegas.size()) {
      throw FormatError("di: spectra do not share a common grid");
    }
  }

  // Group sample indices by label value.
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  for (const auto& [cls, members] : by_class) {
    if (members.size() < 2) {
      throw DomainError("di: class " + std::to_string(cls) + " has " +
                        std::to_string(members.size()) +
                        " sample(s); unbiased variance needs at least 2");
    }
  }

  const std::size_t bins = grid.omegas.size();
  ClassStats stats;
  stats.grid = grid;
  stats.num_classes = static_cast<int>(by_class.size());
  for (const auto& [cls, members] : by_class) {
    stats.class_ids.push_back(cls);
    stats.counts.push_back(static_cast<int>(members.size()));
    stats.priors.push_back(static_cast<double>(members.size()) /
                           static_cast<double>(spectra.size()));

    std::vector<double> mu(bins, 0.0);
    std::vector<double> var(bins, 0.0);
    for (std::size_t i : members) {
      for (std::size_t k = 0; k < bins; ++k) mu[k] += spectra[i].amps[k];
    }
    for (std::size_t k = 0; k < bins; ++k) mu[k] /= static_cast<double>(members.size());
    for (std::size_t i : members) {
      for (std::size_t k = 0; k < bins; ++k) {
        const double d = spectra[i].amps[k] - mu[k];
        var[k] += d * d;
      }
    }
    for (std::size_t k = 0; k < bins; ++k) {
      var[k] /= static_cast<double>(members.size() - 1);
    }
    stats.mu.push_back(std::move(mu));
    stats.var.push_back(std::move(var));
  }
  return stats;
}

std::pair<std::vector<double>, std::vector<double>> scatters(const ClassStats& stats) {
  const std::size_t bins = stats.grid.omegas.size();
  std::vector<double> sb(bins, 0.0);
  std::vector<double> sw(bins, 0.0);
  for (std::size_t k = 0; k < bins; ++k) {
    double mixture_mean = 0.0;
    for (int c = 0; c < stats.num_classes; ++c) {
      mixture_mean += stats.priors[static_cast<std::size_t>(c)]
                      * stats.mu[static_cast<std::size_t>(c)][k];
    }
    for (int c = 0; c < stats.num_classes; ++c) {
      const double pc = stats.priors[static_cast<std::size_t>(c)];
      const double d = stats.mu[static_cast<std::size_t>(c)][k] - mixture_mean;
      sb[k] += pc * d * d;
      sw[k] += pc * stats.var[static_cast<std::size_t>(c)][k];
    }
  }
  return {std::move(sb), std::move(sw)};
}

DiSpectrum di_spectrum(const ClassStats& stats, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw ParameterError("di: epsilon must be > 0");
  }
  auto [sb, sw] = scatters(stats);

  DiSpectrum out;
  out.grid = stats.grid;
  out.epsilon = epsilon;
  out.di.resize(sb.size());
  double total = 0.0;
  for (std::size_t k = 0; k < sb.size(); ++k) {
    out.di[k] = sb[k] / (sw[k] + epsilon);
    total += out.di[k];
  }
  if (total == 0.0) {
    throw DomainError("di: no discrimination (class means identical at every bin)");
  }
  out.di_norm.resize(out.di.size());
  for (std::size_t k = 0; k < out.di.size(); ++k) out.di_norm[k] = out.di[k] / total;
  return out;
}

namespace {

// Average ranks, 1-based; ties share the mean of their rank span.
std::vector<double> average_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ParameterError("di: spearman needs two equal-length sequences of size >= 2");
  }
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = rx[i] - mx;
    const double dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double js_divergence_bits(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) {
    throw ParameterError("di: JS divergence needs two equal-length PMFs");
  }
  auto kl_term = [](double a, double m) {
    if (a <= 0.0) return 0.0;  // 0*log(0) := 0
    return a * std::log2(a / m);
  };
  double js = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (m <= 0.0) continue;
    js += 0.5 * kl_term(p[i], m) + 0.5 * kl_term(q[i], m);
  }
  return js;
}

}  // namespace dfma
