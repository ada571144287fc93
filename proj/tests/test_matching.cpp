#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "dfma/errors.hpp"
#include "dfma/lif_spectral.hpp"
#include "dfma/matching.hpp"

using namespace dfma;

namespace {

DiSpectrum make_di(int length, std::vector<double> di_norm) {
  DiSpectrum di;
  di.grid = build_grid(length);
  di.di_norm = std::move(di_norm);
  di.di = di.di_norm;  // scale does not matter for matching
  di.epsilon = 1e-12;
  return di;
}

DiSpectrum random_pmf(int length, std::mt19937& rng) {
  const FrequencyGrid grid = build_grid(length);
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> mass(grid.omegas.size());
  double total = 0.0;
  for (auto& v : mass) {
    v = ex(rng) + 1e-6;
    total += v;
  }
  for (auto& v : mass) v /= total;
  return make_di(length, mass);
}

}  // namespace

TEST_CASE("fms_avg anchor values") {
  // All mass at DC retains everything for any leak.
  const DiSpectrum dc = make_di(8, {1.0, 0.0, 0.0, 0.0, 0.0});
  for (double beta : {0.0, 0.3, 0.9}) {
    CHECK(fms_avg(dc, beta) == doctest::Approx(1.0).epsilon(1e-15));
  }

  // beta = 0 is the identity filter.
  std::mt19937 rng(67);
  const DiSpectrum any = random_pmf(16, rng);
  CHECK(fms_avg(any, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

  // Uniform PMF on the L=4 grid {0, pi/2, pi} at beta = 0.5:
  // (1 + 0.2 + 1/9) / 3, by direct summation.
  const DiSpectrum uniform = make_di(4, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  const double want = (1.0 + 0.25 / 1.25 + 1.0 / 9.0) / 3.0;
  CHECK(fms_avg(uniform, 0.5) == doctest::Approx(want).epsilon(1e-12));

  CHECK_THROWS_AS(fms_avg(uniform, 1.0), ParameterError);
  CHECK_THROWS_AS(fms_avg(uniform, -0.1), ParameterError);
}

TEST_CASE("fms_avg stays within [0,1] for random PMFs") {
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> beta_dist(0.0, 0.999);
  for (int trial = 0; trial < 1000; ++trial) {
    const DiSpectrum di = random_pmf(2 + trial % 63, rng);
    const double f = fms_avg(di, beta_dist(rng));
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-12);
  }
}

TEST_CASE("fms_sweep validation and monotonicity") {
  std::mt19937 rng(73);
  const DiSpectrum di = random_pmf(16, rng);

  const FmsCurve curve = fms_sweep(di, {0.1, 0.3, 0.5, 0.7, 0.9});
  REQUIRE(curve.fms.size() == 5);
  for (std::size_t r = 1; r < curve.fms.size(); ++r) {
    CHECK(curve.fms[r] <= curve.fms[r - 1] + 1e-12);
  }

  // DC-only mass keeps the curve flat at 1.
  const DiSpectrum dc = make_di(8, {1.0, 0.0, 0.0, 0.0, 0.0});
  const FmsCurve flat = fms_sweep(dc, {0.0, 0.4, 0.8});
  for (double f : flat.fms) CHECK(f == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(fms_sweep(di, {0.1, 0.2}), ParameterError);         // too few
  CHECK_THROWS_AS(fms_sweep(di, {0.1, 0.1, 0.3}), ParameterError);    // duplicate
  CHECK_THROWS_AS(fms_sweep(di, {0.3, 0.2, 0.5}), ParameterError);    // not ascending
  CHECK_THROWS_AS(fms_sweep(di, {0.1, 0.5, 1.0}), ParameterError);    // out of domain
}

TEST_CASE("select_boundary reproduces the three-candidate example") {
  FmsCurve curve;
  curve.betas = {0.1, 0.5, 0.9};
  curve.fms = {1.0, 0.5, 0.0};
  const KneeResult knee = select_boundary(curve);

  CHECK(knee.beta_dagger == 0.5);
  CHECK(knee.index == 1);
  CHECK(!knee.degenerate);
  // tau = {10/9, 2, 10}; normalized log-tau coordinates.
  CHECK(knee.phis[0] == 0.0);
  CHECK(knee.phis[1] == doctest::Approx(0.2675134).epsilon(1e-6));
  CHECK(knee.phis[2] == 1.0);
  CHECK(knee.psis[0] == 1.0);
  CHECK(knee.psis[1] == 0.5);
  CHECK(knee.psis[2] == 0.0);
  CHECK(knee.deviations[0] == 0.0);
  CHECK(knee.deviations[2] == 0.0);
  CHECK(knee.deviations[1] == doctest::Approx(0.2324866).epsilon(1e-5));
  CHECK(std::fabs(knee.deviations[1] - 0.2325) <= 1e-4);
}

TEST_CASE("select_boundary edge rules") {
  // fms exactly linear in phi: all deviations vanish, tie resolves to the
  // smallest candidate. The curve spans [0,1] so its normalization is the
  // identity and the interior value reproduces the diagonal bit for bit.
  FmsCurve linear;
  linear.betas = {0.2, 0.5, 0.8};
  const double t0 = std::log(tau_from_beta(0.2));
  const double t1 = std::log(tau_from_beta(0.5));
  const double t2 = std::log(tau_from_beta(0.8));
  const double phi_mid = (t1 - t0) / (t2 - t0);
  linear.fms = {1.0, 1.0 - phi_mid, 0.0};
  const KneeResult tie = select_boundary(linear);
  CHECK(tie.index == 0);
  CHECK(tie.beta_dagger == 0.2);
  for (double d : tie.deviations) CHECK(d <= 1e-15);

  // Constant fms: degenerate range, flagged, boundary at the first
  // candidate.
  FmsCurve constant;
  constant.betas = {0.1, 0.4, 0.7};
  constant.fms = {0.8, 0.8, 0.8};
  const KneeResult degen = select_boundary(constant);
  CHECK(degen.degenerate);
  CHECK(degen.beta_dagger == 0.1);
  CHECK(degen.index == 0);
  for (double d : degen.deviations) CHECK(d == 0.0);
  for (double p : degen.psis) CHECK(p == 0.0);
}

TEST_CASE("select_boundary endpoint deviations vanish") {
  std::mt19937 rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    const DiSpectrum di = random_pmf(16, rng);
    const FmsCurve curve = fms_sweep(di, default_beta_candidates());
    const KneeResult knee = select_boundary(curve);
    if (knee.degenerate) continue;
    CHECK(knee.deviations.front() <= 1e-15);
    CHECK(knee.deviations.back() <= 1e-15);
  }
}

TEST_CASE("select_boundary is deterministic bit for bit") {
  std::mt19937 rng(83);
  const DiSpectrum di = random_pmf(32, rng);
  const FmsCurve curve = fms_sweep(di, default_beta_candidates());
  const KneeResult a = select_boundary(curve);
  const KneeResult b = select_boundary(curve);
  CHECK(std::memcmp(&a.beta_dagger, &b.beta_dagger, sizeof(double)) == 0);
  CHECK(a.index == b.index);
  REQUIRE(a.deviations.size() == b.deviations.size());
  CHECK(std::memcmp(a.deviations.data(), b.deviations.data(),
                    a.deviations.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(a.phis.data(), b.phis.data(), a.phis.size() * sizeof(double)) == 0);
}

TEST_CASE("classify_regime ordering") {
  CHECK(classify_regime(0.5, 0.5, 0.05) == BetaRegime::over_low_pass);   // beta == dagger
  CHECK(classify_regime(0.7, 0.5, 0.05) == BetaRegime::over_low_pass);
  CHECK(classify_regime(0.001, 0.5, 0.05) == BetaRegime::under_filter);
  CHECK(classify_regime(0.275, 0.5, 0.05) == BetaRegime::stability_window);
  // over-low-pass takes precedence over the under-filter label
  CHECK(classify_regime(0.01, 0.005, 0.05) == BetaRegime::over_low_pass);
  CHECK_THROWS_AS(classify_regime(1.0, 0.5, 0.05), ParameterError);
  CHECK_THROWS_AS(classify_regime(0.5, 1.5, 0.05), ParameterError);
}

TEST_CASE("default candidates cover 0.05..0.95 in 19 steps") {
  const std::vector<double> betas = default_beta_candidates();
  REQUIRE(betas.size() == 19);
  CHECK(betas.front() == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(betas.back() == doctest::Approx(0.95).epsilon(1e-15));
  for (std::size_t i = 1; i < betas.size(); ++i) {
    CHECK(betas[i] - betas[i - 1] == doctest::Approx(0.05).epsilon(1e-12));
  }
}
