#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "dfma/errors.hpp"
#include "dfma/lif_spectral.hpp"
#include "oracles.hpp"

using namespace dfma;

TEST_CASE("template_at anchor values") {
  CHECK(template_at(0.7, 0.0) == 1.0);   // memoryless limit
  CHECK(template_at(0.0, 0.9) == 1.0);   // DC normalization, exact
  CHECK(template_at(std::numbers::pi, 0.5) ==
        doctest::Approx(1.0 / 9.0).epsilon(1e-14));  // ((1-b)/(1+b))^2

  CHECK_THROWS_AS(template_at(0.5, 1.0), ParameterError);
  CHECK_THROWS_AS(template_at(0.5, -0.1), ParameterError);
  CHECK_THROWS_AS(template_at(-0.1, 0.5), ParameterError);
  CHECK_THROWS_AS(template_at(3.2, 0.5), ParameterError);
}

TEST_CASE("template_at agrees with the rational closed form") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> beta_dist(0.0, 0.999);
  std::uniform_real_distribution<double> omega_dist(0.0, std::numbers::pi);
  for (int trial = 0; trial < 2000; ++trial) {
    const double beta = beta_dist(rng);
    const double omega = omega_dist(rng);
    const double got = template_at(omega, beta);
    const double want = static_cast<double>(oracle::template_reference(omega, beta));
    CHECK(std::fabs(got - want) <= 1e-12 * std::fabs(want));
  }
}

TEST_CASE("Nyquist identity") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> beta_dist(0.0, 0.999);
  for (int trial = 0; trial < 200; ++trial) {
    const double beta = beta_dist(rng);
    const double want = ((1.0 - beta) / (1.0 + beta)) * ((1.0 - beta) / (1.0 + beta));
    CHECK(std::fabs(template_at(std::numbers::pi, beta) - want) <= 1e-12 * want);
  }
}

TEST_CASE("sample_template on grids") {
  const LifTemplate two = sample_template(build_grid(2), 0.5);
  CHECK(two.values.size() == 2);
  CHECK(two.values[0] == 1.0);
  CHECK(two.values[1] == doctest::Approx(1.0 / 9.0).epsilon(1e-14));

  const LifTemplate flat = sample_template(build_grid(10), 0.0);
  for (double v : flat.values) CHECK(v == 1.0);

  std::mt19937 rng(47);
  std::uniform_real_distribution<double> beta_dist(0.0, 0.99);
  std::uniform_int_distribution<int> len_dist(2, 64);
  for (int trial = 0; trial < 100; ++trial) {
    const LifTemplate tpl = sample_template(build_grid(len_dist(rng)), beta_dist(rng));
    CHECK(tpl.values[0] == 1.0);
    for (std::size_t k = 1; k < tpl.values.size(); ++k) {
      CHECK(tpl.values[k] <= tpl.values[k - 1] + 1e-15);
      CHECK(tpl.values[k] > 0.0);
      CHECK(tpl.values[k] <= 1.0);
    }
  }
}

TEST_CASE("template is monotone in omega and in beta") {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> beta_dist(0.01, 0.99);
  std::uniform_real_distribution<double> omega_dist(1e-6, std::numbers::pi);
  for (int trial = 0; trial < 1000; ++trial) {
    const double beta = beta_dist(rng);
    double w1 = omega_dist(rng);
    double w2 = omega_dist(rng);
    if (w1 > w2) std::swap(w1, w2);
    if (w1 == w2) continue;
    // strictly decreasing in omega for beta > 0
    CHECK(template_at(w1, beta) > template_at(w2, beta));

    double b1 = beta_dist(rng);
    double b2 = beta_dist(rng);
    if (b1 > b2) std::swap(b1, b2);
    if (b1 == b2) continue;
    CHECK(template_at(w2, b1) > template_at(w2, b2));
  }
}

TEST_CASE("long-memory limit collapses the passband") {
  CHECK(template_at(1.0, 0.999999) < 1e-10);
  CHECK(template_at(0.1, 0.9999) < 1e-5);
}

TEST_CASE("cutoff saturation and closed form") {
  const Bandwidth sat = cutoff(0.1);
  CHECK(sat.saturated());
  CHECK(sat.effective() == std::numbers::pi);

  const Bandwidth half = cutoff(0.5);
  REQUIRE(!half.saturated());
  CHECK(*half.cutoff == doctest::Approx(0.722734247813416).epsilon(1e-9));
  CHECK(template_at(*half.cutoff, 0.5) == doctest::Approx(0.5).epsilon(1e-9));

  // Existence boundary: the arccos argument reaches -1, so the cutoff sits
  // at the Nyquist edge (up to rounding of the boundary constant itself).
  const Bandwidth edge = cutoff(kBetaCutoffExists);
  REQUIRE(!edge.saturated());
  CHECK(*edge.cutoff == doctest::Approx(std::numbers::pi).epsilon(1e-6));

  CHECK_THROWS_AS(cutoff(1.0), ParameterError);
  CHECK_THROWS_AS(cutoff(-0.2), ParameterError);
}

TEST_CASE("closed-form cutoff equals the bisection root") {
  for (int i = 0; i < 200; ++i) {
    const double beta =
        (kBetaCutoffExists + 1e-4) + (0.999 - kBetaCutoffExists - 1e-4) * i / 199.0;
    const Bandwidth bw = cutoff(beta);
    REQUIRE(!bw.saturated());
    const auto root = oracle::halfpower_bisection(beta);
    REQUIRE(root.has_value());
    CHECK(std::fabs(*bw.cutoff - *root) <= 1e-9);
  }
  // Below the boundary the template never crosses 1/2.
  for (double beta : {0.0, 0.05, 0.1, 0.17}) {
    CHECK(!oracle::halfpower_bisection(beta).has_value());
    CHECK(cutoff(beta).saturated());
  }
}

TEST_CASE("effective bandwidth strictly decreases in beta") {
  double prev = cutoff(kBetaCutoffExists + 1e-4).effective();
  for (int i = 1; i < 500; ++i) {
    const double beta =
        (kBetaCutoffExists + 1e-4) + (0.999 - kBetaCutoffExists - 1e-4) * i / 499.0;
    const double b_eff = cutoff(beta).effective();
    CHECK(b_eff < prev);
    prev = b_eff;
  }
}

TEST_CASE("quantize_cutoff nearest bin and ties") {
  const FrequencyGrid grid = build_grid(16);
  const Bandwidth bw = cutoff(0.5);  // omega_c ~ 0.7227, spacing pi/8
  CHECK(quantize_cutoff(bw, grid) == 2);

  // Exact midpoint between bins 0 and 1 of an L=4 grid: both distances are
  // pi/4 bit-for-bit, so the documented tie rule keeps the lower bin.
  Bandwidth tie;
  tie.beta = 0.5;
  tie.cutoff = std::numbers::pi / 4.0;
  CHECK(quantize_cutoff(tie, build_grid(4)) == 0);

  Bandwidth sat = cutoff(0.05);
  CHECK(quantize_cutoff(sat, grid) == grid.max_bin());

  // Deterministic pi/L bound over random finite cutoffs.
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> beta_dist(kBetaCutoffExists, 0.999);
  std::uniform_int_distribution<int> len_dist(4, 64);
  for (int trial = 0; trial < 1000; ++trial) {
    const int length = len_dist(rng);
    const FrequencyGrid g = build_grid(length);
    const Bandwidth b = cutoff(beta_dist(rng));
    if (b.saturated()) continue;
    const int bin = quantize_cutoff(b, g);
    CHECK(std::fabs(g.omegas[static_cast<std::size_t>(bin)] - *b.cutoff) <=
          std::numbers::pi / length + 1e-12);
  }
}

TEST_CASE("in-band set is a staircase in beta") {
  const FrequencyGrid grid = build_grid(8);
  std::set<std::vector<int>> distinct;
  std::size_t prev_size = grid.omegas.size();
  for (int i = 0; i <= 5000; ++i) {
    const double beta = kBetaCutoffExists + (0.9999 - kBetaCutoffExists) * i / 5000.0;
    const double wc = cutoff(beta).effective();
    std::vector<int> in_band;
    for (int k = 0; k <= grid.max_bin(); ++k) {
      if (grid.omegas[static_cast<std::size_t>(k)] <= wc) in_band.push_back(k);
    }
    CHECK(!in_band.empty());             // DC always in band
    CHECK(in_band.size() <= prev_size);  // only shrinks as beta grows
    prev_size = in_band.size();
    distinct.insert(in_band);
  }
  // Piecewise constant: at most K+1 distinct sets over the whole sweep.
  CHECK(distinct.size() <= grid.omegas.size());
  CHECK(distinct.size() >= 2);
}

TEST_CASE("leak parameter mappings") {
  const LeakParam euler2 = leak_from_tau(2.0, DecayScheme::euler);
  CHECK(euler2.beta == 0.5);

  CHECK(tau_from_beta(0.0) == 1.0);
  CHECK(tau_from_beta(0.5) == 2.0);

  const LeakParam expo = leak_from_tau(1.0, DecayScheme::exponential);
  CHECK(expo.beta == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

  // Round trip beta -> tau -> beta within 2 ulps under euler. The
  // computation runs through 1 - 1/tau, so the ulp scale is that of 1.0.
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> beta_dist(0.0, 0.999);
  for (int trial = 0; trial < 200; ++trial) {
    const double beta = beta_dist(rng);
    const double back = leak_from_tau(tau_from_beta(beta), DecayScheme::euler).beta;
    CHECK(std::fabs(back - beta) <= 2.0 * std::numeric_limits<double>::epsilon());
  }

  CHECK_THROWS_AS(leak_from_tau(0.5, DecayScheme::euler), ParameterError);
  CHECK_THROWS_AS(leak_from_tau(0.0, DecayScheme::exponential), ParameterError);
  CHECK_THROWS_AS(tau_from_beta(1.0), ParameterError);
  CHECK_THROWS_AS(tau_from_beta(-0.5), ParameterError);
  CHECK_THROWS_AS(leak_from_beta(0.0, DecayScheme::exponential), ParameterError);
  CHECK(leak_from_beta(0.5, DecayScheme::exponential).tau ==
        doctest::Approx(-1.0 / std::log(0.5)).epsilon(1e-15));
}
