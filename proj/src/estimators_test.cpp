#include <cmath>
#include <thread>

#include "doctest.h"
#include "lifo/error.hpp"
#include "lifo/estimators.hpp"
#include "lifo/oracle.hpp"
#include "lifo/stats.hpp"

using namespace lifo;

namespace {

unsigned threads() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

ExperimentConfig config(int k, double p, std::size_t n, std::size_t trials, std::uint64_t seed) {
  ExperimentConfig c;
  c.params = {k, p};
  c.n = n;
  c.trials = trials;
  c.seed = seed;
  c.threads = threads();
  return c;
}

}  // namespace

TEST_CASE("config validation names the field") {
  ExperimentConfig c = config(2, 0.0, 10, 10, 1);
  c.trials = 0;
  try {
    c.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "trials");
  }
  c = config(2, 0.0, 10, 10, 1);
  c.caps.j = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = config(2, 1.5, 10, 10, 1);
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK(config(2, 0, 1, 1, 9).trial_seed(4) == derive_seed(9, 4));
}

TEST_CASE("adjacent requests") {
  const auto r = adjacent_requests(4);
  REQUIRE(r.size() == 9);
  CHECK(r[1].a.i == 1);
  CHECK(r[1].a.j == 2);
  CHECK(r[1].b.i == 2);
  CHECK(r[1].b.j == 3);
  CHECK(r[8].a.i == 3);
  CHECK(r[8].b.j == 4);
}

TEST_CASE("k = 2, p = 0: Var D12 / n near 1") {
  const std::array<CovarianceRequest, 1> req{{{{1, 2}, {1, 2}}}};
  const auto e = estimate_cov_d(config(2, 0.0, 10000, 400, 101), req);
  CHECK(e[0].value == doctest::Approx(1.0).epsilon(0.1));
  CHECK(e[0].std_error > 0.0);
  CHECK(e[0].trials == 400);
  CHECK(e[0].truncated_mass == 0.0);
}

TEST_CASE("k = 3 and 4, p = 0: adjacent and disjoint covariances") {
  // 2000 trials instead of 400 to keep the +-0.05 band several standard errors wide.
  const std::array<CovarianceRequest, 1> r3{{{{1, 2}, {2, 3}}}};
  const auto e3 = estimate_cov_d(config(3, 0.0, 10000, 2000, 102), r3);
  CHECK(e3[0].value == doctest::Approx(-1.0 / 3.0).epsilon(0.05 * 3));
  CHECK(std::abs(e3[0].value + 1.0 / 3.0) < 0.05);

  const std::array<CovarianceRequest, 1> r4{{{{1, 2}, {3, 4}}}};
  const auto e4 = estimate_cov_d(config(4, 0.0, 10000, 2000, 103), r4);
  CHECK(std::abs(e4[0].value) < 0.05);
}

TEST_CASE("covariance estimates do not depend on the thread count") {
  ExperimentConfig c = config(3, 0.4, 2000, 300, 104);
  const auto req = adjacent_requests(3);
  c.threads = 1;
  const auto one = estimate_cov_d(c, req);
  c.threads = 4;
  const auto four = estimate_cov_d(c, req);
  for (std::size_t i = 0; i < req.size(); ++i) {
    CHECK(one[i].value == four[i].value);
    CHECK(one[i].std_error == four[i].std_error);
  }
}

TEST_CASE("covariance excludes truncated trials") {
  std::vector<TrialSummary> trials(50);
  for (std::size_t i = 0; i < trials.size(); ++i) {
    trials[i].final_counts = {static_cast<std::int32_t>(i % 7), -static_cast<std::int32_t>(i % 5)};
    trials[i].truncated = i % 10 == 0;
  }
  const std::array<CovarianceRequest, 1> req{{{{1, 2}, {1, 2}}}};
  const auto e = covariance_from_trials(trials, 1, req);
  CHECK(e[0].trials == 45);
  CHECK(e[0].truncated_mass == doctest::Approx(0.1));
}

TEST_CASE("chi estimates") {
  ExperimentConfig c = config(2, 0.75, 0, 100000, 105);
  c.n = 1;
  c.caps.j = 10'000'000;
  const Estimate e = estimate_chi(c);
  CHECK(std::abs(e.value - 4.0 / 3.0) < 0.03);
  CHECK(e.value >= 1.0);

  // Below criticality the mean sits near 2, within [1, 2] up to noise.
  ExperimentConfig low = config(3, 0.3, 1, 20000, 106);
  low.caps.j = 1'000'000;
  const Estimate l = estimate_chi(low);
  CHECK(l.value < 2.0 + 4 * l.std_error);
  CHECK(l.value > 1.8);
  CHECK(l.truncated_mass >= 0.0);
  CHECK(l.truncated_mass < 0.01);

  // A tiny cap must report truncation.
  ExperimentConfig tiny = low;
  tiny.caps.j = 3;
  CHECK(estimate_chi(tiny).truncated_mass > 0.0);
}

TEST_CASE("EDD sign pattern at small sample size") {
  ExperimentConfig c = config(4, 0.3, 1, 200000, 107);
  c.caps.j = 1'000'000;
  const Estimate disjoint = estimate_edd(c, {1, 2}, {3, 4});
  CHECK(std::abs(disjoint.value) < 4 * disjoint.std_error + 1e-3);
  const Estimate same = estimate_edd(c, {1, 2}, {1, 2});
  CHECK(same.value < 0.0);
  CHECK_THROWS_AS(estimate_edd(c, {1, 1}, {1, 2}), ConfigError);
}

TEST_CASE("EDD with p = 0 vanishes") {
  // Without F, Y(0) = X(0) is independent of the past.
  const Estimate e = estimate_edd(config(3, 0.0, 1, 100000, 108), {1, 2}, {1, 2});
  CHECK(std::abs(e.value) < 4 * e.std_error);
}

TEST_CASE("F fraction is zero without F and decreases below criticality") {
  const std::array<std::size_t, 2> sizes{100, 1000};
  const auto none = estimate_flex_fraction(config(2, 0.0, 1, 20, 109), sizes);
  CHECK(none[0].value == 0.0);
  CHECK(none[1].value == 0.0);

  const std::array<std::size_t, 2> grow{10, 100};
  const auto f = estimate_flex_fraction(config(3, 0.5, 1, 40, 110), grow);
  CHECK(f[1].value < f[0].value);
  CHECK(f[0].truncated_mass == 0.0);
}

TEST_CASE("past stack type fractions tend to 1/k") {
  // The number of draws needed to reveal a given depth is heavy-tailed at
  // p = 0.9, so the past cap does real work here. Types are exchangeable, so
  // dropping capped trials does not bias the fractions.
  ExperimentConfig c = config(3, 0.9, 1, 40, 111);
  c.caps.past = 20'000'000;
  const auto t = estimate_type_fractions(c, 1000);
  REQUIRE(t.size() == 3);
  CHECK(t[0].truncated_mass < 0.5);
  double sum = 0;
  for (const auto& e : t) {
    CHECK(std::abs(e.value - 1.0 / 3.0) < 0.03);
    sum += e.value;
  }
  CHECK(sum == doctest::Approx(1.0));

  c.caps.past = 10;
  CHECK(estimate_type_fractions(c, 1000)[0].truncated_mass == 1.0);
}

TEST_CASE("total and discrepancy are uncorrelated and Gaussian") {
  const GaussianityReport r = estimate_gaussianity(config(3, 0.3, 10000, 2000, 112));
  CHECK(std::abs(r.correlation.value) < 0.05);
  CHECK(r.ks_total < stats::ks_critical(2000, 1.63));
  CHECK(r.ks_discrepancy < stats::ks_critical(2000, 1.63));
  CHECK(r.total_samples.size() == 2000);
}

TEST_CASE("tail curve") {
  const std::array<double, 5> grid{0.0, 1.0, 2.0, 4.0, 20.0};
  const auto t = tail_curve(config(3, 0.5, 10000, 2000, 113), grid);
  CHECK(t[0].max_total.value == 1.0);
  CHECK(t[4].max_total.value == 0.0);
  CHECK(t[4].window_length.value == 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    CHECK(t[i].max_total.value <= t[i - 1].max_total.value);
    CHECK(t[i].window_length.value <= t[i - 1].window_length.value);
  }
  CHECK(t[3].max_total.value < t[1].max_total.value / 10);
  const std::array<double, 1> bad{-1.0};
  CHECK_THROWS_AS(tail_curve(config(3, 0.5, 10, 10, 1), bad), ConfigError);
}

TEST_CASE("excursion length estimate reports truncation") {
  ExperimentConfig c = config(2, 0.5, 1, 2000, 114);
  c.caps.excursion = 1000;
  const Estimate e = estimate_excursion_length(c);
  CHECK(e.truncated_mass > 0.0);
  CHECK(e.trials + static_cast<std::size_t>(std::lround(e.truncated_mass * 2000)) == 2000);
}

TEST_CASE("Monte Carlo agrees with the exact window covariance") {
  // p = 0: Y = X, so the window functional needs no past.
  for (int k : {2, 3}) {
    const std::size_t n = 6;
    const auto req = adjacent_requests(k);
    const auto mc = estimate_cov_d(config(k, 0.0, n, 200000, 115 + static_cast<std::uint64_t>(k)), req);
    for (std::size_t q = 0; q < req.size(); ++q) {
      oracle::EnumerationSpec spec;
      spec.k = k;
      spec.p = oracle::Probability::parse("0");
      spec.n = n;
      spec.functional = oracle::Functional::WindowCovariance;
      spec.a = req[q].a;
      spec.b = req[q].b;
      spec.policy = oracle::FPolicy::Forbid;
      const double exact = oracle::exact_expectation(spec).conditional.value / static_cast<double>(n);
      CHECK(std::abs(mc[q].value - exact) < 4 * mc[q].std_error);
    }
  }
}
