#include <cmath>
#include <vector>

#include "doctest.h"
#include "lifo/error.hpp"
#include "lifo/stats.hpp"

using namespace lifo;
using namespace lifo::stats;

TEST_CASE("normal cdf") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));
}

TEST_CASE("normal sampler passes KS at 2000 draws") {
  NormalSampler z(derive_seed(1, 0));
  std::vector<double> xs(2000);
  for (double& x : xs) x = z();
  CHECK(ks_statistic(xs, 0.0, 1.0) < 0.04);
  CHECK(ks_critical(2000) == doctest::Approx(1.36 / std::sqrt(2000.0)));
  RunningMoments m;
  for (double x : xs) m.add(x);
  CHECK(std::abs(m.mean()) < 4 * m.std_error());
  CHECK(m.variance() == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("normal sampler is reproducible") {
  NormalSampler a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
}

TEST_CASE("constant samples give KS 1/2") {
  const std::vector<double> xs(500, 3.0);
  CHECK(ks_normality(xs) == doctest::Approx(0.5));
  CHECK(ks_statistic(xs, 3.0, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("uniform samples fail KS normality at 5000 draws") {
  CounterRng rng(3);
  std::vector<double> xs(5000);
  for (double& x : xs) x = rng.uniform();
  CHECK(ks_normality(xs) > ks_critical(xs.size(), 1.63));
}

TEST_CASE("pearson") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> y{2, 4, 6, 8, 10};
  const std::vector<double> z{5, 4, 3, 2, 1};
  CHECK(pearson(x, y) == doctest::Approx(1.0));
  CHECK(pearson(x, z) == doctest::Approx(-1.0));
  CHECK(pearson(x, std::vector<double>(5, 1.0)) == 0.0);
  CHECK_THROWS_AS(pearson(x, std::vector<double>{1.0}), ConfigError);

  NormalSampler a(11), b(12);
  std::vector<double> u(4000), v(4000);
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = a();
    v[i] = b();
  }
  CHECK(std::abs(pearson(u, v)) < 4.0 / std::sqrt(4000.0));
}

TEST_CASE("chi-square") {
  const std::vector<std::uint64_t> obs{50, 30, 20, 0};
  const std::vector<double> probs{0.5, 0.3, 0.2, 0.0};
  CHECK(chi_square(obs, probs) == doctest::Approx(0.0));
  const std::vector<std::uint64_t> obs2{60, 20, 20};
  const std::vector<double> p2{0.5, 0.3, 0.2};
  // (10^2/50) + (10^2/30) + 0
  CHECK(chi_square(obs2, p2) == doctest::Approx(2.0 + 10.0 / 3.0));
  // scipy.stats.chi2.ppf(0.95, 1), ppf(0.99, 6), ppf(0.95, 10)
  CHECK(chi_square_critical(1, 0.05) == doctest::Approx(3.841458820694124).epsilon(1e-9));
  CHECK(chi_square_critical(6, 0.01) == doctest::Approx(16.811893829770927).epsilon(1e-9));
  CHECK(chi_square_critical(10, 0.05) == doctest::Approx(18.307038053275146).epsilon(1e-9));
}

TEST_CASE("running moments merge is order independent") {
  NormalSampler z(21);
  std::vector<double> xs(10007);
  for (double& x : xs) x = 3.0 + 2.0 * z();
  RunningMoments whole;
  for (double x : xs) whole.add(x);

  for (std::size_t parts : {2u, 7u, 64u}) {
    std::vector<RunningMoments> pieces(parts);
    for (std::size_t i = 0; i < xs.size(); ++i) pieces[i * parts / xs.size()].add(xs[i]);
    RunningMoments forward, backward;
    for (std::size_t i = 0; i < parts; ++i) forward.merge(pieces[i]);
    for (std::size_t i = parts; i-- > 0;) backward.merge(pieces[i]);
    CHECK(forward.count() == whole.count());
    CHECK(forward.mean() == doctest::Approx(whole.mean()).epsilon(1e-9));
    CHECK(forward.variance() == doctest::Approx(whole.variance()).epsilon(1e-9));
    CHECK(backward.mean() == doctest::Approx(forward.mean()).epsilon(1e-9));
    CHECK(backward.variance() == doctest::Approx(forward.variance()).epsilon(1e-9));
  }
  RunningMoments empty;
  RunningMoments copy = whole;
  copy.merge(empty);
  CHECK(copy.mean() == whole.mean());
  empty.merge(whole);
  CHECK(empty.variance() == whole.variance());
}

TEST_CASE("running moments basics") {
  RunningMoments m;
  CHECK(m.variance() == 0.0);
  m.add(1.0);
  CHECK(m.variance() == 0.0);
  m.add(3.0);
  CHECK(m.mean() == 2.0);
  CHECK(m.variance() == 2.0);
  CHECK(m.std_error() == doctest::Approx(1.0));
}
