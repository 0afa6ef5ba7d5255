#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "lifo/error.hpp"
#include "lifo/theory.hpp"

using namespace lifo;
using namespace lifo::theory;

TEST_CASE("alpha") {
  CHECK(alpha(2, 0.25) == doctest::Approx(0.5));
  CHECK(alpha(3, 2.0 / 3.0) == doctest::Approx(0.0));
  for (int k = 2; k <= 8; ++k) CHECK(alpha(k, 0.0) == doctest::Approx(2.0 / k));
  CHECK(alpha(3, 0.9) == 0.0);
  CHECK_THROWS_AS(alpha(1, 0.0), ConfigError);
}

TEST_CASE("alpha vanishes at the critical point and decreases before it") {
  for (int k = 2; k <= 8; ++k) {
    const double pc = critical_p(k);
    CHECK(alpha(k, pc) == doctest::Approx(0.0));
    double prev = alpha(k, 0.0);
    for (int s = 1; s <= 50; ++s) {
      const double p = pc * s / 50.0;
      const double a = alpha(k, p);
      CHECK(a < prev);
      prev = a;
    }
    for (double p = pc; p <= 1.0; p += 0.01) CHECK(alpha(k, p) <= 1e-15);
  }
}

TEST_CASE("critical_p") {
  CHECK(critical_p(2) == 0.5);
  CHECK(critical_p(3) == doctest::Approx(2.0 / 3.0));
  CHECK(critical_p(10) == doctest::Approx(0.9));
}

TEST_CASE("covariance model examples") {
  const CovarianceModel m3 = covariance_model(3, 0.0);
  CHECK(m3.alpha == doctest::Approx(2.0 / 3.0));
  CHECK(m3.cov_a(0, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(m3.cov_a(1, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(m3.cov_a(0, 1) == doctest::Approx(-1.0 / 3.0));
  CHECK(m3.cov_a(1, 0) == doctest::Approx(-1.0 / 3.0));
  CHECK(m3.cov_a(2, 2) == 1.0);
  CHECK(m3.cov_a(0, 2) == 0.0);
  CHECK(m3.cov_a(2, 1) == 0.0);

  const CovarianceModel m2 = covariance_model(2, 0.0);
  CHECK(m2.cov_a_tilde(0, 0) == doctest::Approx(0.5));
  CHECK(m2.cov_a_tilde(1, 1) == doctest::Approx(0.5));
  CHECK(m2.cov_a_tilde(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("transform matrix") {
  const IntMatrix m = transform_matrix(3);
  IntMatrix expected(3, 3);
  expected << 1, -1, 0, 0, 1, -1, 1, 1, 1;
  CHECK(m == expected);
}

TEST_CASE("grid: PSD, invertible M, exact transform identity") {
  for (int k = 2; k <= 8; ++k) {
    const double det = transform_matrix(k).cast<double>().determinant();
    CHECK(std::abs(det) >= 1.0 - 1e-9);
    CHECK(std::abs(det - std::round(det)) < 1e-9);
    for (int s = 0; s <= 10; ++s) {
      const double p = s / 10.0;
      const CovarianceModel cm = covariance_model(k, p);
      const Matrix md = cm.m.cast<double>();
      const Matrix lhs = md * cm.cov_a_tilde * md.transpose();
      CHECK((lhs - cm.cov_a).cwiseAbs().maxCoeff() <= 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix> es(cm.cov_a);
      CHECK(es.eigenvalues().minCoeff() >= -1e-12);
      CHECK((cm.cov_a - cm.cov_a.transpose()).cwiseAbs().maxCoeff() == 0.0);
      const double a = cm.alpha;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          const double want = 1.0 / (k * k) - a / (2.0 * k) + (i == j ? a / 2 : 0.0);
          CHECK(cm.cov_a_tilde(i, j) == doctest::Approx(want).epsilon(1e-12));
        }
    }
  }
}

TEST_CASE("chi prediction") {
  CHECK(chi_prediction(3, 0.5) == 2.0);
  CHECK(chi_prediction(2, 1.0) == doctest::Approx(1.0));
  CHECK(chi_prediction(3, 0.9) == doctest::Approx(2.0 / 0.9 - 1.0));
  CHECK(chi_prediction(3, 2.0 / 3.0) == 2.0);
  for (int k = 2; k <= 8; ++k)
    for (int s = 0; s <= 100; ++s) {
      const double c = chi_prediction(k, s / 100.0);
      CHECK(c >= 1.0 - 1e-12);
      CHECK(c <= 2.0);
      // p = (k-1)/(chi+k-2) above the critical point.
      if (s / 100.0 > critical_p(k) + 1e-9) CHECK((k - 1) / (c + k - 2) == doctest::Approx(s / 100.0));
    }
}

TEST_CASE("finite-n covariance") {
  CHECK(finite_n_covariance(3, 0.0, 600, {1, 2}, {1, 2}) == doctest::Approx(400.0));
  CHECK(finite_n_covariance(3, 0.0, 600, {1, 2}, {2, 3}) == doctest::Approx(-200.0));
  CHECK(finite_n_covariance(4, 0.0, 600, {1, 2}, {3, 4}) == 0.0);
  CHECK(finite_n_covariance(3, 0.0, 600, {1, 2}, {1, 3}) == doctest::Approx(200.0));
  CHECK_THROWS_AS(finite_n_covariance(3, 0.9, 600, {1, 2}, {1, 2}), RegimeError);
  CHECK_THROWS_AS(finite_n_covariance(3, 0.0, 600, {1, 1}, {1, 2}), ConfigError);
  CHECK_THROWS_AS(finite_n_covariance(3, 0.0, 600, {1, 4}, {1, 2}), ConfigError);
}
