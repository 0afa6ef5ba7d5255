#include "lifo/theory.hpp"

#include <algorithm>
#include <string>

#include "lifo/error.hpp"
#include "lifo/model.hpp"

namespace lifo::theory {

double alpha(int k, double p) {
  ModelParams{k, p}.validate();
  return std::max(2.0 / k - 2.0 * p / (k - 1), 0.0);
}

double critical_p(int k) {
  ModelParams{k, 0.0}.validate();
  return 1.0 - 1.0 / k;
}

bool at_or_below_critical(int k, double p) { return p <= critical_p(k) + 1e-12; }

IntMatrix transform_matrix(int k) {
  IntMatrix m = IntMatrix::Zero(k, k);
  for (int i = 0; i + 1 < k; ++i) {
    m(i, i) = 1;
    m(i, i + 1) = -1;
  }
  m.row(k - 1).setOnes();
  return m;
}

CovarianceModel covariance_model(int k, double p) {
  CovarianceModel cm;
  cm.k = k;
  cm.p = p;
  cm.alpha = alpha(k, p);
  const double a = cm.alpha;

  cm.cov_a = Matrix::Zero(k, k);
  for (int i = 0; i + 1 < k; ++i) {
    cm.cov_a(i, i) = a;
    if (i + 2 < k) {
      cm.cov_a(i, i + 1) = -a / 2;
      cm.cov_a(i + 1, i) = -a / 2;
    }
  }
  cm.cov_a(k - 1, k - 1) = 1.0;

  const double off = 1.0 / (k * k) - a / (2.0 * k);
  cm.cov_a_tilde = Matrix::Constant(k, k, off);
  cm.cov_a_tilde.diagonal().array() += a / 2;

  cm.m = transform_matrix(k);
  return cm;
}

double chi_prediction(int k, double p) {
  ModelParams{k, p}.validate();
  if (at_or_below_critical(k, p)) return 2.0;
  return (k - 1) / p - (k - 2);
}

double finite_n_covariance(int k, double p, std::size_t n, DiscrepancyPair a, DiscrepancyPair b) {
  ModelParams{k, p}.validate();
  for (const auto& pr : {a, b})
    if (pr.i == pr.j || pr.i < 1 || pr.j < 1 || pr.i > k || pr.j > k)
      throw ConfigError("pair", "indices must be distinct and in 1.." + std::to_string(k));
  if (!at_or_below_critical(k, p))
    throw RegimeError("only o(n) is known above the critical point p = 1 - 1/k");
  const auto e = [](int idx, DiscrepancyPair pr) { return (idx == pr.i ? 1 : 0) - (idx == pr.j ? 1 : 0); };
  int inner = 0;
  for (int idx = 1; idx <= k; ++idx) inner += e(idx, a) * e(idx, b);
  return alpha(k, p) * static_cast<double>(n) * inner / 2.0;
}

}  // namespace lifo::theory
