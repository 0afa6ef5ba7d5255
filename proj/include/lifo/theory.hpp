#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace lifo::theory {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// max{2/k - 2p/(k-1), 0}
double alpha(int k, double p);

/// 1 - 1/k
double critical_p(int k);

/// True when p <= 1 - 1/k, up to rounding of the caller's p.
bool at_or_below_critical(int k, double p);

/// Maps (C^1, ..., C^k) to (D^{12}, ..., D^{k-1,k}, C).
IntMatrix transform_matrix(int k);

/// Limiting covariances per unit time of A and Ã.
struct CovarianceModel {
  int k = 2;
  double p = 0.0;
  double alpha = 0.0;
  Matrix cov_a;        ///< (D^{12}, ..., D^{k-1,k}, C)
  Matrix cov_a_tilde;  ///< (C^1, ..., C^k)
  IntMatrix m;
};

CovarianceModel covariance_model(int k, double p);

/// 2 at or below the critical point, (k-1)/p - (k-2) above it.
double chi_prediction(int k, double p);

/// Ordered pair (i, j), i != j, naming D^{ij}.
struct DiscrepancyPair {
  int i = 1;
  int j = 2;
};

/// Leading term of Cov(D^a_n, D^b_n) when chi = 2: (alpha n / 2) <e_i - e_j, e_l - e_m>.
/// Throws RegimeError above the critical point.
double finite_n_covariance(int k, double p, std::size_t n, DiscrepancyPair a, DiscrepancyPair b);

}  // namespace lifo::theory
