#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lifo/model.hpp"
#include "lifo/past_stack.hpp"
#include "lifo/theory.hpp"
#include "lifo/trajectory.hpp"

namespace lifo {

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;       ///< samples that entered `value`
  double truncated_mass = 0.0;  ///< fraction of samples dropped at a cap
};

/// Step caps for every sampler that can run unbounded.
struct Caps {
  std::size_t j = 1'000'000;                   ///< backward steps when sampling J
  std::size_t excursion = 100'000'000;         ///< forward steps per excursion
  std::uint64_t past = 10'000'000'000ULL;      ///< backward draws per ExactMu past stack
  std::size_t forward = 1'000'000'000;         ///< forward steps when growing X(1, m)
};

struct ExperimentConfig {
  ModelParams params;
  std::size_t n = 1000;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  PastMode past_mode = PastMode::ExactMu;
  Caps caps;
  unsigned threads = 1;

  /// Throws ConfigError naming the field.
  void validate() const;
  /// Seed of trial `index`: derive_seed(seed, index).
  std::uint64_t trial_seed(std::size_t index) const;
};

using theory::DiscrepancyPair;

struct CovarianceRequest {
  DiscrepancyPair a;
  DiscrepancyPair b;
};

/// Requests for the full (k-1) x (k-1) matrix of adjacent discrepancies, row-major.
std::vector<CovarianceRequest> adjacent_requests(int k);

std::vector<TrialSummary> run_trials(const ExperimentConfig& config);

/// Cov(D^a_n, D^b_n) / n across trials. Error bars come from 20 contiguous
/// batches of trials. Truncated trials are excluded and counted.
std::vector<Estimate> covariance_from_trials(std::span<const TrialSummary> trials, std::size_t n,
                                             std::span<const CovarianceRequest> requests);
std::vector<Estimate> estimate_cov_d(const ExperimentConfig& config, std::span<const CovarianceRequest> requests);

/// Mean of |X(-J, -1)| over `trials` samples capped at caps.j.
Estimate estimate_chi(const ExperimentConfig& config);

/// E[D^a(0) D^b(-J, -1)]. Each sample draws X(0), X(-1), ... from one stream;
/// an F at time 0 resolves to O_t where B_t is the single burger of X(-J, -1).
Estimate estimate_edd(const ExperimentConfig& config, DiscrepancyPair a, DiscrepancyPair b);

/// Fraction of F among the leftmost `size` elements of X(1, infinity), one
/// estimate per prefix size. X(1, m) is grown until its order segment holds
/// the largest prefix (orders already there are permanent).
std::vector<Estimate> estimate_flex_fraction(const ExperimentConfig& config, std::span<const std::size_t> prefix_sizes);

/// Fraction of each burger type among the top `depth` burgers of an ExactMu
/// past stack; element t-1 is type t.
std::vector<Estimate> estimate_type_fractions(const ExperimentConfig& config, std::size_t depth);

struct FractionReport {
  std::vector<Estimate> flex;   ///< per prefix size
  std::vector<Estimate> types;  ///< per type
};
FractionReport estimate_fractions(const ExperimentConfig& config, std::span<const std::size_t> prefix_sizes,
                                  std::size_t past_depth);

struct GaussianityReport {
  double ks_total = 0.0;        ///< C_n / sqrt(n) against N(0, 1)
  double ks_discrepancy = 0.0;  ///< standardized D^{12}_n against N(0, 1)
  Estimate correlation;         ///< corr(C_n, D^{12}_n)
  std::vector<double> total_samples;
  std::vector<double> discrepancy_samples;
};
GaussianityReport gaussianity_from_trials(std::span<const TrialSummary> trials, std::size_t n);
GaussianityReport estimate_gaussianity(const ExperimentConfig& config);

struct TailPoint {
  double a = 0.0;
  Estimate max_total;      ///< P(max_{l <= n} |C_l| > a sqrt(n))
  Estimate window_length;  ///< P(|X(1, n)| > a sqrt(n))
};
/// Neither quantity depends on the past, so no past stack is simulated.
std::vector<TailPoint> tail_curve(const ExperimentConfig& config, std::span<const double> a_grid);

/// Mean excursion length |E| over `trials` excursions capped at caps.excursion.
Estimate estimate_excursion_length(const ExperimentConfig& config);

}  // namespace lifo
