#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lifo/rng.hpp"

namespace lifo::stats {

double normal_cdf(double x);

/// sup_x |F_n(x) - Phi((x - mean) / sd)|. With sd == 0 every sample maps to 0.
double ks_statistic(std::span<const double> samples, double mean, double sd);

/// KS distance after standardizing by the sample mean and standard deviation.
double ks_normality(std::span<const double> samples);

/// Asymptotic KS critical value c(alpha) / sqrt(n); c = 1.36 at 5%, 1.63 at 1%.
double ks_critical(std::size_t n, double c = 1.36);

double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson's chi-square statistic for observed counts against probabilities.
/// Categories with zero expected count must have zero observations and are skipped.
double chi_square(std::span<const std::uint64_t> observed, std::span<const double> probabilities);
/// Upper quantile of the chi-square distribution.
double chi_square_critical(double dof, double significance);

/// Box-Muller on top of a CounterRng; reproducible across platforms.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t key) : rng_(key) {}
  double operator()();

 private:
  CounterRng rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Count, mean and centred second moment; mergeable (Chan et al.).
class RunningMoments {
 public:
  void add(double x);
  void merge(const RunningMoments& other);

  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 with fewer than two samples.
  double variance() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace lifo::stats
