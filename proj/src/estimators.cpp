#include "lifo/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lifo/error.hpp"
#include "lifo/excursion.hpp"
#include "lifo/kernels.hpp"
#include "lifo/parallel.hpp"
#include "lifo/rng.hpp"
#include "lifo/stats.hpp"

namespace lifo {

void ExperimentConfig::validate() const {
  params.validate();
  if (n == 0) throw ConfigError("n", "must be at least 1");
  if (trials == 0) throw ConfigError("trials", "must be at least 1");
  if (threads == 0) throw ConfigError("threads", "must be at least 1");
  if (caps.j == 0) throw ConfigError("jcap", "must be at least 1");
  if (caps.excursion == 0) throw ConfigError("excursion-cap", "must be at least 1");
  if (caps.past == 0) throw ConfigError("past-cap", "must be at least 1");
  if (caps.forward == 0) throw ConfigError("forward-cap", "must be at least 1");
}

std::uint64_t ExperimentConfig::trial_seed(std::size_t index) const { return derive_seed(seed, index); }

std::vector<CovarianceRequest> adjacent_requests(int k) {
  std::vector<CovarianceRequest> out;
  for (int i = 1; i < k; ++i)
    for (int j = 1; j < k; ++j) out.push_back({{i, i + 1}, {j, j + 1}});
  return out;
}

namespace {

void check_pair(DiscrepancyPair pr, int k) {
  if (pr.i == pr.j || pr.i < 1 || pr.j < 1 || pr.i > k || pr.j > k)
    throw ConfigError("pair", "indices must be distinct and in 1.." + std::to_string(k));
}

Estimate mean_estimate(const stats::RunningMoments& m, std::size_t attempted) {
  Estimate e;
  e.value = m.mean();
  e.std_error = m.std_error();
  e.trials = m.count();
  e.truncated_mass = attempted == 0 ? 0.0 : static_cast<double>(attempted - m.count()) / static_cast<double>(attempted);
  return e;
}

// Sample covariance from exact integer moments.
double covariance(const kernels::CrossMoments& m, std::size_t count) {
  if (count < 2) return 0.0;
  const long double n = static_cast<long double>(count);
  const long double centred = static_cast<long double>(m.sum_xy) -
                              static_cast<long double>(m.sum_x) * static_cast<long double>(m.sum_y) / n;
  return static_cast<double>(centred / (n - 1));
}

}  // namespace

std::vector<TrialSummary> run_trials(const ExperimentConfig& config) {
  config.validate();
  return run_indexed<TrialSummary>(config.trials, config.threads, [&](std::size_t i) {
    return run_trial(config.params, config.n, config.trial_seed(i), config.past_mode, config.caps.past);
  });
}

std::vector<Estimate> covariance_from_trials(std::span<const TrialSummary> trials, std::size_t n,
                                             std::span<const CovarianceRequest> requests) {
  std::vector<const TrialSummary*> kept;
  for (const auto& t : trials)
    if (!t.truncated) kept.push_back(&t);
  const double truncated =
      trials.empty() ? 0.0 : static_cast<double>(trials.size() - kept.size()) / static_cast<double>(trials.size());
  const auto& kern = kernels::active();
  constexpr std::size_t kBatches = 20;

  std::vector<Estimate> out;
  for (const auto& req : requests) {
    std::vector<std::int32_t> x, y;
    x.reserve(kept.size());
    y.reserve(kept.size());
    for (const TrialSummary* t : kept) {
      const int k = static_cast<int>(t->final_counts.size());
      check_pair(req.a, k);
      check_pair(req.b, k);
      x.push_back(t->final_counts[req.a.i - 1] - t->final_counts[req.a.j - 1]);
      y.push_back(t->final_counts[req.b.i - 1] - t->final_counts[req.b.j - 1]);
    }
    Estimate e;
    e.trials = kept.size();
    e.truncated_mass = truncated;
    e.value = covariance(kern.cross_moments(x, y), x.size()) / static_cast<double>(n);
    if (x.size() >= 2 * kBatches) {
      stats::RunningMoments batches;
      for (std::size_t b = 0; b < kBatches; ++b) {
        const std::size_t lo = b * x.size() / kBatches, hi = (b + 1) * x.size() / kBatches;
        const std::span<const std::int32_t> xs(x.data() + lo, hi - lo), ys(y.data() + lo, hi - lo);
        batches.add(covariance(kern.cross_moments(xs, ys), hi - lo) / static_cast<double>(n));
      }
      e.std_error = batches.std_error();
    }
    out.push_back(e);
  }
  return out;
}

std::vector<Estimate> estimate_cov_d(const ExperimentConfig& config, std::span<const CovarianceRequest> requests) {
  config.validate();
  for (const auto& r : requests) {
    check_pair(r.a, config.params.k);
    check_pair(r.b, config.params.k);
  }
  const auto trials = run_trials(config);
  return covariance_from_trials(trials, config.n, requests);
}

Estimate estimate_chi(const ExperimentConfig& config) {
  config.validate();
  const auto lengths = run_indexed<std::int64_t>(config.trials, config.threads, [&](std::size_t i) -> std::int64_t {
    const JSample s = sample_j(config.params, config.trial_seed(i), config.caps.j);
    return s.truncated ? -1 : static_cast<std::int64_t>(s.length());
  });
  stats::RunningMoments m;
  for (std::int64_t len : lengths)
    if (len >= 0) m.add(static_cast<double>(len));
  return mean_estimate(m, config.trials);
}

Estimate estimate_edd(const ExperimentConfig& config, DiscrepancyPair a, DiscrepancyPair b) {
  config.validate();
  check_pair(a, config.params.k);
  check_pair(b, config.params.k);
  const auto values = run_indexed<std::optional<double>>(config.trials, config.threads, [&](std::size_t i) {
    // One backward stream: X(0), then X(-1), X(-2), ...
    SymbolFeed feed(config.params, derive_seed(config.trial_seed(i), 1));
    const Symbol x0 = feed.next();
    const JSample s = sample_j(feed, config.params.k, config.caps.j);
    if (s.truncated) return std::optional<double>{};
    // The single burger of X(-J, -1) is the top of X(-inf, -1).
    const Symbol y0 = x0.is_flex() ? Symbol::order(s.burger_type) : x0;
    const std::int64_t d_a = Counts::of(std::span<const Symbol>(&y0, 1), config.params.k).discrepancy(a.i, a.j);
    const std::int64_t d_b = Counts::of(s.word).discrepancy(b.i, b.j);
    return std::optional<double>{static_cast<double>(d_a * d_b)};
  });
  stats::RunningMoments m;
  for (const auto& v : values)
    if (v) m.add(*v);
  return mean_estimate(m, config.trials);
}

std::vector<Estimate> estimate_flex_fraction(const ExperimentConfig& config,
                                             std::span<const std::size_t> prefix_sizes) {
  config.validate();
  std::size_t largest = 0;
  for (std::size_t s : prefix_sizes) {
    if (s == 0) throw ConfigError("prefix", "prefix sizes must be positive");
    largest = std::max(largest, s);
  }
  // Per trial: F count in each prefix, or nothing when the step cap hit first.
  using Row = std::optional<std::vector<std::size_t>>;
  const auto rows = run_indexed<Row>(config.trials, config.threads, [&](std::size_t i) -> Row {
    SymbolFeed feed(config.params, derive_seed(config.trial_seed(i), 0));
    ReducedWord window(config.params.k);
    for (std::size_t step = 0; window.order_count() < largest; ++step) {
      if (step == config.caps.forward) return std::nullopt;
      window.apply(feed.next());
    }
    const Word orders = window.orders();
    std::vector<std::size_t> flex(prefix_sizes.size(), 0);
    for (std::size_t q = 0; q < prefix_sizes.size(); ++q)
      for (std::size_t m = 0; m < prefix_sizes[q]; ++m) flex[q] += orders[m].is_flex() ? 1 : 0;
    return flex;
  });
  std::vector<Estimate> out;
  for (std::size_t q = 0; q < prefix_sizes.size(); ++q) {
    stats::RunningMoments m;
    for (const auto& row : rows)
      if (row) m.add(static_cast<double>((*row)[q]) / static_cast<double>(prefix_sizes[q]));
    out.push_back(mean_estimate(m, config.trials));
  }
  return out;
}

std::vector<Estimate> estimate_type_fractions(const ExperimentConfig& config, std::size_t depth) {
  config.validate();
  if (depth == 0) throw ConfigError("depth", "must be at least 1");
  const int k = config.params.k;
  using Row = std::optional<std::vector<std::size_t>>;
  const auto rows = run_indexed<Row>(config.trials, config.threads, [&](std::size_t i) -> Row {
    PastStack past = PastStack::exact_mu(config.params, derive_seed(config.trial_seed(i), 1), config.caps.past);
    try {
      past.reveal_until(depth);
    } catch (const StreamExhausted&) {
      return std::nullopt;
    }
    std::vector<std::size_t> per_type(static_cast<std::size_t>(k), 0);
    for (std::size_t d = 0; d < depth; ++d) ++per_type[past.revealed()[d] - 1];
    return per_type;
  });
  std::vector<Estimate> out;
  for (int t = 0; t < k; ++t) {
    stats::RunningMoments m;
    for (const auto& row : rows)
      if (row) m.add(static_cast<double>((*row)[static_cast<std::size_t>(t)]) / static_cast<double>(depth));
    out.push_back(mean_estimate(m, config.trials));
  }
  return out;
}

FractionReport estimate_fractions(const ExperimentConfig& config, std::span<const std::size_t> prefix_sizes,
                                  std::size_t past_depth) {
  return {estimate_flex_fraction(config, prefix_sizes), estimate_type_fractions(config, past_depth)};
}

GaussianityReport gaussianity_from_trials(std::span<const TrialSummary> trials, std::size_t n) {
  GaussianityReport r;
  const double root_n = std::sqrt(static_cast<double>(n));
  std::size_t kept = 0;
  for (const auto& t : trials) {
    if (t.truncated) continue;
    if (t.final_counts.size() < 2) throw ConfigError("k", "needs at least two types for a discrepancy");
    ++kept;
    std::int64_t c = 0;
    for (std::int32_t v : t.final_counts) c += v;
    r.total_samples.push_back(static_cast<double>(c) / root_n);
    r.discrepancy_samples.push_back(static_cast<double>(t.final_counts[0] - t.final_counts[1]) / root_n);
  }
  if (kept == 0) return r;
  r.ks_total = stats::ks_statistic(r.total_samples, 0.0, 1.0);
  r.ks_discrepancy = stats::ks_normality(r.discrepancy_samples);
  const double rho = stats::pearson(r.total_samples, r.discrepancy_samples);
  r.correlation.value = rho;
  r.correlation.trials = kept;
  r.correlation.std_error = kept > 1 ? (1.0 - rho * rho) / std::sqrt(static_cast<double>(kept - 1)) : 0.0;
  r.correlation.truncated_mass = static_cast<double>(trials.size() - kept) / static_cast<double>(trials.size());
  return r;
}

GaussianityReport estimate_gaussianity(const ExperimentConfig& config) {
  config.validate();
  if (config.params.k < 2) throw ConfigError("k", "needs at least two types for a discrepancy");
  const auto trials = run_trials(config);
  return gaussianity_from_trials(trials, config.n);
}

std::vector<TailPoint> tail_curve(const ExperimentConfig& config, std::span<const double> a_grid) {
  config.validate();
  struct Sample {
    std::int64_t max_total = 0;
    std::size_t length = 0;
  };
  const auto samples = run_indexed<Sample>(config.trials, config.threads, [&](std::size_t i) {
    SymbolFeed feed(config.params, derive_seed(config.trial_seed(i), 0));
    ReducedWord window(config.params.k);
    Sample s;
    std::int64_t total = 0;
    for (std::size_t step = 0; step < config.n; ++step) {
      const Symbol x = feed.next();
      total += x.is_burger() ? 1 : -1;
      s.max_total = std::max(s.max_total, total < 0 ? -total : total);
      window.apply(x);
    }
    s.length = window.size();
    return s;
  });
  const double root_n = std::sqrt(static_cast<double>(config.n));
  const double count = static_cast<double>(samples.size());
  auto proportion = [&](std::size_t hits) {
    Estimate e;
    e.value = static_cast<double>(hits) / count;
    e.std_error = std::sqrt(e.value * (1.0 - e.value) / count);
    e.trials = samples.size();
    return e;
  };
  std::vector<TailPoint> out;
  for (double a : a_grid) {
    if (!(a >= 0.0)) throw ConfigError("a", "tail thresholds must be non-negative");
    const double level = a * root_n;
    std::size_t hit_total = 0, hit_length = 0;
    for (const auto& s : samples) {
      hit_total += static_cast<double>(s.max_total) > level ? 1 : 0;
      hit_length += static_cast<double>(s.length) > level ? 1 : 0;
    }
    out.push_back({a, proportion(hit_total), proportion(hit_length)});
  }
  return out;
}

Estimate estimate_excursion_length(const ExperimentConfig& config) {
  config.validate();
  const auto lengths = run_indexed<std::int64_t>(config.trials, config.threads, [&](std::size_t i) -> std::int64_t {
    const Excursion e = sample_excursion(config.params, config.trial_seed(i), config.caps.excursion);
    return e.truncated ? -1 : static_cast<std::int64_t>(e.word.size());
  });
  stats::RunningMoments m;
  for (std::int64_t len : lengths)
    if (len >= 0) m.add(static_cast<double>(len));
  return mean_estimate(m, config.trials);
}

}  // namespace lifo
