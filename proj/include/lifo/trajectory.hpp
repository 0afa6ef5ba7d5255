#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lifo/model.hpp"
#include "lifo/past_stack.hpp"
#include "lifo/reduced_word.hpp"

namespace lifo {

/// Forward dynamics X(1), X(2), ... on top of a past stack. Keeps the reduced
/// window X(1, m) and the running counts C^i_m of the Y-sequence.
class ForwardRunner {
 public:
  struct Step {
    Symbol y;
    bool from_past = false;
    std::size_t past_depth = 0;  ///< original depth in X(-inf, 0) when from_past
  };

  ForwardRunner(int k, PastStack& past);

  Step step(Symbol x);

  const ReducedWord& window() const noexcept { return window_; }
  std::span<const std::int64_t> counts() const noexcept { return counts_; }
  std::int64_t total() const noexcept { return total_; }
  std::size_t steps() const noexcept { return steps_; }

 private:
  int k_;
  PastStack* past_;
  ReducedWord window_;
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
  std::size_t steps_ = 0;
};

struct FlexEvent {
  std::size_t step = 0;   ///< 1-based time
  int type = 0;           ///< type of the consumed burger
  bool from_past = false;
  std::size_t past_depth = 0;
};

/// Per-step record of one run. Cumulative counts are stored as an
/// (n+1) x k row-major table with row 0 all zero; A and Ã are views.
struct Trajectory {
  ModelParams params;
  std::uint64_t seed = 0;
  PastMode past_mode = PastMode::ExactMu;
  std::size_t n = 0;  ///< steps actually simulated
  bool truncated = false;
  Word y;
  std::vector<std::int32_t> cumulative;
  std::vector<FlexEvent> flex_events;

  std::int64_t count(std::size_t step, int type) const {
    return cumulative[step * static_cast<std::size_t>(params.k) + static_cast<std::size_t>(type - 1)];
  }
  std::int64_t total(std::size_t step) const;
  std::int64_t discrepancy(std::size_t step, int i, int j) const { return count(step, i) - count(step, j); }
  /// (C^1, ..., C^k) at `step`.
  std::vector<std::int64_t> a_tilde(std::size_t step) const;
  /// (D^{12}, ..., D^{k-1,k}, C) at `step`.
  std::vector<std::int64_t> a(std::size_t step) const;
};

/// Forward stream key derive_seed(seed, 0), past stream key derive_seed(seed, 1).
Trajectory simulate_trajectory(const ModelParams& params, std::size_t n, std::uint64_t seed, PastMode mode,
                               std::uint64_t past_cap = PastStack::kUnbounded);

/// Runs an explicit forward stream against a caller-provided past.
Trajectory simulate_injected(const ModelParams& params, std::span<const Symbol> forward, PastStack past);

/// What the estimators need from one trial, without per-step storage.
struct TrialSummary {
  std::vector<std::int32_t> final_counts;  ///< C^i_n
  std::int64_t max_abs_total = 0;          ///< max_{l <= n} |C_l|
  std::size_t window_length = 0;           ///< |X(1, n)|
  std::uint64_t past_draws = 0;
  bool truncated = false;
};

TrialSummary run_trial(const ModelParams& params, std::size_t n, std::uint64_t seed, PastMode mode,
                       std::uint64_t past_cap = PastStack::kUnbounded);

}  // namespace lifo
