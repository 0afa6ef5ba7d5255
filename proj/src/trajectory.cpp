#include "lifo/trajectory.hpp"

#include <cstdlib>

#include "lifo/error.hpp"
#include "lifo/rng.hpp"

namespace lifo {

ForwardRunner::ForwardRunner(int k, PastStack& past)
    : k_(k), past_(&past), window_(k), counts_(static_cast<std::size_t>(k), 0) {}

ForwardRunner::Step ForwardRunner::step(Symbol x) {
  Step out{x};
  const int consumed = window_.apply(x);
  if (x.is_burger()) {
    ++counts_[x.type - 1];
    ++total_;
    ++steps_;
    return out;
  }
  int type = consumed;
  if (type == 0) {
    type = x.is_flex() ? past_->pop_top() : past_->pop_type(x.type);
    out.from_past = true;
    out.past_depth = past_->last_depth();
  }
  out.y = Symbol::order(type);
  --counts_[type - 1];
  --total_;
  ++steps_;
  return out;
}

std::int64_t Trajectory::total(std::size_t step) const {
  std::int64_t sum = 0;
  for (int t = 1; t <= params.k; ++t) sum += count(step, t);
  return sum;
}

std::vector<std::int64_t> Trajectory::a_tilde(std::size_t step) const {
  std::vector<std::int64_t> out;
  for (int t = 1; t <= params.k; ++t) out.push_back(count(step, t));
  return out;
}

std::vector<std::int64_t> Trajectory::a(std::size_t step) const {
  std::vector<std::int64_t> out;
  for (int t = 1; t < params.k; ++t) out.push_back(discrepancy(step, t, t + 1));
  out.push_back(total(step));
  return out;
}

namespace {

Trajectory run_recorded(const ModelParams& params, std::size_t n, SymbolFeed& feed, PastStack& past) {
  const auto k = static_cast<std::size_t>(params.k);
  Trajectory tr;
  tr.params = params;
  tr.past_mode = past.mode();
  tr.y.reserve(n);
  tr.cumulative.assign(k, 0);
  tr.cumulative.reserve((n + 1) * k);
  ForwardRunner runner(params.k, past);
  for (std::size_t m = 1; m <= n; ++m) {
    ForwardRunner::Step st;
    try {
      const Symbol x = feed.next();
      st = runner.step(x);
      if (x.is_flex()) tr.flex_events.push_back({m, st.y.type, st.from_past, st.past_depth});
    } catch (const StreamExhausted&) {
      tr.truncated = true;
      break;
    }
    tr.y.push_back(st.y);
    for (std::int64_t c : runner.counts()) tr.cumulative.push_back(static_cast<std::int32_t>(c));
    tr.n = m;
  }
  return tr;
}

}  // namespace

Trajectory simulate_trajectory(const ModelParams& params, std::size_t n, std::uint64_t seed, PastMode mode,
                               std::uint64_t past_cap) {
  params.validate();
  if (n == 0) throw ConfigError("n", "must be at least 1");
  SymbolFeed feed(params, derive_seed(seed, 0));
  PastStack past = mode == PastMode::Rotating ? PastStack::rotating(params.k)
                                              : PastStack::exact_mu(params, derive_seed(seed, 1), past_cap);
  Trajectory tr = run_recorded(params, n, feed, past);
  tr.seed = seed;
  return tr;
}

Trajectory simulate_injected(const ModelParams& params, std::span<const Symbol> forward, PastStack past) {
  params.validate();
  SymbolFeed feed(params.k, Word(forward.begin(), forward.end()));
  Trajectory tr = run_recorded(params, forward.size(), feed, past);
  // An injected stream that ran to its end is not a truncation.
  tr.truncated = tr.n < forward.size();
  return tr;
}

TrialSummary run_trial(const ModelParams& params, std::size_t n, std::uint64_t seed, PastMode mode,
                       std::uint64_t past_cap) {
  SymbolFeed feed(params, derive_seed(seed, 0));
  PastStack past = mode == PastMode::Rotating ? PastStack::rotating(params.k)
                                              : PastStack::exact_mu(params, derive_seed(seed, 1), past_cap);
  ForwardRunner runner(params.k, past);
  TrialSummary out;
  try {
    for (std::size_t m = 0; m < n; ++m) {
      runner.step(feed.next());
      const std::int64_t c = std::llabs(runner.total());
      if (c > out.max_abs_total) out.max_abs_total = c;
    }
  } catch (const StreamExhausted&) {
    out.truncated = true;
  }
  for (std::int64_t c : runner.counts()) out.final_counts.push_back(static_cast<std::int32_t>(c));
  out.window_length = runner.window().size();
  out.past_draws = past.extension_draws();
  return out;
}

}  // namespace lifo
