#include "lifo/past_stack.hpp"

#include <string>

#include "lifo/error.hpp"

namespace lifo {

const char* to_string(PastMode mode) { return mode == PastMode::ExactMu ? "exact" : "rotating"; }

PastMode parse_past_mode(std::string_view text) {
  if (text == "exact" || text == "exact-mu" || text == "mu") return PastMode::ExactMu;
  if (text == "rotating") return PastMode::Rotating;
  throw ConfigError("past", "expected 'exact' or 'rotating', got '" + std::string(text) + "'");
}

PastStack::PastStack(PastMode mode, int k)
    : mode_(mode), k_(k), live_by_type_(static_cast<std::size_t>(k)), debt_(static_cast<std::size_t>(k), 0) {
  if (k < 1 || k > kMaxTypes) throw ConfigError("k", "out of range");
}

PastStack PastStack::rotating(int k) { return PastStack(PastMode::Rotating, k); }

PastStack PastStack::exact_mu(const ModelParams& params, std::uint64_t key, std::uint64_t extension_cap) {
  PastStack s(PastMode::ExactMu, params.k);
  s.feed_.emplace(params, key);
  s.pending_typed_.resize(static_cast<std::size_t>(params.k));
  s.cap_ = extension_cap;
  return s;
}

PastStack PastStack::exact_mu_injected(int k, Word backward) {
  PastStack s(PastMode::ExactMu, k);
  s.feed_.emplace(k, std::move(backward));
  s.pending_typed_.resize(static_cast<std::size_t>(k));
  return s;
}

void PastStack::extend_exact() {
  while (true) {
    if (draws_ >= cap_) throw StreamExhausted("past stack extension cap reached");
    const Symbol s = feed_->next();
    const std::uint64_t time = ++draws_;
    if (s.is_flex()) {
      pending_flex_.push_back(time);
      ++pending_total_;
      continue;
    }
    if (!s.is_burger()) {
      pending_typed_[s.type - 1].push_back(time);
      ++pending_total_;
      continue;
    }
    // A burger cancels the leftmost pending O_i or F, i.e. the most recent one.
    auto& typed = pending_typed_[s.type - 1];
    const bool typed_ok = !typed.empty();
    const bool flex_ok = !pending_flex_.empty();
    if (typed_ok || flex_ok) {
      if (typed_ok && (!flex_ok || typed.back() > pending_flex_.back()))
        typed.pop_back();
      else
        pending_flex_.pop_back();
      --pending_total_;
      continue;
    }
    revealed_.push_back(s.type);
    live_by_type_[s.type - 1].push_back(revealed_.size());
    ++live_;
    return;
  }
}

void PastStack::reveal_one() {
  if (mode_ == PastMode::Rotating) {
    const std::size_t depth = revealed_.size() + 1;
    const auto type = static_cast<std::uint8_t>((depth - 1) % static_cast<std::size_t>(k_) + 1);
    revealed_.push_back(type);
    live_by_type_[type - 1].push_back(depth);
    ++live_;
    return;
  }
  extend_exact();
}

void PastStack::reveal_until(std::size_t count) {
  while (revealed_.size() < count) reveal_one();
}

int PastStack::take(int type) {
  auto& lane = live_by_type_[type - 1];
  last_depth_ = lane.front();
  lane.pop_front();
  --live_;
  return type;
}

void PastStack::settle() {
  if (debt_total_ == 0) return;
  for (int t = 0; t < k_; ++t) {
    auto& lane = live_by_type_[t];
    while (debt_[t] > 0 && !lane.empty()) {
      lane.pop_front();
      --live_;
      --debt_[t];
      --debt_total_;
    }
  }
}

int PastStack::pop_top() {
  settle();
  while (true) {
    int best = 0;
    for (int t = 0; t < k_; ++t) {
      const auto& lane = live_by_type_[t];
      if (!lane.empty() && (best == 0 || lane.front() < live_by_type_[best - 1].front())) best = t + 1;
    }
    if (best != 0) return take(best);
    reveal_one();
    settle();
  }
}

int PastStack::pop_type(int type) {
  validate(Symbol::burger(type), k_);
  auto& lane = live_by_type_[type - 1];
  if (debt_[type - 1] == 0 && !lane.empty()) return take(type);
  ++debt_[type - 1];
  ++debt_total_;
  last_depth_ = 0;
  return type;
}

int PastStack::peek(std::size_t depth) {
  if (depth == 0) throw ConfigError("depth", "is 1-based");
  settle();
  while (live_ < depth || debt_total_ > 0) {
    reveal_one();
    settle();
  }
  // Live burgers ordered by original depth; merge the k lanes.
  std::vector<std::size_t> cursor(static_cast<std::size_t>(k_), 0);
  for (std::size_t seen = 1;; ++seen) {
    int best = 0;
    for (int t = 0; t < k_; ++t) {
      const auto& lane = live_by_type_[t];
      if (cursor[t] < lane.size() &&
          (best == 0 || lane[cursor[t]] < live_by_type_[best - 1][cursor[best - 1]]))
        best = t + 1;
    }
    if (seen == depth) return best;
    ++cursor[best - 1];
  }
}

}  // namespace lifo
