#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "lifo/model.hpp"
#include "lifo/symbol.hpp"

namespace lifo {

enum class PastMode { ExactMu, Rotating };

const char* to_string(PastMode mode);
PastMode parse_past_mode(std::string_view text);

/// The semi-infinite burger stack X(-inf, 0), revealed lazily from the top.
///
/// Rotating: the burger at original depth j has type ((j-1) mod k) + 1.
/// ExactMu: X(0), X(-1), ... are drawn one at a time and left-multiplied onto
/// the pending order segment; a burger that finds no O_i or F to cancel is
/// revealed as the new bottom of the known stack.
///
/// Revealed burgers are recorded in an append-only log indexed by original
/// depth; consumption only removes them from the live stack.
///
/// pop_type does not search: it records a per-type debt that absorbs the
/// shallowest live (or next revealed) burger of that type. Debts are settled
/// before anything reads the top, which yields the same stack as eager
/// removal while revealing only what an F actually needs.
class PastStack {
 public:
  static constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

  static PastStack rotating(int k);
  /// `extension_cap` bounds the number of backward draws; exceeding it throws
  /// StreamExhausted.
  static PastStack exact_mu(const ModelParams& params, std::uint64_t key, std::uint64_t extension_cap = kUnbounded);
  /// ExactMu driven by an explicit backward stream X(0), X(-1), ...
  static PastStack exact_mu_injected(int k, Word backward);

  PastMode mode() const noexcept { return mode_; }
  int k() const noexcept { return k_; }

  /// Removes and returns the type of the current top burger.
  int pop_top();
  /// Removes the topmost burger of `type`; burgers above it keep their order.
  /// Returns `type`. last_depth() is 0 afterwards since the burger is
  /// located lazily.
  int pop_type(int type);
  /// Type of the live burger at `depth` (1 = top), extending as needed.
  int peek(std::size_t depth);

  /// Original depth (1-based) of the most recently popped burger.
  std::size_t last_depth() const noexcept { return last_depth_; }
  /// Types of every burger revealed so far, top-down by original depth.
  const std::vector<std::uint8_t>& revealed() const noexcept { return revealed_; }
  /// Revealed burgers not yet consumed, before settling typed debts.
  std::size_t live_count() const noexcept { return live_; }
  std::size_t outstanding_debt() const noexcept { return debt_total_; }
  std::uint64_t extension_draws() const noexcept { return draws_; }
  std::size_t pending_orders() const noexcept { return pending_total_; }

  /// Reveals burgers until at least `count` have been revealed in total.
  void reveal_until(std::size_t count);

 private:
  PastStack(PastMode mode, int k);

  void reveal_one();
  void extend_exact();
  void settle();
  int take(int type);

  PastMode mode_;
  int k_;
  std::vector<std::deque<std::size_t>> live_by_type_;  // original depths, front = shallowest
  std::vector<std::uint8_t> revealed_;
  std::size_t live_ = 0;
  std::size_t last_depth_ = 0;
  std::vector<std::size_t> debt_;
  std::size_t debt_total_ = 0;

  // ExactMu state: pending orders of X(-j, 0), stored as the backward time of
  // each order. The leftmost order of each kind is the back of its vector.
  std::optional<SymbolFeed> feed_;
  std::vector<std::vector<std::uint64_t>> pending_typed_;
  std::vector<std::uint64_t> pending_flex_;
  std::size_t pending_total_ = 0;
  std::uint64_t draws_ = 0;
  std::uint64_t cap_ = kUnbounded;
};

}  // namespace lifo
