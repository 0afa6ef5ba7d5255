#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "lifo/symbol.hpp"

namespace lifo {

/// What happened to the last appended symbol.
struct ConsumptionEvent {
  enum class Outcome : std::uint8_t { Pushed, Consumed, Unmatched };
  Outcome outcome = Outcome::Pushed;
  int type = 0;            ///< type of the consumed burger
  std::size_t depth = 0;   ///< 1 = top of the burger segment before consumption

  friend bool operator==(const ConsumptionEvent&, const ConsumptionEvent&) = default;
};

/// Normal form of a finite word: an order segment followed by a burger segment.
///
/// Every element carries a sequence number; appends use increasing numbers and
/// prepends decreasing ones, so "topmost burger of type i" is the back of a
/// per-type deque and "leftmost O_i" is the front of another. The top of the
/// whole burger segment is the maximum over k deque backs.
class ReducedWord {
 public:
  explicit ReducedWord(int k);

  /// Reduces an arbitrary word by folding `append`.
  static ReducedWord from_word(int k, std::span<const Symbol> word);

  int k() const noexcept { return k_; }

  ConsumptionEvent append(Symbol s);
  /// Same as `append` without the depth computation. Returns the consumed
  /// burger type, or 0 when nothing was consumed.
  int apply(Symbol s);
  /// Left-multiplies by `s`. Returns the cancelled order's symbol kind, if any.
  std::optional<Symbol> prepend(Symbol s);

  std::size_t size() const noexcept { return order_count() + burger_count(); }
  bool empty() const noexcept { return size() == 0; }
  std::size_t burger_count() const noexcept { return burger_total_; }
  std::size_t order_count() const noexcept { return order_total_; }
  std::size_t burger_count(int type) const { return burgers_[type - 1].size(); }
  std::size_t order_count(int type) const { return orders_[type - 1].size(); }
  std::size_t flex_count() const noexcept { return flex_.size(); }

  /// Type of the topmost burger, or 0 if the burger segment is empty.
  int top_burger_type() const;
  /// Type of the bottom burger, or 0 if the burger segment is empty.
  int bottom_burger_type() const;

  /// Order segment left to right.
  Word orders() const;
  /// Burger segment bottom to top.
  Word burgers() const;
  /// orders() followed by burgers().
  Word flatten() const;

  /// Leftmost `n` elements of the flattened word.
  Word prefix(std::size_t n) const;

  /// Rebuilds the segments from the index and checks ordering. For tests.
  bool check_invariants() const;

  friend bool operator==(const ReducedWord& a, const ReducedWord& b);

 private:
  using Seqs = std::deque<std::int64_t>;

  void push_order(Symbol s);
  Word merge_segment(std::span<const Seqs> lanes, std::span<const Symbol> tag) const;

  int k_;
  std::int64_t next_hi_ = 0;
  std::int64_t next_lo_ = -1;
  std::vector<Seqs> burgers_;  // per type, ascending (bottom .. top)
  std::vector<Seqs> orders_;   // per type, ascending (left .. right)
  Seqs flex_;
  std::size_t burger_total_ = 0;
  std::size_t order_total_ = 0;
};

/// Concatenation in the semigroup: reduce(flatten(a) . flatten(b)).
ReducedWord concat(const ReducedWord& a, const ReducedWord& b);

/// Naive rewriting fixpoint, the test oracle for everything above.
/// Rules: B_i O_i -> (), B_i F -> (), B_i O_j -> O_j B_i for i != j.
Word reduce_naive(std::span<const Symbol> word);

/// Net counts C^i, their sum C and discrepancies D^{ij}.
class Counts {
 public:
  Counts() = default;
  explicit Counts(int k) : per_type_(static_cast<std::size_t>(k), 0) {}

  static Counts of(const ReducedWord& w);
  /// Counts over an unreduced sequence (typically a Y-sequence).
  static Counts of(std::span<const Symbol> seq, int k);

  int k() const noexcept { return static_cast<int>(per_type_.size()); }
  std::int64_t count(int type) const { return per_type_[type - 1]; }
  std::int64_t total() const;
  bool has_flex() const noexcept { return has_flex_; }
  /// Throws DiscrepancyUndefined when the counted word contains F.
  std::int64_t discrepancy(int i, int j) const;

  void add(Symbol s);

 private:
  std::vector<std::int64_t> per_type_;
  bool has_flex_ = false;
};

/// Pairing of productions and consumptions inside a window, 0-based offsets.
class MatchMap {
 public:
  static constexpr std::int64_t kUnmatchedBurger = std::numeric_limits<std::int64_t>::max();
  static constexpr std::int64_t kUnmatchedOrder = std::numeric_limits<std::int64_t>::min();

  explicit MatchMap(std::vector<std::int64_t> partner) : partner_(std::move(partner)) {}

  std::size_t size() const noexcept { return partner_.size(); }
  std::int64_t operator[](std::size_t m) const { return partner_[m]; }
  bool matched(std::size_t m) const {
    return partner_[m] != kUnmatchedBurger && partner_[m] != kUnmatchedOrder;
  }

 private:
  std::vector<std::int64_t> partner_;
};

MatchMap match_phi(std::span<const Symbol> window, int k);

class PastStack;

/// Replaces every F with the typed order of the burger it consumes. Orders
/// that find nothing inside the window are served by `past`, in time order,
/// so an unmatched O_i also changes what a later F sees. `past` may be null
/// unless some F is unmatched; then StreamExhausted is thrown.
Word resolve_y(std::span<const Symbol> window, int k, PastStack* past);

}  // namespace lifo
