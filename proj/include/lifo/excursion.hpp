#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lifo/model.hpp"
#include "lifo/reduced_word.hpp"

namespace lifo {

/// E = X(1, K) where K + 1 is the first time the total count goes negative.
struct Excursion {
  ReducedWord word;
  std::size_t steps = 0;  ///< K
  bool truncated = false; ///< step cap reached before C went negative
};

Excursion sample_excursion(SymbolFeed& forward, int k, std::size_t step_cap);
Excursion sample_excursion(const ModelParams& params, std::uint64_t seed, std::size_t step_cap);

/// X(-J, -1) built right to left until it holds exactly one burger.
struct JSample {
  ReducedWord word;
  std::size_t j = 0;
  int burger_type = 0;
  bool truncated = false;  ///< j_cap reached; `word` is X(-j_cap, -1)

  std::size_t length() const { return word.size(); }
};

/// `backward` yields X(-1), X(-2), ...
JSample sample_j(SymbolFeed& backward, int k, std::size_t j_cap);
JSample sample_j(const ModelParams& params, std::uint64_t seed, std::size_t j_cap);

/// Record sequences of the excursion analysis, all as increasing index lists.
struct RecordSequences {
  std::vector<std::size_t> empty_order;   ///< O_m: j >= 0 with X(-j, 0) order-free
  std::vector<std::size_t> empty_burger;  ///< B_m: j >= 1 with X(1, j) burger-free
  std::vector<std::size_t> left_min;      ///< L_m: first j >= 0 with C(-j, 0) = m
  std::vector<std::size_t> right_min;     ///< R_m: first j >= 1 with C(1, j) = -m
  /// left_filtered[i-1] = L^i: the L's where X(-j, 0) has no O_1..O_i
  /// (for i = k also no F).
  std::vector<std::vector<std::size_t>> left_filtered;
  /// right_filtered[i-1] = R^i: the R's where X(1, j) has no B_1..B_i.
  std::vector<std::vector<std::size_t>> right_filtered;
};

/// `forward` is X(1), X(2), ...; `backward` is X(0), X(-1), .... Scans
/// j up to `horizon` on each side; throws ConfigError if a stream is shorter.
RecordSequences record_sequences(std::span<const Symbol> forward, std::span<const Symbol> backward, int k,
                                 std::size_t horizon);

}  // namespace lifo
