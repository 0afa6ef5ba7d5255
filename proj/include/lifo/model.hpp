#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lifo/rng.hpp"
#include "lifo/symbol.hpp"

namespace lifo {

/// (k, p): each burger has probability 1/(2k), each typed order (1-p)/(2k)
/// and F has p/2.
struct ModelParams {
  int k = 2;
  double p = 0.0;

  /// Throws ConfigError naming "k" or "p".
  void validate() const;
  double probability(Symbol s) const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Integer thresholds turning one 64-bit draw into a symbol code.
/// The high 32 bits pick the kind, the low 32 bits pick the type.
struct SymbolThresholds {
  std::uint64_t burger_limit = 0;  // high word below this: burger
  std::uint64_t flex_limit = 0;    // else below this: F, otherwise typed order
  std::uint32_t k = 0;

  static SymbolThresholds from(const ModelParams& params);
};

constexpr std::uint8_t classify(const SymbolThresholds& th, std::uint64_t draw) {
  const std::uint64_t kind = draw >> 32;
  const auto type = static_cast<std::uint8_t>(((draw & 0xFFFFFFFFULL) * th.k) >> 32);
  if (kind < th.burger_limit) return type;
  if (kind < th.flex_limit) return static_cast<std::uint8_t>(2 * th.k);
  return static_cast<std::uint8_t>(th.k + type);
}

/// Exactly one generator draw per symbol.
Symbol sample_symbol(const ModelParams& params, CounterRng& rng);

/// Source of i.i.d. symbols: either a block-buffered generator stream or a
/// fixed injected sequence (tests, fixtures). An exhausted injected stream
/// throws StreamExhausted.
class SymbolFeed {
 public:
  SymbolFeed(const ModelParams& params, std::uint64_t key);
  SymbolFeed(int k, Word injected);

  Symbol next() {
    if (injected_) return next_injected();
    if (pos_ == buffer_.size()) refill();
    ++drawn_;
    return decode(buffer_[pos_++], k_);
  }

  std::uint64_t drawn() const noexcept { return drawn_; }

 private:
  static constexpr std::size_t kBlock = 512;

  Symbol next_injected();
  void refill();

  int k_;
  SymbolThresholds thresholds_{};
  CounterRng rng_{0};
  std::array<std::uint8_t, kBlock> buffer_{};
  std::size_t pos_ = kBlock;
  std::uint64_t drawn_ = 0;
  std::optional<Word> injected_;
};

}  // namespace lifo
