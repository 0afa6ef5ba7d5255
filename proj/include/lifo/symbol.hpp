#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lifo {

enum class SymbolKind : std::uint8_t { Burger, TypedOrder, FlexOrder };

/// One letter of the alphabet: B_i, O_i or F. `type` is 1-based and is 0 for F.
struct Symbol {
  SymbolKind kind = SymbolKind::FlexOrder;
  std::uint8_t type = 0;

  static constexpr Symbol burger(int t) { return {SymbolKind::Burger, static_cast<std::uint8_t>(t)}; }
  static constexpr Symbol order(int t) { return {SymbolKind::TypedOrder, static_cast<std::uint8_t>(t)}; }
  static constexpr Symbol flex() { return {SymbolKind::FlexOrder, 0}; }

  constexpr bool is_burger() const { return kind == SymbolKind::Burger; }
  constexpr bool is_order() const { return kind != SymbolKind::Burger; }
  constexpr bool is_flex() const { return kind == SymbolKind::FlexOrder; }

  friend constexpr bool operator==(Symbol, Symbol) = default;
};

using Word = std::vector<Symbol>;

inline constexpr int kMaxTypes = 120;

/// Checks the type-index invariant against k. Throws ConfigError.
void validate(Symbol s, int k);

// Compact codes used by the sampling kernels:
//   burger i -> i-1, typed order i -> k+i-1, F -> 2k.
constexpr std::uint8_t encode(Symbol s, int k) {
  switch (s.kind) {
    case SymbolKind::Burger: return static_cast<std::uint8_t>(s.type - 1);
    case SymbolKind::TypedOrder: return static_cast<std::uint8_t>(k + s.type - 1);
    case SymbolKind::FlexOrder: break;
  }
  return static_cast<std::uint8_t>(2 * k);
}

constexpr Symbol decode(std::uint8_t code, int k) {
  if (code < k) return Symbol::burger(code + 1);
  if (code < 2 * k) return Symbol::order(code - k + 1);
  return Symbol::flex();
}

/// Tokens are B1..Bk, O1..Ok and F.
std::string to_string(Symbol s);
Symbol parse_symbol(std::string_view token, int k);

/// Whitespace-separated tokens; "" and "-" both denote the empty word.
Word parse_word(std::string_view text, int k);
std::string format_word(std::span<const Symbol> word);

/// The 2k+1 letters in code order.
std::vector<Symbol> alphabet(int k);

}  // namespace lifo
