#include "lifo/symbol.hpp"

#include <charconv>
#include <sstream>

#include "lifo/error.hpp"

namespace lifo {

void validate(Symbol s, int k) {
  if (s.kind == SymbolKind::FlexOrder) {
    if (s.type != 0) throw ConfigError("symbol", "F carries no type index");
    return;
  }
  if (s.type < 1 || s.type > k)
    throw ConfigError("symbol", "type index " + std::to_string(s.type) + " outside 1.." + std::to_string(k));
}

std::string to_string(Symbol s) {
  switch (s.kind) {
    case SymbolKind::Burger: return "B" + std::to_string(s.type);
    case SymbolKind::TypedOrder: return "O" + std::to_string(s.type);
    case SymbolKind::FlexOrder: break;
  }
  return "F";
}

Symbol parse_symbol(std::string_view token, int k) {
  if (token == "F") return Symbol::flex();
  if (token.size() >= 2 && (token[0] == 'B' || token[0] == 'O')) {
    int t = 0;
    auto [ptr, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), t);
    if (ec == std::errc{} && ptr == token.data() + token.size() && t >= 1 && t <= k)
      return token[0] == 'B' ? Symbol::burger(t) : Symbol::order(t);
  }
  throw ParseError("bad symbol token '" + std::string(token) + "' for k=" + std::to_string(k));
}

Word parse_word(std::string_view text, int k) {
  Word out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "-") continue;
    out.push_back(parse_symbol(tok, k));
  }
  return out;
}

std::string format_word(std::span<const Symbol> word) {
  std::string out;
  for (Symbol s : word) {
    if (!out.empty()) out += ' ';
    out += to_string(s);
  }
  return out.empty() ? "-" : out;
}

std::vector<Symbol> alphabet(int k) {
  std::vector<Symbol> out;
  for (int c = 0; c <= 2 * k; ++c) out.push_back(decode(static_cast<std::uint8_t>(c), k));
  return out;
}

}  // namespace lifo
