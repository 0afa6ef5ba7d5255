#include "doctest.h"
#include "lifo/error.hpp"
#include "lifo/symbol.hpp"

using namespace lifo;

TEST_CASE("symbol text round trip") {
  for (int k : {1, 2, 3, 7})
    for (Symbol s : alphabet(k)) {
      CHECK(parse_symbol(to_string(s), k) == s);
      CHECK(decode(encode(s, k), k) == s);
    }
  CHECK(to_string(Symbol::burger(3)) == "B3");
  CHECK(to_string(Symbol::order(2)) == "O2");
  CHECK(to_string(Symbol::flex()) == "F");
}

TEST_CASE("alphabet has 2k + 1 letters") {
  for (int k = 1; k <= 5; ++k) CHECK(alphabet(k).size() == static_cast<std::size_t>(2 * k + 1));
}

TEST_CASE("type index must lie in 1..k") {
  CHECK_THROWS_AS(parse_symbol("B4", 3), ParseError);
  CHECK_THROWS_AS(parse_symbol("O0", 3), ParseError);
  CHECK_THROWS_AS(parse_symbol("X1", 3), ParseError);
  CHECK_THROWS_AS(parse_symbol("F1", 3), ParseError);
  CHECK_NOTHROW(validate(Symbol::flex(), 1));
}

TEST_CASE("word parsing") {
  const Word w = parse_word("  B2 B3\tO3 B1\nO2 F ", 3);
  REQUIRE(w.size() == 6);
  CHECK(format_word(w) == "B2 B3 O3 B1 O2 F");
  CHECK(parse_word("", 2).empty());
  CHECK(parse_word("-", 2).empty());
  CHECK(format_word({}) == "-");
}
