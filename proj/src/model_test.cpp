#include <array>

#include "doctest.h"
#include "lifo/error.hpp"
#include "lifo/model.hpp"
#include "lifo/stats.hpp"

using namespace lifo;

TEST_CASE("splitmix64 reference outputs") {
  // Reference splitmix64 in Python: state += golden; output mix(state).
  CounterRng zero(0);
  CHECK(zero.next() == 0xe220a8397b1dcdafULL);
  CHECK(zero.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(CounterRng(12345).next() == 0x22118258a9d111a0ULL);
}

TEST_CASE("counter rng skip matches sequential draws") {
  CounterRng a(99), b(99);
  for (int i = 0; i < 10; ++i) a.next();
  b.skip(10);
  CHECK(a.next() == b.next());
}

TEST_CASE("derived seeds differ per index and per master") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("model parameters") {
  CHECK_THROWS_AS((ModelParams{1, 0.5}.validate()), ConfigError);
  CHECK_THROWS_AS((ModelParams{3, -0.1}.validate()), ConfigError);
  CHECK_THROWS_AS((ModelParams{3, 1.5}.validate()), ConfigError);
  try {
    ModelParams{3, 1.5}.validate();
  } catch (const ConfigError& e) {
    CHECK(e.field() == "p");
  }
  for (int k : {2, 3, 5})
    for (double p : {0.0, 0.3, 1.0}) {
      const ModelParams m{k, p};
      double sum = 0;
      for (Symbol s : alphabet(k)) sum += m.probability(s);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("p = 1 has no typed orders, p = 0 has no F") {
  CounterRng rng(derive_seed(5, 0));
  for (int i = 0; i < 20000; ++i) {
    CHECK_FALSE(sample_symbol({2, 1.0}, rng).kind == SymbolKind::TypedOrder);
    CHECK_FALSE(sample_symbol({3, 0.0}, rng).is_flex());
  }
  const ModelParams m{2, 1.0};
  CHECK(m.probability(Symbol::burger(1)) == 0.25);
  CHECK(m.probability(Symbol::order(2)) == 0.0);
  CHECK(m.probability(Symbol::flex()) == 0.5);
  const ModelParams z{3, 0.0};
  CHECK(z.probability(Symbol::order(3)) == doctest::Approx(1.0 / 6));
  CHECK(z.probability(Symbol::flex()) == 0.0);
}

TEST_CASE("sample_symbol uses exactly one draw") {
  CounterRng rng(11);
  sample_symbol({3, 0.5}, rng);
  CHECK(rng.counter() == 1);
}

namespace {

std::array<std::uint64_t, 7> histogram(SymbolFeed& feed, int draws) {
  std::array<std::uint64_t, 7> counts{};
  for (int i = 0; i < draws; ++i) ++counts[encode(feed.next(), 3)];
  return counts;
}

}  // namespace

TEST_CASE("chi-square goodness of fit, k = 3, p = 0.5, 10^6 draws") {
  const ModelParams m{3, 0.5};
  std::array<double, 7> probs{};
  for (Symbol s : alphabet(3)) probs[encode(s, 3)] = m.probability(s);
  SymbolFeed feed(m, derive_seed(2024, 0));
  const auto counts = histogram(feed, 1'000'000);
  const double stat = stats::chi_square(counts, probs);
  // scipy.stats.chi2.ppf(0.99, 6)
  CHECK(stats::chi_square_critical(6, 0.01) == doctest::Approx(16.811893829770927).epsilon(1e-9));
  CHECK(stat < 16.811893829770927);
}

TEST_CASE("symbol feed matches one-at-a-time sampling") {
  const ModelParams m{4, 0.37};
  SymbolFeed feed(m, 77);
  CounterRng rng(77);
  for (int i = 0; i < 3000; ++i) REQUIRE(feed.next() == sample_symbol(m, rng));
  CHECK(feed.drawn() == 3000);
}

TEST_CASE("injected feed") {
  SymbolFeed feed(2, parse_word("B1 F", 2));
  CHECK(feed.next() == Symbol::burger(1));
  CHECK(feed.next() == Symbol::flex());
  CHECK_THROWS_AS(feed.next(), StreamExhausted);
}
