#include "lifo/excursion.hpp"

#include "lifo/error.hpp"
#include "lifo/rng.hpp"

namespace lifo {

Excursion sample_excursion(SymbolFeed& forward, int k, std::size_t step_cap) {
  Excursion e{ReducedWord(k)};
  std::int64_t total = 0;
  while (true) {
    if (e.steps >= step_cap) {
      e.truncated = true;
      return e;
    }
    const Symbol x = forward.next();
    const std::int64_t next = total + (x.is_burger() ? 1 : -1);
    if (next < 0) return e;
    // With C >= 1 before an order the window holds a burger, so F always
    // resolves inside the excursion.
    e.word.apply(x);
    total = next;
    ++e.steps;
  }
}

Excursion sample_excursion(const ModelParams& params, std::uint64_t seed, std::size_t step_cap) {
  SymbolFeed feed(params, derive_seed(seed, 0));
  return sample_excursion(feed, params.k, step_cap);
}

JSample sample_j(SymbolFeed& backward, int k, std::size_t j_cap) {
  if (j_cap == 0) throw ConfigError("jcap", "must be at least 1");
  JSample s{ReducedWord(k)};
  while (s.j < j_cap) {
    s.word.prepend(backward.next());
    ++s.j;
    if (s.word.burger_count() == 1) {
      s.burger_type = s.word.top_burger_type();
      return s;
    }
  }
  s.truncated = true;
  return s;
}

JSample sample_j(const ModelParams& params, std::uint64_t seed, std::size_t j_cap) {
  SymbolFeed feed(params, derive_seed(seed, 1));
  return sample_j(feed, params.k, j_cap);
}

RecordSequences record_sequences(std::span<const Symbol> forward, std::span<const Symbol> backward, int k,
                                 std::size_t horizon) {
  if (forward.size() < horizon) throw ConfigError("horizon", "forward stream shorter than horizon");
  if (backward.size() < horizon + 1) throw ConfigError("horizon", "backward stream shorter than horizon + 1");
  RecordSequences rs;
  rs.left_filtered.resize(static_cast<std::size_t>(k));
  rs.right_filtered.resize(static_cast<std::size_t>(k));

  ReducedWord fw(k);
  std::int64_t c = 0, low = 0;
  for (std::size_t j = 1; j <= horizon; ++j) {
    const Symbol x = forward[j - 1];
    validate(x, k);
    fw.apply(x);
    c += x.is_burger() ? 1 : -1;
    if (fw.burger_count() == 0) rs.empty_burger.push_back(j);
    if (c < low) {
      low = c;
      rs.right_min.push_back(j);
      for (int i = 1; i <= k && fw.burger_count(i) == 0; ++i) rs.right_filtered[i - 1].push_back(j);
    }
  }

  ReducedWord bw(k);
  c = 0;
  std::int64_t high = 0;
  for (std::size_t j = 0; j <= horizon; ++j) {
    const Symbol x = backward[j];
    validate(x, k);
    bw.prepend(x);
    c += x.is_burger() ? 1 : -1;
    if (bw.order_count() == 0) rs.empty_order.push_back(j);
    if (c > high) {
      high = c;
      rs.left_min.push_back(j);
      for (int i = 1; i <= k && bw.order_count(i) == 0; ++i) {
        if (i == k && bw.flex_count() != 0) break;
        rs.left_filtered[i - 1].push_back(j);
      }
    }
  }
  return rs;
}

}  // namespace lifo
