#include "lifo/reduced_word.hpp"

#include <algorithm>

#include "lifo/error.hpp"
#include "lifo/past_stack.hpp"

namespace lifo {

ReducedWord::ReducedWord(int k)
    : k_(k), burgers_(static_cast<std::size_t>(k)), orders_(static_cast<std::size_t>(k)) {
  if (k < 1 || k > kMaxTypes) throw ConfigError("k", "must be in 1.." + std::to_string(kMaxTypes));
}

ReducedWord ReducedWord::from_word(int k, std::span<const Symbol> word) {
  ReducedWord w(k);
  for (Symbol s : word) {
    validate(s, k);
    w.apply(s);
  }
  return w;
}

int ReducedWord::top_burger_type() const {
  int best = 0;
  std::int64_t best_seq = 0;
  for (int t = 0; t < k_; ++t) {
    const auto& lane = burgers_[t];
    if (!lane.empty() && (best == 0 || lane.back() > best_seq)) {
      best = t + 1;
      best_seq = lane.back();
    }
  }
  return best;
}

int ReducedWord::bottom_burger_type() const {
  int best = 0;
  std::int64_t best_seq = 0;
  for (int t = 0; t < k_; ++t) {
    const auto& lane = burgers_[t];
    if (!lane.empty() && (best == 0 || lane.front() < best_seq)) {
      best = t + 1;
      best_seq = lane.front();
    }
  }
  return best;
}

void ReducedWord::push_order(Symbol s) {
  if (s.is_flex())
    flex_.push_back(next_hi_++);
  else
    orders_[s.type - 1].push_back(next_hi_++);
  ++order_total_;
}

int ReducedWord::apply(Symbol s) {
  switch (s.kind) {
    case SymbolKind::Burger:
      burgers_[s.type - 1].push_back(next_hi_++);
      ++burger_total_;
      return 0;
    case SymbolKind::TypedOrder: {
      auto& lane = burgers_[s.type - 1];
      if (lane.empty()) {
        push_order(s);
        return 0;
      }
      lane.pop_back();
      --burger_total_;
      return s.type;
    }
    case SymbolKind::FlexOrder: {
      const int t = top_burger_type();
      if (t == 0) {
        push_order(s);
        return 0;
      }
      burgers_[t - 1].pop_back();
      --burger_total_;
      return t;
    }
  }
  return 0;
}

ConsumptionEvent ReducedWord::append(Symbol s) {
  if (s.is_burger()) {
    apply(s);
    return {ConsumptionEvent::Outcome::Pushed, s.type, 0};
  }
  std::size_t depth = 1;
  if (s.kind == SymbolKind::TypedOrder && !burgers_[s.type - 1].empty()) {
    const std::int64_t seq = burgers_[s.type - 1].back();
    for (const auto& lane : burgers_)
      depth += static_cast<std::size_t>(lane.end() - std::upper_bound(lane.begin(), lane.end(), seq));
  }
  const int t = apply(s);
  if (t == 0) return {ConsumptionEvent::Outcome::Unmatched, 0, 0};
  return {ConsumptionEvent::Outcome::Consumed, t, depth};
}

std::optional<Symbol> ReducedWord::prepend(Symbol s) {
  if (s.is_order()) {
    if (s.is_flex())
      flex_.push_front(next_lo_--);
    else
      orders_[s.type - 1].push_front(next_lo_--);
    ++order_total_;
    return std::nullopt;
  }
  auto& typed = orders_[s.type - 1];
  const bool typed_ok = !typed.empty();
  const bool flex_ok = !flex_.empty();
  if (!typed_ok && !flex_ok) {
    burgers_[s.type - 1].push_front(next_lo_--);
    ++burger_total_;
    return std::nullopt;
  }
  --order_total_;
  if (typed_ok && (!flex_ok || typed.front() < flex_.front())) {
    typed.pop_front();
    return Symbol::order(s.type);
  }
  flex_.pop_front();
  return Symbol::flex();
}

Word ReducedWord::merge_segment(std::span<const Seqs> lanes, std::span<const Symbol> tag) const {
  std::vector<std::pair<std::int64_t, Symbol>> items;
  for (std::size_t l = 0; l < lanes.size(); ++l)
    for (std::int64_t seq : lanes[l]) items.emplace_back(seq, tag[l]);
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Word out;
  out.reserve(items.size());
  for (const auto& it : items) out.push_back(it.second);
  return out;
}

Word ReducedWord::orders() const {
  std::vector<Seqs> lanes(orders_);
  lanes.push_back(flex_);
  std::vector<Symbol> tag;
  for (int t = 1; t <= k_; ++t) tag.push_back(Symbol::order(t));
  tag.push_back(Symbol::flex());
  return merge_segment(lanes, tag);
}

Word ReducedWord::burgers() const {
  std::vector<Symbol> tag;
  for (int t = 1; t <= k_; ++t) tag.push_back(Symbol::burger(t));
  return merge_segment(burgers_, tag);
}

Word ReducedWord::flatten() const {
  Word out = orders();
  Word b = burgers();
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word ReducedWord::prefix(std::size_t n) const {
  Word out = orders();
  if (out.size() < n) {
    Word b = burgers();
    out.insert(out.end(), b.begin(), b.end());
  }
  if (out.size() > n) out.resize(n);
  return out;
}

bool ReducedWord::check_invariants() const {
  auto ascending = [](const Seqs& lane) { return std::is_sorted(lane.begin(), lane.end()) &&
                                                 std::adjacent_find(lane.begin(), lane.end()) == lane.end(); };
  std::size_t b = 0, o = flex_.size();
  if (!ascending(flex_)) return false;
  for (int t = 0; t < k_; ++t) {
    if (!ascending(burgers_[t]) || !ascending(orders_[t])) return false;
    b += burgers_[t].size();
    o += orders_[t].size();
  }
  if (b != burger_total_ || o != order_total_) return false;
  const Word flat = flatten();
  return reduce_naive(flat) == flat;
}

bool operator==(const ReducedWord& a, const ReducedWord& b) {
  return a.k_ == b.k_ && a.size() == b.size() && a.flatten() == b.flatten();
}

ReducedWord concat(const ReducedWord& a, const ReducedWord& b) {
  if (a.k() != b.k()) throw ConfigError("k", "concatenating words over different alphabets");
  ReducedWord out = a;
  for (Symbol s : b.orders()) out.apply(s);
  for (Symbol s : b.burgers()) out.apply(s);
  return out;
}

Word reduce_naive(std::span<const Symbol> word) {
  Word w(word.begin(), word.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const Symbol a = w[i], b = w[i + 1];
      if (!a.is_burger() || !b.is_order()) continue;
      if (b.is_flex() || b.type == a.type) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      } else {
        std::swap(w[i], w[i + 1]);
      }
      changed = true;
      break;
    }
  }
  return w;
}

Counts Counts::of(const ReducedWord& w) {
  Counts c(w.k());
  for (int t = 1; t <= w.k(); ++t)
    c.per_type_[t - 1] = static_cast<std::int64_t>(w.burger_count(t)) - static_cast<std::int64_t>(w.order_count(t));
  c.has_flex_ = w.flex_count() > 0;
  return c;
}

Counts Counts::of(std::span<const Symbol> seq, int k) {
  Counts c(k);
  for (Symbol s : seq) c.add(s);
  return c;
}

void Counts::add(Symbol s) {
  switch (s.kind) {
    case SymbolKind::Burger: ++per_type_[s.type - 1]; break;
    case SymbolKind::TypedOrder: --per_type_[s.type - 1]; break;
    case SymbolKind::FlexOrder: has_flex_ = true; break;
  }
}

std::int64_t Counts::total() const {
  std::int64_t sum = 0;
  for (auto v : per_type_) sum += v;
  return sum;
}

std::int64_t Counts::discrepancy(int i, int j) const {
  if (has_flex_) throw DiscrepancyUndefined("discrepancy is only defined for words without F");
  return count(i) - count(j);
}

MatchMap match_phi(std::span<const Symbol> window, int k) {
  std::vector<std::int64_t> partner(window.size(), MatchMap::kUnmatchedBurger);
  std::vector<std::vector<std::int64_t>> open(static_cast<std::size_t>(k));
  for (std::size_t m = 0; m < window.size(); ++m) {
    const Symbol s = window[m];
    validate(s, k);
    if (s.is_burger()) {
      open[s.type - 1].push_back(static_cast<std::int64_t>(m));
      continue;
    }
    int lane = -1;
    if (s.is_flex()) {
      for (int t = 0; t < k; ++t)
        if (!open[t].empty() && (lane < 0 || open[t].back() > open[lane].back())) lane = t;
    } else if (!open[s.type - 1].empty()) {
      lane = s.type - 1;
    }
    if (lane < 0) {
      partner[m] = MatchMap::kUnmatchedOrder;
      continue;
    }
    const std::int64_t b = open[lane].back();
    open[lane].pop_back();
    partner[m] = b;
    partner[static_cast<std::size_t>(b)] = static_cast<std::int64_t>(m);
  }
  return MatchMap(std::move(partner));
}

Word resolve_y(std::span<const Symbol> window, int k, PastStack* past) {
  ReducedWord w(k);
  Word y;
  y.reserve(window.size());
  for (Symbol s : window) {
    validate(s, k);
    const int consumed = w.apply(s);
    if (s.is_burger()) {
      y.push_back(s);
      continue;
    }
    int t = consumed;
    if (t == 0 && s.is_flex()) {
      if (past == nullptr) throw StreamExhausted("F unmatched in window and no past stack supplied");
      t = past->pop_top();
    } else if (t == 0) {
      t = s.type;
      if (past != nullptr) past->pop_type(t);
    }
    y.push_back(Symbol::order(t));
  }
  return y;
}

}  // namespace lifo
