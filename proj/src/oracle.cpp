#include "lifo/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>

#include "lifo/error.hpp"
#include "lifo/parallel.hpp"
#include "lifo/past_stack.hpp"
#include "lifo/reduced_word.hpp"
#include "lifo/rng.hpp"

namespace lifo::oracle {

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t e = 0; e < exp; ++e) {
    if (out > kEnumerationGuard / base + 1) return std::numeric_limits<std::uint64_t>::max();
    out *= base;
  }
  return out;
}

bool is_normal_form(const Word& w) {
  bool seen_burger = false;
  for (Symbol s : w) {
    if (s.is_burger()) seen_burger = true;
    else if (seen_burger) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- reduction

ReductionReport verify_reduction(int k, std::size_t max_len, unsigned threads) {
  if (k < 1 || k > kMaxTypes) throw ConfigError("k", "out of range");
  const std::vector<Symbol> letters = alphabet(k);
  const std::uint64_t base = letters.size();
  std::uint64_t total = 0;
  for (std::size_t len = 0; len <= max_len; ++len) {
    const std::uint64_t count = checked_power(base, len);
    if (count > kEnumerationGuard || total + count > kEnumerationGuard)
      throw GuardViolation("reduction: more than 10^7 words");
    total += count;
  }

  ReductionReport report;
  report.k = k;
  report.max_len = max_len;
  constexpr std::uint64_t kChunk = 4096;
  for (std::size_t len = 0; len <= max_len; ++len) {
    const std::uint64_t count = checked_power(base, len);
    const std::size_t chunks = static_cast<std::size_t>((count + kChunk - 1) / kChunk);
    const auto parts = run_indexed<ReductionReport>(chunks, threads, [&](std::size_t chunk) {
      ReductionReport part;
      Word w(len);
      for (std::uint64_t index = chunk * kChunk; index < std::min(count, (chunk + 1) * kChunk); ++index) {
        std::uint64_t rest = index;
        for (std::size_t m = len; m-- > 0;) {
          w[m] = letters[rest % base];
          rest /= base;
        }
        ++part.words;
        const Word naive = reduce_naive(w);

        ReducedWord forward(k);
        for (Symbol s : w) forward.append(s);
        const Word folded = forward.flatten();
        if (folded != naive || !forward.check_invariants()) ++part.append_mismatches;
        if (!is_normal_form(folded) || reduce_naive(folded) != folded) ++part.normal_form_failures;

        ReducedWord backward(k);
        for (auto it = w.rbegin(); it != w.rend(); ++it) backward.prepend(*it);
        if (backward.flatten() != naive || !backward.check_invariants()) ++part.prepend_mismatches;

        std::vector<ReducedWord> pieces;
        for (std::size_t i = 0; i <= len; ++i) {
          for (std::size_t j = i; j <= len; ++j) {
            const std::span<const Symbol> all(w);
            const ReducedWord u = ReducedWord::from_word(k, all.subspan(0, i));
            const ReducedWord v = ReducedWord::from_word(k, all.subspan(i, j - i));
            const ReducedWord x = ReducedWord::from_word(k, all.subspan(j));
            const Word left = concat(concat(u, v), x).flatten();
            const Word right = concat(u, concat(v, x)).flatten();
            ++part.splits;
            if (left != right || left != naive) ++part.associativity_failures;
          }
        }
      }
      return part;
    });
    for (const auto& part : parts) {
      report.words += part.words;
      report.append_mismatches += part.append_mismatches;
      report.normal_form_failures += part.normal_form_failures;
      report.prepend_mismatches += part.prepend_mismatches;
      report.splits += part.splits;
      report.associativity_failures += part.associativity_failures;
    }
  }
  return report;
}

// ---------------------------------------------------------------- probability parsing

Probability Probability::from_rational(const Rational& p) {
  return {static_cast<double>(p), p};
}

Probability Probability::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw ConfigError("p", "empty probability");
  auto digits = [](std::string_view d) {
    return !d.empty() && std::all_of(d.begin(), d.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw ConfigError("p", "expected a/b, got '" + s + "'");
    const boost::multiprecision::cpp_int d(den);
    if (d == 0) throw ConfigError("p", "zero denominator");
    return from_rational(Rational(boost::multiprecision::cpp_int(num), d));
  }
  const auto dot = s.find('.');
  const std::string whole = s.substr(0, dot);
  const std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  if ((whole.empty() || digits(whole)) && (frac.empty() || digits(frac)) && !(whole.empty() && frac.empty())) {
    boost::multiprecision::cpp_int num(whole.empty() ? "0" : whole);
    boost::multiprecision::cpp_int den = 1;
    for (char c : frac) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    return from_rational(Rational(num, den));
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ConfigError("p", "trailing characters in '" + s + "'");
    return from_double(v);
  } catch (const std::logic_error&) {
    throw ConfigError("p", "not a number: '" + s + "'");
  }
}

const char* to_string(Functional f) {
  return f == Functional::ProductAtZero ? "product-at-zero" : "window-covariance";
}

Functional parse_functional(std::string_view text) {
  if (text == "product-at-zero") return Functional::ProductAtZero;
  if (text == "window-covariance") return Functional::WindowCovariance;
  throw ConfigError("functional", "expected product-at-zero or window-covariance, got '" + std::string(text) + "'");
}

const char* to_string(FPolicy policy) { return policy == FPolicy::Forbid ? "forbid" : "resolve-in-window"; }

FPolicy parse_f_policy(std::string_view text) {
  if (text == "forbid") return FPolicy::Forbid;
  if (text == "resolve-in-window") return FPolicy::ResolveInWindow;
  throw ConfigError("policy", "expected forbid or resolve-in-window, got '" + std::string(text) + "'");
}

void EnumerationSpec::validate() const {
  if (k < 1 || k > kMaxTypes) throw ConfigError("k", "must be in 1.." + std::to_string(kMaxTypes));
  if (!(p.value >= 0.0 && p.value <= 1.0)) throw ConfigError("p", "must lie in [0, 1]");
  if (p.exact && (*p.exact < 0 || *p.exact > 1)) throw ConfigError("p", "must lie in [0, 1]");
  if (n == 0) throw ConfigError("n", "window must hold at least one symbol");
  for (const auto& pr : {a, b})
    if (pr.i == pr.j || pr.i < 1 || pr.j < 1 || pr.i > k || pr.j > k)
      throw ConfigError("pair", "indices must be distinct and in 1.." + std::to_string(k));
  const bool zero = p.exact ? *p.exact == 0 : p.value == 0.0;
  if (policy == FPolicy::Forbid && !zero) throw ConfigError("policy", "forbid requires p = 0");
}

std::string ExactValue::text() const {
  if (exact) return exact->str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// ---------------------------------------------------------------- exact expectations

namespace {

using BigInt = boost::multiprecision::cpp_int;

/// Double accumulator with Neumaier compensation.
struct Compensated {
  double sum = 0.0;
  double carry = 0.0;

  Compensated() = default;
  Compensated(double v) : sum(v) {}  // NOLINT(google-explicit-constructor)

  Compensated& operator+=(const Compensated& o) {
    add(o.sum);
    add(o.carry);
    return *this;
  }
  Compensated operator*(const Compensated& o) const {
    Compensated r;
    r.sum = sum * o.sum;
    r.carry = carry * o.sum;
    return r;
  }
  friend Compensated operator+(Compensated a, const Compensated& b) { return a += b; }
  Compensated operator*(long long v) const { return *this * Compensated(static_cast<double>(v)); }
  double value() const { return sum + carry; }

 private:
  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
};

bool is_zero(const Compensated& v) { return v.value() == 0.0; }
bool is_zero(const __int128& v) { return v == 0; }
bool is_zero(const BigInt& v) { return v == 0; }

BigInt to_big(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 m = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  BigInt out = static_cast<std::uint64_t>(m >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(m);
  return negative ? BigInt(-out) : out;
}
const BigInt& to_big(const BigInt& v) { return v; }

/// Per-symbol weights. Integer arithmetic uses numerators over `unit` per step.
template <class Num>
struct Weights {
  Num burger, order, flex, unit;
};

int sign_of(theory::DiscrepancyPair pr, int type) { return (pr.i == type ? 1 : 0) - (pr.j == type ? 1 : 0); }

template <class Num>
Num power(const Num& base, std::size_t exp) {
  Num out = 1;
  for (std::size_t e = 0; e < exp; ++e) out = out * base;
  return out;
}

template <class Num>
struct Totals {
  Num value{};     // numerator of the functional on covered windows
  Num covered{};
  Num residual{};
  Num sum_a{}, sum_b{};  // window covariance only
  std::uint64_t states = 0;
};

void charge_states(std::uint64_t& states, std::size_t more) {
  states += more;
  if (states > kEnumerationGuard) throw GuardViolation("exact_expectation: more than 10^7 states");
}

// Pending order word of X(-j, -1): 0 is F, t is O_t. Keeps only entries that
// can still be cancelled in `remaining` prepends.
void trim_orders(std::string& state, int k, std::size_t remaining) {
  if (remaining == 0) {
    state.clear();
    return;
  }
  std::vector<std::size_t> seen(static_cast<std::size_t>(k) + 1, 0);
  std::string kept;
  for (char c : state) {
    const int t = static_cast<unsigned char>(c);
    if (t != 0) {
      if (seen[t]++ < remaining) kept.push_back(c);
    } else {
      bool keep = false;
      for (int u = 1; u <= k; ++u) keep |= seen[u]++ < remaining;
      if (keep) kept.push_back(c);
    }
  }
  state.swap(kept);
}

template <class Num>
Totals<Num> product_at_zero(const EnumerationSpec& spec, const Weights<Num>& w) {
  const int k = spec.k;
  Totals<Num> out;
  const Num rest = power(w.unit, spec.n - 1);
  for (int t = 1; t <= k; ++t) {
    const long long f = sign_of(spec.a, t) * sign_of(spec.b, t);  // same for B_t and O_t
    out.value += (w.burger + w.order) * rest * f;
    out.covered += (w.burger + w.order) * rest;
  }
  if (is_zero(w.flex)) return out;

  // X(0) = F: look backward for the first burger that is not cancelled.
  std::unordered_map<std::string, Num> layer{{std::string(), w.flex}};
  for (std::size_t step = 1; step < spec.n; ++step) {
    const std::size_t remaining = spec.n - 1 - step;
    const Num tail = power(w.unit, remaining);
    std::unordered_map<std::string, Num> next;
    for (const auto& [state, weight] : layer) {
      for (int t = 1; t <= k; ++t) {
        const auto hit = std::find_if(state.begin(), state.end(), [t](char c) {
          return c == 0 || static_cast<unsigned char>(c) == t;
        });
        if (hit == state.end()) {
          const Num mass = weight * w.burger * tail;
          out.value += mass * static_cast<long long>(sign_of(spec.a, t) * sign_of(spec.b, t));
          out.covered += mass;
        } else {
          std::string ns = state;
          ns.erase(static_cast<std::size_t>(hit - state.begin()), 1);
          trim_orders(ns, k, remaining);
          next[ns] += weight * w.burger;
        }
        if (!is_zero(w.order)) {
          std::string ns = static_cast<char>(t) + state;
          trim_orders(ns, k, remaining);
          next[ns] += weight * w.order;
        }
      }
      std::string ns = std::string(1, '\0') + state;
      trim_orders(ns, k, remaining);
      next[ns] += weight * w.flex;
    }
    charge_states(out.states, next.size());
    layer.swap(next);
  }
  for (const auto& [state, weight] : layer) out.residual += weight;
  return out;
}

// Burger stack of X(1, m), bottom to top, trimmed to the burgers that the
// remaining steps can still reach.
void trim_burgers(std::string& state, int k, std::size_t remaining) {
  if (remaining == 0) {
    state.clear();
    return;
  }
  std::vector<std::size_t> seen(static_cast<std::size_t>(k) + 1, 0);
  std::string kept;
  for (auto it = state.rbegin(); it != state.rend(); ++it)
    if (seen[static_cast<unsigned char>(*it)]++ < remaining) kept.push_back(*it);
  std::reverse(kept.begin(), kept.end());
  state.swap(kept);
}

template <class Num>
struct Moments {
  Num weight{}, sa{}, sb{}, sab{};

  Moments& operator+=(const Moments& o) {
    weight += o.weight;
    sa += o.sa;
    sb += o.sb;
    sab += o.sab;
    return *this;
  }
};

template <class Num>
Totals<Num> window_covariance(const EnumerationSpec& spec, const Weights<Num>& w) {
  const int k = spec.k;
  Totals<Num> out;
  std::unordered_map<std::string, Moments<Num>> layer;
  layer[std::string()].weight = 1;

  auto advance = [](const Moments<Num>& m, long long da, long long db, const Num& c) {
    Moments<Num> r;
    r.weight = m.weight * c;
    r.sa = (m.sa + m.weight * da) * c;
    r.sb = (m.sb + m.weight * db) * c;
    r.sab = (m.sab + m.sa * db + m.sb * da + m.weight * (da * db)) * c;
    return r;
  };

  for (std::size_t step = 1; step <= spec.n; ++step) {
    const std::size_t remaining = spec.n - step;
    std::unordered_map<std::string, Moments<Num>> next;
    for (const auto& [state, m] : layer) {
      for (int t = 1; t <= k; ++t) {
        const long long da = sign_of(spec.a, t), db = sign_of(spec.b, t);
        std::string pushed = state + static_cast<char>(t);
        trim_burgers(pushed, k, remaining);
        next[pushed] += advance(m, da, db, w.burger);
        if (!is_zero(w.order)) {
          std::string ns = state;
          if (const auto pos = ns.find_last_of(static_cast<char>(t)); pos != std::string::npos) ns.erase(pos, 1);
          trim_burgers(ns, k, remaining);
          next[ns] += advance(m, -da, -db, w.order);
        }
      }
      if (!is_zero(w.flex)) {
        if (state.empty()) {
          out.residual += m.weight * w.flex * power(w.unit, remaining);
        } else {
          const int t = static_cast<unsigned char>(state.back());
          std::string ns = state.substr(0, state.size() - 1);
          trim_burgers(ns, k, remaining);
          next[ns] += advance(m, -sign_of(spec.a, t), -sign_of(spec.b, t), w.flex);
        }
      }
    }
    charge_states(out.states, next.size());
    layer.swap(next);
  }
  for (const auto& [state, m] : layer) {
    out.covered += m.weight;
    out.sum_a += m.sa;
    out.sum_b += m.sb;
    out.value += m.sab;
  }
  return out;
}

template <class Num>
Totals<Num> run(const EnumerationSpec& spec, const Weights<Num>& w) {
  return spec.functional == Functional::ProductAtZero ? product_at_zero(spec, w) : window_covariance(spec, w);
}

ExactValue exact_value(const Rational& r) { return {static_cast<double>(r), r}; }

template <class Num>
ExactResult finish_exact(const EnumerationSpec& spec, const Totals<Num>& t, const BigInt& unit) {
  const BigInt denom = pow(unit, static_cast<unsigned>(spec.n));
  const Rational covered(to_big(t.covered), denom);
  const Rational residual(to_big(t.residual), denom);
  if (covered + residual != 1) throw Error("exact_expectation: probability mass does not add up to one");
  ExactResult r;
  r.states = t.states;
  r.covered = exact_value(covered);
  r.residual = exact_value(residual);
  const Rational partial(to_big(t.value), denom);
  r.partial = exact_value(partial);
  if (covered == 0) throw Error("exact_expectation: every window is residual");
  Rational conditional = partial / covered;
  if (spec.functional == Functional::WindowCovariance) {
    const Rational mean_a = Rational(to_big(t.sum_a), denom) / covered;
    const Rational mean_b = Rational(to_big(t.sum_b), denom) / covered;
    conditional -= mean_a * mean_b;
  }
  r.conditional = exact_value(conditional);
  return r;
}

ExactResult finish_double(const EnumerationSpec& spec, const Totals<Compensated>& t) {
  ExactResult r;
  r.states = t.states;
  const double covered = t.covered.value(), residual = t.residual.value();
  if (std::abs(covered + residual - 1.0) > 1e-12)
    throw Error("exact_expectation: probability mass does not add up to one");
  if (covered == 0.0) throw Error("exact_expectation: every window is residual");
  r.covered.value = covered;
  r.residual.value = residual;
  r.partial.value = t.value.value();
  double conditional = r.partial.value / covered;
  if (spec.functional == Functional::WindowCovariance)
    conditional -= (t.sum_a.value() / covered) * (t.sum_b.value() / covered);
  r.conditional.value = conditional;
  return r;
}

}  // namespace

ExactResult exact_expectation(const EnumerationSpec& spec) {
  spec.validate();
  const int k = spec.k;
  if (spec.p.exact) {
    const BigInt a = numerator(*spec.p.exact), b = denominator(*spec.p.exact);
    const BigInt unit = 2 * k * b;
    // Largest numerator: unit^n times n^2 for the second moment.
    const double bits = static_cast<double>(spec.n) * std::log2(static_cast<double>(unit)) +
                        2.0 * std::log2(static_cast<double>(spec.n) + 1.0) + 4.0;
    if (bits < 120.0) {
      const Weights<__int128> w{static_cast<__int128>(static_cast<long long>(b)),
                                static_cast<__int128>(static_cast<long long>(b - a)),
                                static_cast<__int128>(static_cast<long long>(k * a)),
                                static_cast<__int128>(static_cast<long long>(unit))};
      return finish_exact(spec, run(spec, w), unit);
    }
    const Weights<BigInt> w{b, b - a, k * a, unit};
    return finish_exact(spec, run(spec, w), unit);
  }
  const double p = spec.p.value;
  const Weights<Compensated> w{1.0 / (2.0 * k), (1.0 - p) / (2.0 * k), p / 2.0, 1.0};
  return finish_double(spec, run(spec, w));
}

// ---------------------------------------------------------------- increments

namespace {

std::vector<std::int64_t> y_counts(int k, std::span<const Symbol> xs) {
  PastStack past = PastStack::rotating(k);
  ForwardRunner runner(k, past);
  for (Symbol x : xs) runner.step(x);
  return {runner.counts().begin(), runner.counts().end()};
}

int max_discrepancy_change(const std::vector<std::int64_t>& c0, const std::vector<std::int64_t>& c1) {
  const std::size_t k = c0.size();
  std::int64_t best = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const std::int64_t d = (c0[i] - c0[j]) - (c1[i] - c1[j]);
      best = std::max(best, d < 0 ? -d : d);
    }
  return static_cast<int>(best);
}

}  // namespace

IncrementReport verify_increment_bound(int k, std::size_t n) {
  if (k < 2 || k > kMaxTypes) throw ConfigError("k", "needs at least two types");
  if (n == 0) throw ConfigError("N", "must be at least 1");
  const std::vector<Symbol> letters = alphabet(k);
  const std::uint64_t base = letters.size();
  const std::uint64_t sequences = checked_power(base, n);
  if (sequences > kEnumerationGuard || sequences * n * base > kEnumerationGuard)
    throw GuardViolation("increments: more than 10^7 substitutions");

  IncrementReport report;
  report.k = k;
  report.n = n;
  Word xs(n);
  for (std::uint64_t index = 0; index < sequences; ++index) {
    std::uint64_t rest = index;
    for (std::size_t m = n; m-- > 0;) {
      xs[m] = letters[rest % base];
      rest /= base;
    }
    ++report.sequences;
    const auto base_counts = y_counts(k, xs);
    for (std::size_t l = 0; l < n; ++l) {
      const Symbol original = xs[l];
      for (Symbol s : letters) {
        xs[l] = s;
        const int change = max_discrepancy_change(base_counts, y_counts(k, xs));
        ++report.substitutions;
        if (change > 2) ++report.violations;
        if (change > report.max_change) {
          report.max_change = change;
          report.witness = xs;
          report.witness[l] = original;
          report.witness_position = l + 1;
          report.witness_replacement = s;
        }
      }
      xs[l] = original;
    }
  }
  return report;
}

// ---------------------------------------------------------------- neighbors

bool are_neighbors(std::span<const Symbol> s, std::span<const Symbol> s_prime) {
  if (s.size() < s_prime.size()) std::swap(s, s_prime);
  if (s.size() != s_prime.size() + 1) return false;
  std::size_t i = 0;
  while (i < s_prime.size() && s[i] == s_prime[i]) ++i;
  return std::equal(s.begin() + static_cast<std::ptrdiff_t>(i) + 1, s.end(), s_prime.begin() + static_cast<std::ptrdiff_t>(i));
}

namespace {

Word rotating_bottom(int k, std::size_t depth) {
  // Listed bottom to top; the burger at depth j from the top has type ((j-1) mod k) + 1.
  Word out(depth);
  for (std::size_t j = 1; j <= depth; ++j) out[depth - j] = Symbol::burger(static_cast<int>((j - 1) % k) + 1);
  return out;
}

void check_pair_after(const ReducedWord& r0, const ReducedWord& r1, NeighborReport& report, bool& ok) {
  if (r0.order_count() != 0 || r1.order_count() != 0 || !are_neighbors(r0.burgers(), r1.burgers())) {
    ++report.neighbor_failures;
    ok = false;
  }
  const int k = r0.k();
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      const auto d0 = static_cast<std::int64_t>(r0.burger_count(i)) - static_cast<std::int64_t>(r0.burger_count(j));
      const auto d1 = static_cast<std::int64_t>(r1.burger_count(i)) - static_cast<std::int64_t>(r1.burger_count(j));
      if (std::abs(d0 - d1) > 1) {
        ++report.discrepancy_failures;
        ok = false;
        return;
      }
    }
}

std::pair<ReducedWord, ReducedWord> padded_pair(int k, std::span<const Symbol> s, std::size_t removed,
                                                std::size_t word_len) {
  Word full = rotating_bottom(k, static_cast<std::size_t>(k) * (word_len + 1));
  const std::size_t pad = full.size();
  full.insert(full.end(), s.begin(), s.end());
  Word trimmed = full;
  trimmed.erase(trimmed.begin() + static_cast<std::ptrdiff_t>(pad + removed));
  return {ReducedWord::from_word(k, full), ReducedWord::from_word(k, trimmed)};
}

}  // namespace

bool neighbor_case(int k, std::span<const Symbol> s, std::size_t removed, std::span<const Symbol> w,
                   NeighborReport& report) {
  if (removed >= s.size()) throw ConfigError("removed", "position outside the stack");
  auto [r0, r1] = padded_pair(k, s, removed, w.size());
  for (Symbol x : w) {
    r0.apply(x);
    r1.apply(x);
  }
  ++report.cases;
  bool ok = true;
  check_pair_after(r0, r1, report, ok);
  return ok;
}

NeighborReport verify_neighbor_closure(std::size_t trials, std::size_t max_stack, std::size_t max_word,
                                       std::uint64_t seed, int max_k) {
  if (trials == 0 || max_stack == 0) throw ConfigError("trials", "sizes must be positive");
  if (max_k < 2 || max_k > kMaxTypes) throw ConfigError("k", "max k must be at least 2");
  NeighborReport report;
  CounterRng rng(derive_seed(seed, 0));
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const int k = 2 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_k - 1));
    const std::size_t len = 1 + rng.next() % max_stack;
    Word s(len);
    for (Symbol& b : s) b = Symbol::burger(1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(k)));
    const std::size_t removed = rng.next() % len;
    const std::vector<Symbol> letters = alphabet(k);
    Word w(rng.next() % (max_word + 1));
    for (Symbol& x : w) x = letters[rng.next() % letters.size()];
    neighbor_case(k, s, removed, w, report);
  }
  return report;
}

NeighborReport verify_example_stack(std::size_t max_word) {
  constexpr int k = 3;
  const Word s = parse_word("B2 B1 B1 B3 B2 B2 B3", k);
  const std::size_t removed = s.size() - 4;
  const std::vector<Symbol> letters = alphabet(k);
  std::uint64_t total = 0;
  for (std::size_t len = 0; len <= max_word; ++len) total += checked_power(letters.size(), len);
  if (total > kEnumerationGuard) throw GuardViolation("neighbors: more than 10^7 words");

  NeighborReport report;
  // Depth-first over W, reusing the reduced pair of each prefix.
  const auto root = padded_pair(k, s, removed, max_word);
  std::vector<std::pair<ReducedWord, ReducedWord>> path{root};
  std::vector<std::size_t> digit;
  auto visit = [&] {
    bool ok = true;
    ++report.cases;
    check_pair_after(path.back().first, path.back().second, report, ok);
  };
  visit();
  while (true) {
    if (digit.size() < max_word) {
      digit.push_back(0);
    } else {
      while (!digit.empty() && digit.back() + 1 == letters.size()) {
        digit.pop_back();
        path.pop_back();
      }
      if (digit.empty()) break;
      ++digit.back();
      path.pop_back();
    }
    auto next = path.back();
    next.first.apply(letters[digit.back()]);
    next.second.apply(letters[digit.back()]);
    path.push_back(std::move(next));
    visit();
  }
  return report;
}

// ---------------------------------------------------------------- M relation

MRelationReport verify_m_relation(std::span<const Trajectory> trajectories) {
  MRelationReport report;
  for (const Trajectory& tr : trajectories) {
    ++report.trajectories;
    const int k = tr.params.k;
    const theory::IntMatrix m = theory::transform_matrix(k);
    for (std::size_t step = 0; step <= tr.n; ++step) {
      const auto at = tr.a_tilde(step);
      const auto a = tr.a(step);
      Eigen::Matrix<long long, Eigen::Dynamic, 1> v(k);
      for (int i = 0; i < k; ++i) v(i) = at[static_cast<std::size_t>(i)];
      const Eigen::Matrix<long long, Eigen::Dynamic, 1> mv = m * v;
      ++report.steps;
      for (int i = 0; i < k; ++i)
        if (mv(i) != a[static_cast<std::size_t>(i)]) {
          ++report.mismatches;
          break;
        }
    }
  }
  return report;
}

}  // namespace lifo::oracle
