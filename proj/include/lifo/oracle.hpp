#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lifo/theory.hpp"
#include "lifo/trajectory.hpp"

namespace lifo::oracle {

using Rational = boost::multiprecision::cpp_rational;

/// Work above this many words / states is refused with GuardViolation.
inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;

// ---------------------------------------------------------------- reduction

struct ReductionReport {
  int k = 2;
  std::size_t max_len = 0;
  std::uint64_t words = 0;
  std::uint64_t append_mismatches = 0;
  std::uint64_t normal_form_failures = 0;
  std::uint64_t prepend_mismatches = 0;
  std::uint64_t splits = 0;  ///< (u, v, w) triples checked for associativity
  std::uint64_t associativity_failures = 0;

  bool ok() const {
    return append_mismatches == 0 && normal_form_failures == 0 && prepend_mismatches == 0 &&
           associativity_failures == 0;
  }
};

/// Every word of length <= max_len over the 2k+1 symbols: append-fold and
/// prepend-fold against reduce_naive, normal form, and for every split
/// w = uvx, (uv)x = u(vx) = reduce(w).
ReductionReport verify_reduction(int k, std::size_t max_len, unsigned threads = 1);

// ---------------------------------------------------------------- expectations

/// p as given on the command line. "a/b" and plain decimals are kept exactly.
struct Probability {
  double value = 0.0;
  std::optional<Rational> exact;

  static Probability parse(std::string_view text);
  static Probability from_double(double p) { return {p, std::nullopt}; }
  static Probability from_rational(const Rational& p);
};

enum class Functional {
  ProductAtZero,     ///< E[D^a(0) D^b(0)], Y(0) resolved against X(-n+1, -1)
  WindowCovariance,  ///< Cov(D^a_n, D^b_n) over Y(1), ..., Y(n)
};
const char* to_string(Functional f);
Functional parse_functional(std::string_view text);

enum class FPolicy {
  Forbid,           ///< only valid with p = 0
  ResolveInWindow,  ///< windows where some F has nothing to consume are residual
};
const char* to_string(FPolicy policy);
FPolicy parse_f_policy(std::string_view text);

struct EnumerationSpec {
  int k = 2;
  Probability p;
  std::size_t n = 1;  ///< window length
  Functional functional = Functional::ProductAtZero;
  theory::DiscrepancyPair a{1, 2};
  theory::DiscrepancyPair b{1, 2};
  FPolicy policy = FPolicy::ResolveInWindow;

  /// Throws ConfigError naming the field.
  void validate() const;
};

struct ExactValue {
  double value = 0.0;
  std::optional<Rational> exact;  ///< set when p was rational

  /// "a/b" when exact, otherwise the double with 17 significant digits.
  std::string text() const;
};

struct ExactResult {
  ExactValue conditional;  ///< E[f | every F resolved inside the window]
  ExactValue partial;      ///< E[f; every F resolved inside the window]
  ExactValue residual;     ///< probability of the excluded windows
  ExactValue covered;      ///< 1 - residual
  std::uint64_t states = 0;
};

/// Sums over all windows by dynamic programming on the part of the reduced
/// window that can still influence the result. Throws GuardViolation once
/// more than kEnumerationGuard states are visited.
ExactResult exact_expectation(const EnumerationSpec& spec);

// ---------------------------------------------------------------- structural lemmas

struct IncrementReport {
  int k = 2;
  std::size_t n = 0;
  std::uint64_t sequences = 0;
  std::uint64_t substitutions = 0;
  int max_change = 0;           ///< max |change of D^{ij}_N| over all pairs
  std::uint64_t violations = 0; ///< substitutions changing some D^{ij}_N by more than 2
  Word witness;                 ///< a sequence attaining max_change
  std::size_t witness_position = 0;
  Symbol witness_replacement{};

  bool ok() const { return violations == 0; }
};

/// Every X(1..N) and every single-position substitution, run against a
/// rotating seed stack.
IncrementReport verify_increment_bound(int k, std::size_t n);

struct NeighborReport {
  std::uint64_t cases = 0;
  std::uint64_t neighbor_failures = 0;
  std::uint64_t discrepancy_failures = 0;  ///< |change of D^{ij}| > 1 between the stacks

  bool ok() const { return neighbor_failures == 0 && discrepancy_failures == 0; }
};

/// S and S' are stacks with S' = S minus one burger; a stack is a burger word
/// listed bottom to top.
bool are_neighbors(std::span<const Symbol> s, std::span<const Symbol> s_prime);

/// Pushes W onto both stacks and checks the results are still neighbors.
/// Both stacks sit on a common rotating bottom deep enough that W never
/// exhausts them. Returns false on a violation.
bool neighbor_case(int k, std::span<const Symbol> s, std::size_t removed, std::span<const Symbol> w,
                   NeighborReport& report);

/// Random S (length 1..max_stack), S' (one burger removed) and W (length
/// 0..max_word), k drawn from 2..max_k.
NeighborReport verify_neighbor_closure(std::size_t trials, std::size_t max_stack, std::size_t max_word,
                                       std::uint64_t seed, int max_k = 4);

/// S = [B2, B1, B1, B3, B2, B2, B3] (top on the right) with the fourth
/// burger from the top removed, against every W of length <= max_word.
NeighborReport verify_example_stack(std::size_t max_word);

struct MRelationReport {
  std::uint64_t trajectories = 0;
  std::uint64_t steps = 0;
  std::uint64_t mismatches = 0;

  bool ok() const { return mismatches == 0; }
};

/// A_n = M Ã_n at every step, in integer arithmetic.
MRelationReport verify_m_relation(std::span<const Trajectory> trajectories);

}  // namespace lifo::oracle
