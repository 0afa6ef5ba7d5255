#include "doctest.h"
#include "lifo/error.hpp"
#include "lifo/oracle.hpp"

using namespace lifo;
using namespace lifo::oracle;

namespace {

EnumerationSpec spec(int k, const char* p, std::size_t n, Functional f, theory::DiscrepancyPair a,
                     theory::DiscrepancyPair b, FPolicy policy = FPolicy::ResolveInWindow) {
  EnumerationSpec s;
  s.k = k;
  s.p = Probability::parse(p);
  s.n = n;
  s.functional = f;
  s.a = a;
  s.b = b;
  s.policy = policy;
  return s;
}

}  // namespace

TEST_CASE("reduction is verified exhaustively at small sizes") {
  const ReductionReport r2 = verify_reduction(2, 6, 4);
  CHECK(r2.ok());
  CHECK(r2.words == 19531);  // all lengths 0..6
  const ReductionReport r3 = verify_reduction(3, 4, 4);
  CHECK(r3.ok());
  CHECK(r3.splits > 0);
}

TEST_CASE("probability parsing") {
  const Probability half = Probability::parse("1/2");
  CHECK(half.value == 0.5);
  REQUIRE(half.exact);
  CHECK(*half.exact == Rational(1, 2));
  const Probability dec = Probability::parse("0.3");
  REQUIRE(dec.exact);
  CHECK(*dec.exact == Rational(3, 10));
  CHECK_THROWS(Probability::parse("x"));
  CHECK(parse_functional("window-covariance") == Functional::WindowCovariance);
  CHECK(std::string(to_string(FPolicy::Forbid)) == "forbid");
  CHECK_THROWS(parse_f_policy("nope"));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(spec(2, "1/2", 3, Functional::ProductAtZero, {1, 2}, {1, 2}, FPolicy::Forbid).validate(),
                  ConfigError);
  CHECK_THROWS_AS(spec(2, "0", 3, Functional::ProductAtZero, {1, 3}, {1, 2}).validate(), ConfigError);
  CHECK_NOTHROW(spec(3, "0", 3, Functional::ProductAtZero, {1, 3}, {1, 2}, FPolicy::Forbid).validate());
}

TEST_CASE("E[D12(0)^2] = 1 for k = 2 at any p") {
  for (const char* p : {"0", "1/4", "1/2", "3/4", "1"}) {
    const ExactResult r = exact_expectation(spec(2, p, 5, Functional::ProductAtZero, {1, 2}, {1, 2}));
    REQUIRE(r.conditional.exact);
    CHECK(*r.conditional.exact == 1);
    CHECK(*r.covered.exact + *r.residual.exact == 1);
  }
}

TEST_CASE("E[D12(0) D13(0)] = 1/3 for k = 3, p = 0") {
  const ExactResult r = exact_expectation(spec(3, "0", 3, Functional::ProductAtZero, {1, 2}, {1, 3}, FPolicy::Forbid));
  REQUIRE(r.conditional.exact);
  CHECK(*r.conditional.exact == Rational(1, 3));
  CHECK(r.residual.value == 0.0);
}

TEST_CASE("Var D12_n = 4 for k = 2, p = 0, n = 4") {
  const ExactResult r = exact_expectation(spec(2, "0", 4, Functional::WindowCovariance, {1, 2}, {1, 2}, FPolicy::Forbid));
  REQUIRE(r.conditional.exact);
  CHECK(*r.conditional.exact == 4);
}

TEST_CASE("p = 0 window covariances match i.i.d. increments exactly") {
  // Each increment of D^{ij} is +-1 with probability 1/k each, so Var = 2n/k,
  // adjacent pairs give -n/k and disjoint pairs 0.
  for (int k : {2, 3})
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto var = exact_expectation(spec(k, "0", n, Functional::WindowCovariance, {1, 2}, {1, 2}, FPolicy::Forbid));
      CHECK(*var.conditional.exact == Rational(2 * static_cast<long>(n), k));
      if (k == 3) {
        const auto adj = exact_expectation(spec(k, "0", n, Functional::WindowCovariance, {1, 2}, {2, 3}, FPolicy::Forbid));
        CHECK(*adj.conditional.exact == Rational(-static_cast<long>(n), k));
      }
    }
}

TEST_CASE("mass is accounted for with F in the window") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const ExactResult r = exact_expectation(spec(3, "1/2", n, Functional::WindowCovariance, {1, 2}, {1, 3}));
    REQUIRE(r.covered.exact);
    CHECK(*r.covered.exact + *r.residual.exact == 1);
    CHECK(r.residual.value > 0.0);
  }
  const ExactResult d = exact_expectation(spec(3, "0.37", 5, Functional::ProductAtZero, {1, 2}, {1, 2}));
  CHECK(std::abs(d.covered.value + d.residual.value - 1.0) < 1e-12);
}

TEST_CASE("irrational p falls back to doubles") {
  EnumerationSpec s = spec(2, "0", 4, Functional::WindowCovariance, {1, 2}, {1, 2});
  s.p = Probability::from_double(0.1234567);
  const ExactResult r = exact_expectation(s);
  CHECK_FALSE(r.conditional.exact);
  CHECK(std::abs(r.covered.value + r.residual.value - 1.0) < 1e-12);
}

TEST_CASE("enumeration guard") {
  CHECK_THROWS_AS(exact_expectation(spec(6, "1/3", 40, Functional::WindowCovariance, {1, 2}, {3, 4})), GuardViolation);
}

TEST_CASE("increment bound") {
  const IncrementReport r2 = verify_increment_bound(2, 5);
  CHECK(r2.ok());
  CHECK(r2.max_change == 2);
  CHECK(r2.witness.size() == 5);
  const IncrementReport r3 = verify_increment_bound(3, 3);
  CHECK(r3.ok());
  CHECK(r3.max_change <= 2);
}

TEST_CASE("neighbor stacks") {
  const Word s = parse_word("B2 B1 B1 B3 B2 B2 B3", 3);
  Word sp = s;
  sp.erase(sp.begin() + 3);
  CHECK(are_neighbors(s, sp));
  CHECK(are_neighbors(sp, s));
  CHECK_FALSE(are_neighbors(s, s));
  Word far = sp;
  far.erase(far.begin());
  CHECK_FALSE(are_neighbors(s, far));

  NeighborReport report;
  CHECK(neighbor_case(3, s, 3, Word{}, report));
  CHECK(neighbor_case(3, s, 3, parse_word("O1 F F B3 O2", 3), report));
  CHECK(report.ok());

  CHECK(verify_example_stack(4).ok());
  const NeighborReport random = verify_neighbor_closure(20000, 10, 12, 7);
  CHECK(random.ok());
  CHECK(random.cases == 20000);
}

TEST_CASE("M relation") {
  std::vector<Trajectory> ts;
  ts.push_back(simulate_injected({2, 0.0}, parse_word("B1 B2 O1", 2), PastStack::rotating(2)));
  CHECK(ts[0].a_tilde(3) == std::vector<std::int64_t>{0, 1});
  CHECK(ts[0].a(3) == std::vector<std::int64_t>{-1, 1});
  CHECK(ts[0].a(0) == std::vector<std::int64_t>{0, 0});
  for (std::uint64_t i = 0; i < 30; ++i)
    ts.push_back(simulate_trajectory({2 + static_cast<int>(i % 3), 0.5}, 1000, i, PastMode::ExactMu));
  const MRelationReport r = verify_m_relation(ts);
  CHECK(r.ok());
  CHECK(r.trajectories == 31);
}
