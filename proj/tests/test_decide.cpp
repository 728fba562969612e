#include <doctest.h>

#include <random>

#include "invariants.hpp"
#include "oracles.hpp"
#include "palg/decide.hpp"

using namespace palg;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::io_error;
}

bool eq_holds_at(const Equation& e, const TableAlgebra& a, const std::vector<Elem>& v) {
  return eval(e.lhs, a, v) == eval(e.rhs, a, v);
}

bool qi_fails_at(const QuasiIdentity& q, const TableAlgebra& a, const std::vector<Elem>& v) {
  for (const auto& p : q.premises)
    if (!eq_holds_at(p, a, v)) return false;
  return !eq_holds_at(q.conclusion, a, v);
}

// Brute quasi-identity check over every valuation.
bool qi_holds_brute(const QuasiIdentity& q, const TableAlgebra& a) {
  const unsigned k = max_var(q);
  std::vector<Elem> v(k + 1, 0);
  while (true) {
    if (qi_fails_at(q, a, v)) return false;
    unsigned i = k;
    while (i >= 1 && ++v[i] == a.size()) v[i--] = 0;
    if (i == 0) return true;
  }
}

QuasiIdentity qi(std::vector<std::string> premises, const std::string& conclusion) {
  QuasiIdentity q;
  for (const auto& p : premises) q.premises.push_back(parse_equation(p));
  q.conclusion = parse_equation(conclusion);
  return q;
}

}  // namespace

TEST_CASE("varieties") {
  CHECK(parse_variety("pa") == kOmega);
  CHECK(parse_variety("pa0") == 0);
  CHECK(parse_variety("pa12") == 12);
  CHECK(variety_name(kOmega) == "pa");
  CHECK(variety_name(3) == "pa3");
  CHECK(code_of([] { parse_variety("xx"); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { parse_variety("pa-1"); }) == ErrorCode::invalid_argument);
  CHECK(deciding_si(2, 5) == 2);
  CHECK(deciding_si(kOmega, 2) == 4);
}

TEST_CASE("identity checks") {
  auto e = parse_equation("x1* | x1** = 1");
  CHECK(check_identity(e, 0).holds);
  CHECK(check_identity(e, 1).holds);
  auto v = check_identity(e, 2);
  CHECK_FALSE(v.holds);
  CHECK(v.method == Method::normal_form);
  CHECK(v.algebra == "si:2");
  CHECK(v.witness_labels.at(1) == "a2");
  CHECK_FALSE(eq_holds_at(e, build_si(2), v.witness));

  CHECK(check_identity(parse_equation("x1 & x1* = 0"), kOmega).holds);
  CHECK(check_identity(parse_equation("x1*** = x1*"), kOmega).holds);
  CHECK(check_identity(parse_equation("(x1 & x2)** = x1** & x2**"), kOmega).holds);
  CHECK_FALSE(check_identity(parse_equation("(x1 | x2)** = x1** | x2**"), kOmega).holds);
  CHECK(check_identity(parse_equation("(x1 | x2)** = x1** | x2**"), 0).holds);
  for (unsigned m = 1; m <= 3; ++m) {
    Equation ib{ib_term(m), Term::one()};
    CHECK(check_identity(ib, m).holds);
    auto w = check_identity(ib, m + 1);
    CHECK_FALSE(w.holds);
    CHECK_FALSE(eq_holds_at(ib, build_si(m + 1), w.witness));
  }
}

TEST_CASE("identity methods agree and witnesses re-evaluate") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 150; ++i) {
    Equation e{random_term(rng, 2, 5), random_term(rng, 2, 5)};
    for (unsigned n : {0u, 1u, 2u, kOmega}) {
      auto a = check_identity(e, n, Method::normal_form);
      auto b = check_identity(e, n, Method::exhaustive);
      CHECK(a.holds == b.holds);
      CHECK(a.holds == oracle::si_equal(deciding_si(n, 2), 2, e.lhs, e.rhs));
      if (!a.holds) {
        auto si = build_si(deciding_si(n, 2));
        CHECK_FALSE(eq_holds_at(e, si, a.witness));
        CHECK_FALSE(eq_holds_at(e, si, b.witness));
      }
    }
  }
}

TEST_CASE("identity budget") {
  Limits l;
  l.valuation_budget = 10;
  CHECK(code_of([&] { check_identity(parse_equation("x1 & x2 & x3 = x3 & x2 & x1"), 3, Method::exhaustive, l); }) ==
        ErrorCode::budget_exceeded);
}

TEST_CASE("the qb3 quasi-identity") {
  auto q = qb_system(3);
  auto si3 = build_si(3);
  for (auto m : {Method::exhaustive, Method::pruned}) {
    auto v = check_quasi_identity(q, si3, m);
    CHECK_FALSE(v.holds);
    CHECK(v.witness == std::vector<Elem>{0, 1, 2, 4});
    CHECK(v.witness_labels == std::vector<std::string>{"", "a1", "a2", "a3"});
  }
  auto f41 = check_in_free(q, 4, 1, Method::exhaustive);
  CHECK(f41.holds);
  CHECK(f41.budget_used == 343);
  CHECK(check_in_free(q, 3, 2, Method::pruned).holds);
  CHECK(qi_holds_brute(q, inv::free_table(4, 1)));
  CHECK(code_of([&] { admissible_in_free(q, 3); }) == ErrorCode::cap_exceeded);
}

TEST_CASE("pruned and exhaustive strategies agree") {
  std::mt19937_64 rng(31);
  auto corpus = inv::base_corpus();
  for (int i = 0; i < 60; ++i) {
    QuasiIdentity q;
    q.premises.push_back({random_term(rng, 2, 3), random_term(rng, 2, 3)});
    if (i % 2) q.premises.push_back({random_term(rng, 2, 3), random_term(rng, 2, 3)});
    q.conclusion = {random_term(rng, 2, 4), random_term(rng, 2, 4)};
    for (const auto& c : corpus) {
      if (c.algebra.size() > 20) continue;
      auto a = check_quasi_identity(q, c.algebra, Method::exhaustive);
      auto b = check_quasi_identity(q, c.algebra, Method::pruned);
      CAPTURE(c.name);
      CHECK(a.holds == b.holds);
      CHECK(a.holds == qi_holds_brute(q, c.algebra));
      CHECK(a.witness == b.witness);
      if (!b.holds) CHECK(qi_fails_at(q, c.algebra, b.witness));
    }
  }
}

TEST_CASE("quasi-identities in small free algebras") {
  // x* = 0 does not force x = 1 in F_1(1).
  auto dense = qi({"x1* = 0"}, "x1 = 1");
  auto v = check_in_free(dense, 1, 1);
  CHECK_FALSE(v.holds);
  CHECK(v.algebra == "free:1,1");
  CHECK(qi_fails_at(dense, inv::free_table(1, 1), v.witness));
  CHECK(check_quasi_identity(dense, build_si(0)).holds);
  auto q = qi({"x1* = 1"}, "x1 = 0");
  CHECK(admissible_in_free(q, 2).holds);
  CHECK(admissible_in_free(q, kOmega, 1).holds);
  CHECK(check_quasi_identity(qi({}, "x1 & x1* = 0"), build_chain(5)).holds);
}

TEST_CASE("quasi-identity budget") {
  Limits l;
  l.valuation_budget = 5;
  CHECK(code_of([&] { check_quasi_identity(qb_system(3), build_si(3), Method::exhaustive, l); }) ==
        ErrorCode::budget_exceeded);
}

TEST_CASE("structural completeness report") {
  for (unsigned n = 0; n <= 2; ++n) {
    auto r = structural_completeness_report(n);
    CHECK(r.structurally_complete);
    CHECK(r.classification.size() == n + 2);
    CHECK(r.classification.front() == "pa-1");
    CHECK(r.classification.back() == variety_name(n));
    CHECK_FALSE(r.subalgebras.empty());
    for (const auto& s : r.subalgebras) CHECK(s.verified);
  }
  for (unsigned n = 3; n <= 4; ++n) {
    auto r = structural_completeness_report(n);
    CHECK_FALSE(r.structurally_complete);
    REQUIRE_FALSE(r.verdicts.empty());
    CHECK(r.verdicts[0].first == "si:3");
    CHECK_FALSE(r.verdicts[0].second.holds);
    for (std::size_t i = 1; i < r.verdicts.size(); ++i) CHECK(r.verdicts[i].second.holds);
    CHECK_FALSE(r.note.empty());
  }
}

TEST_CASE("subalgebra witnesses") {
  auto si3 = build_si(3);
  auto w = subalgebra_witnesses("si:3", si3);
  REQUIRE(w.size() == 2);
  CHECK(w[0].universe == std::vector<Elem>{0, 7, 8});
  CHECK(w[0].si_index == 1);
  CHECK(w[1].universe == std::vector<Elem>{0, 1, 6, 7, 8});
  CHECK(w[1].si_index == 2);
  for (const auto& c : inv::base_corpus())
    for (const auto& s : subalgebra_witnesses(c.name, c.algebra)) {
      ElementSet u(c.algebra.size());
      for (Elem x : s.universe) u.set(x);
      CHECK(subuniverse(c.algebra, s.universe) == u);
      auto sub = subalgebra(c.algebra, u);
      auto iso = is_isomorphic(sub, build_si(s.si_index));
      REQUIRE(iso);
      CHECK(oracle::is_isomorphism(sub, build_si(s.si_index), *iso));
    }
  CHECK(subalgebra_witnesses("b", build_boolean(2)).empty());
}

TEST_CASE("normal form oracle") {
  auto r = oracle_equivalence(parse_term("x1**"), parse_term("x1"), 0);
  CHECK(r.nf_equal);
  CHECK(r.agree());
  r = oracle_equivalence(parse_term("x1**"), parse_term("x1"), 1);
  CHECK_FALSE(r.nf_equal);
  CHECK_FALSE(r.exhaustive_equal);
  auto b = oracle_batch(300, 42);
  CHECK(b.trials == 300);
  CHECK(b.agreements == 300);
  CHECK(b.disagreements.empty());
  CHECK(b.equal_pairs >= 150);
  auto again = oracle_batch(300, 42);
  CHECK(again.equal_pairs == b.equal_pairs);
}

TEST_CASE("equal rewrites preserve meaning") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 200; ++i) {
    Term t = random_term(rng, 3, 5);
    Term u = equal_rewrite(rng, t, 3);
    CHECK(oracle::si_equal(3, 3, t, u));
  }
}
