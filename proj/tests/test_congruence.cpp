#include <doctest.h>

#include <set>

#include "invariants.hpp"
#include "oracles.hpp"
#include "palg/congruence.hpp"

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

std::set<std::vector<Elem>> as_members(const std::vector<ElementSet>& fs) {
  std::set<std::vector<Elem>> out;
  for (const auto& f : fs) out.insert(inv::members(f));
  return out;
}

}  // namespace

TEST_CASE("congruence basics") {
  Congruence c({5, 5, 2, 2, 5});
  CHECK(c.labels() == std::vector<Elem>{0, 0, 2, 2, 0});
  CHECK(c.class_count() == 2);
  CHECK(c.classes() == std::vector<std::vector<Elem>>{{0, 1, 4}, {2, 3}});
  CHECK(Congruence::identity(5).subset_of(c));
  CHECK(c.subset_of(Congruence::full(5)));
  CHECK(c.meet(Congruence::identity(5)).is_identity());
  CHECK(c.join(Congruence::full(5)).is_full());
  Congruence d({0, 1, 1, 3, 4});
  CHECK(c.join(d).is_full());
  CHECK(c.meet(d).is_identity());
  CHECK(c.meet(Congruence({0, 0, 2, 3, 3})) == Congruence({0, 0, 2, 3, 4}));
}

TEST_CASE("principal congruences") {
  for (unsigned n = 1; n <= 3; ++n) {
    auto b = build_si(n);
    Elem e = (Elem{1} << n) - 1;
    CAPTURE(n);
    CHECK(principal_congruence(b, 0, e) == principal_congruence(b, 0, b.one()));
    CHECK(principal_congruence(b, 0, b.one()).is_full());
    CHECK(principal_congruence(b, 3 % b.size(), 3 % b.size()).is_identity());
  }
  auto b1 = build_si(1);
  auto t = principal_congruence(b1, 1, 2);
  CHECK(t.classes() == std::vector<std::vector<Elem>>{{0}, {1, 2}});
  CHECK(is_congruence(b1, t));
  // The principal congruence is the least compatible partition containing the pair.
  for (const auto& c : inv::base_corpus()) {
    const auto& a = c.algebra;
    if (a.size() > 8) continue;
    auto con = oracle::congruences(a);
    for (Elem x = 0; x < a.size(); ++x)
      for (Elem y = x + 1; y < a.size(); ++y) {
        auto p = principal_congruence(a, x, y);
        CHECK(con.count(p.labels()));
        for (const auto& q : con)
          if (q[x] == q[y]) CHECK(oracle::rel_subset(p.labels(), q));
      }
  }
  auto c4 = build_chain(4);
  CHECK(generated_congruence(c4, {{1, 2}, {2, 3}}) == principal_congruence(c4, 1, 3));
}

TEST_CASE("all congruences agree with partition enumeration") {
  CHECK(all_congruences(build_si(0)).size() == 2);
  CHECK(all_congruences(build_si(1)).size() == 3);
  CHECK(all_congruences(build_chain(4)).size() == 5);
  for (const auto& c : inv::base_corpus()) {
    if (c.algebra.size() > 9) continue;
    CAPTURE(c.name);
    auto mine = all_congruences(c.algebra);
    std::set<std::vector<Elem>> got;
    for (const auto& m : mine) {
      CHECK(is_congruence(c.algebra, m));
      got.insert(m.labels());
    }
    CHECK(got.size() == mine.size());
    auto brute = oracle::congruences(c.algebra);
    CHECK(got == brute);
    std::set<std::vector<Elem>> mi;
    for (const auto& m : meet_irreducibles(mine)) mi.insert(m.labels());
    CHECK(mi == oracle::meet_irreducible(brute));
  }
  Limits l;
  l.oracle_size = 4;
  CHECK(code_of([&] { all_congruences(build_si(2), l); }) == ErrorCode::cap_exceeded);
}

TEST_CASE("quotients") {
  auto c4 = build_chain(4);
  auto q = quotient(c4, principal_congruence(c4, 2, 3));
  CHECK(q.size() == 3);
  CHECK(is_isomorphic(q, build_si(1)));
  CHECK(code_of([&] { quotient(c4, Congruence({0, 0, 2, 3})); }) == ErrorCode::not_a_congruence);
  CHECK_FALSE(is_congruence(c4, Congruence({0, 0, 2, 3})));
}

TEST_CASE("prime filters") {
  CHECK(prime_filters(build_si(2)).size() == 3);
  CHECK(prime_filters(inv::free_table(1, 1)).size() == 3);
  CHECK(prime_filters(inv::free_table(2, 1)).size() == 4);
  for (const auto& c : inv::base_corpus()) {
    CAPTURE(c.name);
    auto pf = prime_filters(c.algebra);
    CHECK(as_members(pf) == oracle::prime_filters(c.algebra));
    for (const auto& f : pf) CHECK(is_prime_filter(c.algebra, f));
    CHECK(pf.size() == join_irreducibles(c.algebra).count());
  }
  auto b1 = build_si(1);
  CHECK_FALSE(is_prime_filter(b1, ElementSet(3)));
  CHECK_FALSE(is_prime_filter(b1, ElementSet::full(3)));
  CHECK_FALSE(is_prime_filter(build_si(2), ElementSet::of(5, {3, 4})));
}

TEST_CASE("I-type filters") {
  auto b1 = build_si(1);
  auto it = i_type_filters(b1);
  REQUIRE(it.size() == 1);
  CHECK(it[0] == ElementSet::of(3, {1, 2}));
  CHECK_FALSE(is_i_type(b1, ElementSet::of(3, {2})));
  for (unsigned k = 1; k <= 3; ++k) {
    auto b = build_boolean(k);
    CHECK(i_type_filters(b).size() == prime_filters(b).size());
  }
}

TEST_CASE("cm records of small algebras") {
  auto b1 = build_si(1);
  auto r = cm_all(b1);
  REQUIRE(r.size() == 2);
  // up e
  CHECK(r[0].mu.classes() == std::vector<std::vector<Elem>>{{0}, {1, 2}});
  CHECK(r[0].storey == Storey::I);
  CHECK(r[0].psi == 1);
  CHECK(r[0].e_mu == 0);
  CHECK(r[0].mu_plus.is_full());
  // up 1
  CHECK(r[1].mu.is_identity());
  CHECK(r[1].storey == Storey::II);
  CHECK(r[1].psi == 2);
  CHECK(r[1].e_mu == 1);
  CHECK(r[1].mu_plus == r[0].mu);

  auto c4 = build_chain(4);
  auto rc = cm_all(c4);
  REQUIRE(rc.size() == 3);
  CHECK(rc[0].mu.classes() == std::vector<std::vector<Elem>>{{0}, {1, 2, 3}});
  CHECK(rc[1].mu.classes() == std::vector<std::vector<Elem>>{{0}, {1}, {2, 3}});
  CHECK(rc[2].mu.classes() == std::vector<std::vector<Elem>>{{0}, {1, 2}, {3}});
  CHECK(cm_inclusion_poset(rc).covers() == std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}, {2, 0}});
  CHECK(cm_order_poset(rc).covers() == std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}, {2, 1}});
  CHECK(cm_leq(rc[2], rc[0]));
  CHECK_FALSE(cm_leq(rc[0], rc[2]));

  for (const auto& c : inv::base_corpus()) {
    const auto& a = c.algebra;
    CAPTURE(c.name);
    auto rec = cm_all(a);
    auto pf = prime_filters(a);
    REQUIRE(rec.size() == pf.size());
    std::set<std::vector<Elem>> mus;
    for (std::size_t i = 0; i < rec.size(); ++i) {
      CHECK(rec[i].one_class == pf[i]);
      CHECK(rec[i].mu.class_of(a.one()) == pf[i]);
      CHECK(rec[i].psi == inv::members(pf[i]).front());
      mus.insert(rec[i].mu.labels());
    }
    if (a.size() <= 9) CHECK(mus == oracle::meet_irreducible(oracle::congruences(a)));
  }
}

TEST_CASE("cm lookup errors") {
  auto c4 = build_chain(4);
  CHECK(code_of([&] { cm_from_prime_filter(c4, ElementSet(4)); }) == ErrorCode::not_prime);
  CHECK(code_of([&] { cm_from_prime_filter(c4, ElementSet::of(4, {1, 3})); }) == ErrorCode::not_prime);
  CHECK(code_of([&] { cm_from_prime_filter(build_si(2), ElementSet::of(5, {3, 4})); }) == ErrorCode::not_prime);
}

TEST_CASE("m-hat and m") {
  for (const auto& c : inv::base_corpus()) {
    const auto& a = c.algebra;
    auto rec = cm_all(a);
    CHECK(m_hat(a, rec, a.one()).size() == rec.size());
    CHECK(m_hat(a, rec, a.zero()).empty());
    CHECK(m_of(rec, Congruence::identity(a.size())).size() == rec.size());
    CHECK(m_of(rec, Congruence::full(a.size())).empty());
    for (Elem x = 0; x < a.size(); ++x)
      for (std::size_t i : m_hat(a, rec, x)) CHECK(rec[i].mu.related(x, a.one()));
  }
  auto b1 = build_si(1);
  auto rec = cm_all(b1);
  CHECK(m_hat(b1, rec, 1) == std::vector<std::size_t>{0});
}

TEST_CASE("Glivenko congruence") {
  for (const auto& c : inv::base_corpus()) {
    const auto& a = c.algebra;
    auto g = glivenko(a);
    CHECK(is_congruence(a, g.relation));
    CHECK(g.regular.size() == g.relation.class_count());
    CHECK(validate(g.regular).empty());
    for (Elem x = 0; x < a.size(); ++x)
      for (Elem y = 0; y < a.size(); ++y)
        CHECK(g.relation.related(x, y) == (a.star(a.star(x)) == a.star(a.star(y))));
  }
}

TEST_CASE("permutability") {
  auto c4 = build_chain(4);
  CHECK_FALSE(compose_check_permutability(c4, c4.one()).witnesses.empty());
  CHECK(compose_check_permutability(c4, c4.zero()).witnesses.empty());
  auto b = build_boolean(2);
  CHECK(compose_check_permutability(b, b.one()).witnesses.empty());
  auto rep = compose_check_permutability(c4, c4.one());
  for (const auto& w : rep.witnesses) {
    CHECK(w.alpha < w.beta);
    CHECK(w.alpha_first != w.beta_first);
  }
}

TEST_CASE("structural invariants over the corpus") {
  for (const auto& c : inv::corpus()) {
    CAPTURE(c.name);
    auto r = inv::check_all(c.algebra);
    for (const auto& f : r.failures) INFO(f);
    CHECK(r.failures.empty());
  }
}
