#include <doctest.h>

#include <random>
#include <set>

#include "invariants.hpp"
#include "oracles.hpp"
#include "palg/algebra.hpp"
#include "palg/free.hpp"
#include "palg/term.hpp"

using namespace palg;

namespace {

std::set<std::string> labels_of(const TableAlgebra& a, const ElementSet& s) {
  std::set<std::string> out;
  s.for_each([&](std::size_t i) { out.insert(a.label(static_cast<Elem>(i))); });
  return out;
}

TableAlgebra with_star(const TableAlgebra& a, Elem x, Elem value) {
  auto st = a.star_table();
  st[x] = value;
  return TableAlgebra(a.size(), a.meet_table(), a.join_table(), st, a.zero(), a.one(), a.labels());
}

}  // namespace

TEST_CASE("validate accepts the standard algebras") {
  CHECK(validate(build_si(1)).empty());
  CHECK(validate(build_boolean(1)).empty());
  for (const auto& c : inv::base_corpus()) {
    CAPTURE(c.name);
    CHECK(validate(c.algebra).empty());
    CHECK(oracle::is_palgebra(c.algebra));
  }
}

TEST_CASE("validate reports a genuine witness for a broken star") {
  // B1 with e* = e.
  auto bad = with_star(build_si(1), 1, 1);
  auto v = validate(bad);
  REQUIRE_FALSE(v.empty());
  bool axiom3 = false;
  for (const auto& x : v) {
    if (x.law != "x&(x&y)*=x&y*") continue;
    axiom3 = true;
    REQUIRE(x.witness.size() == 2);
    Elem p = x.witness[0], q = x.witness[1];
    CHECK(bad.meet(p, bad.star(bad.meet(p, q))) != bad.meet(p, bad.star(q)));
    CHECK(x.witness == std::vector<Elem>{1, 2});
  }
  CHECK(axiom3);
}

TEST_CASE("validate agrees with a direct law check on perturbed tables") {
  std::mt19937_64 rng(7);
  for (const auto& c : inv::base_corpus()) {
    const auto& a = c.algebra;
    if (a.size() > 12) continue;
    for (int t = 0; t < 20; ++t) {
      Elem x = static_cast<Elem>(rng() % a.size()), y = static_cast<Elem>(rng() % a.size());
      auto b = with_star(a, x, y);
      CAPTURE(c.name);
      CHECK(validate(b).empty() == oracle::is_palgebra(b));
    }
  }
}

TEST_CASE("validate rejects out-of-range entries") {
  auto a = build_si(1);
  auto st = a.star_table();
  st[0] = 7;
  CHECK_THROWS_AS(validate(TableAlgebra(3, a.meet_table(), a.join_table(), st, 0, 2)), Error);
}

TEST_CASE("subdirectly irreducible algebras") {
  auto b0 = build_si(0);
  CHECK(b0.size() == 2);
  CHECK(b0.star(0) == 1);
  CHECK(b0.star(1) == 0);

  auto b1 = build_si(1);
  CHECK(b1.labels() == std::vector<std::string>{"0", "e", "1"});
  CHECK(b1.star(1) == 0);
  CHECK(b1.star(0) == 2);
  CHECK(b1.star(2) == 0);
  CHECK(b1.leq(0, 1));
  CHECK(b1.leq(1, 2));

  auto b2 = build_si(2);
  CHECK(b2.size() == 5);
  CHECK(b2.star(1) == 2);
  CHECK(b2.star(2) == 1);
  CHECK(b2.star(3) == 0);

  for (unsigned n = 0; n <= 4; ++n) {
    auto a = build_si(n);
    CHECK(si_cond_check(a));
    oracle::SiOps ops{n};
    for (Elem x = 0; x < a.size(); ++x) {
      CHECK(a.star(x) == ops.star(x));
      for (Elem y = 0; y < a.size(); ++y) {
        CHECK(a.meet(x, y) == ops.meet(x, y));
        CHECK(a.join(x, y) == ops.join(x, y));
      }
    }
  }
  Limits small;
  small.table_size = 16;
  CHECK_THROWS_AS(build_si(4, small), Error);
}

TEST_CASE("chains") {
  CHECK(is_isomorphic(build_chain(2), build_si(0)));
  CHECK(is_isomorphic(build_chain(3), build_si(1)));
  auto c4 = build_chain(4);
  CHECK(c4.size() == 4);
  CHECK(c4.labels() == std::vector<std::string>{"0", "c2", "c1", "1"});
  for (Elem x = 1; x < 4; ++x) CHECK(c4.star(x) == 0);
  CHECK(c4.star(0) == 3);
  CHECK_THROWS(build_chain(1));
}

TEST_CASE("products and the trivial algebra") {
  auto p = product(build_si(1), build_si(0));
  CHECK(p.size() == 6);
  CHECK(validate(p).empty());
  CHECK(p.label(p.one()) == "(1,1)");
  auto t = trivial_algebra();
  CHECK(t.size() == 1);
  CHECK(validate(t).empty());
  CHECK(is_isomorphic(product(t, build_si(2)), build_si(2)));
}

TEST_CASE("join-irreducibles and atoms") {
  auto b0 = build_si(0);
  CHECK(join_irreducibles(b0) == ElementSet::of(2, {1}));
  CHECK(atoms(b0) == ElementSet::of(2, {1}));
  auto b2 = build_si(2);
  CHECK(join_irreducibles(b2) == ElementSet::of(5, {1, 2, 4}));
  CHECK(atoms(b2) == ElementSet::of(5, {1, 2}));
  for (unsigned n : {2u, 3u}) {
    auto f = inv::free_table(n, 1);
    CHECK(labels_of(f, join_irreducibles(f)) == std::set<std::string>{"x1", "x1*", "x1**", "1"});
  }
}

TEST_CASE("dense and regular elements") {
  auto b1 = build_si(1);
  CHECK(dense_elements(b1) == ElementSet::of(3, {1, 2}));
  CHECK(regular_elements(b1) == ElementSet::of(3, {0, 2}));
  auto d = free_distributive_table(2);
  CHECK(dense_elements(d) == ElementSet::full(d.size()) - ElementSet::of(d.size(), {d.zero()}));
}

TEST_CASE("regular algebra") {
  for (const auto& c : inv::base_corpus()) {
    std::vector<Elem> pts;
    auto r = regular_algebra(c.algebra, &pts);
    CAPTURE(c.name);
    CHECK(validate(r).empty());
    CHECK(r.size() == regular_elements(c.algebra).count());
    for (Elem x = 0; x < r.size(); ++x) CHECK(r.join(x, r.star(x)) == r.one());
  }
}

TEST_CASE("isomorphism") {
  auto b2 = build_si(2);
  auto self = is_isomorphic(b2, b2);
  REQUIRE(self);
  CHECK(oracle::is_isomorphism(b2, b2, *self));
  auto f11 = inv::free_table(1, 1);
  auto prod = product(build_si(1), build_si(0));
  auto iso = is_isomorphic(f11, prod);
  REQUIRE(iso);
  CHECK(oracle::is_isomorphism(f11, prod, *iso));
  CHECK_FALSE(is_isomorphic(build_si(2), build_chain(5)));
}

TEST_CASE("table and upset forms round-trip") {
  for (const auto& c : inv::base_corpus()) {
    std::vector<ElementSet> images;
    auto u = table_to_upset(c.algebra, &images);
    auto back = upset_to_table(u);
    CAPTURE(c.name);
    CHECK(back.size() == c.algebra.size());
    for (const auto& im : images) CHECK(u.contains(im));
    auto iso = is_isomorphic(c.algebra, back);
    REQUIRE(iso);
    CHECK(oracle::is_isomorphism(c.algebra, back, *iso));
    // The images respect the operations of Up(J).
    const auto& a = c.algebra;
    for (Elem x = 0; x < a.size(); ++x) {
      CHECK(images[a.star(x)] == u.star(images[x]));
      for (Elem y = 0; y < a.size(); ++y) CHECK(images[a.meet(x, y)] == u.meet(images[x], images[y]));
    }
  }
  PAlgebra p(build_si(2));
  CHECK(p.is_table());
  CHECK(p.upset().base().size() == 3);
}

TEST_CASE("upset algebra caps") {
  Limits l;
  l.table_size = 10;
  CHECK_THROWS_AS(upset_to_table(UpsetAlgebra(Poset::antichain(4)), l), Error);
}

TEST_CASE("subalgebras") {
  auto c4 = build_chain(4);
  auto u = subuniverse(c4, {1});
  CHECK(u == ElementSet::of(4, {0, 1, 3}));
  CHECK(is_isomorphic(subalgebra(c4, u), build_si(1)));
}

TEST_CASE("quasi-subtractive witness terms evaluate everywhere") {
  for (const auto& c : inv::base_corpus()) {
    const auto& a = c.algebra;
    for (Elem x = 0; x < a.size(); ++x)
      for (Elem y = 0; y < a.size(); ++y) {
        std::vector<Elem> v{0, x, y};
        Elem imp = eval(implication_term(), a, v);
        CHECK(imp == a.star(a.meet(x, a.star(y))));
        CHECK(eval(box_term(), a, v) == a.star(a.star(x)));
        // x -> x = 1 and box 1 = 1.
        if (x == y) CHECK(imp == a.one());
      }
  }
}
