#pragma once

// Structural checks on the Cm machinery of a finite p-algebra. Each helper
// returns human-readable failure lines; an empty list means every check passed.

#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "palg/congruence.hpp"
#include "palg/free.hpp"

namespace inv {

using palg::CmRecord;
using palg::Congruence;
using palg::Elem;
using palg::ElementSet;
using palg::Storey;
using palg::TableAlgebra;

struct Named {
  std::string name;
  TableAlgebra algebra;
};

inline TableAlgebra free_table(unsigned n, unsigned k) {
  return palg::upset_to_table(palg::free_algebra(n, k)->algebra());
}

// B0..B3, C3..C6, F_1(1), F_2(1), F_1(2) and B1 x B1.
inline std::vector<Named> base_corpus() {
  std::vector<Named> out;
  for (unsigned n = 0; n <= 3; ++n) out.push_back({"si:" + std::to_string(n), palg::build_si(n)});
  for (unsigned m = 3; m <= 6; ++m) out.push_back({"chain:" + std::to_string(m), palg::build_chain(m)});
  out.push_back({"free:1,1", free_table(1, 1)});
  out.push_back({"free:2,1", free_table(2, 1)});
  out.push_back({"free:1,2", free_table(1, 2)});
  out.push_back({"si:1*si:1", palg::product(palg::build_si(1), palg::build_si(1))});
  return out;
}

// Base corpus plus its quotients by Theta(a,1) (carriers up to 16) and by
// every Cm member, one algebra per isomorphism type.
inline std::vector<Named> corpus() {
  auto base = base_corpus();
  std::vector<Named> out = base;
  auto add = [&](std::string name, TableAlgebra q) {
    if (q.size() < 2) return;
    for (const auto& o : out)
      if (o.algebra.size() == q.size() && palg::is_isomorphic(o.algebra, q)) return;
    out.push_back({std::move(name), std::move(q)});
  };
  for (const auto& b : base) {
    const auto& a = b.algebra;
    if (a.size() <= 16)
      for (Elem x = 0; x < a.size(); ++x)
        add(b.name + "/T(" + std::to_string(x) + ",1)",
            palg::quotient(a, palg::principal_congruence(a, x, a.one())));
    auto records = palg::cm_all(a);
    for (std::size_t i = 0; i < records.size(); ++i)
      add(b.name + "/mu" + std::to_string(i), palg::quotient(a, records[i].mu));
  }
  return out;
}

inline std::vector<Elem> members(const ElementSet& s) {
  std::vector<Elem> out;
  s.for_each([&](std::size_t i) { out.push_back(static_cast<Elem>(i)); });
  return out;
}

inline ElementSet as_set(std::size_t n, const std::vector<std::size_t>& idx) {
  ElementSet s(n);
  for (auto i : idx) s.set(i);
  return s;
}

// Up(P) operations computed from the order alone.
inline ElementSet up_star(const palg::Poset& p, const ElementSet& u) {
  ElementSet out(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    bool below = false;
    u.for_each([&](std::size_t y) { below = below || p.leq(x, y); });
    if (!below) out.set(x);
  }
  return out;
}

inline bool is_up(const palg::Poset& p, const ElementSet& u) {
  bool ok = true;
  u.for_each([&](std::size_t x) {
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.leq(x, y) && !u.test(y)) ok = false;
  });
  return ok;
}

// x -> M-hat(x) into Up(P): upset-valued, operation-preserving; `bijective`
// additionally demands a bijection onto Up(P).
inline std::string check_m_hat_map(const TableAlgebra& a, const std::vector<CmRecord>& rec,
                                   const palg::Poset& p, bool bijective) {
  const std::size_t n = a.size(), m = rec.size();
  std::vector<ElementSet> img(n);
  for (Elem x = 0; x < n; ++x) {
    img[x] = as_set(m, palg::m_hat(a, rec, x));
    if (!is_up(p, img[x])) return "image of " + std::to_string(x) + " is not an upset";
  }
  if (img[a.zero()].any() || img[a.one()].count() != m) return "constants not preserved";
  for (Elem x = 0; x < n; ++x) {
    if (img[a.star(x)] != up_star(p, img[x])) return "star not preserved at " + std::to_string(x);
    for (Elem y = 0; y < n; ++y) {
      if (img[a.meet(x, y)] != (img[x] & img[y])) return "meet not preserved";
      if (img[a.join(x, y)] != (img[x] | img[y])) return "join not preserved";
    }
  }
  if (!bijective) return {};
  for (Elem x = 0; x < n; ++x)
    for (Elem y = x + 1; y < n; ++y)
      if (img[x] == img[y]) return "not injective";
  const std::uint64_t ups = m <= 20 ? oracle::count_upsets(p) : palg::count_upsets(p, 1u << 22);
  if (ups != n) return "Up(Cm) has " + std::to_string(ups) + " elements, A has " + std::to_string(n);
  return {};
}

struct Report {
  std::vector<std::string> failures;
  void fail(const std::string& check, const std::string& what) {
    failures.push_back(check + ": " + what);
  }
};

inline Report check_all(const TableAlgebra& a) {
  Report r;
  const std::size_t n = a.size();
  const auto rec = palg::cm_all(a);
  const std::size_t m = rec.size();
  const Elem one = a.one(), zero = a.zero();
  const ElementSet at = palg::atoms(a);
  auto star2 = [&](Elem x) { return a.star(a.star(x)); };

  // Phi bijectivity and cm-regularity.
  {
    std::set<std::vector<Elem>> ones;
    for (const auto& x : rec) ones.insert(members(x.one_class));
    if (ones != oracle::prime_filters(a)) r.fail("phi", "1-classes differ from the prime filters");
    if (ones.size() != m) r.fail("cm-regular", "two records share a 1-class");
    std::set<std::vector<Elem>> mus;
    for (const auto& x : rec) mus.insert(x.mu.labels());
    if (mus.size() != m) r.fail("phi", "duplicate congruences");
    if (n <= 8 && mus != oracle::meet_irreducible(oracle::congruences(a)))
      r.fail("cm-regular", "records differ from brute-force meet-irreducibles");
  }

  // Record-level facts.
  std::vector<Congruence> principal(n);
  for (Elem x = 0; x < n; ++x) principal[x] = palg::principal_congruence(a, x, one);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& x = rec[i];
    const bool full = x.mu_plus.is_full();
    const bool atom = at.test(x.psi);
    if ((x.storey == Storey::I) != full || full != atom) r.fail("storey", "record " + std::to_string(i));
    if (x.one_class != x.mu.class_of(one)) r.fail("record", "stored 1-class");
    bool least = x.one_class.test(x.psi);
    x.one_class.for_each([&](std::size_t y) { least = least && a.leq(x.psi, static_cast<Elem>(y)); });
    if (!least) r.fail("psi", "not the least of the 1-class");
    if (!x.mu.subset_of(x.mu_plus) || x.mu == x.mu_plus) r.fail("mu-plus", "not above mu");
    if (x.one_class.test(x.e_mu)) r.fail("mu-plus", "e inside the 1-class");
    if (x.mu_plus.class_of(one) != (x.one_class | x.mu.class_of(x.e_mu)))
      r.fail("mu-plus", "1/mu+ != 1/mu u e/mu");
    for (Elem y = 0; y < n; ++y) {
      if (x.mu_plus.related(y, one)) continue;
      auto c = x.mu.class_of(y);
      if (x.mu_plus.class_of(y) != c || x.mu.class_of(star2(y)) != c || x.mu_plus.class_of(star2(y)) != c)
        r.fail("mu-plus", "a/mu+ = a/mu = a**/mu fails at " + std::to_string(y));
    }
    auto q = palg::quotient(a, x.mu_plus);
    for (Elem y = 0; y < q.size(); ++y)
      if (q.join(y, q.star(y)) != q.one()) r.fail("mu-plus", "A/mu+ not Boolean");
  }

  // Psi: bijection onto J, order-inverting for <=^Cm.
  {
    std::set<Elem> psis;
    for (const auto& x : rec) psis.insert(x.psi);
    auto j = members(palg::join_irreducibles(a));
    if (psis != std::set<Elem>(j.begin(), j.end()) || psis.size() != m) r.fail("psi", "not a bijection onto J");
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        if (palg::cm_leq(rec[i], rec[k]) != a.leq(rec[k].psi, rec[i].psi)) r.fail("psi", "not order-inverting");
  }

  // Inclusion versus <=^Cm.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      const bool inc = rec[i].mu.subset_of(rec[k].mu), leq = palg::cm_leq(rec[i], rec[k]);
      if (inc && !leq) r.fail("cm-summary", "inclusion without <=^Cm");
      if (rec[k].storey == Storey::I && inc != leq) r.fail("cm-summary", "orders differ below storey I");
    }

  // 1-orderability.
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      if (x != y && principal[x] == principal[y]) r.fail("1-orderable", "Theta(a,1) = Theta(b,1) with a != b");
      if (principal[x].related(y, one) && !a.leq(x, y)) r.fail("1-orderable", "(b,1) in Theta(a,1) but a !<= b");
    }

  // Glivenko: M(~G) = storey I.
  {
    auto g = palg::glivenko(a);
    std::vector<std::size_t> storey1;
    for (std::size_t i = 0; i < m; ++i)
      if (rec[i].storey == Storey::I) storey1.push_back(i);
    if (palg::m_of(rec, g.relation) != storey1) r.fail("glivenko", "M(~G) != I_A");
    auto itype = palg::i_type_filters(a);
    std::set<std::vector<Elem>> lhs, rhs;
    for (const auto& f : itype) lhs.insert(members(f));
    for (auto i : storey1) rhs.insert(members(rec[i].one_class));
    if (lhs != rhs) r.fail("i-type", "I-type filters differ from storey-I 1-classes");
  }

  // D(A) and R(A).
  {
    if (palg::dense_elements(a) != palg::up_set(a, palg::join_all(a, at)))
      r.fail("dense", "D(A) != up(join of atoms)");
    auto av = members(at);
    ElementSet regs(n);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << av.size()); ++s) {
      Elem j = zero;
      for (std::size_t i = 0; i < av.size(); ++i)
        if (s >> i & 1) j = a.join(j, av[i]);
      regs.set(star2(j));
    }
    ElementSet direct(n);
    for (Elem x = 0; x < n; ++x)
      if (star2(x) == x) direct.set(x);
    if (regs != direct || palg::regular_elements(a) != direct) r.fail("regulars", "R(A) formula fails");
  }

  // A = Up(Cm, <=^Cm), and the homomorphism into Up(Cm, inclusion).
  if (auto e = check_m_hat_map(a, rec, palg::cm_order_poset(rec), true); !e.empty()) r.fail("up-cm", e);
  if (auto e = check_m_hat_map(a, rec, palg::cm_inclusion_poset(rec), false); !e.empty())
    r.fail("up-cm-inclusion", e);

  // Joins of strictly smaller elements: (p-)* = p* for non-atom p in J.
  palg::join_irreducibles(a).for_each([&](std::size_t p) {
    if (at.test(p)) return;
    Elem below = zero;
    for (Elem x = 0; x < n; ++x)
      if (x != p && a.leq(x, static_cast<Elem>(p))) below = a.join(below, x);
    if (a.star(below) != a.star(static_cast<Elem>(p))) r.fail("star-for-join-irr", std::to_string(p));
  });

  // Atoms against records.
  auto m_of_plus = [&](std::size_t i) { return palg::m_of(rec, rec[i].mu_plus); };
  at.for_each([&](std::size_t ai) {
    const Elem x = static_cast<Elem>(ai);
    auto mh = palg::m_hat(a, rec, x);
    if (mh.size() != 1 || rec[mh[0]].mu != principal[x]) {
      r.fail("atoms-and-cms", "M-hat(atom) is not {Theta(a,1)}");
      return;
    }
    const std::size_t mu = mh[0];
    std::vector<std::size_t> want_star, want_star2{mu};
    for (std::size_t i = 0; i < m; ++i) {
      if (rec[i].storey == Storey::I && i != mu) want_star.push_back(i);
      if (rec[i].storey == Storey::II && !rec[i].mu.subset_of(rec[mu].mu)) want_star.push_back(i);
      if (rec[i].storey == Storey::II && rec[i].mu_plus == rec[mu].mu) want_star2.push_back(i);
    }
    std::sort(want_star.begin(), want_star.end());
    std::sort(want_star2.begin(), want_star2.end());
    if (palg::m_hat(a, rec, a.star(x)) != want_star) r.fail("atoms-and-cms", "M-hat(a*)");
    if (palg::m_hat(a, rec, star2(x)) != want_star2) r.fail("atoms-and-cms", "M-hat(a**)");
    for (std::size_t i = 0; i < m; ++i) {
      if (rec[i].storey != Storey::II) continue;
      auto mp = m_of_plus(i);
      const bool in = std::find(mp.begin(), mp.end(), mu) != mp.end();
      const Elem p = rec[i].psi;
      const bool strictly = rec[i].mu.subset_of(rec[mu].mu) && rec[i].mu != rec[mu].mu;
      if (!in != a.leq(p, a.star(x))) r.fail("second-storey", "(1)");
      if (in != strictly || in != (x != p && a.leq(x, p))) r.fail("second-storey", "(2)");
    }
  });

  // Regular elements through M-hat; a* determined by M-hat(a*) on storey I.
  for (Elem x = 0; x < n; ++x) {
    auto mh = palg::m_hat(a, rec, x);
    ElementSet hat = as_set(m, mh);
    bool cond = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (rec[i].storey != Storey::II) continue;
      bool sub = true;
      for (auto k : m_of_plus(i)) sub = sub && rec[k].storey == Storey::I && hat.test(k);
      if (hat.test(i) != sub) cond = false;
    }
    if ((star2(x) == x) != cond) r.fail("tech-for-qid", std::to_string(x));
  }
  std::vector<ElementSet> hat_star_i(n);
  for (Elem x = 0; x < n; ++x) {
    hat_star_i[x] = ElementSet(m);
    for (auto i : palg::m_hat(a, rec, a.star(x)))
      if (rec[i].storey == Storey::I) hat_star_i[x].set(i);
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (hat_star_i[x] == hat_star_i[y] && a.star(x) != a.star(y)) r.fail("super-glivenko", "");

  // Congruences above storey I only: (a,b) ~ (a.b,1) ~ (a-b,0).
  {
    std::vector<palg::Congruence> thetas{palg::glivenko(a).relation};
    if (n <= palg::Limits{}.oracle_size)
      for (const auto& c : palg::all_congruences(a)) thetas.push_back(c);
    for (const auto& t : thetas) {
      bool only_i = true;
      for (auto i : palg::m_of(rec, t)) only_i = only_i && rec[i].storey == Storey::I;
      if (!only_i) continue;
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
          Elem dot = a.join(a.meet(a.star(x), a.star(y)), a.meet(x, y));
          Elem minus = a.meet(a.join(x, y), a.star(a.meet(x, y)));
          bool p = t.related(x, y), q = t.related(dot, one), s = t.related(minus, zero);
          if (p != q || q != s) r.fail("I-is-regular", std::to_string(x) + "," + std::to_string(y));
        }
    }
  }

  // Sort and drop repeats so one broken law does not flood the report.
  std::sort(r.failures.begin(), r.failures.end());
  r.failures.erase(std::unique(r.failures.begin(), r.failures.end()), r.failures.end());
  return r;
}

}  // namespace inv
