#include "palg/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

namespace palg {

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Elem{0}); }
  Elem find(Elem x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(Elem a, Elem b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
  std::vector<Elem> ids() {
    std::vector<Elem> out(parent.size());
    for (Elem i = 0; i < parent.size(); ++i) out[i] = find(i);
    return out;
  }
  std::vector<Elem> parent;
};

}  // namespace

Congruence::Congruence(const std::vector<Elem>& class_ids) : label_(class_ids.size()) {
  std::unordered_map<Elem, Elem> least;
  for (Elem i = 0; i < class_ids.size(); ++i)
    label_[i] = least.emplace(class_ids[i], i).first->second;
}

Congruence Congruence::identity(std::size_t size) {
  std::vector<Elem> ids(size);
  std::iota(ids.begin(), ids.end(), Elem{0});
  return Congruence(ids);
}

Congruence Congruence::full(std::size_t size) { return Congruence(std::vector<Elem>(size, 0)); }

std::size_t Congruence::class_count() const {
  std::size_t n = 0;
  for (Elem i = 0; i < label_.size(); ++i)
    if (label_[i] == i) ++n;
  return n;
}

ElementSet Congruence::class_of(Elem a) const {
  ElementSet s(size());
  for (Elem i = 0; i < label_.size(); ++i)
    if (label_[i] == label_[a]) s.set(i);
  return s;
}

std::vector<std::vector<Elem>> Congruence::classes() const {
  std::vector<std::vector<Elem>> out;
  std::vector<std::size_t> slot(size(), 0);
  for (Elem i = 0; i < label_.size(); ++i) {
    if (label_[i] == i) {
      slot[i] = out.size();
      out.push_back({i});
    } else {
      out[slot[label_[i]]].push_back(i);
    }
  }
  return out;
}

bool Congruence::is_identity() const { return class_count() == size(); }
bool Congruence::is_full() const { return class_count() == 1; }

bool Congruence::subset_of(const Congruence& other) const {
  for (Elem i = 0; i < label_.size(); ++i)
    if (!other.related(i, label_[i])) return false;
  return true;
}

Congruence Congruence::meet(const Congruence& other) const {
  std::vector<Elem> ids(size());
  for (Elem i = 0; i < size(); ++i) ids[i] = static_cast<Elem>(label_[i] * size() + other.label_[i]);
  return Congruence(ids);
}

Congruence Congruence::join(const Congruence& other) const {
  UnionFind uf(size());
  for (Elem i = 0; i < size(); ++i) {
    uf.unite(i, label_[i]);
    uf.unite(i, other.label_[i]);
  }
  return Congruence(uf.ids());
}

bool is_congruence(const TableAlgebra& a, const Congruence& c) {
  if (c.size() != a.size()) return false;
  for (Elem x = 0; x < a.size(); ++x) {
    const Elem y = c.label(x);
    if (x == y) continue;
    if (!c.related(a.star(x), a.star(y))) return false;
    for (Elem z = 0; z < a.size(); ++z) {
      if (!c.related(a.meet(x, z), a.meet(y, z))) return false;
      if (!c.related(a.join(x, z), a.join(y, z))) return false;
    }
  }
  return true;
}

Congruence generated_congruence(const TableAlgebra& a,
                                const std::vector<std::pair<Elem, Elem>>& pairs) {
  const Elem n = static_cast<Elem>(a.size());
  UnionFind uf(n);
  std::vector<std::pair<Elem, Elem>> work;
  auto relate = [&](Elem x, Elem y) {
    if (uf.unite(x, y)) work.emplace_back(x, y);
  };
  for (auto [x, y] : pairs) {
    if (x >= n || y >= n) fail(ErrorCode::index_out_of_range, "element outside algebra");
    relate(x, y);
  }
  // Closing each newly merged pair under all translations suffices: every
  // other related pair is chained from merged ones.
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    relate(a.star(x), a.star(y));
    for (Elem z = 0; z < n; ++z) {
      relate(a.meet(x, z), a.meet(y, z));
      relate(a.join(x, z), a.join(y, z));
    }
  }
  return Congruence(uf.ids());
}

Congruence principal_congruence(const TableAlgebra& a, Elem x, Elem y) {
  return generated_congruence(a, {{x, y}});
}

TableAlgebra quotient(const TableAlgebra& a, const Congruence& c) {
  if (!is_congruence(a, c)) fail(ErrorCode::not_a_congruence, "partition is not a congruence");
  std::vector<Elem> reps, index(a.size());
  for (Elem i = 0; i < a.size(); ++i) {
    if (c.label(i) == i) reps.push_back(i);
  }
  for (Elem i = 0; i < a.size(); ++i)
    index[i] = static_cast<Elem>(std::lower_bound(reps.begin(), reps.end(), c.label(i)) - reps.begin());
  const std::size_t m = reps.size();
  std::vector<Elem> meet(m * m), join(m * m), star(m);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    star[i] = index[a.star(reps[i])];
    labels[i] = a.label(reps[i]);
    for (std::size_t j = 0; j < m; ++j) {
      meet[i * m + j] = index[a.meet(reps[i], reps[j])];
      join[i * m + j] = index[a.join(reps[i], reps[j])];
    }
  }
  return TableAlgebra(m, std::move(meet), std::move(join), std::move(star), index[a.zero()],
                      index[a.one()], std::move(labels));
}

std::vector<Congruence> all_congruences(const TableAlgebra& a, const Limits& limits) {
  check_cap(a.size(), limits.oracle_size, "congruence lattice carrier");
  std::set<std::vector<Elem>> seen;
  std::vector<Congruence> out;
  auto add = [&](const Congruence& c) {
    if (seen.insert(c.labels()).second) out.push_back(c);
  };
  add(Congruence::identity(a.size()));
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = x + 1; y < a.size(); ++y) add(principal_congruence(a, x, y));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(out[i].join(out[j]));
  std::sort(out.begin(), out.end(), [](const Congruence& p, const Congruence& q) {
    if (p.class_count() != q.class_count()) return p.class_count() > q.class_count();
    return p.labels() < q.labels();
  });
  return out;
}

std::vector<Congruence> meet_irreducibles(const std::vector<Congruence>& con) {
  std::vector<Congruence> out;
  for (const auto& t : con) {
    if (t.is_full()) continue;
    Congruence inter = Congruence::full(t.size());
    for (const auto& u : con)
      if (u != t && t.subset_of(u)) inter = inter.meet(u);
    if (inter != t) out.push_back(t);
  }
  return out;
}

bool is_prime_filter(const TableAlgebra& a, const ElementSet& f) {
  if (f.size() != a.size() || !f.test(a.one()) || f.test(a.zero())) return false;
  for (Elem x = 0; x < a.size(); ++x) {
    for (Elem y = 0; y < a.size(); ++y) {
      if (f.test(x) && a.leq(x, y) && !f.test(y)) return false;
      if (f.test(x) && f.test(y) && !f.test(a.meet(x, y))) return false;
      if (f.test(a.join(x, y)) && !f.test(x) && !f.test(y)) return false;
    }
  }
  return true;
}

std::vector<ElementSet> prime_filters(const TableAlgebra& a) {
  std::vector<ElementSet> out;
  join_irreducibles(a).for_each([&](std::size_t p) { out.push_back(up_set(a, static_cast<Elem>(p))); });
  return out;
}

bool is_i_type(const TableAlgebra& a, const ElementSet& f) {
  for (Elem x = 0; x < a.size(); ++x)
    if (f.test(a.star(a.star(x))) && !f.test(x)) return false;
  return true;
}

std::vector<ElementSet> i_type_filters(const TableAlgebra& a) {
  std::vector<ElementSet> out;
  for (auto& f : prime_filters(a))
    if (is_i_type(a, f)) out.push_back(std::move(f));
  return out;
}

const char* storey_name(Storey s) noexcept { return s == Storey::I ? "I" : "II"; }

CmRecord cm_from_prime_filter(const TableAlgebra& a, const ElementSet& f) {
  if (!is_prime_filter(a, f)) fail(ErrorCode::not_prime, "set is not a prime filter");
  const Elem n = static_cast<Elem>(a.size());
  ElementSet fbar(n);
  for (Elem x = 0; x < n; ++x)
    if (f.test(a.star(a.star(x)))) fbar.set(x);

  CmRecord r;
  r.one_class = f;
  r.psi = meet_all(a, f);
  std::vector<Elem> ids(n);
  if (fbar == f) {
    r.storey = Storey::I;
    for (Elem x = 0; x < n; ++x) ids[x] = f.test(x) ? 0 : 1;
    r.mu = Congruence(ids);
    r.mu_plus = Congruence::full(n);
  } else {
    r.storey = Storey::II;
    std::vector<ElementSet> gs;
    for (auto& g : i_type_filters(a))
      if (fbar.is_subset_of(g)) gs.push_back(std::move(g));
    // Outside fbar, classes are membership signatures over the I-type
    // filters containing fbar.
    std::vector<std::vector<bool>> sigs;
    for (Elem x = 0; x < n; ++x) {
      if (f.test(x)) {
        ids[x] = 0;
      } else if (fbar.test(x)) {
        ids[x] = 1;
      } else {
        std::vector<bool> sig;
        for (const auto& g : gs) sig.push_back(g.test(x));
        auto it = std::find(sigs.begin(), sigs.end(), sig);
        ids[x] = static_cast<Elem>(2 + (it - sigs.begin()));
        if (it == sigs.end()) sigs.push_back(std::move(sig));
      }
    }
    r.mu = Congruence(ids);
    for (Elem x = 0; x < n; ++x)
      if (ids[x] == 1) ids[x] = 0;
    r.mu_plus = Congruence(ids);
  }
  if (!is_congruence(a, r.mu) || !is_congruence(a, r.mu_plus))
    fail(ErrorCode::not_a_congruence, "filter construction did not give a congruence");

  // e_mu: least member of the class covered by the 1-class in A/mu.
  TableAlgebra q = quotient(a, r.mu);
  ElementSet below(q.size());
  for (Elem c = 0; c < q.size(); ++c)
    if (c != q.one()) below.set(c);
  auto subcovers = max_elements(
      Poset::from_relation(q.size(), [&](std::size_t x, std::size_t y) {
        return q.leq(static_cast<Elem>(x), static_cast<Elem>(y));
      }, Limits{q.size(), q.size()}),
      below);
  if (subcovers.count() != 1)
    fail(ErrorCode::not_a_congruence, "quotient has no unique subcover of 1");
  // Class index c in the quotient corresponds to the c-th least representative.
  std::vector<Elem> reps;
  for (Elem x = 0; x < n; ++x)
    if (r.mu.label(x) == x) reps.push_back(x);
  r.e_mu = reps[subcovers.first()];

  // The quotient must be subdirectly irreducible: 2 or some build_si(m).
  const std::size_t m = atoms(q).count();
  const bool si = q.size() == 2 ? true
                                : (m < 20 && q.size() == (std::size_t{1} << m) + 1 &&
                                   is_isomorphic(q, build_si(static_cast<unsigned>(m),
                                                             Limits{4096, q.size()}))
                                       .has_value());
  if (!si) fail(ErrorCode::not_a_congruence, "quotient is not subdirectly irreducible");
  return r;
}

std::vector<CmRecord> cm_all(const TableAlgebra& a) {
  std::vector<CmRecord> out;
  for (const auto& f : prime_filters(a)) out.push_back(cm_from_prime_filter(a, f));
  return out;
}

bool cm_leq(const CmRecord& r, const CmRecord& s) { return r.one_class.is_subset_of(s.one_class); }

std::vector<std::size_t> m_hat(const TableAlgebra& a, const std::vector<CmRecord>& records,
                               Elem x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].mu.related(x, a.one())) out.push_back(i);
  return out;
}

std::vector<std::size_t> m_of(const std::vector<CmRecord>& records, const Congruence& c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (c.subset_of(records[i].mu)) out.push_back(i);
  return out;
}

Poset cm_inclusion_poset(const std::vector<CmRecord>& records) {
  Limits l;
  l.poset_size = records.size();
  return Poset::from_relation(
      records.size(),
      [&](std::size_t i, std::size_t j) { return records[i].mu.subset_of(records[j].mu); }, l);
}

Poset cm_order_poset(const std::vector<CmRecord>& records) {
  Limits l;
  l.poset_size = records.size();
  return Poset::from_relation(
      records.size(), [&](std::size_t i, std::size_t j) { return cm_leq(records[i], records[j]); },
      l);
}

Glivenko glivenko(const TableAlgebra& a) {
  std::vector<Elem> ids(a.size());
  for (Elem x = 0; x < a.size(); ++x) ids[x] = a.star(a.star(x));
  Glivenko g;
  g.relation = Congruence(ids);
  g.regular = regular_algebra(a, &g.points);
  return g;
}

PermutabilityReport compose_check_permutability(const TableAlgebra& a, Elem c, unsigned n,
                                                const Limits& limits) {
  if (c >= a.size()) fail(ErrorCode::index_out_of_range, "element outside algebra");
  if (n < 1) fail(ErrorCode::invalid_argument, "composition length must be positive");
  PermutabilityReport rep;
  rep.congruences = all_congruences(a, limits);
  const auto& con = rep.congruences;
  auto step = [&](const ElementSet& s, const Congruence& t) {
    ElementSet out(a.size());
    s.for_each([&](std::size_t x) { out |= t.class_of(static_cast<Elem>(x)); });
    return out;
  };
  auto alternate = [&](const Congruence& first, const Congruence& second) {
    ElementSet s = ElementSet::of(a.size(), {c});
    for (unsigned i = 0; i < n; ++i) s = step(s, i % 2 == 0 ? first : second);
    return s;
  };
  for (std::size_t i = 0; i < con.size(); ++i)
    for (std::size_t j = i + 1; j < con.size(); ++j) {
      ElementSet ab = alternate(con[i], con[j]), ba = alternate(con[j], con[i]);
      if (ab != ba) rep.witnesses.push_back({i, j, ab, ba});
    }
  return rep;
}

}  // namespace palg
