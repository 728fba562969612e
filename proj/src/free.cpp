#include "palg/free.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>

namespace palg {

unsigned effective_n(unsigned n, unsigned k) {
  if (k >= 32) return n;
  const unsigned full = 1u << k;
  return std::min(n, full);
}

std::uint64_t JIndex::family_mask() const {
  std::uint64_t m = 0;
  for (Subset t : family) m |= std::uint64_t{1} << t;
  return m;
}

Subset JIndex::common() const {
  Subset c = k >= 32 ? ~Subset{0} : (Subset{1} << k) - 1;
  for (Subset t : family) c &= t;
  return c;
}

bool canonical_less(const JIndex& a, const JIndex& b) {
  if (a.family.size() != b.family.size()) return a.family.size() < b.family.size();
  if (a.family != b.family) return a.family < b.family;
  return a.l < b.l;
}

void check_jindex(const JIndex& j) {
  if (j.k > kMaxRank) fail(ErrorCode::cap_exceeded, "rank above " + std::to_string(kMaxRank));
  if (j.family.empty()) fail(ErrorCode::bad_index, "family must be nonempty");
  const Subset universe = (Subset{1} << j.k) - 1;
  for (std::size_t i = 0; i < j.family.size(); ++i) {
    if (j.family[i] & ~universe) fail(ErrorCode::bad_index, "family member outside {1..k}");
    if (i && j.family[i - 1] >= j.family[i])
      fail(ErrorCode::bad_index, "family must be strictly ascending");
  }
  if (j.l & ~j.common()) fail(ErrorCode::bad_index, "L must lie in every member of the family");
}

namespace {

BigInt binomial(const BigInt& n, unsigned m) {
  BigInt r = 1;
  for (unsigned i = 0; i < m; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

BigInt count_jirr(unsigned n, unsigned k) {
  if (k > 24) fail(ErrorCode::cap_exceeded, "rank too large to count");
  if (n == 0) return BigInt(1) << k;
  BigInt total = 0;
  for (unsigned l = 0; l <= k; ++l) {
    const unsigned free_bits = k - l;
    const BigInt sets = BigInt(1) << free_bits;
    BigInt inner = 0;
    if (BigInt(n) >= sets) {
      inner = (BigInt(1) << static_cast<unsigned>(sets)) - 1;
    } else {
      for (unsigned m = 1; m <= n; ++m) inner += binomial(sets, m);
    }
    total += binomial(BigInt(k), l) * inner;
  }
  return total;
}

std::vector<JIndex> enumerate_jindices(unsigned n, unsigned k, const Limits& limits) {
  if (k > kMaxRank) fail(ErrorCode::cap_exceeded, "rank above " + std::to_string(kMaxRank));
  const BigInt expected = count_jirr(n, k);
  if (expected > limits.poset_size)
    fail(ErrorCode::cap_exceeded, "join-irreducible count " + expected.str() + " exceeds cap " +
                                      std::to_string(limits.poset_size));
  std::vector<JIndex> out;
  const Subset universe = (Subset{1} << k) - 1;
  if (n == 0) {
    for (Subset t = 0; t <= universe; ++t) out.push_back({k, {t}, t});
  } else {
    const unsigned cap = effective_n(n, k);
    for (Subset l = 0; l <= universe; ++l) {
      std::vector<Subset> supersets;
      for (Subset t = 0; t <= universe; ++t)
        if ((t & l) == l) supersets.push_back(t);
      std::vector<Subset> current;
      auto choose = [&](auto&& self, std::size_t from) -> void {
        if (!current.empty()) out.push_back({k, current, l});
        if (current.size() == cap) return;
        for (std::size_t i = from; i < supersets.size(); ++i) {
          current.push_back(supersets[i]);
          self(self, i + 1);
          current.pop_back();
        }
      };
      choose(choose, 0);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const JIndex& a, const JIndex& b) { return canonical_less(a, b); });
  return out;
}

Term render_jindex(const JIndex& j) {
  check_jindex(j);
  const unsigned k = j.k;
  auto has = [](Subset s, unsigned i) { return (s >> (i - 1) & 1u) != 0; };
  if (j.family.size() == 1) {
    const Subset t = j.family.front();
    std::vector<Term> factors;
    for (unsigned i = 1; i <= k; ++i) {
      Term x = Term::var(i);
      if (has(j.l, i))
        factors.push_back(x);
      else if (has(t, i))
        factors.push_back(Term::star(Term::star(x)));
      else
        factors.push_back(Term::star(x));
    }
    return meet_of(factors);
  }
  std::vector<Term> factors;
  if (j.family.size() < (std::size_t{1} << k)) {
    std::vector<Term> atoms;
    for (Subset t : j.family) atoms.push_back(atom_term(t, k));
    factors.push_back(Term::star(Term::star(join_of(atoms))));
  }
  for (unsigned i = 1; i <= k; ++i)
    if (has(j.l, i)) factors.push_back(Term::var(i));
  return meet_of(factors);
}

namespace {

Poset free_base(const std::vector<JIndex>& idx, const Limits& limits) {
  std::vector<std::uint64_t> fam(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) fam[i] = idx[i].family_mask();
  return Poset::from_relation(
      idx.size(),
      [&](std::size_t i, std::size_t j) {
        return (fam[j] & ~fam[i]) == 0 && (idx[i].l & ~idx[j].l) == 0;
      },
      limits);
}

std::vector<std::string> jindex_labels(const std::vector<JIndex>& idx) {
  std::vector<std::string> out;
  for (const auto& j : idx) out.push_back(to_string(render_jindex(j)));
  return out;
}

}  // namespace

FreeAlgebra::FreeAlgebra(unsigned n, unsigned k, const Limits& limits)
    : n_(n), k_(k), indices_(enumerate_jindices(n, k, limits)) {
  algebra_ = UpsetAlgebra(free_base(indices_, limits), jindex_labels(indices_));
  generators_.assign(k + 1, ElementSet(indices_.size()));
  for (unsigned i = 1; i <= k; ++i)
    for (std::size_t j = 0; j < indices_.size(); ++j)
      if (indices_[j].l >> (i - 1) & 1u) generators_[i].set(j);
}

const ElementSet& FreeAlgebra::generator(unsigned i) const {
  if (i == 0 || i > k_) fail(ErrorCode::index_out_of_range, "no generator x" + std::to_string(i));
  return generators_[i];
}

ElementSet FreeAlgebra::eval(const Term& t) const { return palg::eval(t, algebra_, generators_); }

std::optional<std::size_t> FreeAlgebra::index_of(const JIndex& j) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), j,
                             [](const JIndex& a, const JIndex& b) { return canonical_less(a, b); });
  if (it == indices_.end() || !(*it == j)) return std::nullopt;
  return static_cast<std::size_t>(it - indices_.begin());
}

Term FreeAlgebra::render(const ElementSet& u) const {
  std::vector<Term> parts;
  min_elements(base(), u).for_each([&](std::size_t j) { parts.push_back(render_jindex(indices_[j])); });
  return join_of(parts);
}

std::size_t FreeAlgebra::element_count(const Limits& limits) const {
  return count_upsets(base(), limits.upset_count);
}

std::shared_ptr<const FreeAlgebra> free_algebra(unsigned n, unsigned k, const Limits& limits) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const FreeAlgebra>> cache;
  const unsigned key_n = n == 0 ? 0 : effective_n(n, k);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({key_n, k});
    if (it != cache.end()) {
      check_cap(it->second->indices().size(), limits.poset_size, "join-irreducible count");
      return it->second;
    }
  }
  auto built = std::make_shared<const FreeAlgebra>(key_n, k, limits);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(key_n, k), built).first->second;
}

Term normal_form(const Term& t, unsigned n, const Limits& limits) {
  return normal_form(t, n, t.max_var(), limits);
}

Term normal_form(const Term& t, unsigned n, unsigned k, const Limits& limits) {
  if (t.max_var() > k)
    fail(ErrorCode::unbound_variable, "term mentions x" + std::to_string(t.max_var()) +
                                          " beyond rank " + std::to_string(k));
  auto f = free_algebra(n, k, limits);
  return f->render(f->eval(t));
}

// --- free distributive lattices ----------------------------------------------

UpsetAlgebra free_distributive(unsigned s, const Limits& limits) {
  if (s > 12) fail(ErrorCode::cap_exceeded, "D(s) generator count too large");
  const std::size_t m = std::size_t{1} << s;
  check_cap(m, limits.poset_size, "D(s) join-irreducible count");
  std::vector<std::string> labels;
  for (Subset t = 0; t < m; ++t) {
    std::vector<Term> xs;
    for (unsigned i = 1; i <= s; ++i)
      if (t >> (i - 1) & 1u) xs.push_back(Term::var(i));
    labels.push_back(to_string(meet_of(xs)));
  }
  Poset base = Poset::from_relation(
      m, [](std::size_t i, std::size_t j) { return (i & ~j) == 0; }, limits);
  return UpsetAlgebra(std::move(base), std::move(labels));
}

TableAlgebra free_distributive_table(unsigned s, const Limits& limits) {
  return upset_to_table(free_distributive(s, limits), limits);
}

DistributiveQuotient quotient_to_distributive(unsigned n, unsigned k, Subset t,
                                              const Limits& limits) {
  auto f = free_algebra(n, k, limits);
  atom_term(t, k);  // range check
  std::vector<ElementSet> elements;
  DistributiveQuotient out;
  out.free_table = upset_to_table(f->algebra(), limits, &elements);
  const ElementSet target = f->eval(Term::star(Term::star(atom_term(t, k))));
  auto it = std::find(elements.begin(), elements.end(), target);
  out.generator = static_cast<Elem>(it - elements.begin());
  out.theta = principal_congruence(out.free_table, out.free_table.one(), out.generator);
  out.quotient = quotient(out.free_table, out.theta);
  out.target = free_distributive_table(static_cast<unsigned>(std::popcount(t)), limits);
  out.iso = is_isomorphic(out.quotient, out.target);
  return out;
}

StoneDecomposition stone_decompose(unsigned k, const Limits& limits) {
  if (k > 3) fail(ErrorCode::cap_exceeded, "Stone decomposition is only built for k <= 3");
  StoneDecomposition d;
  d.k = k;
  auto f = free_algebra(1, k, limits);
  d.free_j = f->base();

  const Subset universe = (Subset{1} << k) - 1;
  std::vector<std::size_t> offset(universe + 1);
  std::size_t total = 0;
  d.product_size = 1;
  Poset joined;
  for (Subset t = 0; t <= universe; ++t) {
    const unsigned s = static_cast<unsigned>(std::popcount(t));
    d.factors.push_back(s);
    offset[t] = total;
    const UpsetAlgebra ds = free_distributive(s, limits);
    total += ds.base().size();
    d.product_size *= count_upsets(ds.base(), limits.upset_count);
    joined = t == 0 ? ds.base() : joined.disjoint_union(ds.base());
  }
  d.product_j = joined;

  // (family {T}, L) goes to L read inside T.
  d.poset_iso.resize(f->indices().size());
  for (std::size_t i = 0; i < f->indices().size(); ++i) {
    const JIndex& j = f->indices()[i];
    const Subset t = j.family.front();
    std::size_t local = 0, bit = 0;
    for (unsigned v = 0; v < k; ++v) {
      if (!(t >> v & 1u)) continue;
      if (j.l >> v & 1u) local |= std::size_t{1} << bit;
      ++bit;
    }
    d.poset_iso[i] = offset[t] + local;
  }
  bool ok = d.free_j.size() == d.product_j.size();
  for (std::size_t a = 0; ok && a < d.free_j.size(); ++a)
    for (std::size_t b = 0; ok && b < d.free_j.size(); ++b)
      ok = d.free_j.leq(a, b) == d.product_j.leq(d.poset_iso[a], d.poset_iso[b]);
  if (!ok) d.poset_iso.clear();

  d.free_size = f->element_count(limits);
  if (d.product_size <= limits.table_size) {
    d.table_checked = true;
    TableAlgebra lhs = upset_to_table(f->algebra(), limits);
    TableAlgebra rhs = free_distributive_table(d.factors.front(), limits);
    for (std::size_t i = 1; i < d.factors.size(); ++i)
      rhs = product(rhs, free_distributive_table(d.factors[i], limits), limits);
    d.table_iso = is_isomorphic(lhs, rhs);
  }
  return d;
}

H3Orders h3_poset(unsigned n, unsigned k, const Limits& limits) {
  H3Orders h;
  auto f = free_algebra(n, k, limits);
  h.indices = f->indices();
  h.cm_order = f->base();
  const auto& idx = h.indices;
  h.inclusion = Poset::from_relation(
      idx.size(),
      [&](std::size_t i, std::size_t j) {
        if (i == j) return true;
        if (idx[i].is_atom() || !idx[j].is_atom()) return false;
        const Subset t = idx[j].family.front();
        return std::binary_search(idx[i].family.begin(), idx[i].family.end(), t);
      },
      limits);
  std::vector<std::size_t> id(idx.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  h.identity_is_pp_morphism = is_pp_morphism(h.inclusion, h.cm_order, id);
  return h;
}

GAssignment homomorphism_g(const JIndex& j) {
  check_jindex(j);
  GAssignment g;
  // Atoms only ever take the values 0 and 1.
  g.s = j.is_atom() ? 0u : static_cast<unsigned>(j.family.size());
  g.target = build_si(g.s);
  const Elem top = g.target.one();
  g.images.assign(j.k + 1, 0);
  for (unsigned i = 1; i <= j.k; ++i) {
    if (j.l >> (i - 1) & 1u) {
      g.images[i] = top;
      continue;
    }
    Elem mask = 0;
    for (std::size_t c = 0; c < j.family.size(); ++c)
      if (j.family[c] >> (i - 1) & 1u) mask |= Elem{1} << c;
    g.images[i] = mask;
  }
  std::vector<Elem> gens(g.images.begin() + 1, g.images.end());
  g.surjective = subuniverse(g.target, gens).count() == g.target.size();
  return g;
}

Elem embed_si(Elem x, unsigned s, unsigned m) {
  if (s > m) fail(ErrorCode::invalid_argument, "cannot embed a larger si algebra");
  const Elem top_s = Elem{1} << s;
  if (x == top_s) return Elem{1} << m;
  if (s == 0) return 0;
  const Elem last = Elem{1} << (s - 1);
  Elem out = x & (last - 1);
  if (x & last) out |= ((Elem{1} << m) - 1) & ~(last - 1);
  return out;
}

}  // namespace palg
