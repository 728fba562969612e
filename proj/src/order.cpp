#include "palg/order.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace palg {

namespace {

void fill_down_from_up(const std::vector<ElementSet>& up, std::vector<ElementSet>& down) {
  const std::size_t n = up.size();
  down.assign(n, ElementSet(n));
  for (std::size_t i = 0; i < n; ++i) up[i].for_each([&](std::size_t j) { down[j].set(i); });
}

void check_antisymmetric(const std::vector<ElementSet>& up) {
  for (std::size_t i = 0; i < up.size(); ++i) {
    up[i].for_each([&](std::size_t j) {
      if (j != i && up[j].test(i)) {
        fail(ErrorCode::invalid_argument, "order is not antisymmetric: " +
                                              std::to_string(i) + " and " +
                                              std::to_string(j));
      }
    });
  }
}

}  // namespace

Poset Poset::from_pairs(std::size_t size,
                        const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                        const Limits& limits) {
  check_cap(size, limits.poset_size, "poset size");
  Poset p;
  p.up_.assign(size, ElementSet(size));
  for (std::size_t i = 0; i < size; ++i) p.up_[i].set(i);
  for (auto [lo, hi] : pairs) {
    if (lo >= size || hi >= size)
      fail(ErrorCode::index_out_of_range, "order pair outside poset");
    p.up_[lo].set(hi);
  }
  // Warshall over bit rows.
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t i = 0; i < size; ++i)
      if (i != k && p.up_[i].test(k)) p.up_[i] |= p.up_[k];
  check_antisymmetric(p.up_);
  fill_down_from_up(p.up_, p.down_);
  return p;
}

Poset Poset::from_relation(std::size_t size,
                           const std::function<bool(std::size_t, std::size_t)>& leq,
                           const Limits& limits) {
  check_cap(size, limits.poset_size, "poset size");
  Poset p;
  p.up_.assign(size, ElementSet(size));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if (leq(i, j)) p.up_[i].set(j);
  for (std::size_t i = 0; i < size; ++i) {
    if (!p.up_[i].test(i))
      fail(ErrorCode::invalid_argument, "order is not reflexive at " + std::to_string(i));
    p.up_[i].for_each([&](std::size_t j) {
      if (!p.up_[j].is_subset_of(p.up_[i]))
        fail(ErrorCode::invalid_argument, "order is not transitive at " +
                                              std::to_string(i) + " <= " +
                                              std::to_string(j));
    });
  }
  check_antisymmetric(p.up_);
  fill_down_from_up(p.up_, p.down_);
  return p;
}

Poset Poset::antichain(std::size_t size) { return from_pairs(size, {}); }

Poset Poset::chain(std::size_t size) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < size; ++i) pairs.emplace_back(i, i + 1);
  return from_pairs(size, pairs);
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    ElementSet strict = up_[i];
    strict.reset(i);
    min_elements(*this, strict).for_each([&](std::size_t j) { out.emplace_back(i, j); });
  }
  return out;
}

Poset Poset::reversed() const {
  Poset p;
  p.up_ = down_;
  p.down_ = up_;
  return p;
}

Poset Poset::disjoint_union(const Poset& other) const {
  const std::size_t n = size(), m = other.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (auto [a, b] : covers()) pairs.emplace_back(a, b);
  for (auto [a, b] : other.covers()) pairs.emplace_back(a + n, b + n);
  Limits unlimited;
  unlimited.poset_size = n + m;
  return from_pairs(n + m, pairs, unlimited);
}

Poset Poset::restricted(const ElementSet& subset) const {
  auto keep = subset.to_vector();
  Limits unlimited;
  unlimited.poset_size = keep.size();
  return from_relation(
      keep.size(), [&](std::size_t i, std::size_t j) { return leq(keep[i], keep[j]); },
      unlimited);
}

bool is_upset(const Poset& p, const ElementSet& s) {
  bool ok = true;
  s.for_each([&](std::size_t x) { ok = ok && p.up(x).is_subset_of(s); });
  return ok;
}

bool is_downset(const Poset& p, const ElementSet& s) {
  bool ok = true;
  s.for_each([&](std::size_t x) { ok = ok && p.down(x).is_subset_of(s); });
  return ok;
}

ElementSet upset_closure(const Poset& p, const ElementSet& s) {
  ElementSet out(p.size());
  s.for_each([&](std::size_t x) { out |= p.up(x); });
  return out;
}

ElementSet downset_closure(const Poset& p, const ElementSet& s) {
  ElementSet out(p.size());
  s.for_each([&](std::size_t x) { out |= p.down(x); });
  return out;
}

ElementSet max_elements(const Poset& p, const ElementSet& s) {
  ElementSet out(p.size());
  s.for_each([&](std::size_t x) {
    ElementSet above = p.up(x) & s;
    if (above.count() == 1) out.set(x);
  });
  return out;
}

ElementSet min_elements(const Poset& p, const ElementSet& s) {
  ElementSet out(p.size());
  s.for_each([&](std::size_t x) {
    ElementSet below = p.down(x) & s;
    if (below.count() == 1) out.set(x);
  });
  return out;
}

namespace {

// Decides points from the top down: a point may join the upset only once
// everything strictly above it is already in.
class UpsetWalker {
 public:
  UpsetWalker(const Poset& p, std::size_t cap) : p_(p), cap_(cap), current_(p.size()) {
    order_.resize(p.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return p.up(a).count() < p.up(b).count();
    });
  }

  template <typename Sink>
  void run(Sink&& sink) { walk(0, sink); }

 private:
  template <typename Sink>
  void walk(std::size_t depth, Sink& sink) {
    if (depth == order_.size()) {
      if (++produced_ > cap_)
        fail(ErrorCode::cap_exceeded,
             "upset enumeration exceeds cap " + std::to_string(cap_));
      sink(current_);
      return;
    }
    const std::size_t x = order_[depth];
    walk(depth + 1, sink);
    ElementSet strict_above = p_.up(x);
    strict_above.reset(x);
    if (strict_above.is_subset_of(current_)) {
      current_.set(x);
      walk(depth + 1, sink);
      current_.reset(x);
    }
  }

  const Poset& p_;
  std::size_t cap_;
  std::size_t produced_ = 0;
  std::vector<std::size_t> order_;
  ElementSet current_;
};

}  // namespace

std::vector<ElementSet> enumerate_upsets(const Poset& p, std::size_t cap) {
  std::vector<ElementSet> out;
  UpsetWalker(p, cap).run([&](const ElementSet& s) { out.push_back(s); });
  std::sort(out.begin(), out.end(),
            [](const ElementSet& a, const ElementSet& b) { return canonical_less(a, b); });
  return out;
}

std::size_t count_upsets(const Poset& p, std::size_t cap) {
  std::size_t n = 0;
  UpsetWalker(p, cap).run([&](const ElementSet&) { ++n; });
  return n;
}

bool is_pp_morphism(const Poset& from, const Poset& to,
                    const std::vector<std::size_t>& map) {
  if (map.size() != from.size()) return false;
  for (auto m : map)
    if (m >= to.size()) return false;
  for (std::size_t x = 0; x < from.size(); ++x) {
    bool monotone = true;
    from.up(x).for_each([&](std::size_t y) { monotone = monotone && to.leq(map[x], map[y]); });
    if (!monotone) return false;
  }
  for (std::size_t x = 0; x < from.size(); ++x) {
    ElementSet image(to.size());
    max_elements(from, from.up(x)).for_each([&](std::size_t y) { image.set(map[y]); });
    if (image != max_elements(to, to.up(map[x]))) return false;
  }
  return true;
}

namespace {

using Profile = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;

std::vector<Profile> profiles(const Poset& p) {
  std::vector<std::size_t> up_covers(p.size(), 0), down_covers(p.size(), 0);
  for (auto [lo, hi] : p.covers()) {
    ++up_covers[lo];
    ++down_covers[hi];
  }
  std::vector<Profile> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    out.emplace_back(p.down(i).count(), p.up(i).count(), down_covers[i], up_covers[i]);
  return out;
}

bool extend(const Poset& p, const Poset& q, const std::vector<Profile>& pp,
            const std::vector<Profile>& qp, const std::vector<std::size_t>& order,
            std::size_t depth, std::vector<std::size_t>& map, std::vector<bool>& used) {
  if (depth == order.size()) return true;
  const std::size_t v = order[depth];
  for (std::size_t w = 0; w < q.size(); ++w) {
    if (used[w] || qp[w] != pp[v]) continue;
    bool ok = true;
    for (std::size_t d = 0; d < depth && ok; ++d) {
      const std::size_t u = order[d];
      ok = p.leq(u, v) == q.leq(map[u], w) && p.leq(v, u) == q.leq(w, map[u]);
    }
    if (!ok) continue;
    map[v] = w;
    used[w] = true;
    if (extend(p, q, pp, qp, order, depth + 1, map, used)) return true;
    used[w] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> poset_isomorphic(const Poset& p, const Poset& q) {
  if (p.size() != q.size()) return std::nullopt;
  auto pp = profiles(p), qp = profiles(q);
  {
    auto a = pp, b = qp;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  // Rarest profiles first, ties by rank (down-set size) then index.
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto multiplicity = [&](std::size_t v) {
    return static_cast<std::size_t>(std::count(pp.begin(), pp.end(), pp[v]));
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_tuple(multiplicity(a), std::get<0>(pp[a]), a) <
           std::make_tuple(multiplicity(b), std::get<0>(pp[b]), b);
  });
  std::vector<std::size_t> map(p.size(), 0);
  std::vector<bool> used(q.size(), false);
  if (!extend(p, q, pp, qp, order, 0, map, used)) return std::nullopt;
  return map;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string export_dot(const Poset& p, const std::vector<std::string>& labels,
                       const std::string& name) {
  if (labels.size() != p.size())
    fail(ErrorCode::invalid_argument, "export_dot needs one label per element");
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n";
  os << "  rankdir=BT;\n";
  for (std::size_t i = 0; i < p.size(); ++i)
    os << "  n" << i << " [label=\"" << dot_escape(labels[i]) << "\"];\n";
  for (auto [lo, hi] : p.covers()) os << "  n" << lo << " -> n" << hi << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace palg
