#include "palg/algebra.hpp"

#include <unordered_map>

namespace palg {

TableAlgebra::TableAlgebra(std::size_t size, std::vector<Elem> meet, std::vector<Elem> join,
                           std::vector<Elem> star, Elem zero, Elem one,
                           std::vector<std::string> labels)
    : size_(size),
      meet_(std::move(meet)),
      join_(std::move(join)),
      star_(std::move(star)),
      zero_(zero),
      one_(one),
      labels_(std::move(labels)) {
  if (size_ == 0) fail(ErrorCode::malformed_tables, "algebra must be nonempty");
  if (meet_.size() != size_ * size_ || join_.size() != size_ * size_)
    fail(ErrorCode::malformed_tables, "meet/join tables must be size x size");
  if (star_.size() != size_) fail(ErrorCode::malformed_tables, "star table must have size entries");
  if (!labels_.empty() && labels_.size() != size_)
    fail(ErrorCode::malformed_tables, "labels must be empty or one per element");
  auto in_range = [&](const std::vector<Elem>& v) {
    for (auto x : v)
      if (x >= size_) return false;
    return true;
  };
  if (!in_range(meet_) || !in_range(join_) || !in_range(star_) || zero_ >= size_ ||
      one_ >= size_)
    fail(ErrorCode::malformed_tables, "table entry out of range");
}

std::string TableAlgebra::label(Elem a) const {
  return labels_.empty() ? std::to_string(a) : labels_[a];
}

TableAlgebra TableAlgebra::with_labels(std::vector<std::string> labels) const {
  return TableAlgebra(size_, meet_, join_, star_, zero_, one_, std::move(labels));
}

UpsetAlgebra::UpsetAlgebra(Poset base, std::vector<std::string> point_labels)
    : base_(std::move(base)), labels_(std::move(point_labels)) {
  if (!labels_.empty() && labels_.size() != base_.size())
    fail(ErrorCode::invalid_argument, "point labels must match the base poset");
}

std::vector<Violation> validate(const TableAlgebra& a) {
  std::vector<Violation> out;
  const Elem n = static_cast<Elem>(a.size());
  auto report = [&](const char* law, std::vector<Elem> w) {
    for (const auto& v : out)
      if (v.law == law) return;
    out.push_back({law, std::move(w)});
  };
  for (Elem x = 0; x < n; ++x) {
    if (a.meet(x, x) != x) report("meet-idempotent", {x});
    if (a.join(x, x) != x) report("join-idempotent", {x});
    if (a.meet(x, a.zero()) != a.zero() || a.join(x, a.one()) != a.one() ||
        a.meet(x, a.one()) != x || a.join(x, a.zero()) != x)
      report("bounds", {x});
    for (Elem y = 0; y < n; ++y) {
      if (a.meet(x, y) != a.meet(y, x)) report("meet-commutative", {x, y});
      if (a.join(x, y) != a.join(y, x)) report("join-commutative", {x, y});
      if (a.meet(x, a.join(x, y)) != x || a.join(x, a.meet(x, y)) != x)
        report("absorption", {x, y});
      if (a.meet(x, a.star(a.meet(x, y))) != a.meet(x, a.star(y)))
        report("x&(x&y)*=x&y*", {x, y});
      if ((a.meet(x, y) == a.zero()) != a.leq(x, a.star(y)))
        report("x&y=0 iff x<=y*", {x, y});
      for (Elem z = 0; z < n; ++z) {
        if (a.meet(x, a.meet(y, z)) != a.meet(a.meet(x, y), z))
          report("meet-associative", {x, y, z});
        if (a.join(x, a.join(y, z)) != a.join(a.join(x, y), z))
          report("join-associative", {x, y, z});
        if (a.meet(x, a.join(y, z)) != a.join(a.meet(x, y), a.meet(x, z)))
          report("distributive", {x, y, z});
      }
    }
  }
  if (a.star(a.one()) != a.zero()) report("1*=0", {a.one()});
  if (a.star(a.zero()) != a.one()) report("0*=1", {a.zero()});
  return out;
}

TableAlgebra PAlgebra::table(const Limits& limits) const {
  if (is_table()) return as_table();
  return upset_to_table(as_upset(), limits);
}

UpsetAlgebra PAlgebra::upset(const Limits&) const {
  if (is_upset()) return as_upset();
  return table_to_upset(as_table());
}

TableAlgebra upset_to_table(const UpsetAlgebra& u, const Limits& limits,
                            std::vector<ElementSet>* elements) {
  auto ups = enumerate_upsets(u.base(), limits.table_size);
  const std::size_t n = ups.size();
  std::unordered_map<ElementSet, Elem, ElementSetHash> index;
  index.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) index.emplace(ups[i], static_cast<Elem>(i));
  std::vector<Elem> meet(n * n), join(n * n), star(n);
  for (std::size_t i = 0; i < n; ++i) {
    star[i] = index.at(u.star(ups[i]));
    for (std::size_t j = i; j < n; ++j) {
      meet[i * n + j] = meet[j * n + i] = index.at(ups[i] & ups[j]);
      join[i * n + j] = join[j * n + i] = index.at(ups[i] | ups[j]);
    }
  }
  const Elem zero = index.at(u.zero()), one = index.at(u.one());
  std::vector<std::string> labels;
  if (!u.point_labels().empty()) {
    // Name each element by the join of its generating points, i.e. the
    // minimal points of the upset.
    for (const auto& s : ups) {
      auto gens = min_elements(u.base(), s).to_vector();
      if (gens.empty()) {
        labels.push_back("0");
        continue;
      }
      std::string l;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        if (g) l += " | ";
        const std::string& pl = u.point_labels()[gens[g]];
        l += gens.size() > 1 && pl.find(" | ") != std::string::npos ? "(" + pl + ")" : pl;
      }
      labels.push_back(l);
    }
  }
  if (elements) *elements = ups;
  return TableAlgebra(n, std::move(meet), std::move(join), std::move(star), zero, one,
                      std::move(labels));
}

UpsetAlgebra table_to_upset(const TableAlgebra& a, std::vector<ElementSet>* images) {
  std::vector<Elem> points;
  Poset jp = j_poset(a, &points);
  std::vector<std::string> labels;
  for (auto p : points) labels.push_back(a.label(p));
  if (images) {
    images->assign(a.size(), ElementSet(points.size()));
    for (Elem x = 0; x < a.size(); ++x)
      for (std::size_t i = 0; i < points.size(); ++i)
        if (a.leq(points[i], x)) (*images)[x].set(i);
  }
  return UpsetAlgebra(jp.reversed(), std::move(labels));
}

namespace {

std::string si_label(std::uint64_t mask, unsigned n) {
  const std::uint64_t e = (std::uint64_t{1} << n) - 1;
  if (mask == 0) return "0";
  if (mask == e) return "e";
  std::string out;
  for (unsigned j = 0; j < n; ++j) {
    if (mask >> j & 1u) {
      if (!out.empty()) out += "+";
      out += "a" + std::to_string(j + 1);
    }
  }
  return out;
}

}  // namespace

TableAlgebra build_si(unsigned n, const Limits& limits) {
  if (n > 30) fail(ErrorCode::cap_exceeded, "si algebra exponent too large");
  const std::size_t boolean = std::size_t{1} << n;
  const std::size_t size = boolean + 1;
  check_cap(size, limits.table_size, "si algebra size");
  const Elem top = static_cast<Elem>(boolean);
  const Elem e = static_cast<Elem>(boolean - 1);
  std::vector<Elem> meet(size * size), join(size * size), star(size);
  std::vector<std::string> labels(size);
  for (Elem a = 0; a < size; ++a) {
    for (Elem b = 0; b < size; ++b) {
      Elem m, j;
      if (a == top) {
        m = b;
        j = top;
      } else if (b == top) {
        m = a;
        j = top;
      } else {
        m = a & b;
        j = a | b;
      }
      meet[a * size + b] = m;
      join[a * size + b] = j;
    }
    if (a == top)
      star[a] = 0;
    else if (a == 0)
      star[a] = top;
    else
      star[a] = static_cast<Elem>(~a & e);
    labels[a] = a == top ? "1" : si_label(a, n);
  }
  return TableAlgebra(size, std::move(meet), std::move(join), std::move(star), 0, top,
                      std::move(labels));
}

bool si_cond_check(const TableAlgebra& si) {
  const Elem one = si.one();
  // e is the unique subcover of 1.
  Elem e = si.zero();
  for (Elem x = 0; x < si.size(); ++x)
    if (x != one && si.leq(e, x)) e = x;
  // In B0 the subcover is 0, which is regular; the exceptional pair needs e dense.
  const bool dense_e = si.star(e) == si.zero();
  for (Elem a = 0; a < si.size(); ++a)
    for (Elem b = 0; b < si.size(); ++b) {
      bool lhs = si.meet(a, si.star(b)) == si.zero();
      bool rhs = si.leq(a, b) || (dense_e && a == one && b == e);
      if (lhs != rhs) return false;
    }
  return true;
}

TableAlgebra build_chain(std::size_t m, const Limits& limits) {
  if (m < 2) fail(ErrorCode::invalid_argument, "chain needs at least 2 elements");
  check_cap(m, limits.table_size, "chain size");
  std::vector<Elem> meet(m * m), join(m * m), star(m);
  std::vector<std::string> labels(m);
  for (Elem a = 0; a < m; ++a) {
    for (Elem b = 0; b < m; ++b) {
      meet[a * m + b] = std::min(a, b);
      join[a * m + b] = std::max(a, b);
    }
    star[a] = a == 0 ? static_cast<Elem>(m - 1) : 0;
    labels[a] = a == 0 ? "0" : a == m - 1 ? "1" : "c" + std::to_string(m - 1 - a);
  }
  return TableAlgebra(m, std::move(meet), std::move(join), std::move(star), 0,
                      static_cast<Elem>(m - 1), std::move(labels));
}

TableAlgebra build_boolean(unsigned atoms_count, const Limits& limits) {
  if (atoms_count > 30) fail(ErrorCode::cap_exceeded, "boolean algebra too large");
  const std::size_t size = std::size_t{1} << atoms_count;
  check_cap(size, limits.table_size, "boolean algebra size");
  const Elem full = static_cast<Elem>(size - 1);
  std::vector<Elem> meet(size * size), join(size * size), star(size);
  std::vector<std::string> labels(size);
  for (Elem a = 0; a < size; ++a) {
    for (Elem b = 0; b < size; ++b) {
      meet[a * size + b] = a & b;
      join[a * size + b] = a | b;
    }
    star[a] = ~a & full;
    labels[a] = a == full ? "1" : si_label(a, atoms_count + 1);
  }
  return TableAlgebra(size, std::move(meet), std::move(join), std::move(star), 0, full,
                      std::move(labels));
}

TableAlgebra trivial_algebra() {
  return TableAlgebra(1, {0}, {0}, {0}, 0, 0, {"0=1"});
}

TableAlgebra product(const TableAlgebra& a, const TableAlgebra& b, const Limits& limits) {
  const std::size_t na = a.size(), nb = b.size(), n = na * nb;
  check_cap(n, limits.table_size, "product size");
  auto idx = [nb](Elem i, Elem j) { return static_cast<Elem>(i * nb + j); };
  std::vector<Elem> meet(n * n), join(n * n), star(n);
  std::vector<std::string> labels(n);
  for (Elem i = 0; i < na; ++i)
    for (Elem j = 0; j < nb; ++j) {
      const Elem x = idx(i, j);
      star[x] = idx(a.star(i), b.star(j));
      labels[x] = "(" + a.label(i) + "," + b.label(j) + ")";
      for (Elem k = 0; k < na; ++k)
        for (Elem l = 0; l < nb; ++l) {
          const Elem y = idx(k, l);
          meet[x * n + y] = idx(a.meet(i, k), b.meet(j, l));
          join[x * n + y] = idx(a.join(i, k), b.join(j, l));
        }
    }
  return TableAlgebra(n, std::move(meet), std::move(join), std::move(star),
                      idx(a.zero(), b.zero()), idx(a.one(), b.one()), std::move(labels));
}

Elem join_all(const TableAlgebra& a, const ElementSet& s) {
  Elem acc = a.zero();
  s.for_each([&](std::size_t x) { acc = a.join(acc, static_cast<Elem>(x)); });
  return acc;
}

Elem meet_all(const TableAlgebra& a, const ElementSet& s) {
  Elem acc = a.one();
  s.for_each([&](std::size_t x) { acc = a.meet(acc, static_cast<Elem>(x)); });
  return acc;
}

ElementSet up_set(const TableAlgebra& a, Elem x) {
  ElementSet s(a.size());
  for (Elem y = 0; y < a.size(); ++y)
    if (a.leq(x, y)) s.set(y);
  return s;
}

ElementSet join_irreducibles(const TableAlgebra& a) {
  ElementSet out(a.size());
  for (Elem x = 0; x < a.size(); ++x) {
    if (x == a.zero()) continue;
    Elem below = a.zero();
    for (Elem y = 0; y < a.size(); ++y)
      if (y != x && a.leq(y, x)) below = a.join(below, y);
    if (below != x) out.set(x);
  }
  return out;
}

ElementSet atoms(const TableAlgebra& a) {
  ElementSet out(a.size());
  for (Elem x = 0; x < a.size(); ++x) {
    if (x == a.zero()) continue;
    bool atom = true;
    for (Elem y = 0; y < a.size() && atom; ++y)
      if (y != x && y != a.zero() && a.leq(y, x)) atom = false;
    if (atom) out.set(x);
  }
  return out;
}

ElementSet dense_elements(const TableAlgebra& a) {
  ElementSet out(a.size());
  for (Elem x = 0; x < a.size(); ++x)
    if (a.star(x) == a.zero()) out.set(x);
  return out;
}

ElementSet regular_elements(const TableAlgebra& a) {
  ElementSet out(a.size());
  for (Elem x = 0; x < a.size(); ++x)
    if (a.star(a.star(x)) == x) out.set(x);
  return out;
}

Poset j_poset(const TableAlgebra& a, std::vector<Elem>* points) {
  std::vector<Elem> pts;
  join_irreducibles(a).for_each([&](std::size_t x) { pts.push_back(static_cast<Elem>(x)); });
  Limits unlimited;
  unlimited.poset_size = pts.size();
  Poset p = Poset::from_relation(
      pts.size(), [&](std::size_t i, std::size_t j) { return a.leq(pts[i], pts[j]); },
      unlimited);
  if (points) *points = std::move(pts);
  return p;
}

TableAlgebra regular_algebra(const TableAlgebra& a, std::vector<Elem>* points) {
  auto regs = regular_elements(a).to_vector();
  const std::size_t n = regs.size();
  std::vector<Elem> pos(a.size(), 0);
  for (std::size_t i = 0; i < n; ++i) pos[regs[i]] = static_cast<Elem>(i);
  std::vector<Elem> meet(n * n), join(n * n), star(n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Elem x = static_cast<Elem>(regs[i]);
    star[i] = pos[a.star(x)];
    labels[i] = a.label(x);
    for (std::size_t j = 0; j < n; ++j) {
      const Elem y = static_cast<Elem>(regs[j]);
      meet[i * n + j] = pos[a.meet(x, y)];
      join[i * n + j] = pos[a.star(a.star(a.join(x, y)))];
    }
  }
  if (points) {
    points->clear();
    for (auto r : regs) points->push_back(static_cast<Elem>(r));
  }
  return TableAlgebra(n, std::move(meet), std::move(join), std::move(star), pos[a.zero()],
                      pos[a.one()], std::move(labels));
}

bool is_homomorphism(const TableAlgebra& from, const TableAlgebra& to,
                     const std::vector<Elem>& map) {
  if (map.size() != from.size()) return false;
  for (auto m : map)
    if (m >= to.size()) return false;
  if (map[from.zero()] != to.zero() || map[from.one()] != to.one()) return false;
  for (Elem x = 0; x < from.size(); ++x) {
    if (map[from.star(x)] != to.star(map[x])) return false;
    for (Elem y = 0; y < from.size(); ++y) {
      if (map[from.meet(x, y)] != to.meet(map[x], map[y])) return false;
      if (map[from.join(x, y)] != to.join(map[x], map[y])) return false;
    }
  }
  return true;
}

std::optional<std::vector<Elem>> is_isomorphic(const TableAlgebra& a, const TableAlgebra& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<Elem> pa, pb;
  Poset ja = j_poset(a, &pa), jb = j_poset(b, &pb);
  auto pm = poset_isomorphic(ja, jb);
  if (!pm) return std::nullopt;
  std::vector<Elem> map(a.size());
  std::vector<bool> hit(b.size(), false);
  for (Elem x = 0; x < a.size(); ++x) {
    Elem img = b.zero();
    for (std::size_t i = 0; i < pa.size(); ++i)
      if (a.leq(pa[i], x)) img = b.join(img, pb[(*pm)[i]]);
    map[x] = img;
    if (hit[img]) return std::nullopt;
    hit[img] = true;
  }
  if (!is_homomorphism(a, b, map)) return std::nullopt;
  return map;
}

ElementSet subuniverse(const TableAlgebra& a, const std::vector<Elem>& generators) {
  ElementSet s(a.size());
  std::vector<Elem> members;
  auto add = [&](Elem x) {
    if (!s.test(x)) {
      s.set(x);
      members.push_back(x);
    }
  };
  add(a.zero());
  add(a.one());
  for (auto g : generators) {
    if (g >= a.size()) fail(ErrorCode::index_out_of_range, "generator outside algebra");
    add(g);
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Elem x = members[i];
    add(a.star(x));
    for (std::size_t j = 0; j <= i; ++j) {
      add(a.meet(x, members[j]));
      add(a.join(x, members[j]));
    }
  }
  return s;
}

TableAlgebra subalgebra(const TableAlgebra& a, const ElementSet& universe,
                        std::vector<Elem>* points) {
  auto pts = universe.to_vector();
  const std::size_t n = pts.size();
  std::vector<Elem> pos(a.size(), static_cast<Elem>(n));
  for (std::size_t i = 0; i < n; ++i) pos[pts[i]] = static_cast<Elem>(i);
  auto at = [&](Elem x) {
    if (pos[x] == n) fail(ErrorCode::invalid_argument, "set is not a subuniverse");
    return pos[x];
  };
  std::vector<Elem> meet(n * n), join(n * n), star(n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Elem x = static_cast<Elem>(pts[i]);
    star[i] = at(a.star(x));
    labels[i] = a.label(x);
    for (std::size_t j = 0; j < n; ++j) {
      const Elem y = static_cast<Elem>(pts[j]);
      meet[i * n + j] = at(a.meet(x, y));
      join[i * n + j] = at(a.join(x, y));
    }
  }
  if (points) {
    points->clear();
    for (auto p : pts) points->push_back(static_cast<Elem>(p));
  }
  return TableAlgebra(n, std::move(meet), std::move(join), std::move(star), at(a.zero()),
                      at(a.one()), std::move(labels));
}

}  // namespace palg
