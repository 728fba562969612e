#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "palg/element_set.hpp"
#include "palg/error.hpp"
#include "palg/order.hpp"

namespace palg {

using Elem = std::uint32_t;

// A finite algebra (A; meet, join, star, 0, 1) given by operation tables.
// Construction only checks shapes and index ranges; use validate() for laws.
class TableAlgebra {
 public:
  using Element = Elem;

  TableAlgebra() = default;
  TableAlgebra(std::size_t size, std::vector<Elem> meet, std::vector<Elem> join,
               std::vector<Elem> star, Elem zero, Elem one,
               std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return size_; }
  Elem meet(Elem a, Elem b) const noexcept { return meet_[a * size_ + b]; }
  Elem join(Elem a, Elem b) const noexcept { return join_[a * size_ + b]; }
  Elem star(Elem a) const noexcept { return star_[a]; }
  Elem zero() const noexcept { return zero_; }
  Elem one() const noexcept { return one_; }
  bool leq(Elem a, Elem b) const noexcept { return meet(a, b) == a; }

  const std::vector<Elem>& meet_table() const noexcept { return meet_; }
  const std::vector<Elem>& join_table() const noexcept { return join_; }
  const std::vector<Elem>& star_table() const noexcept { return star_; }

  bool has_labels() const noexcept { return !labels_.empty(); }
  std::string label(Elem a) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  TableAlgebra with_labels(std::vector<std::string> labels) const;

  ElementSet empty_set() const { return ElementSet(size_); }
  ElementSet full_set() const { return ElementSet::full(size_); }

  friend bool operator==(const TableAlgebra& a, const TableAlgebra& b) {
    return a.size_ == b.size_ && a.meet_ == b.meet_ && a.join_ == b.join_ &&
           a.star_ == b.star_ && a.zero_ == b.zero_ && a.one_ == b.one_;
  }

 private:
  std::size_t size_ = 0;
  std::vector<Elem> meet_, join_, star_;
  Elem zero_ = 0, one_ = 0;
  std::vector<std::string> labels_;
};

// Up(P) with union, intersection and U* = complement of the downset of U.
class UpsetAlgebra {
 public:
  using Element = ElementSet;

  UpsetAlgebra() = default;
  explicit UpsetAlgebra(Poset base, std::vector<std::string> point_labels = {});

  const Poset& base() const noexcept { return base_; }
  const std::vector<std::string>& point_labels() const noexcept { return labels_; }

  ElementSet meet(const ElementSet& a, const ElementSet& b) const { return a & b; }
  ElementSet join(const ElementSet& a, const ElementSet& b) const { return a | b; }
  ElementSet star(const ElementSet& a) const {
    return downset_closure(base_, a).complement();
  }
  ElementSet zero() const { return base_.empty_set(); }
  ElementSet one() const { return base_.full_set(); }
  bool leq(const ElementSet& a, const ElementSet& b) const { return a.is_subset_of(b); }
  bool contains(const ElementSet& a) const {
    return a.size() == base_.size() && is_upset(base_, a);
  }

 private:
  Poset base_;
  std::vector<std::string> labels_;
};

struct Violation {
  std::string law;
  std::vector<Elem> witness;
};

// Empty iff the tables form a distributive p-algebra. Throws malformed_tables
// for out-of-range entries.
std::vector<Violation> validate(const TableAlgebra& a);

class PAlgebra {
 public:
  PAlgebra(TableAlgebra t) : rep_(std::move(t)) {}
  PAlgebra(UpsetAlgebra u) : rep_(std::move(u)) {}

  bool is_table() const noexcept { return std::holds_alternative<TableAlgebra>(rep_); }
  bool is_upset() const noexcept { return std::holds_alternative<UpsetAlgebra>(rep_); }
  const TableAlgebra& as_table() const { return std::get<TableAlgebra>(rep_); }
  const UpsetAlgebra& as_upset() const { return std::get<UpsetAlgebra>(rep_); }

  // Upset form is converted by enumerating all upsets (cap-guarded); the
  // table form goes through its join-irreducible skeleton.
  TableAlgebra table(const Limits& limits = {}) const;
  UpsetAlgebra upset(const Limits& limits = {}) const;

 private:
  std::variant<TableAlgebra, UpsetAlgebra> rep_;
};

// Materialise Up(P) as tables, elements in enumerate_upsets order. `elements`
// receives the upset behind each table index.
TableAlgebra upset_to_table(const UpsetAlgebra& u, const Limits& limits = {},
                            std::vector<ElementSet>* elements = nullptr);

// Up(J(A), >=). `images` receives, for each element a, {p in J : p <= a}.
UpsetAlgebra table_to_upset(const TableAlgebra& a,
                            std::vector<ElementSet>* images = nullptr);

// --- standard algebras ---------------------------------------------------

// The subdirectly irreducible algebra on 2^n + 1 elements. Index i < 2^n is
// the Boolean element with atom bitmask i; e = 2^n - 1; 1 = 2^n.
TableAlgebra build_si(unsigned n, const Limits& limits = {});
bool si_cond_check(const TableAlgebra& si);

// The m-chain 0 < c_{m-2} < ... < c_1 < 1, indexed bottom-up.
TableAlgebra build_chain(std::size_t m, const Limits& limits = {});

TableAlgebra build_boolean(unsigned atoms, const Limits& limits = {});
TableAlgebra trivial_algebra();

// Pairs (i, j) are indexed i * |B| + j.
TableAlgebra product(const TableAlgebra& a, const TableAlgebra& b,
                     const Limits& limits = {});

// --- analysis ------------------------------------------------------------

ElementSet join_irreducibles(const TableAlgebra& a);
ElementSet atoms(const TableAlgebra& a);
ElementSet dense_elements(const TableAlgebra& a);
ElementSet regular_elements(const TableAlgebra& a);
ElementSet up_set(const TableAlgebra& a, Elem x);
Elem join_all(const TableAlgebra& a, const ElementSet& s);
Elem meet_all(const TableAlgebra& a, const ElementSet& s);

// J(A) ordered by the lattice order of A; `points` receives the element
// behind each poset index.
Poset j_poset(const TableAlgebra& a, std::vector<Elem>* points = nullptr);

// Boolean algebra on R(A) with inherited meet and star and x |_| y = (x v y)**.
// `points` receives the element of A behind each index.
TableAlgebra regular_algebra(const TableAlgebra& a, std::vector<Elem>* points = nullptr);

// Isomorphism found by matching J-posets, then checked on every operation.
std::optional<std::vector<Elem>> is_isomorphic(const TableAlgebra& a,
                                               const TableAlgebra& b);
bool is_homomorphism(const TableAlgebra& from, const TableAlgebra& to,
                     const std::vector<Elem>& map);

// Smallest subuniverse containing `generators` (always contains 0 and 1).
ElementSet subuniverse(const TableAlgebra& a, const std::vector<Elem>& generators);
TableAlgebra subalgebra(const TableAlgebra& a, const ElementSet& universe,
                        std::vector<Elem>* points = nullptr);

}  // namespace palg
