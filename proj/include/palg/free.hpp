#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "palg/algebra.hpp"
#include "palg/congruence.hpp"
#include "palg/term.hpp"

namespace palg {

using BigInt = boost::multiprecision::cpp_int;

// Stands for n = omega; treated as 2^k, where the index set saturates.
inline constexpr unsigned kOmega = std::numeric_limits<unsigned>::max();
// Family masks are 64-bit, one bit per subset of {1..k}.
inline constexpr unsigned kMaxRank = 6;

unsigned effective_n(unsigned n, unsigned k);

// (family, L): family a nonempty set of subsets of {1..k}, L inside every
// member. Join-irreducibles and Cm members of free algebras carry these names.
struct JIndex {
  unsigned k = 0;
  std::vector<Subset> family;  // ascending
  Subset l = 0;

  std::uint64_t family_mask() const;
  Subset common() const;
  bool is_atom() const { return family.size() == 1 && l == family.front(); }
  Storey storey() const { return is_atom() ? Storey::I : Storey::II; }

  friend bool operator==(const JIndex&, const JIndex&) = default;
};

// By |family|, then family lexicographically, then L.
bool canonical_less(const JIndex& a, const JIndex& b);

// Throws BadIndex unless family is nonempty, within {1..k}, and L fits.
void check_jindex(const JIndex& j);

// Sum over l of C(k,l) * sum_{m=1}^{n} C(2^(k-l), m); 2^k for n = 0.
BigInt count_jirr(unsigned n, unsigned k);

// Every index with 1 <= |family| <= n, sorted canonically. For n = 0 only
// the atoms ({T}, T).
std::vector<JIndex> enumerate_jindices(unsigned n, unsigned k, const Limits& limits = {});

// The rendering used in normal forms: Stone form for one-member families,
// otherwise (join of x_T)** & meet of x_i over L.
Term render_jindex(const JIndex& j);

class FreeAlgebra {
 public:
  FreeAlgebra(unsigned n, unsigned k, const Limits& limits = {});

  unsigned n() const noexcept { return n_; }
  unsigned k() const noexcept { return k_; }
  const std::vector<JIndex>& indices() const noexcept { return indices_; }
  // i below j iff family_j within family_i and L_i within L_j; the
  // reverse of the lattice order on J.
  const Poset& base() const noexcept { return algebra_.base(); }
  const UpsetAlgebra& algebra() const noexcept { return algebra_; }

  // x_i for 1 <= i <= k.
  const ElementSet& generator(unsigned i) const;
  // Slot 0 unused, as for every valuation.
  const std::vector<ElementSet>& generators() const noexcept { return generators_; }

  ElementSet eval(const Term& t) const;
  // The join-irreducible named by indices()[j].
  ElementSet jirr(std::size_t j) const { return base().up(j); }
  std::optional<std::size_t> index_of(const JIndex& j) const;

  // Join of render_jindex over the lattice-maximal points of u.
  Term render(const ElementSet& u) const;

  // Number of elements, counted without storing them (cap-guarded).
  std::size_t element_count(const Limits& limits = {}) const;

 private:
  unsigned n_, k_;
  std::vector<JIndex> indices_;
  UpsetAlgebra algebra_;
  std::vector<ElementSet> generators_;
};

// Shared, cached instance for (effective n, k).
std::shared_ptr<const FreeAlgebra> free_algebra(unsigned n, unsigned k, const Limits& limits = {});

// k defaults to the largest variable of t.
Term normal_form(const Term& t, unsigned n, const Limits& limits = {});
Term normal_form(const Term& t, unsigned n, unsigned k, const Limits& limits);

// --- free distributive lattices -------------------------------------------

// Upsets of the subsets of {1..s} under inclusion; the single atom forces
// a* = 0 for a != 0.
UpsetAlgebra free_distributive(unsigned s, const Limits& limits = {});
TableAlgebra free_distributive_table(unsigned s, const Limits& limits = {});

struct DistributiveQuotient {
  TableAlgebra free_table;
  Elem generator = 0;  // x_T** in free_table
  Congruence theta;    // generated by (1, x_T**)
  TableAlgebra quotient;
  TableAlgebra target;  // D(|T|)
  std::optional<std::vector<Elem>> iso;
};

DistributiveQuotient quotient_to_distributive(unsigned n, unsigned k, Subset t,
                                              const Limits& limits = {});

struct StoneDecomposition {
  unsigned k = 0;
  std::vector<unsigned> factors;  // s of each D(s) factor, one per subset T
  Poset free_j;                   // base of F_1(k)
  Poset product_j;                // disjoint union of the D(s) bases
  std::vector<std::size_t> poset_iso;
  BigInt free_size;
  BigInt product_size;
  // Table-level isomorphism when both sides fit the table cap.
  std::optional<std::vector<Elem>> table_iso;
  bool table_checked = false;
};

StoneDecomposition stone_decompose(unsigned k, const Limits& limits = {});

struct H3Orders {
  std::vector<JIndex> indices;
  Poset inclusion;  // Cm under inclusion of congruences
  Poset cm_order;   // Cm under inclusion of 1-classes
  bool identity_is_pp_morphism = false;
};

H3Orders h3_poset(unsigned n, unsigned k, const Limits& limits = {});

struct GAssignment {
  unsigned s = 0;
  TableAlgebra target;        // build_si(s)
  std::vector<Elem> images;   // slot 0 unused
  bool surjective = false;
};

GAssignment homomorphism_g(const JIndex& j);

// The p-algebra embedding of build_si(s) into build_si(m), s <= m.
Elem embed_si(Elem x, unsigned s, unsigned m);

}  // namespace palg
