#pragma once

#include <string>
#include <utility>
#include <vector>

#include "palg/algebra.hpp"

namespace palg {

// An equivalence on 0..size-1 stored as one label per element, the label
// being the least member of the element's class.
class Congruence {
 public:
  Congruence() = default;
  // Any class-id vector; relabelled to least members.
  explicit Congruence(const std::vector<Elem>& class_ids);

  static Congruence identity(std::size_t size);
  static Congruence full(std::size_t size);

  std::size_t size() const noexcept { return label_.size(); }
  Elem label(Elem a) const noexcept { return label_[a]; }
  const std::vector<Elem>& labels() const noexcept { return label_; }
  bool related(Elem a, Elem b) const noexcept { return label_[a] == label_[b]; }

  std::size_t class_count() const;
  ElementSet class_of(Elem a) const;
  // Classes in order of least member.
  std::vector<std::vector<Elem>> classes() const;

  bool is_identity() const;
  bool is_full() const;
  // Set inclusion of the relations.
  bool subset_of(const Congruence& other) const;

  Congruence meet(const Congruence& other) const;
  Congruence join(const Congruence& other) const;

  friend bool operator==(const Congruence&, const Congruence&) = default;

 private:
  std::vector<Elem> label_;
};

bool is_congruence(const TableAlgebra& a, const Congruence& c);

Congruence principal_congruence(const TableAlgebra& a, Elem x, Elem y);
Congruence generated_congruence(const TableAlgebra& a,
                                const std::vector<std::pair<Elem, Elem>>& pairs);

// Classes become elements in order of least member. Throws NotACongruence.
TableAlgebra quotient(const TableAlgebra& a, const Congruence& c);

// Con(A) as the join-closure of principal congruences, sorted by class count
// descending then labels. Throws CapExceeded above limits.oracle_size.
std::vector<Congruence> all_congruences(const TableAlgebra& a, const Limits& limits = {});

// Members of `con` (other than the full congruence) whose strict upper bounds
// have an intersection different from themselves.
std::vector<Congruence> meet_irreducibles(const std::vector<Congruence>& con);

// --- filters -------------------------------------------------------------

bool is_prime_filter(const TableAlgebra& a, const ElementSet& f);
// {up p : p in J(A)} in order of p.
std::vector<ElementSet> prime_filters(const TableAlgebra& a);
// Prime filters with a** in F implying a in F.
std::vector<ElementSet> i_type_filters(const TableAlgebra& a);
bool is_i_type(const TableAlgebra& a, const ElementSet& f);

// --- completely meet-irreducible congruences --------------------------------

enum class Storey { I, II };
const char* storey_name(Storey s) noexcept;

struct CmRecord {
  Congruence mu;
  Congruence mu_plus;
  Storey storey = Storey::I;
  ElementSet one_class;
  Elem psi = 0;   // least element of the 1-class
  Elem e_mu = 0;  // least element of the class just below the 1-class
};

// The unique completely meet-irreducible congruence with 1-class f.
// Throws NotPrime if f is not a prime filter.
CmRecord cm_from_prime_filter(const TableAlgebra& a, const ElementSet& f);
// One record per prime filter, in prime_filters order.
std::vector<CmRecord> cm_all(const TableAlgebra& a);

bool cm_leq(const CmRecord& r, const CmRecord& s);
// Indices i with (x, 1) in records[i].mu.
std::vector<std::size_t> m_hat(const TableAlgebra& a, const std::vector<CmRecord>& records,
                               Elem x);
// Indices of records containing the congruence (i.e. with c contained in mu).
std::vector<std::size_t> m_of(const std::vector<CmRecord>& records, const Congruence& c);

// The posets (Cm, inclusion) and (Cm, <=^Cm) on record indices.
Poset cm_inclusion_poset(const std::vector<CmRecord>& records);
Poset cm_order_poset(const std::vector<CmRecord>& records);

// --- Glivenko ----------------------------------------------------------------

struct Glivenko {
  Congruence relation;      // a ~ b iff a** = b**
  TableAlgebra regular;     // R(A) with x |_| y = (x v y)**
  std::vector<Elem> points; // element of A behind each index of `regular`
};
Glivenko glivenko(const TableAlgebra& a);

// --- permutability -------------------------------------------------------------

struct PermutabilityWitness {
  std::size_t alpha, beta;  // indices into the congruence list
  ElementSet alpha_first;   // c/(alpha o beta o ...)
  ElementSet beta_first;    // c/(beta o alpha o ...)
};

struct PermutabilityReport {
  std::vector<Congruence> congruences;
  std::vector<PermutabilityWitness> witnesses;  // pairs alpha < beta
};

// Compares the n-fold alternating compositions started at c.
PermutabilityReport compose_check_permutability(const TableAlgebra& a, Elem c, unsigned n = 2,
                                                const Limits& limits = {});

}  // namespace palg
