#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "palg/algebra.hpp"
#include "palg/free.hpp"
#include "palg/term.hpp"

namespace palg {

enum class Method { normal_form, exhaustive, pruned };
const char* method_name(Method m) noexcept;

struct Verdict {
  bool holds = true;
  Method method = Method::exhaustive;
  std::uint64_t budget_used = 0;
  // Counter-valuation when holds is false; slot 0 unused.
  std::vector<Elem> witness;
  std::vector<std::string> witness_labels;
  std::string algebra;  // where the witness lives
};

// Pa_n for finite n; kOmega stands for Pa. Parses "pa", "pa0", "pa12", ...
unsigned parse_variety(const std::string& text);
std::string variety_name(unsigned n);

// The algebra whose valuations decide identities of Pa_n in k variables:
// build_si(n), or build_si(2^k) for n = omega.
unsigned deciding_si(unsigned n, unsigned k);

// normal_form compares normal forms and extracts a witness from a separating
// join-irreducible; exhaustive sweeps build_si(deciding_si(n, k)).
Verdict check_identity(const Equation& e, unsigned n, Method method = Method::normal_form,
                       const Limits& limits = {});

// Valuations are swept in lexicographic order (x1 most significant), so both
// strategies report the same first witness.
Verdict check_quasi_identity(const QuasiIdentity& q, const TableAlgebra& a,
                             Method strategy = Method::pruned, const Limits& limits = {});

// Checks q in F_n(rank); a necessary condition for admissibility only.
Verdict check_in_free(const QuasiIdentity& q, unsigned n, unsigned rank,
                      Method strategy = Method::pruned, const Limits& limits = {});
Verdict admissible_in_free(const QuasiIdentity& q, unsigned n, unsigned k_extra = 0,
                           Method strategy = Method::pruned, const Limits& limits = {});

struct SubalgebraWitness {
  std::string algebra;
  Elem element = 0;              // c or d
  std::vector<Elem> universe;    // the subuniverse, ascending
  unsigned si_index = 0;         // isomorphic to build_si(si_index)
  bool verified = false;
};

struct CompletenessReport {
  unsigned n = 0;
  bool structurally_complete = false;
  std::vector<std::string> classification;  // n < 3
  std::vector<SubalgebraWitness> subalgebras;
  std::vector<std::pair<std::string, Verdict>> verdicts;  // n >= 3
  std::string note;
};

CompletenessReport structural_completeness_report(unsigned n, const Limits& limits = {});

// {0, c | c*, 1} for the first c with c | c* != 1, and
// {0, d*, d**, d* | d**, 1} for the first d with d* | d** != 1.
std::vector<SubalgebraWitness> subalgebra_witnesses(const std::string& name,
                                                    const TableAlgebra& a);

struct OracleResult {
  bool nf_equal = false;
  bool exhaustive_equal = false;
  bool agree() const { return nf_equal == exhaustive_equal; }
  Verdict exhaustive;
};

OracleResult oracle_equivalence(const Term& t1, const Term& t2, unsigned n,
                                const Limits& limits = {});

struct OracleBatch {
  std::size_t trials = 0;
  std::size_t agreements = 0;
  std::size_t equal_pairs = 0;
  std::vector<std::pair<Term, Term>> disagreements;
};

// Half the pairs are random, half are rewritten copies known to be equal.
OracleBatch oracle_batch(std::size_t trials, std::uint64_t seed, unsigned max_vars = 3,
                         unsigned max_depth = 6, const std::vector<unsigned>& ns = {1, 2, 3},
                         const Limits& limits = {});

Term random_term(std::mt19937_64& rng, unsigned vars, unsigned depth);
// Applies one identity of every p-algebra somewhere in t.
Term equal_rewrite(std::mt19937_64& rng, const Term& t, unsigned vars);

}  // namespace palg
