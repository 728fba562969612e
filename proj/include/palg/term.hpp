#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "palg/algebra.hpp"
#include "palg/error.hpp"

namespace palg {

enum class Op : std::uint8_t { zero, one, var, meet, join, star };

// Immutable term tree. Copies share structure.
class Term {
 public:
  Term();  // the constant 0

  static Term zero();
  static Term one();
  static Term var(unsigned index);
  static Term meet(Term a, Term b);
  static Term join(Term a, Term b);
  static Term star(Term a);

  Op op() const noexcept;
  unsigned var_index() const noexcept;  // Var only
  const Term& lhs() const noexcept;     // Meet/Join; Star's operand is lhs()
  const Term& rhs() const noexcept;
  const Term& child() const noexcept { return lhs(); }

  std::size_t hash() const noexcept;
  std::size_t node_count() const;
  unsigned max_var() const noexcept;
  std::vector<unsigned> vars() const;  // sorted, distinct

  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b) noexcept;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

Term operator&(const Term& a, const Term& b);
Term operator|(const Term& a, const Term& b);

// Folds with the given empty value; left-nested.
Term meet_of(const std::vector<Term>& ts);
Term join_of(const std::vector<Term>& ts);

// Grammar: or := and ('|' and)*; and := star ('&' star)*; star := primary '*'*;
// primary := '0' | '1' | x<digits> | '(' or ')'.
Term parse_term(std::string_view text);
std::string to_string(const Term& t);
// Same layout with the Unicode connectives.
std::string to_pretty(const Term& t);

struct Equation {
  Term lhs, rhs;
  friend bool operator==(const Equation&, const Equation&) = default;
};

struct QuasiIdentity {
  std::vector<Equation> premises;
  Equation conclusion;
};

// "s = t"
Equation parse_equation(std::string_view text);
std::string to_string(const Equation& e);
unsigned max_var(const Equation& e);
unsigned max_var(const QuasiIdentity& q);

// Valuations are indexed by variable number; slot 0 is unused.
template <typename Algebra>
typename Algebra::Element eval(const Term& t, const Algebra& a,
                               const std::vector<typename Algebra::Element>& v) {
  switch (t.op()) {
    case Op::zero: return a.zero();
    case Op::one: return a.one();
    case Op::var:
      if (t.var_index() >= v.size())
        fail(ErrorCode::unbound_variable, "x" + std::to_string(t.var_index()) + " is unbound");
      return v[t.var_index()];
    case Op::meet: return a.meet(eval(t.lhs(), a, v), eval(t.rhs(), a, v));
    case Op::join: return a.join(eval(t.lhs(), a, v), eval(t.rhs(), a, v));
    case Op::star: return a.star(eval(t.child(), a, v));
  }
  return a.zero();
}

// Shared subterms collapsed into a straight-line program for fast repeated
// evaluation over table algebras.
class CompiledTerm {
 public:
  CompiledTerm() = default;
  explicit CompiledTerm(const Term& t);

  unsigned max_var() const noexcept { return max_var_; }
  // `v` must have at least max_var()+1 entries.
  Elem eval(const TableAlgebra& a, const Elem* v) const;

 private:
  struct Instr {
    Op op;
    std::uint32_t a, b;
  };
  std::vector<Instr> code_;
  unsigned max_var_ = 0;
  mutable std::vector<Elem> scratch_;
};

// --- scheme terms --------------------------------------------------------
// Subsets of {1..k} are bit masks with bit i-1 standing for x_i.

using Subset = std::uint32_t;

// x_T: meet of x_i (i in T) and x_i* (i not in T), factors in index order.
Term atom_term(Subset t, unsigned k);
// p^L_T := (join of x_T over the family)** & meet of x_i over L.
Term jirr_term(const std::vector<Subset>& family, Subset l, unsigned k);
// Left-hand side of ib_m over x1..x_{m+1}; the identity is ib_term(m) = 1.
Term ib_term(unsigned m);
// Premises x_i* = join of the other x_j, conclusion join of all x_i = 1.
QuasiIdentity qb_system(unsigned n);
// x1 - x2 := (x1 | x2) & (x1 & x2)*
Term subtraction_term();
// x1 . x2 := (x1* & x2*) | (x1 & x2)
Term boolean_equiv_term();
// x1 -> x2 := (x1 & x2*)*  and  box x1 := x1**
Term implication_term();
Term box_term();

// Replace x_i by subs[i-1].
Term substitute(const Term& t, const std::vector<Term>& subs);

}  // namespace palg
