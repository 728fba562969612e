#include "palg/term.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace palg {

struct Term::Node {
  Op op;
  unsigned var = 0;
  Term a, b;
  std::size_t hash = 0;
  std::size_t size = 1;
  unsigned max_var = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Term::Term() : Term(zero()) {}

Term Term::zero() {
  static const Term z(std::make_shared<const Node>(Node{Op::zero, 0, Term(nullptr), Term(nullptr), 0x51, 1, 0}));
  return z;
}

Term Term::one() {
  static const Term o(std::make_shared<const Node>(Node{Op::one, 0, Term(nullptr), Term(nullptr), 0x77, 1, 0}));
  return o;
}

Term Term::var(unsigned index) {
  if (index == 0) fail(ErrorCode::unknown_identifier, "variable indices start at 1");
  return Term(std::make_shared<const Node>(
      Node{Op::var, index, Term(nullptr), Term(nullptr), mix(0x1234, index), 1, index}));
}

Term Term::meet(Term a, Term b) {
  std::size_t h = mix(mix(0xa1, a.hash()), b.hash());
  std::size_t sz = a.node_->size + b.node_->size + 1;
  unsigned mv = std::max(a.max_var(), b.max_var());
  return Term(std::make_shared<const Node>(Node{Op::meet, 0, std::move(a), std::move(b), h, sz, mv}));
}

Term Term::join(Term a, Term b) {
  std::size_t h = mix(mix(0xb2, a.hash()), b.hash());
  std::size_t sz = a.node_->size + b.node_->size + 1;
  unsigned mv = std::max(a.max_var(), b.max_var());
  return Term(std::make_shared<const Node>(Node{Op::join, 0, std::move(a), std::move(b), h, sz, mv}));
}

Term Term::star(Term a) {
  std::size_t h = mix(0xc3, a.hash());
  std::size_t sz = a.node_->size + 1;
  unsigned mv = a.max_var();
  return Term(std::make_shared<const Node>(Node{Op::star, 0, std::move(a), Term(nullptr), h, sz, mv}));
}

Op Term::op() const noexcept { return node_->op; }
unsigned Term::var_index() const noexcept { return node_->var; }
const Term& Term::lhs() const noexcept { return node_->a; }
const Term& Term::rhs() const noexcept { return node_->b; }
std::size_t Term::hash() const noexcept { return node_->hash; }
std::size_t Term::node_count() const { return node_->size; }
unsigned Term::max_var() const noexcept { return node_->max_var; }

std::vector<unsigned> Term::vars() const {
  std::vector<unsigned> out;
  std::vector<const Term*> stack{this};
  while (!stack.empty()) {
    const Term* t = stack.back();
    stack.pop_back();
    switch (t->op()) {
      case Op::var: out.push_back(t->var_index()); break;
      case Op::meet:
      case Op::join:
        stack.push_back(&t->lhs());
        stack.push_back(&t->rhs());
        break;
      case Op::star: stack.push_back(&t->child()); break;
      default: break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool operator==(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.op() != b.op() || a.node_->size != b.node_->size) return false;
  switch (a.op()) {
    case Op::zero:
    case Op::one: return true;
    case Op::var: return a.var_index() == b.var_index();
    case Op::meet:
    case Op::join: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Op::star: return a.child() == b.child();
  }
  return false;
}

Term operator&(const Term& a, const Term& b) { return Term::meet(a, b); }
Term operator|(const Term& a, const Term& b) { return Term::join(a, b); }

Term meet_of(const std::vector<Term>& ts) {
  if (ts.empty()) return Term::one();
  Term acc = ts.front();
  for (std::size_t i = 1; i < ts.size(); ++i) acc = Term::meet(acc, ts[i]);
  return acc;
}

Term join_of(const std::vector<Term>& ts) {
  if (ts.empty()) return Term::zero();
  Term acc = ts.front();
  for (std::size_t i = 1; i < ts.size(); ++i) acc = Term::join(acc, ts[i]);
  return acc;
}

// --- parsing -------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Term parse_all() {
    Term t = parse_or();
    skip();
    if (pos_ != s_.size()) throw SyntaxError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return t;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Term parse_or() {
    Term t = parse_and();
    while (accept('|')) t = Term::join(t, parse_and());
    return t;
  }
  Term parse_and() {
    Term t = parse_star();
    while (accept('&')) t = Term::meet(t, parse_star());
    return t;
  }
  Term parse_star() {
    Term t = parse_primary();
    while (accept('*')) t = Term::star(t);
    return t;
  }
  Term parse_primary() {
    skip();
    if (pos_ == s_.size()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = s_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      return c == '0' ? Term::zero() : Term::one();
    }
    if (c == '(') {
      ++pos_;
      Term t = parse_or();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string_view id = s_.substr(start, pos_ - start);
      bool ok = id.size() >= 2 && id[0] == 'x' && id[1] != '0' && id.size() <= 10 &&
                std::all_of(id.begin() + 1, id.end(),
                            [](char d) { return std::isdigit(static_cast<unsigned char>(d)); });
      if (!ok)
        fail(ErrorCode::unknown_identifier, "unknown identifier '" + std::string(id) +
                                                "' at position " + std::to_string(start));
      return Term::var(static_cast<unsigned>(std::stoul(std::string(id.substr(1)))));
    }
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

enum Level { kOr = 0, kAnd = 1, kPostfix = 2 };

struct Symbols {
  const char* meet;
  const char* join;
  const char* star;
};

void print(const Term& t, std::string& out, const Symbols& sym) {
  auto child = [&](const Term& c, Level need) {
    Level have = c.op() == Op::join ? kOr : c.op() == Op::meet ? kAnd : kPostfix;
    if (have < need) {
      out += '(';
      print(c, out, sym);
      out += ')';
    } else {
      print(c, out, sym);
    }
  };
  switch (t.op()) {
    case Op::zero: out += '0'; break;
    case Op::one: out += '1'; break;
    case Op::var:
      out += 'x';
      out += std::to_string(t.var_index());
      break;
    case Op::join:
      child(t.lhs(), kOr);
      out += sym.join;
      child(t.rhs(), kAnd);  // right-nested joins keep their parentheses
      break;
    case Op::meet:
      child(t.lhs(), kAnd);
      out += sym.meet;
      child(t.rhs(), kPostfix);
      break;
    case Op::star:
      child(t.child(), kPostfix);
      out += sym.star;
      break;
  }
}

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const Term& t) {
  std::string out;
  print(t, out, {" & ", " | ", "*"});
  return out;
}

std::string to_pretty(const Term& t) {
  std::string out;
  print(t, out, {" ∧ ", " ∨ ", "*"});
  return out;
}

Equation parse_equation(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos) throw SyntaxError(text.size(), "expected '='");
  if (text.find('=', eq + 1) != std::string_view::npos)
    throw SyntaxError(text.find('=', eq + 1), "more than one '='");
  Term lhs = parse_term(text.substr(0, eq));
  Term rhs;
  try {
    rhs = parse_term(text.substr(eq + 1));
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.position() + eq + 1, "syntax error in right-hand side");
  }
  return {lhs, rhs};
}

std::string to_string(const Equation& e) { return to_string(e.lhs) + " = " + to_string(e.rhs); }

unsigned max_var(const Equation& e) { return std::max(e.lhs.max_var(), e.rhs.max_var()); }

unsigned max_var(const QuasiIdentity& q) {
  unsigned m = max_var(q.conclusion);
  for (const auto& p : q.premises) m = std::max(m, max_var(p));
  return m;
}

// --- compiled evaluation ---------------------------------------------------

CompiledTerm::CompiledTerm(const Term& t) : max_var_(t.max_var()) {
  std::unordered_map<Term, std::uint32_t, TermHash> seen;
  // Iterative post-order so deep terms do not exhaust the stack.
  std::vector<std::pair<Term, bool>> stack{{t, false}};
  while (!stack.empty()) {
    auto [u, expanded] = stack.back();
    stack.pop_back();
    if (seen.count(u)) continue;
    if (!expanded) {
      stack.push_back({u, true});
      if (u.op() == Op::meet || u.op() == Op::join) {
        stack.push_back({u.rhs(), false});
        stack.push_back({u.lhs(), false});
      } else if (u.op() == Op::star) {
        stack.push_back({u.child(), false});
      }
      continue;
    }
    Instr in{u.op(), 0, 0};
    if (u.op() == Op::var) in.a = u.var_index();
    if (u.op() == Op::meet || u.op() == Op::join) {
      in.a = seen.at(u.lhs());
      in.b = seen.at(u.rhs());
    }
    if (u.op() == Op::star) in.a = seen.at(u.child());
    seen.emplace(u, static_cast<std::uint32_t>(code_.size()));
    code_.push_back(in);
  }
  scratch_.resize(code_.size());
}

Elem CompiledTerm::eval(const TableAlgebra& a, const Elem* v) const {
  Elem* r = scratch_.data();
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    switch (in.op) {
      case Op::zero: r[i] = a.zero(); break;
      case Op::one: r[i] = a.one(); break;
      case Op::var: r[i] = v[in.a]; break;
      case Op::meet: r[i] = a.meet(r[in.a], r[in.b]); break;
      case Op::join: r[i] = a.join(r[in.a], r[in.b]); break;
      case Op::star: r[i] = a.star(r[in.a]); break;
    }
  }
  return r[code_.size() - 1];
}

// --- scheme terms ----------------------------------------------------------

namespace {

void check_subset(Subset s, unsigned k) {
  if (k > 31 || (s >> k) != 0)
    fail(ErrorCode::index_out_of_range, "subset mentions a variable beyond x" + std::to_string(k));
}

}  // namespace

Term atom_term(Subset t, unsigned k) {
  check_subset(t, k);
  std::vector<Term> factors;
  for (unsigned i = 1; i <= k; ++i) {
    Term x = Term::var(i);
    factors.push_back(t >> (i - 1) & 1u ? x : Term::star(x));
  }
  return meet_of(factors);
}

Term jirr_term(const std::vector<Subset>& family, Subset l, unsigned k) {
  if (family.empty()) fail(ErrorCode::bad_index, "empty family");
  check_subset(l, k);
  Subset common = ~Subset{0};
  std::vector<Term> atoms;
  for (Subset t : family) {
    check_subset(t, k);
    common &= t;
    atoms.push_back(atom_term(t, k));
  }
  if ((l & ~common) != 0) fail(ErrorCode::bad_index, "L is not contained in every member");
  Term head = Term::star(Term::star(join_of(atoms)));
  std::vector<Term> factors{head};
  for (unsigned i = 1; i <= k; ++i)
    if (l >> (i - 1) & 1u) factors.push_back(Term::var(i));
  return meet_of(factors);
}

Term ib_term(unsigned m) {
  if (m < 1) fail(ErrorCode::invalid_argument, "ib_m needs m >= 1");
  std::vector<Term> disjuncts;
  for (unsigned i = 1; i <= m + 1; ++i) {
    std::vector<Term> factors{Term::var(i)};
    for (unsigned j = 1; j <= m + 1; ++j)
      if (j != i) factors.push_back(Term::star(Term::var(j)));
    disjuncts.push_back(Term::star(meet_of(factors)));
  }
  return join_of(disjuncts);
}

QuasiIdentity qb_system(unsigned n) {
  if (n < 2) fail(ErrorCode::invalid_argument, "qb_n needs n >= 2");
  QuasiIdentity q;
  std::vector<Term> all;
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<Term> others;
    for (unsigned j = 1; j <= n; ++j)
      if (j != i) others.push_back(Term::var(j));
    q.premises.push_back({Term::star(Term::var(i)), join_of(others)});
    all.push_back(Term::var(i));
  }
  q.conclusion = {join_of(all), Term::one()};
  return q;
}

Term subtraction_term() { return parse_term("(x1 | x2) & (x1 & x2)*"); }
Term boolean_equiv_term() { return parse_term("x1* & x2* | x1 & x2"); }
Term implication_term() { return parse_term("(x1 & x2*)*"); }
Term box_term() { return parse_term("x1**"); }

Term substitute(const Term& t, const std::vector<Term>& subs) {
  switch (t.op()) {
    case Op::zero:
    case Op::one: return t;
    case Op::var:
      if (t.var_index() > subs.size())
        fail(ErrorCode::unbound_variable, "no substitute for x" + std::to_string(t.var_index()));
      return subs[t.var_index() - 1];
    case Op::meet: return Term::meet(substitute(t.lhs(), subs), substitute(t.rhs(), subs));
    case Op::join: return Term::join(substitute(t.lhs(), subs), substitute(t.rhs(), subs));
    case Op::star: return Term::star(substitute(t.child(), subs));
  }
  return t;
}

}  // namespace palg
