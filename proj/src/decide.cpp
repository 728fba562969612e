#include "palg/decide.hpp"

#include <algorithm>
#include <cctype>

namespace palg {

const char* method_name(Method m) noexcept {
  switch (m) {
    case Method::normal_form: return "normal-form";
    case Method::exhaustive: return "exhaustive";
    case Method::pruned: return "pruned";
  }
  return "unknown";
}

unsigned parse_variety(const std::string& text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "pa" || s == "pa_omega" || s == "omega") return kOmega;
  std::string digits;
  if (s.rfind("pa_", 0) == 0)
    digits = s.substr(3);
  else if (s.rfind("pa", 0) == 0)
    digits = s.substr(2);
  if (digits.empty() || digits.size() > 6 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail(ErrorCode::invalid_argument, "unknown variety '" + text + "' (expected pa or paN)");
  return static_cast<unsigned>(std::stoul(digits));
}

std::string variety_name(unsigned n) { return n == kOmega ? "pa" : "pa" + std::to_string(n); }

unsigned deciding_si(unsigned n, unsigned k) {
  if (n == 0) return 0;
  return effective_n(n, k);
}

namespace {

std::uint64_t valuation_count(std::size_t size, unsigned vars, const Limits& limits) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < vars; ++i) {
    if (size != 0 && total > limits.valuation_budget / size)
      fail(ErrorCode::budget_exceeded, std::to_string(size) + "^" + std::to_string(vars) +
                                           " valuations exceed budget " +
                                           std::to_string(limits.valuation_budget));
    total *= size;
  }
  return total;
}

// Odometer over 1..vars with x_vars fastest; false once wrapped.
bool advance(std::vector<Elem>& v, std::size_t size) {
  for (std::size_t i = v.size() - 1; i >= 1; --i) {
    if (++v[i] < size) return true;
    v[i] = 0;
  }
  return false;
}

void attach_witness(Verdict& out, const TableAlgebra& a, std::vector<Elem> v,
                    const std::string& name) {
  out.holds = false;
  out.witness = std::move(v);
  out.witness_labels.assign(out.witness.size(), "");
  for (std::size_t i = 1; i < out.witness.size(); ++i) out.witness_labels[i] = a.label(out.witness[i]);
  out.algebra = name;
}

std::string si_name(unsigned m) { return "si:" + std::to_string(m); }

}  // namespace

Verdict check_identity(const Equation& e, unsigned n, Method method, const Limits& limits) {
  const unsigned k = max_var(e);
  const unsigned m = deciding_si(n, k);
  Verdict out;
  out.method = method;
  if (method == Method::normal_form) {
    auto f = free_algebra(n, k, limits);
    const ElementSet l = f->eval(e.lhs), r = f->eval(e.rhs);
    out.holds = f->render(l) == f->render(r);
    if (out.holds) return out;
    // A join-irreducible below exactly one side names a homomorphism onto
    // build_si(s) sending that side to 1 and the other side elsewhere.
    const std::size_t j = ((l - r) | (r - l)).first();
    const GAssignment g = homomorphism_g(f->indices()[j]);
    TableAlgebra target = build_si(m, limits);
    std::vector<Elem> v(k + 1, 0);
    for (unsigned i = 1; i <= k; ++i) v[i] = embed_si(g.images[i], g.s, m);
    if (eval(e.lhs, target, v) == eval(e.rhs, target, v))
      fail(ErrorCode::invalid_argument, "separating valuation failed to separate");
    out.budget_used = 1;
    attach_witness(out, target, std::move(v), si_name(m));
    return out;
  }
  if (method != Method::exhaustive)
    fail(ErrorCode::invalid_argument, "identities are checked by normal form or exhaustively");
  TableAlgebra a = build_si(m, limits);
  valuation_count(a.size(), k, limits);
  CompiledTerm lhs(e.lhs), rhs(e.rhs);
  std::vector<Elem> v(k + 1, 0);
  do {
    ++out.budget_used;
    if (lhs.eval(a, v.data()) != rhs.eval(a, v.data())) {
      attach_witness(out, a, v, si_name(m));
      return out;
    }
  } while (k > 0 && advance(v, a.size()));
  return out;
}

namespace {

enum class Pattern { none, x, star, star2 };

// Matches x_i, x_i* or x_i**.
std::pair<Pattern, unsigned> match_pattern(const Term& t) {
  if (t.op() == Op::var) return {Pattern::x, t.var_index()};
  if (t.op() == Op::star) {
    const Term& c = t.child();
    if (c.op() == Op::var) return {Pattern::star, c.var_index()};
    if (c.op() == Op::star && c.child().op() == Op::var) return {Pattern::star2, c.child().var_index()};
  }
  return {Pattern::none, 0};
}

struct Restriction {
  Pattern pattern;
  CompiledTerm other;
};

class PrunedSearch {
 public:
  PrunedSearch(const QuasiIdentity& q, const TableAlgebra& a, const Limits& limits)
      : a_(a), k_(max_var(q)), limits_(limits), conclusion_{CompiledTerm(q.conclusion.lhs), CompiledTerm(q.conclusion.rhs)} {
    checks_.resize(k_ + 1);
    restrict_.resize(k_ + 1);
    for (const auto& p : q.premises) {
      checks_[max_var(p)].push_back({CompiledTerm(p.lhs), CompiledTerm(p.rhs)});
      for (int side = 0; side < 2; ++side) {
        const Term& pat = side == 0 ? p.lhs : p.rhs;
        const Term& other = side == 0 ? p.rhs : p.lhs;
        auto [kind, var] = match_pattern(pat);
        if (kind != Pattern::none && other.max_var() < var) {
          restrict_[var].push_back({kind, CompiledTerm(other)});
          break;
        }
      }
    }
    pre_star_.assign(a.size(), {});
    pre_star2_.assign(a.size(), {});
    for (Elem x = 0; x < a.size(); ++x) {
      pre_star_[a.star(x)].push_back(x);
      pre_star2_[a.star(a.star(x))].push_back(x);
    }
    all_.resize(a.size());
    for (Elem x = 0; x < a.size(); ++x) all_[x] = x;
  }

  // True if a witness was found; it is left in v.
  bool run() {
    v_.assign(k_ + 1, 0);
    if (!premises_hold(0)) return false;
    return step(1);
  }

  std::vector<Elem> witness() const { return v_; }
  std::uint64_t used() const { return used_; }

 private:
  bool premises_hold(unsigned level) {
    for (auto& [l, r] : checks_[level])
      if (l.eval(a_, v_.data()) != r.eval(a_, v_.data())) return false;
    return true;
  }

  bool step(unsigned i) {
    if (i > k_) return conclusion_.first.eval(a_, v_.data()) != conclusion_.second.eval(a_, v_.data());
    std::vector<Elem> cand;
    const std::vector<Elem>* use = &all_;
    bool first = true;
    for (auto& r : restrict_[i]) {
      const Elem t = r.other.eval(a_, v_.data());
      std::vector<Elem> single;
      const std::vector<Elem>* pre;
      if (r.pattern == Pattern::x) {
        single = {t};
        pre = &single;
      } else {
        pre = r.pattern == Pattern::star ? &pre_star_[t] : &pre_star2_[t];
      }
      if (first) {
        cand = *pre;
        first = false;
      } else {
        std::vector<Elem> both;
        std::set_intersection(cand.begin(), cand.end(), pre->begin(), pre->end(), std::back_inserter(both));
        cand.swap(both);
      }
    }
    if (!first) use = &cand;
    for (Elem x : *use) {
      if (++used_ > limits_.valuation_budget)
        fail(ErrorCode::budget_exceeded, "pruned search exceeds budget " +
                                             std::to_string(limits_.valuation_budget));
      v_[i] = x;
      if (!premises_hold(i)) continue;
      if (step(i + 1)) return true;
    }
    return false;
  }

  const TableAlgebra& a_;
  unsigned k_;
  const Limits& limits_;
  std::pair<CompiledTerm, CompiledTerm> conclusion_;
  std::vector<std::vector<std::pair<CompiledTerm, CompiledTerm>>> checks_;
  std::vector<std::vector<Restriction>> restrict_;
  std::vector<std::vector<Elem>> pre_star_, pre_star2_;
  std::vector<Elem> all_;
  std::vector<Elem> v_;
  std::uint64_t used_ = 0;
};

}  // namespace

Verdict check_quasi_identity(const QuasiIdentity& q, const TableAlgebra& a, Method strategy,
                             const Limits& limits) {
  Verdict out;
  out.method = strategy;
  const unsigned k = max_var(q);
  if (strategy == Method::pruned) {
    PrunedSearch search(q, a, limits);
    const bool found = search.run();
    out.budget_used = search.used();
    if (found) attach_witness(out, a, search.witness(), "");
    return out;
  }
  if (strategy != Method::exhaustive)
    fail(ErrorCode::invalid_argument, "quasi-identities are checked exhaustively or pruned");
  valuation_count(a.size(), k, limits);
  std::vector<std::pair<CompiledTerm, CompiledTerm>> premises;
  for (const auto& p : q.premises) premises.push_back({CompiledTerm(p.lhs), CompiledTerm(p.rhs)});
  CompiledTerm cl(q.conclusion.lhs), cr(q.conclusion.rhs);
  std::vector<Elem> v(k + 1, 0);
  do {
    ++out.budget_used;
    bool sat = true;
    for (auto& [l, r] : premises)
      if (l.eval(a, v.data()) != r.eval(a, v.data())) {
        sat = false;
        break;
      }
    if (sat && cl.eval(a, v.data()) != cr.eval(a, v.data())) {
      attach_witness(out, a, v, "");
      return out;
    }
  } while (k > 0 && advance(v, a.size()));
  return out;
}

Verdict check_in_free(const QuasiIdentity& q, unsigned n, unsigned rank, Method strategy,
                      const Limits& limits) {
  auto f = free_algebra(n, rank, limits);
  TableAlgebra t = upset_to_table(f->algebra(), limits);
  Verdict v = check_quasi_identity(q, t, strategy, limits);
  if (!v.holds) v.algebra = "free:" + (n == kOmega ? std::string("omega") : std::to_string(n)) + "," + std::to_string(rank);
  return v;
}

Verdict admissible_in_free(const QuasiIdentity& q, unsigned n, unsigned k_extra, Method strategy,
                           const Limits& limits) {
  return check_in_free(q, n, max_var(q) + k_extra, strategy, limits);
}

std::vector<SubalgebraWitness> subalgebra_witnesses(const std::string& name, const TableAlgebra& a) {
  std::vector<SubalgebraWitness> out;
  auto finish = [&](SubalgebraWitness w, std::vector<Elem> gens) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    ElementSet claimed(a.size());
    for (Elem g : gens) claimed.set(g);
    const ElementSet generated = subuniverse(a, gens);
    w.universe = gens;
    w.verified = generated == claimed &&
                 is_isomorphic(subalgebra(a, claimed), build_si(w.si_index)).has_value();
    out.push_back(std::move(w));
  };
  for (Elem c = 0; c < a.size(); ++c) {
    const Elem cc = a.join(c, a.star(c));
    if (cc != a.one()) {
      finish({name, c, {}, 1, false}, {a.zero(), cc, a.one()});
      break;
    }
  }
  for (Elem d = 0; d < a.size(); ++d) {
    const Elem s1 = a.star(d), s2 = a.star(s1);
    if (a.join(s1, s2) != a.one()) {
      finish({name, d, {}, 2, false}, {a.zero(), s1, s2, a.join(s1, s2), a.one()});
      break;
    }
  }
  return out;
}

CompletenessReport structural_completeness_report(unsigned n, const Limits& limits) {
  CompletenessReport r;
  r.n = n;
  if (n < 3) {
    r.structurally_complete = true;
    r.classification.push_back("pa-1");
    for (unsigned i = 0; i <= n; ++i) r.classification.push_back("pa" + std::to_string(i));
    std::vector<std::pair<std::string, TableAlgebra>> corpus;
    for (unsigned i = 0; i <= 3; ++i) corpus.emplace_back("si:" + std::to_string(i), build_si(i));
    for (unsigned m = 3; m <= 6; ++m) corpus.emplace_back("chain:" + std::to_string(m), build_chain(m));
    corpus.emplace_back("free:1,1", upset_to_table(free_algebra(1, 1)->algebra()));
    corpus.emplace_back("free:2,1", upset_to_table(free_algebra(2, 1)->algebra()));
    for (const auto& [name, a] : corpus)
      for (auto& w : subalgebra_witnesses(name, a)) r.subalgebras.push_back(std::move(w));
    r.note = "every nontrivial subquasivariety of pa" + std::to_string(n) +
             " is a variety pa_i, shown by the subalgebra witnesses";
    return r;
  }
  r.structurally_complete = false;
  const QuasiIdentity qb3 = qb_system(3);
  r.verdicts.emplace_back("si:3", check_quasi_identity(qb3, build_si(3, limits), Method::exhaustive, limits));
  r.verdicts.back().second.algebra = r.verdicts.back().second.holds ? "" : "si:3";
  const std::string nn = n == kOmega ? "omega" : std::to_string(n);
  r.verdicts.emplace_back("free:" + nn + ",1", check_in_free(qb3, n, 1, Method::exhaustive, limits));
  r.verdicts.emplace_back("free:" + nn + ",2", check_in_free(qb3, n, 2, Method::pruned, limits));
  r.note = "qb3 fails in si:3 yet holds in the sampled free algebras; free algebras of rank above 2 "
           "are not checked";
  return r;
}

OracleResult oracle_equivalence(const Term& t1, const Term& t2, unsigned n, const Limits& limits) {
  OracleResult r;
  const Equation e{t1, t2};
  r.nf_equal = check_identity(e, n, Method::normal_form, limits).holds;
  r.exhaustive = check_identity(e, n, Method::exhaustive, limits);
  r.exhaustive_equal = r.exhaustive.holds;
  return r;
}

Term random_term(std::mt19937_64& rng, unsigned vars, unsigned depth) {
  if (depth == 0 || rng() % 4 == 0) {
    if (rng() % 10 == 0) return rng() % 2 ? Term::one() : Term::zero();
    return Term::var(1 + static_cast<unsigned>(rng() % vars));
  }
  switch (rng() % 3) {
    case 0: return Term::meet(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1));
    case 1: return Term::join(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1));
    default: return Term::star(random_term(rng, vars, depth - 1));
  }
}

namespace {

Term rewrite_here(std::mt19937_64& rng, const Term& t, unsigned vars) {
  switch (rng() % 8) {
    case 0:
      if (t.op() == Op::meet) return Term::meet(t.rhs(), t.lhs());
      if (t.op() == Op::join) return Term::join(t.rhs(), t.lhs());
      return Term::meet(t, t);
    case 1: return Term::join(t, Term::meet(t, random_term(rng, vars, 2)));
    case 2: return Term::meet(t, Term::join(t, random_term(rng, vars, 2)));
    case 3:
      if (t.op() == Op::star) return Term::star(Term::star(t));
      return Term::join(t, Term::zero());
    case 4: return Term::meet(Term::star(Term::star(t)), t);
    case 5: return Term::join(t, Term::meet(t, Term::star(t)));
    case 6:
      // x & (x & y)* = x & y*
      if (t.op() == Op::meet && t.rhs().op() == Op::star && t.rhs().child().op() == Op::meet &&
          t.rhs().child().lhs() == t.lhs())
        return Term::meet(t.lhs(), Term::star(t.rhs().child().rhs()));
      return Term::meet(t, Term::one());
    default:
      if (t.op() == Op::meet && t.rhs().op() == Op::join)
        return Term::join(Term::meet(t.lhs(), t.rhs().lhs()), Term::meet(t.lhs(), t.rhs().rhs()));
      return Term::join(t, t);
  }
}

Term rewrite_at(std::mt19937_64& rng, const Term& t, std::size_t& target, unsigned vars) {
  if (target == 0) {
    target = static_cast<std::size_t>(-1);
    return rewrite_here(rng, t, vars);
  }
  --target;
  switch (t.op()) {
    case Op::meet: {
      Term l = rewrite_at(rng, t.lhs(), target, vars);
      return Term::meet(l, target == static_cast<std::size_t>(-1) ? t.rhs() : rewrite_at(rng, t.rhs(), target, vars));
    }
    case Op::join: {
      Term l = rewrite_at(rng, t.lhs(), target, vars);
      return Term::join(l, target == static_cast<std::size_t>(-1) ? t.rhs() : rewrite_at(rng, t.rhs(), target, vars));
    }
    case Op::star: return Term::star(rewrite_at(rng, t.child(), target, vars));
    default: return t;
  }
}

}  // namespace

Term equal_rewrite(std::mt19937_64& rng, const Term& t, unsigned vars) {
  std::size_t target = rng() % t.node_count();
  return rewrite_at(rng, t, target, vars);
}

OracleBatch oracle_batch(std::size_t trials, std::uint64_t seed, unsigned max_vars, unsigned max_depth,
                         const std::vector<unsigned>& ns, const Limits& limits) {
  std::mt19937_64 rng(seed);
  OracleBatch b;
  for (std::size_t i = 0; i < trials; ++i) {
    const unsigned n = ns[i % ns.size()];
    const unsigned vars = 1 + static_cast<unsigned>(rng() % max_vars);
    Term t1 = random_term(rng, vars, max_depth);
    Term t2;
    if (i % 2 == 0) {
      t2 = random_term(rng, vars, max_depth);
    } else {
      t2 = t1;
      const unsigned steps = 1 + static_cast<unsigned>(rng() % 3);
      for (unsigned s = 0; s < steps; ++s) t2 = equal_rewrite(rng, t2, vars);
    }
    OracleResult r = oracle_equivalence(t1, t2, n, limits);
    ++b.trials;
    if (r.agree())
      ++b.agreements;
    else
      b.disagreements.emplace_back(t1, t2);
    if (r.exhaustive_equal) ++b.equal_pairs;
  }
  return b;
}

}  // namespace palg
