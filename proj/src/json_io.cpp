#include "palg/json_io.hpp"

namespace palg {

namespace {

[[noreturn]] void malformed(const std::string& what) { fail(ErrorCode::malformed_tables, what); }

std::vector<Elem> flat_table(const Json& j, std::size_t n, const char* name) {
  if (!j.is_array() || j.size() != n) malformed(std::string(name) + " must have " + std::to_string(n) + " rows");
  std::vector<Elem> out;
  out.reserve(n * n);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n)
      malformed(std::string(name) + " rows must have " + std::to_string(n) + " entries");
    for (const auto& v : row) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= n)
        malformed(std::string(name) + " entry out of range");
      out.push_back(v.get<Elem>());
    }
  }
  return out;
}

Elem element(const Json& j, std::size_t n, const char* name) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() >= n)
    malformed(std::string(name) + " must be an element index");
  return j.get<Elem>();
}

Json table_rows(const std::vector<Elem>& t, std::size_t n) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    rows.push_back(std::vector<Elem>(t.begin() + i * n, t.begin() + (i + 1) * n));
  return rows;
}

Term term_of(const Json& j) {
  if (j.is_string()) return parse_term(j.get<std::string>());
  return term_from_json(j);
}

}  // namespace

Json poset_to_json(const Poset& p) {
  Json covers = Json::array();
  for (auto [lo, hi] : p.covers()) covers.push_back({lo, hi});
  return Json{{"size", p.size()}, {"covers", covers}};
}

Poset poset_from_json(const Json& j, const Limits& limits) {
  if (!j.is_object() || !j.contains("size") || !j["size"].is_number_unsigned())
    malformed("poset needs a size");
  auto n = j["size"].get<std::size_t>();
  check_cap(n, limits.poset_size, "poset size");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (j.contains("covers")) {
    for (const auto& c : j["covers"]) {
      if (!c.is_array() || c.size() != 2) malformed("cover must be a pair");
      auto lo = element(c[0], n, "cover"), hi = element(c[1], n, "cover");
      pairs.emplace_back(lo, hi);
    }
  }
  try {
    return Poset::from_pairs(n, pairs, limits);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::invalid_argument) malformed(e.what());
    throw;
  }
}

Json algebra_to_json(const TableAlgebra& a) {
  auto n = a.size();
  Json j{{"kind", "table"},
         {"size", n},
         {"meet", table_rows(a.meet_table(), n)},
         {"join", table_rows(a.join_table(), n)},
         {"star", a.star_table()},
         {"zero", a.zero()},
         {"one", a.one()}};
  if (a.has_labels()) j["labels"] = a.labels();
  return j;
}

Json algebra_to_json(const UpsetAlgebra& u) {
  Json j{{"kind", "upset"}, {"poset", poset_to_json(u.base())}};
  if (!u.point_labels().empty()) j["labels"] = u.point_labels();
  return j;
}

PAlgebra algebra_from_json(const Json& j, const Limits& limits) {
  if (!j.is_object()) malformed("algebra must be an object");
  std::string kind = j.value("kind", "table");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) malformed("labels must be an array");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) malformed("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  if (kind == "upset") {
    if (!j.contains("poset")) malformed("upset algebra needs a poset");
    Poset p = poset_from_json(j["poset"], limits);
    if (!labels.empty() && labels.size() != p.size()) malformed("one label per point expected");
    return UpsetAlgebra(std::move(p), std::move(labels));
  }
  if (kind != "table") malformed("unknown algebra kind '" + kind + "'");
  for (const char* key : {"size", "meet", "join", "star", "zero", "one"})
    if (!j.contains(key)) malformed(std::string("missing field '") + key + "'");
  if (!j["size"].is_number_unsigned()) malformed("size must be a positive integer");
  auto n = j["size"].get<std::size_t>();
  if (n == 0) malformed("size must be positive");
  check_cap(n, limits.table_size, "table size");
  auto meet = flat_table(j["meet"], n, "meet");
  auto join = flat_table(j["join"], n, "join");
  const auto& sj = j["star"];
  if (!sj.is_array() || sj.size() != n) malformed("star must have one entry per element");
  std::vector<Elem> star;
  for (const auto& v : sj) star.push_back(element(v, n, "star entry"));
  if (!labels.empty() && labels.size() != n) malformed("one label per element expected");
  return TableAlgebra(n, std::move(meet), std::move(join), std::move(star),
                      element(j["zero"], n, "zero"), element(j["one"], n, "one"),
                      std::move(labels));
}

Json term_to_json(const Term& t) {
  switch (t.op()) {
    case Op::zero: return Json::array({"zero"});
    case Op::one: return Json::array({"one"});
    case Op::var: return Json::array({"var", t.var_index()});
    case Op::meet: return Json::array({"meet", term_to_json(t.lhs()), term_to_json(t.rhs())});
    case Op::join: return Json::array({"join", term_to_json(t.lhs()), term_to_json(t.rhs())});
    case Op::star: return Json::array({"star", term_to_json(t.child())});
  }
  return {};
}

Term term_from_json(const Json& j) {
  auto bad = [] { fail(ErrorCode::invalid_argument, "malformed term array"); };
  if (!j.is_array() || j.empty() || !j[0].is_string()) bad();
  auto op = j[0].get<std::string>();
  if (op == "zero" && j.size() == 1) return Term::zero();
  if (op == "one" && j.size() == 1) return Term::one();
  if (op == "var" && j.size() == 2 && j[1].is_number_unsigned() && j[1].get<unsigned>() >= 1)
    return Term::var(j[1].get<unsigned>());
  if (op == "meet" && j.size() == 3) return Term::meet(term_from_json(j[1]), term_from_json(j[2]));
  if (op == "join" && j.size() == 3) return Term::join(term_from_json(j[1]), term_from_json(j[2]));
  if (op == "star" && j.size() == 2) return Term::star(term_from_json(j[1]));
  fail(ErrorCode::invalid_argument, "malformed term array");
}

Equation equation_from_json(const Json& j) {
  if (j.is_string()) return parse_equation(j.get<std::string>());
  if (j.is_object() && j.contains("lhs") && j.contains("rhs"))
    return {term_of(j["lhs"]), term_of(j["rhs"])};
  fail(ErrorCode::invalid_argument, "equation must be \"s = t\" or {lhs, rhs}");
}

Json equation_to_json(const Equation& e) {
  return Json{{"lhs", to_string(e.lhs)}, {"rhs", to_string(e.rhs)}};
}

QuasiIdentity quasi_identity_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("conclusion"))
    fail(ErrorCode::invalid_argument, "quasi-identity needs a conclusion");
  QuasiIdentity q;
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) fail(ErrorCode::invalid_argument, "premises must be an array");
    for (const auto& p : j["premises"]) q.premises.push_back(equation_from_json(p));
  }
  q.conclusion = equation_from_json(j["conclusion"]);
  return q;
}

Json quasi_identity_to_json(const QuasiIdentity& q) {
  Json prem = Json::array();
  for (const auto& p : q.premises) prem.push_back(to_string(p));
  return Json{{"premises", prem}, {"conclusion", to_string(q.conclusion)}};
}

Json verdict_to_json(const Verdict& v) {
  Json j{{"holds", v.holds}};
  if (!v.holds && !v.witness.empty()) {
    Json assign = Json::array();
    for (std::size_t i = 1; i < v.witness.size(); ++i) {
      Json a{{"var", "x" + std::to_string(i)}, {"element", v.witness[i]}};
      if (i < v.witness_labels.size()) a["label"] = v.witness_labels[i];
      assign.push_back(a);
    }
    j["witness"] = Json{{"algebra", v.algebra}, {"assignment", assign}};
  }
  j["method"] = method_name(v.method);
  j["budgetUsed"] = v.budget_used;
  return j;
}

Json congruence_to_json(const Congruence& c) { return c.labels(); }

Json cm_record_to_json(const CmRecord& r) {
  return Json{{"mu", congruence_to_json(r.mu)},
              {"storey", storey_name(r.storey)},
              {"oneClass", r.one_class.to_vector()},
              {"psi", r.psi},
              {"eMu", r.e_mu},
              {"muPlus", congruence_to_json(r.mu_plus)}};
}

Json jindex_to_json(const JIndex& j) {
  auto members = [&](Subset s) {
    std::vector<unsigned> out;
    for (unsigned i = 0; i < j.k; ++i)
      if (s >> i & 1u) out.push_back(i + 1);
    return out;
  };
  Json fam = Json::array();
  for (Subset s : j.family) fam.push_back(members(s));
  return Json{{"T", fam}, {"L", members(j.l)}};
}

}  // namespace palg
