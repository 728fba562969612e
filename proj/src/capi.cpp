#include "palgebra.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>

#include "palg/json_io.hpp"

using namespace palg;

struct palg_context {
  Limits limits;
  palg_status status = PALG_OK;
  std::string message;
  std::string error_json;
};

struct palg_algebra {
  TableAlgebra table;
  std::string name;
};

struct palg_term {
  Term term;
};

namespace {

palg_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::cap_exceeded: return PALG_CAP_EXCEEDED;
    case ErrorCode::budget_exceeded: return PALG_BUDGET_EXCEEDED;
    case ErrorCode::syntax_error: return PALG_SYNTAX_ERROR;
    case ErrorCode::unknown_identifier: return PALG_UNKNOWN_IDENTIFIER;
    case ErrorCode::unbound_variable: return PALG_UNBOUND_VARIABLE;
    case ErrorCode::malformed_tables: return PALG_MALFORMED_TABLES;
    case ErrorCode::not_a_congruence: return PALG_NOT_A_CONGRUENCE;
    case ErrorCode::not_prime: return PALG_NOT_PRIME;
    case ErrorCode::bad_index: return PALG_BAD_INDEX;
    case ErrorCode::index_out_of_range: return PALG_INDEX_OUT_OF_RANGE;
    case ErrorCode::invalid_argument: return PALG_INVALID_ARGUMENT;
    case ErrorCode::io_error: return PALG_IO_ERROR;
  }
  return PALG_INTERNAL_ERROR;
}

palg_status set_error(palg_context* ctx, palg_status s, const std::string& msg) {
  if (!ctx) return s;
  ctx->status = s;
  ctx->message = msg;
  ctx->error_json = Json{{"error", palg_status_name(s)}, {"message", msg}}.dump();
  return s;
}

// Runs f, translating every exception into a status recorded on ctx.
template <class F>
palg_status guarded(palg_context* ctx, F&& f) {
  if (!ctx) return PALG_INVALID_ARGUMENT;
  try {
    f();
    ctx->status = PALG_OK;
    ctx->message.clear();
    ctx->error_json.clear();
    return PALG_OK;
  } catch (const Error& e) {
    return set_error(ctx, to_status(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(ctx, PALG_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(ctx, PALG_CAP_EXCEEDED, "out of memory");
  } catch (const std::exception& e) {
    return set_error(ctx, PALG_INTERNAL_ERROR, e.what());
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::invalid_argument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  need(out, "output pointer");
  *out = dup(s);
}

void emit(char** out, const Json& j) { emit(out, j.dump(2)); }

unsigned parse_count(const std::string& s, bool allow_omega) {
  if (allow_omega && (s == "omega" || s == "w" || s == "inf")) return kOmega;
  if (s.empty() || s.size() > 6 || s.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorCode::invalid_argument, "expected a non-negative integer, got '" + s + "'");
  return static_cast<unsigned>(std::stoul(s));
}

std::string n_name(unsigned n) { return n == kOmega ? "omega" : std::to_string(n); }

Method parse_method(const char* text, Method fallback) {
  if (!text || !*text) return fallback;
  std::string s = text;
  if (s == "nf" || s == "normal-form" || s == "normal_form") return Method::normal_form;
  if (s == "exhaustive") return Method::exhaustive;
  if (s == "pruned") return Method::pruned;
  fail(ErrorCode::invalid_argument, "unknown method '" + s + "'");
}

TableAlgebra load_builtin(const std::string& spec, const Limits& limits, bool* matched) {
  *matched = true;
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  if (kind == "si") return build_si(parse_count(arg, false), limits);
  if (kind == "chain") return build_chain(parse_count(arg, false), limits);
  if (kind == "bool") return build_boolean(parse_count(arg, false), limits);
  if (kind == "dist") return free_distributive_table(parse_count(arg, false), limits);
  if (kind == "free") {
    auto comma = arg.find(',');
    if (comma == std::string::npos) fail(ErrorCode::invalid_argument, "expected free:n,k");
    unsigned n = parse_count(arg.substr(0, comma), true);
    unsigned k = parse_count(arg.substr(comma + 1), false);
    auto f = free_algebra(n, k, limits);
    return upset_to_table(f->algebra(), limits);
  }
  *matched = false;
  return {};
}

Json report_to_json(const CompletenessReport& r) {
  Json subs = Json::array();
  for (const auto& s : r.subalgebras)
    subs.push_back(Json{{"algebra", s.algebra},
                        {"element", s.element},
                        {"universe", s.universe},
                        {"isomorphicTo", "si:" + std::to_string(s.si_index)},
                        {"verified", s.verified}});
  Json verdicts = Json::array();
  for (const auto& [name, v] : r.verdicts) {
    Json j = verdict_to_json(v);
    j["algebra"] = name;
    verdicts.push_back(j);
  }
  Json out{{"n", r.n == kOmega ? Json("omega") : Json(r.n)},
           {"structurallyComplete", r.structurally_complete}};
  if (!r.classification.empty()) out["classification"] = r.classification;
  out["subalgebras"] = subs;
  if (!verdicts.empty()) out["verdicts"] = verdicts;
  out["note"] = r.note;
  return out;
}

Json bigint_json(const BigInt& v) {
  if (v <= BigInt(std::numeric_limits<std::uint64_t>::max()))
    return static_cast<std::uint64_t>(v);
  return v.str();
}

}  // namespace

extern "C" {

const char* palg_version(void) { return "1.0.0"; }

const char* palg_status_name(palg_status s) {
  switch (s) {
    case PALG_OK: return "OK";
    case PALG_CAP_EXCEEDED: return "CapExceeded";
    case PALG_BUDGET_EXCEEDED: return "BudgetExceeded";
    case PALG_SYNTAX_ERROR: return "SyntaxError";
    case PALG_UNKNOWN_IDENTIFIER: return "UnknownIdentifier";
    case PALG_UNBOUND_VARIABLE: return "UnboundVariable";
    case PALG_MALFORMED_TABLES: return "MalformedTables";
    case PALG_NOT_A_CONGRUENCE: return "NotACongruence";
    case PALG_NOT_PRIME: return "NotPrime";
    case PALG_BAD_INDEX: return "BadIndex";
    case PALG_INDEX_OUT_OF_RANGE: return "IndexOutOfRange";
    case PALG_INVALID_ARGUMENT: return "InvalidArgument";
    case PALG_IO_ERROR: return "IOError";
    case PALG_INTERNAL_ERROR: return "InternalError";
  }
  return "Unknown";
}

palg_context* palg_context_new(void) { return new (std::nothrow) palg_context(); }
void palg_context_free(palg_context* ctx) { delete ctx; }

palg_status palg_set_limit(palg_context* ctx, palg_limit limit, uint64_t value) {
  return guarded(ctx, [&] {
    if (value == 0) fail(ErrorCode::invalid_argument, "limits must be positive");
    auto& l = ctx->limits;
    switch (limit) {
      case PALG_LIMIT_POSET_SIZE: l.poset_size = value; return;
      case PALG_LIMIT_TABLE_SIZE: l.table_size = value; return;
      case PALG_LIMIT_ORACLE_SIZE: l.oracle_size = value; return;
      case PALG_LIMIT_UPSET_COUNT: l.upset_count = value; return;
      case PALG_LIMIT_VALUATION_BUDGET: l.valuation_budget = value; return;
    }
    fail(ErrorCode::invalid_argument, "unknown limit");
  });
}

uint64_t palg_get_limit(const palg_context* ctx, palg_limit limit) {
  if (!ctx) return 0;
  const auto& l = ctx->limits;
  switch (limit) {
    case PALG_LIMIT_POSET_SIZE: return l.poset_size;
    case PALG_LIMIT_TABLE_SIZE: return l.table_size;
    case PALG_LIMIT_ORACLE_SIZE: return l.oracle_size;
    case PALG_LIMIT_UPSET_COUNT: return l.upset_count;
    case PALG_LIMIT_VALUATION_BUDGET: return l.valuation_budget;
  }
  return 0;
}

palg_status palg_last_status(const palg_context* ctx) { return ctx ? ctx->status : PALG_INVALID_ARGUMENT; }
const char* palg_last_error(const palg_context* ctx) { return ctx ? ctx->message.c_str() : ""; }
const char* palg_last_error_json(const palg_context* ctx) {
  return ctx ? ctx->error_json.c_str() : "";
}

void palg_string_free(char* s) { std::free(s); }

palg_status palg_algebra_load(palg_context* ctx, const char* spec, palg_algebra** out) {
  return guarded(ctx, [&] {
    need(spec, "spec");
    need(out, "output pointer");
    bool matched = false;
    std::string s = spec;
    TableAlgebra t;
    if (s.find(':') != std::string::npos) t = load_builtin(s, ctx->limits, &matched);
    if (!matched) {
      std::ifstream in(s);
      if (!in) fail(ErrorCode::io_error, "cannot open '" + s + "'");
      Json j;
      try {
        j = Json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::malformed_tables, std::string("invalid JSON: ") + e.what());
      }
      t = algebra_from_json(j, ctx->limits).table(ctx->limits);
    }
    *out = new palg_algebra{std::move(t), s};
  });
}

palg_status palg_algebra_from_json(palg_context* ctx, const char* json, palg_algebra** out) {
  return guarded(ctx, [&] {
    need(json, "json");
    need(out, "output pointer");
    Json j;
    try {
      j = Json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorCode::malformed_tables, std::string("invalid JSON: ") + e.what());
    }
    *out = new palg_algebra{algebra_from_json(j, ctx->limits).table(ctx->limits), "json"};
  });
}

void palg_algebra_free(palg_algebra* a) { delete a; }
size_t palg_algebra_size(const palg_algebra* a) { return a ? a->table.size() : 0; }

palg_status palg_algebra_to_json(palg_context* ctx, const palg_algebra* a, char** out) {
  return guarded(ctx, [&] {
    need(a, "algebra");
    emit(out, algebra_to_json(a->table));
  });
}

palg_status palg_algebra_validate(palg_context* ctx, const palg_algebra* a, int* ok, char** out) {
  return guarded(ctx, [&] {
    need(a, "algebra");
    auto v = validate(a->table);
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(Json{{"law", x.law}, {"witness", x.witness}});
    if (ok) *ok = v.empty();
    if (out) emit(out, Json{{"valid", v.empty()}, {"violations", arr}});
  });
}

palg_status palg_dual(palg_context* ctx, const palg_algebra* a, char** out) {
  return guarded(ctx, [&] {
    need(a, "algebra");
    const auto& t = a->table;
    auto records = cm_all(t);
    Json cm = Json::array();
    std::size_t storey1 = 0;
    for (const auto& r : records) {
      cm.push_back(cm_record_to_json(r));
      storey1 += r.storey == Storey::I;
    }
    Poset inc = cm_inclusion_poset(records), ord = cm_order_poset(records);
    emit(out, Json{{"algebra", a->name},
                   {"size", t.size()},
                   {"cm", cm},
                   {"storeyI", storey1},
                   {"storeyII", records.size() - storey1},
                   {"inclusion", poset_to_json(inc)},
                   {"cmOrder", poset_to_json(ord)},
                   {"inclusionUpsets", count_upsets(inc, ctx->limits.upset_count)},
                   {"cmOrderUpsets", count_upsets(ord, ctx->limits.upset_count)}});
  });
}

palg_status palg_term_parse(palg_context* ctx, const char* text, palg_term** out) {
  return guarded(ctx, [&] {
    need(text, "text");
    need(out, "output pointer");
    *out = new palg_term{parse_term(text)};
  });
}

void palg_term_free(palg_term* t) { delete t; }

palg_status palg_term_to_string(palg_context* ctx, const palg_term* t, char** out) {
  return guarded(ctx, [&] {
    need(t, "term");
    emit(out, to_string(t->term));
  });
}

palg_status palg_term_to_json(palg_context* ctx, const palg_term* t, char** out) {
  return guarded(ctx, [&] {
    need(t, "term");
    emit(out, term_to_json(t->term).dump());
  });
}

palg_status palg_normal_form(palg_context* ctx, const palg_term* t, unsigned n, char** out) {
  return guarded(ctx, [&] {
    need(t, "term");
    emit(out, to_string(normal_form(t->term, n, ctx->limits)));
  });
}

palg_status palg_check_identity(palg_context* ctx, const char* lhs, const char* rhs,
                                const char* variety, const char* method, int* holds,
                                char** out) {
  return guarded(ctx, [&] {
    need(lhs, "lhs");
    need(rhs, "rhs");
    unsigned n = parse_variety(variety ? variety : "pa");
    Method m = parse_method(method, Method::normal_form);
    if (m == Method::pruned) fail(ErrorCode::invalid_argument, "identities use normal-form or exhaustive");
    Equation e{parse_term(lhs), parse_term(rhs)};
    Verdict v = check_identity(e, n, m, ctx->limits);
    if (holds) *holds = v.holds;
    if (out) {
      Json j = verdict_to_json(v);
      j["variety"] = variety_name(n);
      emit(out, j);
    }
  });
}

palg_status palg_check_quasi_identity(palg_context* ctx, const char* qi_json,
                                      const palg_algebra* a, const char* strategy, int* holds,
                                      char** out) {
  return guarded(ctx, [&] {
    need(qi_json, "quasi-identity");
    need(a, "algebra");
    Method m = parse_method(strategy, Method::pruned);
    if (m == Method::normal_form) fail(ErrorCode::invalid_argument, "strategy must be exhaustive or pruned");
    QuasiIdentity q = quasi_identity_from_json(Json::parse(qi_json));
    Verdict v = check_quasi_identity(q, a->table, m, ctx->limits);
    v.algebra = a->name;
    if (holds) *holds = v.holds;
    if (out) emit(out, verdict_to_json(v));
  });
}

palg_status palg_qb_system(palg_context* ctx, unsigned n, char** out) {
  return guarded(ctx, [&] { emit(out, quasi_identity_to_json(qb_system(n))); });
}

palg_status palg_free_info(palg_context* ctx, unsigned n, unsigned k, int count_only,
                           char** out) {
  return guarded(ctx, [&] {
    if (k > kMaxRank) fail(ErrorCode::cap_exceeded, "rank " + std::to_string(k) + " exceeds " + std::to_string(kMaxRank));
    Json j{{"n", n == kOmega ? Json("omega") : Json(n)}, {"k", k}};
    BigInt count = count_jirr(n, k);
    j["jCount"] = bigint_json(count);
    if (!count_only) {
      auto f = free_algebra(n, k, ctx->limits);
      try {
        j["elementCount"] = f->element_count(ctx->limits);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::cap_exceeded) throw;
      }
      Json idx = Json::array();
      for (const auto& ji : f->indices()) {
        Json e = jindex_to_json(ji);
        e["storey"] = storey_name(ji.storey());
        e["term"] = to_string(render_jindex(ji));
        idx.push_back(e);
      }
      j["indices"] = idx;
    }
    emit(out, j);
  });
}

palg_status palg_free_dot(palg_context* ctx, unsigned n, unsigned k, char** out) {
  return guarded(ctx, [&] {
    auto f = free_algebra(n, k, ctx->limits);
    std::vector<std::string> labels;
    for (const auto& ji : f->indices()) labels.push_back(to_string(render_jindex(ji)));
    emit(out, export_dot(f->base().reversed(), labels,
                         "J_F" + n_name(n) + "_" + std::to_string(k)));
  });
}

palg_status palg_count_jirr(palg_context* ctx, unsigned n, unsigned k, char** out) {
  return guarded(ctx, [&] { emit(out, count_jirr(n, k).str()); });
}

palg_status palg_si_info(palg_context* ctx, unsigned n, char** out) {
  return guarded(ctx, [&] {
    TableAlgebra a = build_si(n, ctx->limits);
    Json at = Json::array();
    atoms(a).for_each([&](std::size_t i) { at.push_back(i); });
    emit(out, Json{{"n", n},
                   {"size", a.size()},
                   {"e", a.size() - 2},
                   {"atoms", at},
                   {"siCond", si_cond_check(a)},
                   {"valid", validate(a).empty()},
                   {"algebra", algebra_to_json(a)}});
  });
}

palg_status palg_report(palg_context* ctx, unsigned n, char** out) {
  return guarded(ctx, [&] { emit(out, report_to_json(structural_completeness_report(n, ctx->limits))); });
}

palg_status palg_oracle_pair(palg_context* ctx, const char* t1, const char* t2, unsigned n,
                             int* agree, char** out) {
  return guarded(ctx, [&] {
    need(t1, "term");
    need(t2, "term");
    auto r = oracle_equivalence(parse_term(t1), parse_term(t2), n, ctx->limits);
    if (agree) *agree = r.agree();
    if (out)
      emit(out, Json{{"n", n},
                     {"nfEqual", r.nf_equal},
                     {"exhaustiveEqual", r.exhaustive_equal},
                     {"agree", r.agree()},
                     {"exhaustive", verdict_to_json(r.exhaustive)}});
  });
}

palg_status palg_oracle_batch(palg_context* ctx, uint64_t trials, uint64_t seed, int* all_agree,
                              char** out) {
  return guarded(ctx, [&] {
    auto b = oracle_batch(trials, seed, 3, 6, {1, 2, 3}, ctx->limits);
    if (all_agree) *all_agree = b.agreements == b.trials;
    if (out) {
      Json dis = Json::array();
      for (const auto& [x, y] : b.disagreements) dis.push_back({to_string(x), to_string(y)});
      emit(out, Json{{"trials", b.trials},
                     {"seed", seed},
                     {"agreements", b.agreements},
                     {"equalPairs", b.equal_pairs},
                     {"disagreements", dis}});
    }
  });
}

}  // extern "C"
