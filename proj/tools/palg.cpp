#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "palgebra.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kFails = 1, kResource = 2 };

struct Config {
  std::optional<std::uint64_t> budget, table_cap, poset_cap, upset_cap, oracle_cap;
  std::uint64_t seed = 42;
  std::string format;  // empty: plain text for nf, JSON elsewhere
};

struct Context {
  palg_context* ctx = palg_context_new();
  ~Context() { palg_context_free(ctx); }
};

struct Str {
  char* p = nullptr;
  ~Str() { palg_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int status_exit(palg_status s) {
  switch (s) {
    case PALG_OK: return kOk;
    case PALG_CAP_EXCEEDED:
    case PALG_BUDGET_EXCEEDED:
    case PALG_INVALID_ARGUMENT:
    case PALG_INTERNAL_ERROR: return kResource;
    default: return kFails;
  }
}

// Prints the machine-readable reason on stderr and maps the status to an exit code.
int report_error(palg_context* ctx, palg_status s) {
  std::cerr << palg_last_error_json(ctx) << "\n";
  return status_exit(s);
}

int usage_error(const std::string& msg) {
  std::cerr << Json{{"error", "UsageError"}, {"message", msg}}.dump() << "\n";
  return kResource;
}

std::optional<std::uint64_t> env_number(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  std::string s = v;
  if (s.find_first_not_of("0123456789") != std::string::npos)
    throw Usage(std::string(name) + " must be a positive integer");
  return std::stoull(s);
}

unsigned parse_n(const std::string& s) {
  if (s == "omega" || s == "w" || s == "inf") return PALG_OMEGA;
  if (s.empty() || s.size() > 6 || s.find_first_not_of("0123456789") != std::string::npos)
    throw Usage("expected a non-negative integer or 'omega', got '" + s + "'");
  return static_cast<unsigned>(std::stoul(s));
}

void apply_limits(palg_context* ctx, const Config& c) {
  auto set = [&](palg_limit l, const std::optional<std::uint64_t>& v, const char* what) {
    if (!v) return;
    if (*v == 0) throw Usage(std::string(what) + " must be positive");
    palg_set_limit(ctx, l, *v);
  };
  set(PALG_LIMIT_VALUATION_BUDGET, c.budget, "budget");
  set(PALG_LIMIT_TABLE_SIZE, c.table_cap, "table cap");
  set(PALG_LIMIT_POSET_SIZE, c.poset_cap, "poset cap");
  set(PALG_LIMIT_UPSET_COUNT, c.upset_cap, "upset cap");
  set(PALG_LIMIT_ORACLE_SIZE, c.oracle_cap, "oracle cap");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string verdict_text(const Json& v) {
  if (v["holds"].get<bool>()) return "holds (" + v["method"].get<std::string>() + ")";
  std::string out = "fails (" + v["method"].get<std::string>() + ")";
  if (v.contains("witness")) {
    out += " in " + v["witness"]["algebra"].get<std::string>() + ":";
    for (const auto& a : v["witness"]["assignment"]) {
      out += " " + a["var"].get<std::string>() + "=";
      out += a.contains("label") ? a["label"].get<std::string>()
                                 : std::to_string(a["element"].get<unsigned>());
    }
  }
  return out;
}

// {0},{1,2} from a class-id array.
std::string classes_text(const Json& ids) {
  std::map<unsigned, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < ids.size(); ++i) classes[ids[i].get<unsigned>()].push_back(i);
  std::string out;
  for (const auto& [id, members] : classes) {
    if (!out.empty()) out += ",";
    out += "{";
    for (std::size_t j = 0; j < members.size(); ++j) out += (j ? "," : "") + std::to_string(members[j]);
    out += "}";
  }
  return out;
}

void print_json(const std::string& text) { std::cout << text << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  try {
    cfg.budget = env_number("PALG_BUDGET");
    cfg.table_cap = env_number("PALG_TABLE_CAP");
    cfg.poset_cap = env_number("PALG_POSET_CAP");
    cfg.upset_cap = env_number("PALG_UPSET_CAP");
    if (auto s = env_number("PALG_SEED")) cfg.seed = *s;
  } catch (const Usage& e) {
    return usage_error(e.what());
  }

  CLI::App app{"Finite distributive p-algebras: free algebras, normal forms, identities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", palg_version());
  app.option_defaults()->always_capture_default();
  app.add_option("--budget", cfg.budget, "valuation budget (env PALG_BUDGET)");
  app.add_option("--table-cap", cfg.table_cap, "largest table algebra (env PALG_TABLE_CAP)");
  app.add_option("--poset-cap", cfg.poset_cap, "largest poset (env PALG_POSET_CAP)");
  app.add_option("--upset-cap", cfg.upset_cap, "largest upset count (env PALG_UPSET_CAP)");
  app.add_option("--oracle-cap", cfg.oracle_cap, "largest algebra for congruence enumeration");
  app.add_option("--seed", cfg.seed, "random seed (env PALG_SEED)");
  app.add_option("--format", cfg.format, "output format (json, text or dot)")->check(CLI::IsMember({"json", "text", "dot"}));
  app.fallthrough();

  std::string free_n = "1";
  unsigned free_k = 1;
  bool export_dot = false, count_only = false;
  auto* free_cmd = app.add_subcommand("free", "join-irreducibles and size of F_n(k)");
  free_cmd->add_option("-n", free_n, "depth n (integer or omega)");
  free_cmd->add_option("-k", free_k, "number of generators")->required();
  free_cmd->add_flag("--export", export_dot, "print the DOT of J in lattice order");
  free_cmd->add_flag("--count-only", count_only, "only count join-irreducibles");

  std::string nf_term, nf_n = "omega";
  auto* nf_cmd = app.add_subcommand("nf", "normal form of a term in F_n(k)");
  nf_cmd->add_option("term", nf_term)->required();
  nf_cmd->add_option("-n", nf_n, "depth n (integer or omega)");

  std::string eq_lhs, eq_rhs, eq_variety = "pa", eq_method = "normal-form";
  auto* eq_cmd = app.add_subcommand("eq", "decide an identity in Pa_n");
  eq_cmd->add_option("lhs", eq_lhs)->required();
  eq_cmd->add_option("rhs", eq_rhs)->required();
  eq_cmd->add_option("--variety", eq_variety, "pa or paN");
  eq_cmd->add_option("--method", eq_method)->check(CLI::IsMember({"nf", "normal-form", "exhaustive"}));

  std::string qi_source, qi_algebra, qi_strategy = "pruned";
  auto* qi_cmd = app.add_subcommand("qi", "evaluate a quasi-identity in a finite algebra");
  qi_cmd->add_option("source", qi_source, "JSON file or qb:N")->required();
  qi_cmd->add_option("--algebra", qi_algebra, "si:n, chain:m, free:n,k, dist:s or a JSON file")->required();
  qi_cmd->add_option("--strategy", qi_strategy)->check(CLI::IsMember({"exhaustive", "pruned"}));

  unsigned si_n = 0;
  auto* si_cmd = app.add_subcommand("si", "the subdirectly irreducible algebra with n atoms");
  si_cmd->add_option("n", si_n)->required();

  std::string dual_spec;
  auto* dual_cmd = app.add_subcommand("dual", "Cm records, storeys and both orders on Cm");
  dual_cmd->add_option("algebra", dual_spec)->required();

  std::string report_n;
  auto* report_cmd = app.add_subcommand("report", "structural completeness of Pa_n");
  report_cmd->add_option("n", report_n)->required();

  std::string or_t1, or_t2, or_n = "2";
  std::uint64_t or_trials = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "compare normal forms against exhaustive sweeps");
  oracle_cmd->add_option("t1", or_t1);
  oracle_cmd->add_option("t2", or_t2);
  oracle_cmd->add_option("-n", or_n, "depth n for a single pair");
  oracle_cmd->add_option("--trials", or_trials, "random pairs (uses --seed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return usage_error(e.what());
  }

  Context c;
  palg_context* ctx = c.ctx;
  if (!ctx) return kResource;
  const bool text = cfg.format == "text";

  try {
    apply_limits(ctx, cfg);

    if (*free_cmd) {
      unsigned n = parse_n(free_n);
      Str out;
      if (export_dot || cfg.format == "dot") {
        if (auto s = palg_free_dot(ctx, n, free_k, &out.p)) return report_error(ctx, s);
        std::cout << out.str();
        return kOk;
      }
      if (auto s = palg_free_info(ctx, n, free_k, count_only, &out.p)) return report_error(ctx, s);
      if (!text) {
        print_json(out.str());
        return kOk;
      }
      Json j = Json::parse(out.str());
      std::cout << "jCount " << j["jCount"].dump() << "\n";
      if (j.contains("elementCount")) std::cout << "elements " << j["elementCount"].dump() << "\n";
      if (j.contains("indices"))
        for (const auto& i : j["indices"]) std::cout << i["term"].get<std::string>() << "\n";
      return kOk;
    }

    if (*nf_cmd) {
      unsigned n = parse_n(nf_n);
      palg_term* t = nullptr;
      if (auto s = palg_term_parse(ctx, nf_term.c_str(), &t)) return report_error(ctx, s);
      std::unique_ptr<palg_term, void (*)(palg_term*)> guard(t, palg_term_free);
      Str out;
      if (auto s = palg_normal_form(ctx, t, n, &out.p)) return report_error(ctx, s);
      if (cfg.format == "json")
        print_json(Json{{"n", n == PALG_OMEGA ? Json("omega") : Json(n)}, {"normalForm", out.str()}}.dump(2));
      else
        std::cout << out.str() << "\n";
      return kOk;
    }

    if (*eq_cmd) {
      Str out;
      int holds = 0;
      if (auto s = palg_check_identity(ctx, eq_lhs.c_str(), eq_rhs.c_str(), eq_variety.c_str(),
                                       eq_method.c_str(), &holds, &out.p))
        return report_error(ctx, s);
      if (text)
        std::cout << verdict_text(Json::parse(out.str())) << "\n";
      else
        print_json(out.str());
      return holds ? kOk : kFails;
    }

    if (*qi_cmd) {
      std::string qi_json;
      Str qb;
      if (qi_source.rfind("qb:", 0) == 0) {
        unsigned n = parse_n(qi_source.substr(3));
        if (auto s = palg_qb_system(ctx, n, &qb.p)) return report_error(ctx, s);
        qi_json = qb.str();
      } else {
        std::ifstream probe(qi_source);
        if (!probe) {
          std::cerr << Json{{"error", "IOError"}, {"message", "cannot open '" + qi_source + "'"}}.dump() << "\n";
          return kFails;
        }
        qi_json = read_file(qi_source);
      }
      palg_algebra* a = nullptr;
      if (auto s = palg_algebra_load(ctx, qi_algebra.c_str(), &a)) return report_error(ctx, s);
      std::unique_ptr<palg_algebra, void (*)(palg_algebra*)> guard(a, palg_algebra_free);
      Str out;
      int holds = 0;
      if (auto s = palg_check_quasi_identity(ctx, qi_json.c_str(), a, qi_strategy.c_str(), &holds, &out.p))
        return report_error(ctx, s);
      if (text)
        std::cout << verdict_text(Json::parse(out.str())) << "\n";
      else
        print_json(out.str());
      return holds ? kOk : kFails;
    }

    if (*si_cmd) {
      Str out;
      if (auto s = palg_si_info(ctx, si_n, &out.p)) return report_error(ctx, s);
      if (!text) {
        print_json(out.str());
        return kOk;
      }
      Json j = Json::parse(out.str());
      const auto& alg = j["algebra"];
      std::cout << "size " << j["size"] << ", siCond " << j["siCond"] << "\n";
      for (std::size_t i = 0; i < alg["labels"].size(); ++i)
        std::cout << alg["labels"][i].get<std::string>() << "* = "
                  << alg["labels"][alg["star"][i].get<std::size_t>()].get<std::string>() << "\n";
      return kOk;
    }

    if (*dual_cmd) {
      palg_algebra* a = nullptr;
      if (auto s = palg_algebra_load(ctx, dual_spec.c_str(), &a)) return report_error(ctx, s);
      std::unique_ptr<palg_algebra, void (*)(palg_algebra*)> guard(a, palg_algebra_free);
      Str out;
      if (auto s = palg_dual(ctx, a, &out.p)) return report_error(ctx, s);
      if (!text) {
        print_json(out.str());
        return kOk;
      }
      Json j = Json::parse(out.str());
      std::size_t i = 0;
      for (const auto& r : j["cm"])
        std::cout << "mu" << i++ << " storey " << r["storey"].get<std::string>() << " classes "
                  << classes_text(r["mu"]) << "\n";
      std::cout << "inclusion covers " << j["inclusion"]["covers"].dump() << "\n";
      std::cout << "cm-order covers " << j["cmOrder"]["covers"].dump() << "\n";
      return kOk;
    }

    if (*report_cmd) {
      Str out;
      if (auto s = palg_report(ctx, parse_n(report_n), &out.p)) return report_error(ctx, s);
      if (!text) {
        print_json(out.str());
        return kOk;
      }
      Json j = Json::parse(out.str());
      std::cout << "structurally complete: " << (j["structurallyComplete"].get<bool>() ? "yes" : "no") << "\n";
      if (j.contains("classification"))
        for (const auto& l : j["classification"]) std::cout << l.get<std::string>() << "\n";
      if (j.contains("verdicts"))
        for (const auto& v : j["verdicts"])
          std::cout << "qb3 in " << v["algebra"].get<std::string>() << ": " << verdict_text(v) << "\n";
      std::cout << j["note"].get<std::string>() << "\n";
      return kOk;
    }

    if (*oracle_cmd) {
      Str out;
      int agree = 0;
      if (or_trials > 0) {
        if (!or_t1.empty()) throw Usage("give either two terms or --trials");
        if (auto s = palg_oracle_batch(ctx, or_trials, cfg.seed, &agree, &out.p)) return report_error(ctx, s);
      } else {
        if (or_t1.empty() || or_t2.empty()) throw Usage("oracle needs two terms or --trials");
        if (auto s = palg_oracle_pair(ctx, or_t1.c_str(), or_t2.c_str(), parse_n(or_n), &agree, &out.p))
          return report_error(ctx, s);
      }
      if (text) {
        Json j = Json::parse(out.str());
        if (j.contains("trials"))
          std::cout << j["agreements"] << "/" << j["trials"] << " agree\n";
        else
          std::cout << (j["agree"].get<bool>() ? "agree" : "disagree") << "\n";
      } else {
        print_json(out.str());
      }
      return agree ? kOk : kFails;
    }
  } catch (const Usage& e) {
    return usage_error(e.what());
  }
  return usage_error("no command");
}
