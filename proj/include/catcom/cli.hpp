#pragma once

#include "catcom/io/category_json.hpp"
#include "catcom/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace catcom::cli {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kCheckFailure = 1, kInputError = 2 };

struct RunConfig {
  std::string command;
  std::string input;
  std::uint64_t seed = 0;
  Tolerances tol;
  std::size_t budget = 1000;
  std::string format = "json";
  std::vector<std::string> objects;
  std::vector<std::string> pair;
};

namespace detail {

inline std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : "; ") + cell(x);
    return s;
  }
  return v.dump();
}

inline void checks_table(std::ostream& out, const json& checks) {
  out << "| check | passed | cases | exhaustive | vacuous | max_error | witness |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& c : checks)
    out << "| " << cell(c["name"]) << " | " << (c["passed"].get<bool>() ? "yes" : "NO") << " | " << cell(c["cases"]) << " | "
        << cell(c["exhaustive"]) << " | " << cell(c["vacuous"]) << " | " << cell(c["max_error"]) << " | "
        << (c.contains("witness") ? cell(c["witness"]) : "") << " |\n";
}

inline void records_table(std::ostream& out, const json& rows) {
  std::vector<std::string> keys;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  out << "|";
  for (const auto& k : keys) out << " " << k << " |";
  out << "\n|";
  for (std::size_t i = 0; i < keys.size(); ++i) out << "---|";
  out << "\n";
  for (const auto& r : rows) {
    out << "|";
    for (const auto& k : keys) out << " " << (r.contains(k) ? cell(r[k]) : "") << " |";
    out << "\n";
  }
}

}  // namespace detail

/// Markdown rendering of any report produced by the commands.
inline std::string to_markdown(const json& report) {
  std::ostringstream out;
  out << "# " << report.value("command", "report") << ": " << report.value("category", "") << "\n\n";
  for (const auto& [k, v] : report.items())
    if (!v.is_object() && !v.is_array() && k != "command" && k != "category") out << "- " << k << ": " << detail::cell(v) << "\n";
  out << "\n";
  for (const auto& [k, v] : report.items()) {
    if (k == "checks") {
      detail::checks_table(out, v);
      out << "\n";
    } else if (v.is_array() && !v.empty() && v[0].is_object()) {
      out << "## " << k << "\n\n";
      detail::records_table(out, v);
      out << "\n";
    }
  }
  if (report.contains("suite")) {
    for (const auto& [name, entry] : report["suite"].items()) {
      out << "## " << name << (entry.value("passed", false) ? "" : " (FAILED)") << "\n\n";
      if (entry.value("skipped", false)) out << "skipped: " << entry.value("reason", "") << "\n\n";
      for (const char* key : {"verdicts", "models"})
        if (entry.contains(key) && !entry[key].empty()) {
          detail::records_table(out, entry[key]);
          out << "\n";
        }
      if (!entry["checks"].empty()) {
        detail::checks_table(out, entry["checks"]);
        out << "\n";
      }
    }
  }
  return out.str();
}

namespace detail {

template <FiniteSmc C>
json header(const C& cat, const RunConfig& cfg) {
  return json{{"schema_version", kSchemaVersion}, {"command", cfg.command}, {"category", cat.name()}, {"seed", cfg.seed}};
}

template <FiniteSmc C>
int run_command(const C& cat, const json& doc, const RunConfig& cfg, json& result) {
  CheckOptions opt;
  opt.seed = cfg.seed;
  opt.budget = cfg.budget;
  auto lookup = [&](const std::string& l) { return io::object_by_label(cat, l); };
  for (const auto& l : cfg.objects) (void)lookup(l);
  for (const auto& l : cfg.pair) (void)lookup(l);

  if (cfg.command == "validate") {
    Report r = validate(cat, opt);
    try {
      const auto p = io::scalar_hom_from_json(cat, doc);
      r.append(validate_hom(cat, p, opt, cfg.tol));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Config) throw;
      r.add("scalar_hom").fail(e.what());
    }
    result = header(cat, cfg);
    result["passed"] = r.passed();
    result["checks"] = to_json(r)["checks"];
    return r.passed() ? kOk : kCheckFailure;
  }

  const auto p = io::scalar_hom_from_json(cat, doc);
  require_valid_hom(cat, p, opt, cfg.tol);
  Representation<C> rep(cat, p, cfg.tol);
  UnitFamily<C> units(rep);
  io::apply_units(units, doc);
  VerifyConfig vc;
  vc.opt = opt;
  vc.objects = cfg.objects;
  if (cfg.pair.size() == 2) vc.pair = std::make_pair(cfg.pair[0], cfg.pair[1]);
  const auto objects = select_objects<C>(cat, vc, lookup);

  if (cfg.command == "rep") {
    json spaces = json::array();
    for (const auto& o : objects) spaces.push_back(catcom::detail::space_json(cat, rep.space(o)));
    Report r = canonical_scalar_iso(rep, opt);
    r.append(check_functoriality(rep, opt));
    result = header(cat, cfg);
    result["scalar_hom"] = p.name;
    result["spaces"] = spaces;
    result["passed"] = r.passed();
    result["checks"] = to_json(r)["checks"];
    return r.passed() ? kOk : kCheckFailure;
  }
  if (cfg.command == "tomography") {
    object_t<C> a = cat.unit(), b = cat.unit();
    if (vc.pair) {
      a = lookup(vc.pair->first);
      b = lookup(vc.pair->second);
    } else {
      for (const auto& o : objects)
        if (!(o == cat.unit())) {
          a = b = o;
          break;
        }
    }
    const auto v = tomography_verdict(rep, build_composite(rep, a, b));
    result = header(cat, cfg);
    result.update(tomography_json(cat, v));
    return kOk;
  }
  if (cfg.command == "com") {
    json models = json::array();
    for (const auto& o : objects) {
      const auto com = assemble_com(rep, units.at(o));
      models.push_back({{"object", cat.label(o)},
                        {"dim", com.dim()},
                        {"omega_generator_count", com.omega.rows()},
                        {"unit_in_dual_span", com.unit_in_dual_span},
                        {"order_unit_certified", com.order_unit_certified},
                        {"degenerate", com.degenerate},
                        {"unit_provenance", com.unit.provenance},
                        {"notes", com.notes}});
    }
    const Report r = validate_unit(units, objects);
    result = header(cat, cfg);
    result["models"] = models;
    result["passed"] = r.passed();
    result["checks"] = to_json(r)["checks"];
    return r.passed() ? kOk : kCheckFailure;
  }
  if (cfg.command == "verify") {
    result = run_verify(cat, p, units, vc, lookup);
    return result["passed"].get<bool>() ? kOk : kCheckFailure;
  }
  throw Error(ErrorKind::Config, "unknown command '" + cfg.command + "'");
}

}  // namespace detail

/// Runs one command on a parsed configuration; writes the report to `out`
/// and diagnostics to `err`. Returns the process exit code.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  json result;
  int code = kOk;
  try {
    if (cfg.format != "json" && cfg.format != "md") throw Error(ErrorKind::Config, "--format must be json or md");
    if (!cfg.pair.empty() && cfg.pair.size() != 2) throw Error(ErrorKind::Config, "--pair takes two object labels");
    const json doc = io::read_json_file(cfg.input);
    const auto cat = io::build_category(doc, cfg.tol);
    code = std::visit([&](const auto& c) { return detail::run_command(c, doc, cfg, result); }, cat);
  } catch (const Error& e) {
    code = e.kind() == ErrorKind::Config ? kInputError : kCheckFailure;
    result = json{{"schema_version", kSchemaVersion},
                  {"command", cfg.command},
                  {"passed", false},
                  {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.witness()}}}};
    err << e.what() << "\n";
  }
  if (cfg.format == "md")
    out << to_markdown(result);
  else
    out << result.dump(2) << "\n";
  return code;
}

/// Parses the command line and runs the selected subcommand.
inline int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Operational representations of symmetric monoidal categories"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--input", cfg.input, "Category description file (JSON)")->required();
  app.add_option("--seed", cfg.seed, "Seed for every randomized check");
  app.add_option("--tol-num", cfg.tol.num, "Entry-wise tolerance for floating backends");
  app.add_option("--tol-rank", cfg.tol.rank, "Relative singular-value cutoff");
  app.add_option("--budget", cfg.budget, "Sampled cases per law when not exhaustive");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "md"}));
  app.add_option("--objects", cfg.objects, "Object labels to examine")->delimiter(',');
  app.add_option("--pair", cfg.pair, "Two object labels for the composite")->expected(2);
  for (const char* name : {"validate", "rep", "tomography", "com", "verify"}) app.add_subcommand(name);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return code == 0 ? kOk : kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run(cfg, out, err);
}

}  // namespace catcom::cli
