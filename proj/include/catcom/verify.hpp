#pragma once

#include "catcom/fincat/validate.hpp"
#include "catcom/monoidal.hpp"
#include "catcom/normalize.hpp"
#include "catcom/oprep.hpp"
#include "catcom/scalars.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace catcom {

inline constexpr const char* kSchemaVersion = "1";

struct VerifyConfig {
  CheckOptions opt;
  std::vector<std::string> objects;  ///< labels; empty selects every base object
  std::optional<std::pair<std::string, std::string>> pair;
  std::size_t functoriality_pairs = 500;
  std::size_t product_pairs = 100;
  std::size_t no_signaling_elements = 100;
  std::size_t cu_pairs = 500;
};

/// Copies `other` into `into`, suffixing each check name with [tag].
inline void append_tagged(Report& into, const Report& other, const std::string& tag) {
  for (auto c : other.checks) {
    c.name += "[" + tag + "]";
    into.checks.push_back(std::move(c));
  }
}

namespace detail {

/// Runs one suite entry; a thrown library error becomes a failed check
/// carrying the error as witness.
inline nlohmann::json run_entry(const std::function<Report()>& body) {
  try {
    return to_json(body());
  } catch (const Error& e) {
    Report r;
    auto& c = r.add("error");
    c.fail(e.what());
    return to_json(r);
  }
}

inline nlohmann::json skipped(const std::string& why) {
  return nlohmann::json{{"passed", true}, {"skipped", true}, {"reason", why}, {"checks", nlohmann::json::array()}};
}

template <FiniteSmc C>
nlohmann::json space_json(const C& cat, const OperationalSpace<C>& s) {
  nlohmann::json basis = nlohmann::json::array(), dual = nlohmann::json::array();
  for (auto i : s.basis) basis.push_back(cat.key(s.states[i]));
  for (auto k : s.dual_basis) dual.push_back(cat.key(s.effects[k]));
  return {{"object", s.label},
          {"dim", s.dim()},
          {"probe_level", s.probe_level},
          {"rank_history", s.rank_history},
          {"state_count", s.states.size()},
          {"effect_count", s.effects.size()},
          {"basis", basis},
          {"dual_basis", dual}};
}

template <class T>
nlohmann::json number_json(const T& x) {
  if constexpr (is_exact_v<T>)
    return x.get_str();
  else
    return x;
}

}  // namespace detail

/// Selected objects: the labels in the config, else every object.
template <FiniteSmc C>
std::vector<object_t<C>> select_objects(const C& cat, const VerifyConfig& cfg,
                                        const std::function<object_t<C>(const std::string&)>& lookup) {
  if (cfg.objects.empty()) return cat.objects();
  std::vector<object_t<C>> out{cat.unit()};
  for (const auto& l : cfg.objects) {
    auto o = lookup(l);
    if (!(o == cat.unit())) out.push_back(o);
  }
  return out;
}

/// Pairs for the composite checks: the configured pair, else every
/// unordered pair of selected non-unit objects (diagonal included).
template <FiniteSmc C>
std::vector<std::pair<object_t<C>, object_t<C>>> select_pairs(const C& cat, const std::vector<object_t<C>>& objects,
                                                              const VerifyConfig& cfg,
                                                              const std::function<object_t<C>(const std::string&)>& lookup) {
  if (cfg.pair) return {{lookup(cfg.pair->first), lookup(cfg.pair->second)}};
  std::vector<object_t<C>> base;
  for (const auto& o : objects)
    if (!(o == cat.unit())) base.push_back(o);
  std::vector<std::pair<object_t<C>, object_t<C>>> out;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j) out.emplace_back(base[i], base[j]);
  return out;
}

template <FiniteSmc C>
nlohmann::json tomography_json(const C& cat, const TomographyVerdict<C>& v) {
  nlohmann::json j{{"pair", v.pair},
                   {"dim_joint", v.dim_joint},
                   {"rank_lambda", v.rank_lambda},
                   {"locally_tomographic", v.locally_tomographic}};
  (void)cat;
  if (v.kernel_witness) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& x : *v.kernel_witness) w.push_back(detail::number_json(x));
    j["kernel_witness"] = w;
    j["witness_residual"] = v.witness_residual;
  }
  return j;
}

/// The full property suite. Entries are keyed by the law they test; the
/// tomography entry is informational and never fails the run.
template <FiniteSmc C>
nlohmann::json run_verify(const C& cat, const ScalarHom<C>& p, const UnitFamily<C>& units, const VerifyConfig& cfg,
                          const std::function<object_t<C>(const std::string&)>& lookup) {
  const auto& rep = units.representation();
  const auto& opt = cfg.opt;
  const auto objects = select_objects(cat, cfg, lookup);
  const auto pairs = select_pairs(cat, objects, cfg, lookup);
  nlohmann::json suite = nlohmann::json::object();

  suite["smc_axioms"] = detail::run_entry([&] { return validate(cat, opt); });
  suite["scalar_hom"] = detail::run_entry([&] { return validate_hom(cat, p, opt, rep.tolerances()); });
  suite["scalar_iso"] = detail::run_entry([&] { return canonical_scalar_iso(rep, opt); });
  suite["functoriality"] = detail::run_entry([&] {
    CheckOptions o = opt;
    o.budget = std::max(opt.budget, cfg.functoriality_pairs);
    return check_functoriality(rep, o);
  });
  suite["composite_laws"] = detail::run_entry([&] {
    Report r;
    for (const auto& [a, b] : pairs) append_tagged(r, check_composite(rep, build_composite(rep, a, b), opt), cat.label(a) + "," + cat.label(b));
    return r;
  });
  {
    nlohmann::json verdicts = nlohmann::json::array();
    try {
      for (const auto& [a, b] : pairs) verdicts.push_back(tomography_json(cat, tomography_verdict(rep, build_composite(rep, a, b))));
      suite["tomography"] = {{"passed", true}, {"informational", true}, {"verdicts", verdicts}, {"checks", nlohmann::json::array()}};
    } catch (const Error& e) {
      suite["tomography"] = {{"passed", true}, {"informational", true}, {"error", e.what()}, {"checks", nlohmann::json::array()}};
    }
  }
  suite["monoidal_functor"] = detail::run_entry([&] { return monoidal_functor_check(rep, objects, opt); });
  suite["morphism_product_well_defined"] = detail::run_entry([&] { return check_welldefined_morphism_product(rep, opt); });

  bool all_dual = true;
  for (const auto& o : objects) all_dual = all_dual && cat.duality(o).has_value();
  if (all_dual && !pairs.empty()) {
    suite["compact_closure"] = detail::run_entry([&] {
      Report r;
      for (const auto& [a, b] : pairs)
        append_tagged(r, compact_closure_path(rep, a, b, a, b, opt, cfg.product_pairs), cat.label(a) + "," + cat.label(b));
      return r;
    });
  } else {
    suite["compact_closure"] = detail::skipped("no duality declared on every selected object");
  }

  std::optional<std::string> no_unit;
  try {
    for (const auto& o : objects) (void)units.at(o);
    for (const auto& [a, b] : pairs) (void)units.at(cat.tensor(a, b));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoCanonicalUnit) throw;
    no_unit = e.what();
  }
  if (no_unit) {
    for (const char* k : {"unit", "com", "physical_subcategory", "completion_finite"}) suite[k] = detail::skipped(*no_unit);
  } else {
    suite["unit"] = detail::run_entry([&] { return validate_unit(units, objects); });
    nlohmann::json models = nlohmann::json::array();
    auto com_entry = detail::run_entry([&] {
      Report r;
      for (const auto& o : objects) {
        const auto com = assemble_com(rep, units.at(o));
        models.push_back({{"object", cat.label(o)},
                          {"dim", com.dim()},
                          {"omega_generator_count", com.omega.rows()},
                          {"unit_in_dual_span", com.unit_in_dual_span},
                          {"order_unit_certified", com.order_unit_certified},
                          {"degenerate", com.degenerate}});
        auto& c = r.add("order_unit[" + cat.label(o) + "]");
        c.exhaustive = true;
        if (com.degenerate)
          c.vacuous = true;
        else
          c.expect(com.unit_in_dual_span && com.order_unit_certified, 0.0,
                   [&] { return "u_" + cat.label(o) + " is not a certified order unit of V_o^#"; });
        append_tagged(r, check_effect_algebra(rep, com), cat.label(o));
      }
      for (const auto& [a, b] : pairs) {
        const auto comp = build_composite(rep, a, b);
        const auto tag = cat.label(a) + "," + cat.label(b);
        append_tagged(r, check_composite_com(rep, comp, units), tag);
        append_tagged(r, check_no_signaling(rep, comp, units, opt, cfg.no_signaling_elements), tag);
      }
      return r;
    });
    com_entry["models"] = models;
    suite["com"] = com_entry;
    PhysicalSubcategory<C> cu(units);
    suite["physical_subcategory"] = detail::run_entry([&] { return check_cu_closure(cu, objects, opt, cfg.cu_pairs); });
    suite["completion_finite"] = detail::run_entry([&] { return check_completion_finite(cu, objects, opt); });
  }

  bool passed = true;
  for (const auto& [k, v] : suite.items()) passed = passed && v.value("passed", false);
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"command", "verify"},
                        {"category", cat.name()},
                        {"seed", opt.seed},
                        {"budget", opt.budget},
                        {"tolerances", {{"num", rep.tolerances().num}, {"rank", rep.tolerances().rank}, {"cone", rep.tolerances().cone}}},
                        {"passed", passed},
                        {"suite", suite}};
}

}  // namespace catcom
