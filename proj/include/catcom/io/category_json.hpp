#pragma once

#include "catcom/normalize.hpp"
#include "catcom/scalars.hpp"
#include "catcom/stdlib/defaults.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace catcom::io {

using json = nlohmann::json;

using AnyCategory = std::variant<stdlib::RelCategory, stdlib::ComplexMatrixCategory, stdlib::RealMatrixCategory,
                                 stdlib::SemilatticeCategory, stdlib::TableCategory>;

/// Reads and parses a description file; syntax errors become Config errors
/// carrying the byte offset.
inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, path + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

namespace detail {

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorKind::Config, where + ": expected an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw Error(ErrorKind::Config, where + ": unknown key '" + k + "'");
}

inline const json& require(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorKind::Config, where + ": missing key '" + key + "'");
  return *it;
}

inline std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw Error(ErrorKind::Config, where + ": expected a string");
  return v.get<std::string>();
}

inline std::size_t get_size(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw Error(ErrorKind::Config, where + ": expected a nonnegative integer");
  return v.get<std::size_t>();
}

inline std::vector<std::string> get_strings(const json& v, const std::string& where) {
  if (!v.is_array()) throw Error(ErrorKind::Config, where + ": expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_string(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::array<std::string, 3>> get_triples(const json& v, const std::string& where) {
  if (!v.is_array()) throw Error(ErrorKind::Config, where + ": expected an array");
  std::vector<std::array<std::string, 3>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto w = where + "[" + std::to_string(i) + "]";
    const auto s = get_strings(v[i], w);
    if (s.size() != 3) throw Error(ErrorKind::Config, w + ": expected three entries");
    out.push_back({s[0], s[1], s[2]});
  }
  return out;
}

/// A number for an exact backend: an integer, a binary float, or a
/// string such as "1/2".
inline Rational get_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) return Rational(v.get<double>());
  if (v.is_string()) {
    try {
      Rational q(v.get<std::string>());
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
    }
  }
  throw Error(ErrorKind::Config, where + ": expected a number or a fraction string");
}

template <class T>
T get_number(const json& v, const std::string& where) {
  if constexpr (is_exact_v<T>) {
    return get_rational(v, where);
  } else {
    if (!v.is_number()) throw Error(ErrorKind::Config, where + ": expected a number");
    return v.get<double>();
  }
}

inline const std::set<std::string> kCommonKeys{"name", "objects", "unit", "backend", "scalar_hom", "units"};

inline std::set<std::string> with_common(std::initializer_list<std::string> extra) {
  std::set<std::string> s = kCommonKeys;
  s.insert(extra.begin(), extra.end());
  return s;
}

/// Atoms with a per-object size or dimension, in the order of `objects`
/// (the unit excluded).
inline std::vector<std::pair<std::string, std::size_t>> sized_atoms(const json& doc, const std::string& section,
                                                                    const std::string& unit) {
  const auto objects = get_strings(require(doc, "objects", "top level"), "objects");
  const auto& sizes = require(doc, section, "top level");
  if (!sizes.is_object()) throw Error(ErrorKind::Config, section + ": expected an object");
  std::set<std::string> seen(objects.begin(), objects.end());
  if (seen.size() != objects.size()) throw Error(ErrorKind::Config, "objects: duplicate label");
  for (const auto& [k, v] : sizes.items())
    if (!seen.count(k)) throw Error(ErrorKind::Config, section + ": unknown object '" + k + "'");
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const auto& o : objects) {
    if (o == unit) {
      if (sizes.contains(o) && get_size(sizes[o], section + "." + o) != 1)
        throw Error(ErrorKind::Config, section + "." + o + ": the unit must have size 1");
      continue;
    }
    if (!sizes.contains(o)) throw Error(ErrorKind::Config, section + ": missing entry for '" + o + "'");
    out.emplace_back(o, get_size(sizes[o], section + "." + o));
  }
  return out;
}

}  // namespace detail

/// Builds the category described by a parsed file. Unknown keys are
/// rejected; every error names its location.
inline AnyCategory build_category(const json& doc, const Tolerances& tol = {}) {
  using namespace detail;
  if (!doc.is_object()) throw Error(ErrorKind::Config, "top level: expected an object");
  const auto backend = get_string(require(doc, "backend", "top level"), "backend");
  const auto name = doc.contains("name") ? get_string(doc["name"], "name") : backend;
  const auto unit = get_string(require(doc, "unit", "top level"), "unit");

  if (backend == "rel") {
    reject_unknown(doc, with_common({"sizes"}), "top level");
    std::vector<stdlib::RelCategory::Atom> atoms;
    for (auto& [label, n] : sized_atoms(doc, "sizes", unit)) atoms.push_back({label, n});
    return stdlib::RelCategory(name, unit, std::move(atoms));
  }
  if (backend == "matrix-complex" || backend == "matrix-real") {
    reject_unknown(doc, with_common({"dims", "probes"}), "top level");
    stdlib::ProbeConfig probes;
    if (doc.contains("probes")) {
      const auto& p = doc["probes"];
      reject_unknown(p, {"states_per_object", "effects_per_object", "seed"}, "probes");
      if (p.contains("states_per_object")) probes.states_per_object = get_size(p["states_per_object"], "probes.states_per_object");
      if (p.contains("effects_per_object")) probes.effects_per_object = get_size(p["effects_per_object"], "probes.effects_per_object");
      if (p.contains("seed")) probes.seed = get_size(p["seed"], "probes.seed");
    }
    auto atoms = sized_atoms(doc, "dims", unit);
    if (backend == "matrix-complex") {
      std::vector<stdlib::ComplexMatrixCategory::Atom> a;
      for (auto& [label, n] : atoms) a.push_back({label, n});
      return stdlib::ComplexMatrixCategory(name, unit, std::move(a), probes, tol.num);
    }
    std::vector<stdlib::RealMatrixCategory::Atom> a;
    for (auto& [label, n] : atoms) a.push_back({label, n});
    return stdlib::RealMatrixCategory(name, unit, std::move(a), probes, tol.num);
  }
  if (backend == "semilattice") {
    reject_unknown(doc, with_common({"order"}), "top level");
    const auto objects = get_strings(require(doc, "objects", "top level"), "objects");
    std::vector<std::pair<std::string, std::string>> order;
    const auto& ord = require(doc, "order", "top level");
    if (!ord.is_array()) throw Error(ErrorKind::Config, "order: expected an array");
    for (std::size_t i = 0; i < ord.size(); ++i) {
      const auto w = "order[" + std::to_string(i) + "]";
      const auto s = get_strings(ord[i], w);
      if (s.size() != 2) throw Error(ErrorKind::Config, w + ": expected a pair");
      order.emplace_back(s[0], s[1]);
    }
    return stdlib::SemilatticeCategory(name, objects, unit, order);
  }
  if (backend == "table") {
    reject_unknown(doc, with_common({"morphisms", "identities", "composition", "tensor_objects", "tensor_morphisms",
                                     "symmetry", "duality"}),
                   "top level");
    stdlib::TableDescription d;
    d.name = name;
    d.unit = unit;
    d.objects = get_strings(require(doc, "objects", "top level"), "objects");
    const auto& ms = require(doc, "morphisms", "top level");
    if (!ms.is_array()) throw Error(ErrorKind::Config, "morphisms: expected an array");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const auto w = "morphisms[" + std::to_string(i) + "]";
      reject_unknown(ms[i], {"id", "dom", "cod"}, w);
      d.morphisms.push_back({get_string(require(ms[i], "id", w), w + ".id"), get_string(require(ms[i], "dom", w), w + ".dom"),
                             get_string(require(ms[i], "cod", w), w + ".cod")});
    }
    const auto& ids = require(doc, "identities", "top level");
    if (!ids.is_object()) throw Error(ErrorKind::Config, "identities: expected an object");
    for (const auto& [k, v] : ids.items()) d.identities[k] = get_string(v, "identities." + k);
    if (doc.contains("composition")) d.composition = get_triples(doc["composition"], "composition");
    if (doc.contains("tensor_objects")) d.tensor_objects = get_triples(doc["tensor_objects"], "tensor_objects");
    if (doc.contains("tensor_morphisms")) d.tensor_morphisms = get_triples(doc["tensor_morphisms"], "tensor_morphisms");
    if (doc.contains("symmetry")) {
      const auto& sym = doc["symmetry"];
      if (!sym.is_object()) throw Error(ErrorKind::Config, "symmetry: expected an object");
      for (const auto& [k, v] : sym.items()) {
        const auto comma = k.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::Config, "symmetry." + k + ": key must be \"A,B\"");
        d.symmetry[{k.substr(0, comma), k.substr(comma + 1)}] = get_string(v, "symmetry." + k);
      }
    }
    if (doc.contains("duality")) {
      const auto& du = doc["duality"];
      if (!du.is_object()) throw Error(ErrorKind::Config, "duality: expected an object");
      for (const auto& [k, v] : du.items()) {
        const auto w = "duality." + k;
        reject_unknown(v, {"dual", "cup", "cap"}, w);
        d.duality[k] = {get_string(require(v, "dual", w), w + ".dual"), get_string(require(v, "cup", w), w + ".cup"),
                        get_string(require(v, "cap", w), w + ".cap")};
      }
    }
    return stdlib::TableCategory(std::move(d));
  }
  throw Error(ErrorKind::Config, "backend: unknown backend '" + backend +
                                     "' (expected table, rel, matrix-real, matrix-complex, semilattice)");
}

/// The scalar homomorphism named in the `scalar_hom` section, or the
/// backend default when the section is absent.
template <FiniteSmc C>
ScalarHom<C> scalar_hom_from_json(const C& cat, const json& doc) {
  using T = number_t<C>;
  if (!doc.contains("scalar_hom")) return stdlib::default_hom(cat);
  const auto& s = doc["scalar_hom"];
  const auto kind = detail::get_string(detail::require(s, "kind", "scalar_hom"), "scalar_hom.kind");
  if (kind == "canonical-det") {
    detail::reject_unknown(s, {"kind"}, "scalar_hom");
    return canonical_det_hom(cat);
  }
  if (kind == "rule") {
    detail::reject_unknown(s, {"kind", "name"}, "scalar_hom");
    const auto rule = detail::get_string(detail::require(s, "name", "scalar_hom"), "scalar_hom.name");
    if constexpr (NumericScalars<C>)
      return rule_hom(cat, rule);
    else
      throw Error(ErrorKind::Config, "scalar_hom: rule-defined homomorphisms need numeric scalars");
  }
  if (kind == "table") {
    detail::reject_unknown(s, {"kind", "values"}, "scalar_hom");
    const auto& vals = detail::require(s, "values", "scalar_hom");
    if (!vals.is_object()) throw Error(ErrorKind::Config, "scalar_hom.values: expected an object");
    std::map<std::string, T> values;
    for (const auto& [k, v] : vals.items()) values[k] = detail::get_number<T>(v, "scalar_hom.values." + k);
    return table_hom(cat, std::move(values));
  }
  if (kind == "unique") {
    detail::reject_unknown(s, {"kind"}, "scalar_hom");
    return unique_hom(cat);
  }
  throw Error(ErrorKind::Config, "scalar_hom.kind: unknown kind '" + kind + "' (expected table, rule, canonical-det)");
}

/// Finds an object by label; "A⊗B" (or "A*B") names a tensor of labelled
/// objects.
template <FiniteSmc C>
object_t<C> object_by_label(const C& cat, const std::string& label) {
  for (const auto& o : cat.objects())
    if (cat.label(o) == label) return o;
  for (const std::string sep : {"⊗", "*"}) {
    const auto pos = label.find(sep);
    if (pos != std::string::npos)
      return cat.tensor(object_by_label(cat, label.substr(0, pos)), object_by_label(cat, label.substr(pos + sep.size())));
  }
  throw Error(ErrorKind::Config, "unknown object '" + label + "'");
}

/// Applies the `units` section. Objects not listed keep the backend's
/// natural unit.
template <FiniteSmc C>
void apply_units(UnitFamily<C>& units, const json& doc) {
  using T = number_t<C>;
  if (!doc.contains("units")) return;
  const auto& rep = units.representation();
  const auto& cat = rep.category();
  const auto& sec = doc["units"];
  if (!sec.is_object()) throw Error(ErrorKind::Config, "units: expected an object");
  for (const auto& [label, spec] : sec.items()) {
    const auto where = "units." + label;
    detail::reject_unknown(spec, {"kind", "coords", "morphism"}, where);
    const auto a = object_by_label(cat, label);
    const auto kind = detail::get_string(detail::require(spec, "kind", where), where + ".kind");
    if (kind == "full-set" || kind == "trace" || kind == "discard") {
      if (spec.contains("morphism")) {
        if constexpr (std::is_same_v<C, stdlib::TableCategory>) {
          const auto m = cat.morphism_named(detail::get_string(spec["morphism"], where + ".morphism"));
          if (!(cat.dom(m) == a) || !(cat.cod(m) == cat.unit()))
            throw Error(ErrorKind::Config, where + ".morphism: not an effect on " + label);
          units.set(unit_from_effects(rep, a, {m}, "discard-morphism"));
          continue;
        } else {
          throw Error(ErrorKind::Config, where + ".morphism: only table categories name discard morphisms");
        }
      }
      UnitFunctional<C> u;
      try {
        u = builtin_unit(rep, a);
      } catch (const Error& e) {
        throw Error(ErrorKind::Config, where + ": " + e.witness());
      }
      if (u.provenance != kind)
        throw Error(ErrorKind::Config, where + ": this backend's natural unit is '" + u.provenance + "', not '" + kind + "'");
      units.set(std::move(u));
    } else if (kind == "vector") {
      const auto& coords = detail::require(spec, "coords", where);
      if (!coords.is_array()) throw Error(ErrorKind::Config, where + ".coords: expected an array");
      std::vector<T> values;
      for (std::size_t i = 0; i < coords.size(); ++i)
        values.push_back(detail::get_number<T>(coords[i], where + ".coords[" + std::to_string(i) + "]"));
      units.set(unit_from_state_values(rep, a, values));
    } else {
      throw Error(ErrorKind::Config, where + ".kind: unknown kind '" + kind + "' (expected full-set, trace, discard, vector)");
    }
  }
}

}  // namespace catcom::io
