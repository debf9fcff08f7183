#pragma once

#include "catcom/fincat/category.hpp"
#include "catcom/report.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace catcom::stdlib {

/// Raw presentation of a category by finite tables, as read from a file.
struct TableDescription {
  struct MorphismDecl {
    std::string id;
    std::string dom;
    std::string cod;
  };
  struct DualityDecl {
    std::string dual;
    std::string cup;
    std::string cap;
  };
  std::string name;
  std::vector<std::string> objects;
  std::string unit;
  std::vector<MorphismDecl> morphisms;
  std::map<std::string, std::string> identities;
  std::vector<std::array<std::string, 3>> composition;       ///< (g, f, g∘f)
  std::vector<std::array<std::string, 3>> tensor_objects;    ///< (A, B, A⊗B)
  std::vector<std::array<std::string, 3>> tensor_morphisms;  ///< (f, g, f⊗g)
  std::map<std::pair<std::string, std::string>, std::string> symmetry;
  std::map<std::string, DualityDecl> duality;
};

struct TableArrow {
  std::size_t index = 0;
  friend bool operator==(const TableArrow&, const TableArrow&) = default;
};

/// A category given entirely by lookup tables. Tensoring with the unit
/// object (and with id_I) is implicit; every other entry must be listed.
/// Missing entries surface as NotClosed when used and are reported by
/// `table_checks`.
class TableCategory {
 public:
  using object_type = ObjectId;
  using morphism_type = TableArrow;
  using number_type = Rational;
  static constexpr bool probe_based = false;

  explicit TableCategory(TableDescription d) : desc_(std::move(d)) {
    for (std::size_t i = 0; i < desc_.objects.size(); ++i) {
      if (object_index_.count(desc_.objects[i]))
        throw Error(ErrorKind::Config, "duplicate object label '" + desc_.objects[i] + "'");
      object_index_[desc_.objects[i]] = i;
    }
    unit_ = object(desc_.unit, "unit");
    for (std::size_t i = 0; i < desc_.morphisms.size(); ++i) {
      const auto& m = desc_.morphisms[i];
      if (morphism_index_.count(m.id)) throw Error(ErrorKind::Config, "duplicate morphism id '" + m.id + "'");
      morphism_index_[m.id] = i;
      dom_.push_back(object(m.dom, "morphisms[" + std::to_string(i) + "].dom"));
      cod_.push_back(object(m.cod, "morphisms[" + std::to_string(i) + "].cod"));
    }
    for (const auto& o : desc_.objects) {
      auto it = desc_.identities.find(o);
      if (it == desc_.identities.end()) throw Error(ErrorKind::MissingIdentity, "no identity declared for " + o);
      identity_.push_back(morphism(it->second, "identities." + o));
    }
    for (const auto& [k, v] : desc_.identities) object(k, "identities");
    for (std::size_t i = 0; i < desc_.composition.size(); ++i) {
      const auto& e = desc_.composition[i];
      const std::string where = "composition[" + std::to_string(i) + "]";
      compose_[{morphism(e[0], where), morphism(e[1], where)}] = morphism(e[2], where);
    }
    for (std::size_t i = 0; i < desc_.tensor_objects.size(); ++i) {
      const auto& e = desc_.tensor_objects[i];
      const std::string where = "tensor_objects[" + std::to_string(i) + "]";
      tensor_obj_[{object(e[0], where), object(e[1], where)}] = object(e[2], where);
    }
    for (std::size_t i = 0; i < desc_.tensor_morphisms.size(); ++i) {
      const auto& e = desc_.tensor_morphisms[i];
      const std::string where = "tensor_morphisms[" + std::to_string(i) + "]";
      tensor_mor_[{morphism(e[0], where), morphism(e[1], where)}] = morphism(e[2], where);
    }
    for (const auto& [ab, id] : desc_.symmetry)
      symmetry_[{object(ab.first, "symmetry"), object(ab.second, "symmetry")}] = morphism(id, "symmetry");
    for (const auto& [o, dd] : desc_.duality) {
      const std::string where = "duality." + o;
      duality_[object(o, where)] = {object(dd.dual, where), morphism(dd.cup, where), morphism(dd.cap, where)};
    }
  }

  const std::string& name() const { return desc_.name; }
  const TableDescription& description() const { return desc_; }
  ObjectId unit() const { return {unit_}; }
  std::size_t morphism_count() const { return desc_.morphisms.size(); }

  std::vector<ObjectId> objects() const {
    std::vector<ObjectId> out;
    for (std::size_t i = 0; i < desc_.objects.size(); ++i) out.push_back({i});
    return out;
  }
  std::string label(ObjectId a) const { return desc_.objects.at(a.index); }
  ObjectId object_named(const std::string& label) const { return {object(label, "selector")}; }
  TableArrow morphism_named(const std::string& id) const { return {morphism(id, "selector")}; }
  const std::string& id(TableArrow f) const { return desc_.morphisms.at(f.index).id; }

  ObjectId tensor(ObjectId a, ObjectId b) const {
    if (a.index == unit_) return b;
    if (b.index == unit_) return a;
    auto it = tensor_obj_.find({a.index, b.index});
    if (it == tensor_obj_.end())
      throw Error(ErrorKind::NotClosed, "tensor_objects has no entry for " + label(a) + "," + label(b));
    return {it->second};
  }

  TableArrow identity(ObjectId a) const { return {identity_.at(a.index)}; }
  ObjectId dom(TableArrow f) const { return {dom_.at(f.index)}; }
  ObjectId cod(TableArrow f) const { return {cod_.at(f.index)}; }

  TableArrow compose(TableArrow g, TableArrow f) const {
    require_composable(*this, g, f);
    auto it = compose_.find({g.index, f.index});
    if (it != compose_.end()) return {it->second};
    if (g.index == identity_[cod_[f.index]]) return f;
    if (f.index == identity_[dom_[g.index]]) return g;
    throw Error(ErrorKind::NotClosed, "composition has no entry for " + id(g) + " after " + id(f));
  }

  TableArrow tensor(TableArrow f, TableArrow g) const {
    auto it = tensor_mor_.find({f.index, g.index});
    if (it != tensor_mor_.end()) return {it->second};
    const std::size_t id_unit = identity_[unit_];
    if (f.index == id_unit) return g;
    if (g.index == id_unit) return f;
    throw Error(ErrorKind::NotClosed, "tensor_morphisms has no entry for " + id(f) + "," + id(g));
  }

  TableArrow swap(ObjectId a, ObjectId b) const {
    auto it = symmetry_.find({a.index, b.index});
    if (it != symmetry_.end()) return {it->second};
    if (a.index == unit_ || b.index == unit_) return identity(tensor(a, b));
    throw Error(ErrorKind::NotClosed, "symmetry has no entry for " + label(a) + "," + label(b));
  }

  /// Morphisms with the given type, ordered by id.
  std::vector<TableArrow> between(ObjectId a, ObjectId b) const {
    std::vector<TableArrow> out;
    for (std::size_t i = 0; i < desc_.morphisms.size(); ++i)
      if (dom_[i] == a.index && cod_[i] == b.index) out.push_back({i});
    std::sort(out.begin(), out.end(), [&](TableArrow x, TableArrow y) { return id(x) < id(y); });
    return out;
  }

  std::vector<TableArrow> states(ObjectId a, std::size_t = 0) const { return between(unit(), a); }
  std::vector<TableArrow> effects(ObjectId a, std::size_t = 0) const { return between(a, unit()); }

  bool equal(TableArrow f, TableArrow g) const { return f == g; }
  std::string key(TableArrow f) const { return id(f); }

  std::optional<std::vector<TableArrow>> hom(ObjectId a, ObjectId b, std::size_t) const { return between(a, b); }
  std::optional<TableArrow> sample_hom(ObjectId a, ObjectId b, Rng& rng) const {
    auto all = between(a, b);
    if (all.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return all[pick(rng)];
  }

  std::optional<Duality<ObjectId, TableArrow>> duality(ObjectId a) const {
    auto it = duality_.find(a.index);
    if (it == duality_.end()) return std::nullopt;
    const auto& [dual, cup, cap] = it->second;
    return Duality<ObjectId, TableArrow>{{dual}, {cup}, {cap}};
  }

  /// Table-specific structure checks: totality and typing of every
  /// composition and tensor entry.
  void table_checks(Report& report) const {
    auto& typed = report.add("composition_table_typed");
    typed.exhaustive = true;
    for (const auto& [gf, h] : compose_) {
      const auto [g, f] = gf;
      const bool ok = cod_[f] == dom_[g] && dom_[h] == dom_[f] && cod_[h] == cod_[g];
      typed.expect(ok, 0.0, [&] {
        return "entry " + desc_.morphisms[g].id + "∘" + desc_.morphisms[f].id + " = " + desc_.morphisms[h].id +
               " has inconsistent domain or codomain";
      });
    }
    auto& total = report.add("composition_table_total");
    total.exhaustive = true;
    const std::size_t n = desc_.morphisms.size();
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t f = 0; f < n; ++f) {
        if (cod_[f] != dom_[g]) continue;
        const bool ok = compose_.count({g, f}) || g == identity_[cod_[f]] || f == identity_[dom_[g]];
        total.expect(ok, 0.0, [&] { return "no entry for " + desc_.morphisms[g].id + "∘" + desc_.morphisms[f].id; });
      }
    auto& tobj = report.add("tensor_objects_total");
    tobj.exhaustive = true;
    for (auto a : objects())
      for (auto b : objects()) {
        bool ok = true;
        try {
          (void)tensor(a, b);
        } catch (const Error&) {
          ok = false;
        }
        tobj.expect(ok, 0.0, [&] { return "no tensor for " + label(a) + "," + label(b); });
      }
    auto& tmor = report.add("tensor_morphisms_typed");
    tmor.exhaustive = true;
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t g = 0; g < n; ++g) {
        bool ok = true;
        std::string why;
        try {
          const auto fg = tensor(TableArrow{f}, TableArrow{g});
          ok = dom(fg) == tensor(dom({f}), dom({g})) && cod(fg) == tensor(cod({f}), cod({g}));
          if (!ok) why = "has the wrong type";
        } catch (const Error& e) {
          ok = false;
          why = e.witness();
        }
        tmor.expect(ok, 0.0, [&] { return desc_.morphisms[f].id + "⊗" + desc_.morphisms[g].id + ": " + why; });
      }
  }

 private:
  std::size_t object(const std::string& label, const std::string& where) const {
    auto it = object_index_.find(label);
    if (it == object_index_.end()) throw Error(ErrorKind::Config, where + ": unknown object '" + label + "'");
    return it->second;
  }
  std::size_t morphism(const std::string& id, const std::string& where) const {
    auto it = morphism_index_.find(id);
    if (it == morphism_index_.end()) throw Error(ErrorKind::Config, where + ": unknown morphism '" + id + "'");
    return it->second;
  }

  struct DualityEntry {
    std::size_t dual;
    std::size_t cup;
    std::size_t cap;
  };

  TableDescription desc_;
  std::map<std::string, std::size_t> object_index_;
  std::map<std::string, std::size_t> morphism_index_;
  std::size_t unit_ = 0;
  std::vector<std::size_t> dom_;
  std::vector<std::size_t> cod_;
  std::vector<std::size_t> identity_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> compose_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> tensor_obj_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> tensor_mor_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> symmetry_;
  std::map<std::size_t, DualityEntry> duality_;
};

static_assert(FiniteSmc<TableCategory>);

}  // namespace catcom::stdlib
