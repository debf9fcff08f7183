#pragma once

#include "catcom/fincat/category.hpp"
#include "catcom/report.hpp"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace catcom {

struct CheckOptions {
  std::size_t budget = 1000;             ///< sampled cases per law when not exhaustive
  std::uint64_t seed = 0;
  std::size_t exhaustive_limit = 20000;  ///< enumerate every case up to this many
  std::size_t hom_limit = 4096;          ///< largest hom-set materialized
  std::size_t pool_size = 6;             ///< sampled morphisms per hom-set otherwise
};

/// Morphism supply per ordered pair of base objects: the whole hom-set when
/// the backend can list it, otherwise a seeded sample.
template <FiniteSmc C>
class MorphismPools {
 public:
  MorphismPools(const C& cat, const CheckOptions& opt, Rng& rng)
      : cat_(cat), opt_(opt), rng_(rng), objects_(cat.objects()) {}

  const std::vector<object_t<C>>& objects() const { return objects_; }
  bool complete() const { return complete_; }

  const std::vector<morphism_t<C>>& get(std::size_t i, std::size_t j) {
    auto it = pools_.find({i, j});
    if (it != pools_.end()) return it->second;
    std::vector<morphism_t<C>> pool;
    if (auto all = cat_.hom(objects_[i], objects_[j], opt_.hom_limit)) {
      pool = std::move(*all);
    } else {
      complete_ = false;
      for (std::size_t k = 0; k < opt_.pool_size; ++k)
        if (auto f = cat_.sample_hom(objects_[i], objects_[j], rng_)) pool.push_back(std::move(*f));
    }
    return pools_.emplace(std::make_pair(i, j), std::move(pool)).first->second;
  }

 private:
  const C& cat_;
  const CheckOptions& opt_;
  Rng& rng_;
  std::vector<object_t<C>> objects_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<morphism_t<C>>> pools_;
  bool complete_ = true;
};

/// Runs `body` over tuples of morphisms whose types are given by `shape`:
/// morphism k runs from object slot shape[k].first to slot shape[k].second.
/// Every tuple is visited when the total is within the limit; otherwise
/// `budget` tuples are drawn at random.
template <FiniteSmc C>
void for_each_tuple(MorphismPools<C>& pools, std::size_t slots,
                    const std::vector<std::pair<std::size_t, std::size_t>>& shape, const CheckOptions& opt, Rng& rng,
                    Check& check, const std::function<void(const std::vector<const morphism_t<C>*>&)>& body) {
  const std::size_t n = pools.objects().size();
  std::size_t assignments = 1;
  bool huge = false;
  for (std::size_t s = 0; s < slots; ++s) {
    assignments *= n;
    if (assignments > 1000000) huge = true;
  }
  std::vector<std::size_t> slot(slots, 0);
  std::vector<const morphism_t<C>*> args(shape.size());

  auto pool_of = [&](std::size_t k) -> const std::vector<morphism_t<C>>& {
    return pools.get(slot[shape[k].first], slot[shape[k].second]);
  };

  std::size_t total = 0;
  if (!huge) {
    for (std::size_t a = 0; a < assignments && total <= opt.exhaustive_limit; ++a) {
      std::size_t x = a;
      for (std::size_t s = 0; s < slots; ++s, x /= n) slot[s] = x % n;
      std::size_t prod = 1;
      for (std::size_t k = 0; k < shape.size(); ++k) prod *= pool_of(k).size();
      total += prod;
    }
  }

  if (!huge && total <= opt.exhaustive_limit) {
    check.exhaustive = pools.complete();
    for (std::size_t a = 0; a < assignments; ++a) {
      std::size_t x = a;
      for (std::size_t s = 0; s < slots; ++s, x /= n) slot[s] = x % n;
      std::vector<std::size_t> sizes(shape.size());
      bool empty = false;
      for (std::size_t k = 0; k < shape.size(); ++k) {
        sizes[k] = pool_of(k).size();
        empty = empty || sizes[k] == 0;
      }
      if (empty) continue;
      std::vector<std::size_t> idx(shape.size(), 0);
      for (;;) {
        for (std::size_t k = 0; k < shape.size(); ++k) args[k] = &pool_of(k)[idx[k]];
        body(args);
        std::size_t k = 0;
        while (k < shape.size() && ++idx[k] == sizes[k]) idx[k++] = 0;
        if (k == shape.size()) break;
      }
    }
    return;
  }

  std::uniform_int_distribution<std::size_t> pick_obj(0, n - 1);
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < opt.budget && attempt < 50 * opt.budget; ++attempt) {
    for (auto& s : slot) s = pick_obj(rng);
    bool empty = false;
    for (std::size_t k = 0; k < shape.size() && !empty; ++k) empty = pool_of(k).empty();
    if (empty) continue;
    for (std::size_t k = 0; k < shape.size(); ++k) {
      const auto& p = pool_of(k);
      std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
      args[k] = &p[pick(rng)];
    }
    body(args);
    ++done;
  }
}

namespace detail {

/// Evaluates one law; backend errors (missing table entries, type
/// mismatches) count as failures with the error text as witness.
template <class F, class D>
void guarded(Check& check, F&& law, D&& describe) {
  try {
    const bool ok = law();
    check.expect(ok, 0.0, describe);
  } catch (const Error& e) {
    check.record(false);
    if (check.witness.empty()) check.witness = describe() + ": " + e.what();
  }
}

template <class C>
concept HasTableChecks = requires(const C& c, Report& r) { c.table_checks(r); };

}  // namespace detail

/// Checks the strict symmetric monoidal axioms (and snake equations when
/// duality is declared) on every case within the limit or on sampled cases.
template <FiniteSmc C>
Report validate(const C& cat, const CheckOptions& opt = {}) {
  Report report;
  Rng rng(opt.seed ^ fnv1a("validate"));
  MorphismPools<C> pools(cat, opt, rng);
  const auto& objs = pools.objects();
  const auto unit = cat.unit();
  auto name = [&](const morphism_t<C>& f) { return cat.key(f); };

  if constexpr (detail::HasTableChecks<C>) cat.table_checks(report);

  {
    auto& c = report.add("tensor_unit_strict");
    c.exhaustive = true;
    for (const auto& a : objs)
      detail::guarded(
          c, [&] { return cat.tensor(unit, a) == a && cat.tensor(a, unit) == a; },
          [&] { return "I⊗" + cat.label(a) + " or " + cat.label(a) + "⊗I differs from " + cat.label(a); });
  }
  {
    auto& c = report.add("tensor_associative_objects");
    c.exhaustive = true;
    for (const auto& a : objs)
      for (const auto& b : objs)
        for (const auto& d : objs)
          detail::guarded(
              c, [&] { return cat.tensor(cat.tensor(a, b), d) == cat.tensor(a, cat.tensor(b, d)); },
              [&] { return "(" + cat.label(a) + "⊗" + cat.label(b) + ")⊗" + cat.label(d) + " is not strict"; });
  }
  {
    auto& c = report.add("identity_laws");
    for_each_tuple<C>(pools, 2, {{0, 1}}, opt, rng, c, [&](const auto& m) {
      const auto& f = *m[0];
      detail::guarded(
          c,
          [&] {
            return cat.equal(cat.compose(cat.identity(cat.cod(f)), f), f) &&
                   cat.equal(cat.compose(f, cat.identity(cat.dom(f))), f);
          },
          [&] { return "identity law fails for " + name(f); });
    });
  }
  {
    auto& c = report.add("composition_associative");
    for_each_tuple<C>(pools, 4, {{0, 1}, {1, 2}, {2, 3}}, opt, rng, c, [&](const auto& m) {
      const auto &f = *m[0], &g = *m[1], &h = *m[2];
      detail::guarded(
          c, [&] { return cat.equal(cat.compose(cat.compose(h, g), f), cat.compose(h, cat.compose(g, f))); },
          [&] { return "(h∘g)∘f != h∘(g∘f) for f=" + name(f) + ", g=" + name(g) + ", h=" + name(h); });
    });
  }
  {
    auto& c = report.add("interchange");
    for_each_tuple<C>(pools, 6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}}, opt, rng, c, [&](const auto& m) {
      const auto &f = *m[0], &g = *m[1], &h = *m[2], &k = *m[3];
      detail::guarded(
          c,
          [&] {
            return cat.equal(cat.tensor(cat.compose(g, f), cat.compose(k, h)),
                             cat.compose(cat.tensor(g, k), cat.tensor(f, h)));
          },
          [&] {
            return "(g∘f)⊗(k∘h) != (g⊗k)∘(f⊗h) for f=" + name(f) + ", g=" + name(g) + ", h=" + name(h) +
                   ", k=" + name(k);
          });
    });
  }
  {
    auto& c = report.add("tensor_associative_morphisms");
    for_each_tuple<C>(pools, 6, {{0, 1}, {2, 3}, {4, 5}}, opt, rng, c, [&](const auto& m) {
      const auto &f = *m[0], &g = *m[1], &h = *m[2];
      detail::guarded(
          c, [&] { return cat.equal(cat.tensor(cat.tensor(f, g), h), cat.tensor(f, cat.tensor(g, h))); },
          [&] { return "(f⊗g)⊗h != f⊗(g⊗h) for f=" + name(f) + ", g=" + name(g) + ", h=" + name(h); });
    });
  }
  {
    auto& c = report.add("tensor_unit_morphisms");
    const auto id_unit = cat.identity(unit);
    for_each_tuple<C>(pools, 2, {{0, 1}}, opt, rng, c, [&](const auto& m) {
      const auto& f = *m[0];
      detail::guarded(
          c, [&] { return cat.equal(cat.tensor(id_unit, f), f) && cat.equal(cat.tensor(f, id_unit), f); },
          [&] { return "id_I⊗f or f⊗id_I differs from f=" + name(f); });
    });
  }
  {
    auto& c = report.add("symmetry_involutive");
    c.exhaustive = true;
    for (const auto& a : objs)
      for (const auto& b : objs)
        detail::guarded(
            c,
            [&] {
              return cat.equal(cat.compose(cat.swap(b, a), cat.swap(a, b)), cat.identity(cat.tensor(a, b)));
            },
            [&] { return "σ∘σ != id on " + cat.label(a) + "," + cat.label(b); });
  }
  {
    auto& c = report.add("symmetry_natural");
    for_each_tuple<C>(pools, 4, {{0, 1}, {2, 3}}, opt, rng, c, [&](const auto& m) {
      const auto &f = *m[0], &g = *m[1];
      detail::guarded(
          c,
          [&] {
            return cat.equal(cat.compose(cat.swap(cat.cod(f), cat.cod(g)), cat.tensor(f, g)),
                             cat.compose(cat.tensor(g, f), cat.swap(cat.dom(f), cat.dom(g))));
          },
          [&] { return "σ not natural at f=" + name(f) + ", g=" + name(g); });
    });
  }
  {
    auto& c = report.add("scalars_enumerated");
    if constexpr (C::probe_based) {
      c.vacuous = true;
      c.notes.push_back("scalars form an infinite monoid; states(I) and effects(I) are probe samples");
    } else {
      c.exhaustive = true;
      std::set<std::string> s, e;
      for (const auto& x : cat.states(unit)) s.insert(cat.key(x));
      for (const auto& x : cat.effects(unit)) e.insert(cat.key(x));
      c.expect(s == e, 0.0, [] { return std::string("states(I) and effects(I) enumerate different sets"); });
    }
  }
  {
    auto& c = report.add("snake_equations");
    c.exhaustive = true;
    bool any = false;
    for (const auto& a : objs) {
      std::optional<Duality<object_t<C>, morphism_t<C>>> d;
      try {
        d = cat.duality(a);
      } catch (const Error& e) {
        c.fail(std::string("duality of ") + cat.label(a) + ": " + e.what());
        continue;
      }
      if (!d) continue;
      any = true;
      const auto& ad = d->dual;
      detail::guarded(
          c,
          [&] {
            const auto lhs = cat.compose(cat.tensor(d->cap, cat.identity(a)), cat.tensor(cat.identity(a), d->cup));
            const auto rhs =
                cat.compose(cat.tensor(cat.identity(ad), d->cap), cat.tensor(d->cup, cat.identity(ad)));
            return cat.equal(lhs, cat.identity(a)) && cat.equal(rhs, cat.identity(ad));
          },
          [&] { return "snake equation fails on " + cat.label(a); });
    }
    if (!any) {
      c.vacuous = true;
      c.notes.push_back("no duality declared");
    }
  }
  {
    auto& c = report.add("empty_state_sets");
    c.exhaustive = true;
    for (const auto& a : objs) {
      c.record(true);
      if (cat.states(a, 0).empty()) c.notes.push_back("C(I," + cat.label(a) + ") is empty; V_o is zero");
    }
  }
  return report;
}

}  // namespace catcom
