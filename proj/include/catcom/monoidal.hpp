#pragma once

#include "catcom/cone.hpp"
#include "catcom/oprep.hpp"

#include <complex>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace catcom {

/// The composite of the ordered dual pairs of A and B inside V_o(A⊗B).
///
/// `circ` holds the structure coefficients of the bilinear product
/// v ⊛ w: column i*dim(B)+j is the coordinate vector of basis_i ⊛ basis_j.
/// `lambda` is the localization map: row k*dim(B)+l is the functional of
/// the product effect (dual_k of A) ⊗ (dual_l of B), so lambda * omega lists
/// the local joint probabilities of omega against the two dual bases.
template <FiniteSmc C>
struct CompositeStructure {
  using T = number_t<C>;
  object_t<C> a;
  object_t<C> b;
  object_t<C> ab;
  std::string label;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::size_t dim_ab = 0;
  Matrix<T> circ;
  Matrix<T> lambda;

  std::vector<T> product(std::span<const T> v, std::span<const T> w) const {
    const auto k = kron(v, w);
    return circ * std::span<const T>(k);
  }

  /// pi(f, g) for functionals given by dual-basis coefficients.
  std::vector<T> effect_product(std::span<const T> cf, std::span<const T> cg) const {
    const auto k = kron(cf, cg);
    return row_times(std::span<const T>(k), lambda);
  }

  /// The bilinear form Λ(omega) as a dim_a x dim_b matrix over the dual bases.
  Matrix<T> localize(std::span<const T> omega) const {
    const auto flat = lambda * omega;
    Matrix<T> m(dim_a, dim_b);
    for (std::size_t k = 0; k < dim_a; ++k)
      for (std::size_t l = 0; l < dim_b; ++l) m(k, l) = flat[k * dim_b + l];
    return m;
  }
};

template <FiniteSmc C>
CompositeStructure<C> build_composite(const Representation<C>& rep, const object_t<C>& a, const object_t<C>& b) {
  using T = number_t<C>;
  const auto& cat = rep.category();
  CompositeStructure<C> comp;
  comp.a = a;
  comp.b = b;
  comp.ab = cat.tensor(a, b);
  comp.label = cat.label(a) + "," + cat.label(b);
  const auto& sa = rep.space(a);
  const auto& sb = rep.space(b);
  const auto& sab = rep.space(comp.ab);
  comp.dim_a = sa.dim();
  comp.dim_b = sb.dim();
  comp.dim_ab = sab.dim();
  comp.circ = Matrix<T>(comp.dim_ab, comp.dim_a * comp.dim_b);
  for (std::size_t i = 0; i < comp.dim_a; ++i)
    for (std::size_t j = 0; j < comp.dim_b; ++j) {
      const auto x = rep.hat_coords(cat.tensor(sa.states[sa.basis[i]], sb.states[sb.basis[j]]));
      for (std::size_t r = 0; r < comp.dim_ab; ++r) comp.circ(r, i * comp.dim_b + j) = x[r];
    }
  comp.lambda = Matrix<T>(comp.dim_a * comp.dim_b, comp.dim_ab);
  for (std::size_t k = 0; k < comp.dim_a; ++k)
    for (std::size_t l = 0; l < comp.dim_b; ++l) {
      const auto row = rep.effect_functional(cat.tensor(sa.effects[sa.dual_basis[k]], sb.effects[sb.dual_basis[l]]));
      for (std::size_t r = 0; r < comp.dim_ab; ++r) comp.lambda(k * comp.dim_b + l, r) = row[r];
    }
  return comp;
}

namespace detail {

template <class T>
double check_tol(const Tolerances& tol, double loose) {
  return is_exact_v<T> ? 0.0 : std::max(tol.num, loose);
}

template <class T>
double scaled_error(std::span<const T> a, std::span<const T> b) {
  double scale = 1.0;
  for (const auto& x : a) scale = std::max(scale, NumberTraits<T>::to_double(NumberTraits<T>::abs(x)));
  for (const auto& x : b) scale = std::max(scale, NumberTraits<T>::to_double(NumberTraits<T>::abs(x)));
  return max_abs_diff<T>(a, b) / scale;
}

/// Scalars of modulus one other than 1, for collision families.
template <FiniteSmc C>
std::vector<morphism_t<C>> unimodular_scalars(const C& cat, Rng& rng) {
  std::vector<morphism_t<C>> out;
  if constexpr (NumericScalars<C> && C::probe_based) {
    out.push_back(cat.scalar_from_value(-1.0));
    const auto i = cat.scalar_from_value({0.0, 1.0});
    if (cat.scalar_value(i).imag() != 0.0) {
      out.push_back(i);
      out.push_back(cat.scalar_from_value({0.0, -1.0}));
      std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
      out.push_back(cat.scalar_from_value(std::polar(1.0, angle(rng))));
    }
  }
  return out;
}

}  // namespace detail

/// Laws of the composite: ⊛ on hats, the product-effect law, the
/// well-definedness identity (α⊗β)^(f) = α^(f∘(id⊗β)), extension
/// well-definedness under hat collisions, and positivity of marginals.
template <FiniteSmc C>
Report check_composite(const Representation<C>& rep, const CompositeStructure<C>& comp, const CheckOptions& opt = {},
                       double tol_check = 1e-8) {
  using T = number_t<C>;
  const auto& cat = rep.category();
  const auto& sa = rep.space(comp.a);
  const auto& sb = rep.space(comp.b);
  const auto& sab = rep.space(comp.ab);
  const double tol = detail::check_tol<T>(rep.tolerances(), tol_check);
  Report report;
  {
    auto& c = report.add("product_on_hats");
    c.exhaustive = !C::probe_based;
    for (std::size_t i = 0; i < sa.states.size(); ++i)
      for (std::size_t j = 0; j < sb.states.size(); ++j) {
        const auto lhs = rep.hat_coords(cat.tensor(sa.states[i], sb.states[j]));
        const auto rhs = comp.product(sa.cone.row(i), sb.cone.row(j));
        const double err = detail::scaled_error<T>(lhs, rhs);
        c.expect(err <= tol, err, [&] { return "α^⊛β^ != (α⊗β)^ at α=" + cat.key(sa.states[i]) + ", β=" + cat.key(sb.states[j]); });
      }
  }
  {
    auto& c = report.add("product_effect_law");
    c.exhaustive = !C::probe_based;
    std::vector<std::vector<T>> ca, cb;
    for (std::size_t k = 0; k < sa.effects.size(); ++k) ca.push_back(sa.dual_coordinates(sa.dual.row(k)));
    for (std::size_t l = 0; l < sb.effects.size(); ++l) cb.push_back(sb.dual_coordinates(sb.dual.row(l)));
    std::vector<std::vector<T>> joint;
    for (std::size_t i = 0; i < sa.states.size(); ++i)
      for (std::size_t j = 0; j < sb.states.size(); ++j) joint.push_back(comp.product(sa.cone.row(i), sb.cone.row(j)));
    for (std::size_t k = 0; k < sa.effects.size(); ++k)
      for (std::size_t l = 0; l < sb.effects.size(); ++l) {
        const auto pi = comp.effect_product(ca[k], cb[l]);
        for (std::size_t i = 0; i < sa.states.size(); ++i)
          for (std::size_t j = 0; j < sb.states.size(); ++j) {
            const T lhs = dot<T>(pi, joint[i * sb.states.size() + j]);
            const T rhs = sa.hats(i, k) * sb.hats(j, l);
            const double err = NumberTraits<T>::error(lhs, rhs);
            c.expect(err <= tol, err, [&] {
              return "π(a,b)(α⊛β) != a(α)b(β) at a=" + cat.key(sa.effects[k]) + ", b=" + cat.key(sb.effects[l]) +
                     ", α=" + cat.key(sa.states[i]) + ", β=" + cat.key(sb.states[j]);
            });
          }
      }
  }
  {
    auto& c = report.add("tensor_hat_identity");
    c.exhaustive = !C::probe_based;
    const auto id_a = cat.identity(comp.a);
    for (const auto& beta : sb.states) {
      std::vector<morphism_t<C>> curried;
      for (const auto& f : sab.effects) curried.push_back(cat.compose(f, cat.tensor(id_a, beta)));
      for (const auto& alpha : sa.states) {
        const auto joint = cat.tensor(alpha, beta);
        for (std::size_t k = 0; k < sab.effects.size(); ++k) {
          const T lhs = rep.prob(sab.effects[k], joint);
          const T rhs = rep.prob(curried[k], alpha);
          const double err = NumberTraits<T>::error(lhs, rhs);
          c.expect(err <= tol, err, [&] {
            return "(α⊗β)^(f) != α^(f∘(id⊗β)) at α=" + cat.key(alpha) + ", β=" + cat.key(beta) + ", f=" +
                   cat.key(sab.effects[k]);
          });
        }
      }
    }
  }
  {
    // IllDefined: α^ = α'^ but (α⊗β)^ != (α'⊗β)^ would break the bilinear extension.
    auto& c = report.add("product_well_defined");
    c.exhaustive = !C::probe_based;
    Rng rng(opt.seed ^ fnv1a("product-well-defined"));
    std::size_t collisions = 0;
    auto compare = [&](const morphism_t<C>& x, const morphism_t<C>& y, const auto& partners, bool left) {
      for (const auto& z : partners) {
        const auto hx = rep.hat(left ? cat.tensor(x, z) : cat.tensor(z, x));
        const auto hy = rep.hat(left ? cat.tensor(y, z) : cat.tensor(z, y));
        const double err = detail::scaled_error<T>(hx, hy);
        c.expect(err <= tol, err, [&] {
          return "IllDefined: hats of " + cat.key(x) + " and " + cat.key(y) + " agree but their products with " +
                 cat.key(z) + " differ";
        });
      }
    };
    auto sweep = [&](const auto& s, const auto& partners, bool left) {
      for (std::size_t i = 0; i < s.states.size(); ++i) {
        for (std::size_t j = i + 1; j < s.states.size(); ++j) {
          if (detail::scaled_error<T>(s.hats.row(i), s.hats.row(j)) > tol) continue;
          ++collisions;
          compare(s.states[i], s.states[j], partners, left);
        }
        for (const auto& z : detail::unimodular_scalars(cat, rng)) {
          const auto twin = cat.compose(s.states[i], z);
          if (detail::scaled_error<T>(rep.hat(twin), s.hats.row(i)) > tol) continue;
          ++collisions;
          compare(s.states[i], twin, partners, left);
        }
      }
    };
    sweep(sa, sb.states, true);
    sweep(sb, sa.states, false);
    if (collisions == 0) {
      c.vacuous = true;
      c.notes.push_back("no two enumerated states share a hat vector");
    } else {
      c.notes.push_back(std::to_string(collisions) + " colliding state pairs examined");
    }
  }
  {
    // For positive effects a of A and joint states ω, Λ(ω)(a,·) is the hat of
    // the state (a⊗id)∘ω, hence in the cone of V_o(B).
    auto& c = report.add("marginals_positive");
    c.exhaustive = !C::probe_based;
    const auto id_b = cat.identity(comp.b);
    for (std::size_t k = 0; k < sa.effects.size(); ++k) {
      const auto coeff = sa.dual_coordinates(sa.dual.row(k));
      for (std::size_t w = 0; w < sab.states.size(); ++w) {
        const auto form = comp.localize(sab.cone.row(w));
        const auto values_on_dual = row_times(std::span<const T>(coeff), form);  // Λ(ω)(a, b_l) over dual basis of B
        const auto witness = cat.compose(cat.tensor(sa.effects[k], id_b), sab.states[w]);
        const auto x = rep.hat_coords(witness);
        std::vector<T> expect_dual(sb.dim());
        for (std::size_t l = 0; l < sb.dim(); ++l) expect_dual[l] = dot<T>(x, sb.dual.row(sb.dual_basis[l]));
        const double err = detail::scaled_error<T>(values_on_dual, expect_dual);
        bool in_cone = true;
        if constexpr (!C::probe_based) in_cone = conic_combination(sb.cone, std::span<const T>(x), rep.tolerances()).has_value();
        c.expect(err <= tol && in_cone, err, [&] {
          return "marginal of " + cat.key(sab.states[w]) + " at effect " + cat.key(sa.effects[k]) +
                 (in_cone ? " disagrees with its witness state" : " is not in the cone");
        });
      }
    }
    if constexpr (C::probe_based)
      c.notes.push_back("cone certificate: each marginal is the hat of the explicit state (a⊗id)∘ω");
  }
  return report;
}

/// Local tomography: Λ injective on V_o(A⊗B).
template <FiniteSmc C>
struct TomographyVerdict {
  std::string pair;
  std::size_t dim_joint = 0;
  std::size_t rank_lambda = 0;
  bool locally_tomographic = false;
  std::optional<std::vector<number_t<C>>> kernel_witness;  ///< coordinates in V_o(A⊗B)
  double witness_residual = 0.0;
};

template <FiniteSmc C>
TomographyVerdict<C> tomography_verdict(const Representation<C>& rep, const CompositeStructure<C>& comp) {
  using T = number_t<C>;
  TomographyVerdict<C> v;
  v.pair = comp.label;
  v.dim_joint = comp.dim_ab;
  v.rank_lambda = rank(comp.lambda, rep.tolerances());
  if (comp.dim_ab > 0 && comp.lambda.rows() == 0) v.rank_lambda = 0;
  v.locally_tomographic = v.rank_lambda == v.dim_joint;
  if (!v.locally_tomographic) {
    Matrix<T> l = comp.lambda;
    if (l.rows() == 0) l = Matrix<T>(0, comp.dim_ab);
    v.kernel_witness = kernel_vector(l, rep.tolerances());
    if (v.kernel_witness) {
      const auto img = l * std::span<const T>(*v.kernel_witness);
      for (const auto& x : img) v.witness_residual = std::max(v.witness_residual, NumberTraits<T>::to_double(NumberTraits<T>::abs(x)));
    }
  }
  return v;
}

/// V_o(φ) = V_o(φ') implies V_o(φ⊗ψ) = V_o(φ'⊗ψ) and V_o(ψ⊗φ) = V_o(ψ⊗φ').
/// Collisions are searched exhaustively over listed hom-sets when there are
/// at most 10^4 morphisms in total, otherwise built from unimodular scalar
/// multiples φ' = z·φ of sampled morphisms.
template <FiniteSmc C>
Report check_welldefined_morphism_product(const Representation<C>& rep, const CheckOptions& opt = {},
                                          double tol_check = 1e-8) {
  using T = number_t<C>;
  const auto& cat = rep.category();
  const double tol = detail::check_tol<T>(rep.tolerances(), tol_check);
  Report report;
  auto& c = report.add("morphism_product_well_defined");
  Rng rng(opt.seed ^ fnv1a("morphism-product"));
  const auto objs = cat.objects();
  std::size_t collisions = 0;

  std::vector<morphism_t<C>> partners;
  auto compare = [&](const morphism_t<C>& phi, const morphism_t<C>& phi2) {
    ++collisions;
    for (const auto& psi : partners) {
      const double e1 = max_abs_diff(rep.rep_morphism(cat.tensor(phi, psi)), rep.rep_morphism(cat.tensor(phi2, psi)));
      const double e2 = max_abs_diff(rep.rep_morphism(cat.tensor(psi, phi)), rep.rep_morphism(cat.tensor(psi, phi2)));
      const double err = std::max(e1, e2);
      c.expect(err <= tol, err, [&] {
        return "CounterexampleFound: V_o(φ)=V_o(φ') for φ=" + cat.key(phi) + ", φ'=" + cat.key(phi2) +
               " but products with ψ=" + cat.key(psi) + " differ";
      });
    }
  };

  std::map<std::pair<std::size_t, std::size_t>, std::vector<morphism_t<C>>> homs;
  std::size_t total = 0;
  bool listed = true;
  for (std::size_t i = 0; i < objs.size() && listed; ++i)
    for (std::size_t j = 0; j < objs.size() && listed; ++j) {
      auto h = cat.hom(objs[i], objs[j], opt.hom_limit);
      if (!h) {
        listed = false;
        break;
      }
      total += h->size();
      homs[{i, j}] = std::move(*h);
    }

  if (listed && total <= 10000) {
    c.exhaustive = true;
    for (const auto& [key, list] : homs)
      for (const auto& psi : list) partners.push_back(psi);
    if (partners.size() > opt.budget) {
      std::shuffle(partners.begin(), partners.end(), rng);
      partners.resize(opt.budget);
      c.exhaustive = false;
    }
    for (const auto& [key, list] : homs) {
      std::map<std::string, std::vector<std::size_t>> groups;
      for (std::size_t k = 0; k < list.size(); ++k) {
        const auto m = rep.rep_morphism(list[k]);
        std::string sig;
        for (std::size_t r = 0; r < m.rows(); ++r)
          for (std::size_t s = 0; s < m.cols(); ++s) sig += NumberTraits<T>::to_string(m(r, s)) + ",";
        groups[sig].push_back(k);
      }
      for (const auto& [sig, members] : groups)
        for (std::size_t x = 0; x < members.size(); ++x)
          for (std::size_t y = x + 1; y < members.size(); ++y) compare(list[members[x]], list[members[y]]);
    }
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, objs.size() - 1);
    const std::size_t families = std::max<std::size_t>(1, opt.budget / 50);
    for (std::size_t k = 0; k < 4 * families && partners.size() < families; ++k)
      if (auto psi = cat.sample_hom(objs[pick(rng)], objs[pick(rng)], rng)) partners.push_back(*psi);
    for (std::size_t k = 0; k < families; ++k) {
      auto phi = cat.sample_hom(objs[pick(rng)], objs[pick(rng)], rng);
      if (!phi) continue;
      for (const auto& z : detail::unimodular_scalars(cat, rng)) {
        const auto phi2 = cat.tensor(z, *phi);
        const double gap = max_abs_diff(rep.rep_morphism(*phi), rep.rep_morphism(phi2));
        if (gap > tol) continue;  // not a collision
        compare(*phi, phi2);
      }
    }
  }
  if (collisions == 0) {
    c.vacuous = true;
    c.notes.push_back("no pair φ != φ' with V_o(φ) = V_o(φ') found");
  } else {
    c.notes.push_back(std::to_string(collisions) + " colliding pairs, " + std::to_string(partners.size()) + " partners each");
  }
  return report;
}

/// The name (id_{A*}⊗φ)∘η_A : I -> A*⊗B of φ : A -> B.
template <FiniteSmc C>
morphism_t<C> name_of(const C& cat, const morphism_t<C>& phi) {
  const auto d = cat.duality(cat.dom(phi));
  if (!d) throw Error(ErrorKind::SnakeFailure, "no duality declared for " + cat.label(cat.dom(phi)));
  return cat.compose(cat.tensor(cat.identity(d->dual), phi), d->cup);
}

/// The morphism (ε_A⊗id_B)∘(id_A⊗ω) : A -> B named by ω : I -> A*⊗B.
template <FiniteSmc C>
morphism_t<C> unname(const C& cat, const object_t<C>& a, const object_t<C>& b, const morphism_t<C>& omega) {
  const auto d = cat.duality(a);
  if (!d) throw Error(ErrorKind::SnakeFailure, "no duality declared for " + cat.label(a));
  return cat.compose(cat.tensor(d->cap, cat.identity(b)), cat.tensor(cat.identity(a), omega));
}

/// ω⊙μ = τ∘(ω⊗μ) with τ = id_{A*}⊗σ_{B,C*}⊗id_D, built from explicit
/// tensor and symmetry morphisms.
template <FiniteSmc C>
morphism_t<C> name_product(const C& cat, const object_t<C>& a_dual, const object_t<C>& b, const object_t<C>& c_dual,
                           const object_t<C>& d, const morphism_t<C>& omega, const morphism_t<C>& mu) {
  const auto tau = cat.tensor(cat.tensor(cat.identity(a_dual), cat.swap(b, c_dual)), cat.identity(d));
  return cat.compose(tau, cat.tensor(omega, mu));
}

/// Snake equations, the name/morphism round trip on C(A,B), and the
/// identity ω^⊗μ^ = (ω⊙μ)^ for names ω : I -> A*⊗B, μ : I -> C*⊗D, compared
/// as morphisms and through their pushforward of sampled states.
template <FiniteSmc C>
Report compact_closure_path(const Representation<C>& rep, const object_t<C>& a, const object_t<C>& b,
                            const object_t<C>& c_obj, const object_t<C>& d_obj, const CheckOptions& opt = {},
                            std::size_t product_pairs = 100, double tol_check = 1e-8) {
  using T = number_t<C>;
  const auto& cat = rep.category();
  const double tol = detail::check_tol<T>(rep.tolerances(), tol_check);
  Rng rng(opt.seed ^ fnv1a("compact-closure"));
  Report report;
  {
    auto& c = report.add("snake_equations");
    c.exhaustive = true;
    for (const auto& x : {a, b, c_obj, d_obj, cat.tensor(a, c_obj)}) {
      const auto d = cat.duality(x);
      if (!d) {
        c.fail("SnakeFailure: no duality declared for " + cat.label(x));
        continue;
      }
      const auto lhs = cat.compose(cat.tensor(d->cap, cat.identity(x)), cat.tensor(cat.identity(x), d->cup));
      const auto rhs = cat.compose(cat.tensor(cat.identity(d->dual), d->cap), cat.tensor(d->cup, cat.identity(d->dual)));
      c.expect(cat.equal(lhs, cat.identity(x)) && cat.equal(rhs, cat.identity(d->dual)), 0.0,
               [&] { return "SnakeFailure: " + cat.label(x); });
    }
    if (!c.passed) return report;
  }
  {
    auto& c = report.add("name_roundtrip");
    std::vector<morphism_t<C>> phis;
    if (auto all = cat.hom(a, b, opt.hom_limit); all && all->size() <= opt.exhaustive_limit) {
      phis = std::move(*all);
      c.exhaustive = true;
    } else {
      for (std::size_t k = 0; k < opt.budget; ++k)
        if (auto f = cat.sample_hom(a, b, rng)) phis.push_back(*f);
    }
    if (a == b && !c.exhaustive) phis.push_back(cat.identity(a));
    for (const auto& phi : phis) {
      const auto back = unname(cat, a, b, name_of(cat, phi));
      c.expect(cat.equal(back, phi), 0.0, [&] { return "NameMismatch: " + cat.key(phi) + " returns as " + cat.key(back); });
    }
    // V_o level: the unnamed morphism has the same representation.
    auto& v = report.add("name_roundtrip_vo");
    const std::size_t limit = std::min<std::size_t>(phis.size(), C::probe_based ? 20 : 200);
    for (std::size_t k = 0; k < limit; ++k) {
      const auto back = unname(cat, a, b, name_of(cat, phis[k]));
      const double err = max_abs_diff(rep.rep_morphism(back), rep.rep_morphism(phis[k]));
      v.expect(err <= tol, err, [&] { return "V_o of " + cat.key(phis[k]) + " differs after naming"; });
    }
  }
  {
    auto& c = report.add("name_product");
    const auto da = cat.duality(a)->dual;
    const auto dc = cat.duality(c_obj)->dual;
    const auto ac = cat.tensor(a, c_obj);
    const auto dac = cat.duality(ac);
    if (!(dac->dual == cat.tensor(da, dc))) {
      c.fail("dual of " + cat.label(ac) + " is not " + cat.label(da) + "⊗" + cat.label(dc));
      return report;
    }
    const auto bd = cat.tensor(b, d_obj);
    const auto probe_effects = cat.effects(bd, 0);
    const auto probe_states = cat.states(ac, 0);
    std::uniform_int_distribution<std::size_t> pick(0, probe_states.size() - 1);
    for (std::size_t k = 0; k < product_pairs; ++k) {
      auto omega = cat.sample_hom(cat.unit(), cat.tensor(da, b), rng);
      auto mu = cat.sample_hom(cat.unit(), cat.tensor(dc, d_obj), rng);
      if (!omega || !mu) continue;
      const auto lhs = cat.tensor(unname(cat, a, b, *omega), unname(cat, c_obj, d_obj, *mu));
      const auto rhs = unname(cat, ac, bd, name_product(cat, da, b, dc, d_obj, *omega, *mu));
      double err = 0.0;
      for (std::size_t s = 0; s < 8; ++s) {
        const auto& gamma = probe_states[pick(rng)];
        const auto x = cat.compose(lhs, gamma);
        const auto y = cat.compose(rhs, gamma);
        std::vector<T> hx, hy;
        for (const auto& e : probe_effects) {
          hx.push_back(rep.prob(e, x));
          hy.push_back(rep.prob(e, y));
        }
        err = std::max(err, detail::scaled_error<T>(hx, hy));
      }
      const bool ok = cat.equal(lhs, rhs) && err <= tol;
      c.expect(ok, err, [&] { return "ω^⊗μ^ != (ω⊙μ)^ for ω=" + cat.key(*omega) + ", μ=" + cat.key(*mu); });
    }
    c.notes.push_back("compared as morphisms and on 8 pushed-forward states per pair");
  }
  return report;
}

/// Definition-level monoidality of V_o on a pair: V(α)⊛V(β) = V(α⊗β),
/// π(a^,b^) = (a⊗b)^, and V(φ⊗ψ)(v⊛w) = V(φ)v ⊛ V(ψ)w on basis vectors.
template <FiniteSmc C>
Report monoidal_functor_check(const Representation<C>& rep, const std::vector<object_t<C>>& objects,
                              const CheckOptions& opt = {}, double tol_check = 1e-8) {
  using T = number_t<C>;
  const auto& cat = rep.category();
  const double tol = detail::check_tol<T>(rep.tolerances(), tol_check);
  Rng rng(opt.seed ^ fnv1a("monoidal-functor"));
  Report report;
  auto& st = report.add("states_product");
  auto& ef = report.add("effects_product");
  auto& ic = report.add("interchange_with_product");
  st.exhaustive = ef.exhaustive = !C::probe_based;
  std::map<std::pair<object_t<C>, object_t<C>>, CompositeStructure<C>> comps;
  auto composite = [&](const object_t<C>& x, const object_t<C>& y) -> const CompositeStructure<C>& {
    auto it = comps.find({x, y});
    if (it == comps.end()) it = comps.emplace(std::make_pair(x, y), build_composite(rep, x, y)).first;
    return it->second;
  };
  for (const auto& a : objects)
    for (const auto& b : objects) {
      const auto& comp = composite(a, b);
      const auto& sa = rep.space(a);
      const auto& sb = rep.space(b);
      for (std::size_t i = 0; i < sa.states.size(); ++i)
        for (std::size_t j = 0; j < sb.states.size(); ++j) {
          const auto lhs = comp.product(sa.cone.row(i), sb.cone.row(j));
          const auto rhs = rep.hat_coords(cat.tensor(sa.states[i], sb.states[j]));
          const double err = detail::scaled_error<T>(lhs, rhs);
          st.expect(err <= tol, err, [&] { return "V(α)⊛V(β) != V(α⊗β) on " + comp.label; });
        }
      for (std::size_t k = 0; k < sa.effects.size(); ++k)
        for (std::size_t l = 0; l < sb.effects.size(); ++l) {
          const auto lhs = comp.effect_product(sa.dual_coordinates(sa.dual.row(k)), sb.dual_coordinates(sb.dual.row(l)));
          const auto rhs = rep.effect_functional(cat.tensor(sa.effects[k], sb.effects[l]));
          const double err = detail::scaled_error<T>(lhs, rhs);
          ef.expect(err <= tol, err, [&] { return "π(a^,b^) != (a⊗b)^ on " + comp.label; });
        }
    }
  // Interchange on sampled (or all, when small) pairs of morphisms.
  std::vector<std::pair<morphism_t<C>, morphism_t<C>>> pairs;
  std::vector<morphism_t<C>> pool;
  bool listed = true;
  for (const auto& x : objects)
    for (const auto& y : objects) {
      auto h = cat.hom(x, y, opt.hom_limit);
      if (!h) {
        listed = false;
        continue;
      }
      pool.insert(pool.end(), h->begin(), h->end());
    }
  if (listed && pool.size() * pool.size() <= opt.exhaustive_limit) {
    ic.exhaustive = true;
    for (const auto& f : pool)
      for (const auto& g : pool) pairs.emplace_back(f, g);
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, objects.size() - 1);
    const std::size_t n = std::max<std::size_t>(1, opt.budget / 10);
    for (std::size_t k = 0; k < 4 * n && pairs.size() < n; ++k) {
      auto f = cat.sample_hom(objects[pick(rng)], objects[pick(rng)], rng);
      auto g = cat.sample_hom(objects[pick(rng)], objects[pick(rng)], rng);
      if (f && g) pairs.emplace_back(*f, *g);
    }
  }
  for (const auto& [phi, psi] : pairs) {
    const auto& src = composite(cat.dom(phi), cat.dom(psi));
    const auto& dst = composite(cat.cod(phi), cat.cod(psi));
    const auto m = rep.rep_morphism(cat.tensor(phi, psi));
    const auto mphi = rep.rep_morphism(phi);
    const auto mpsi = rep.rep_morphism(psi);
    double err = 0.0;
    for (std::size_t i = 0; i < src.dim_a; ++i)
      for (std::size_t j = 0; j < src.dim_b; ++j) {
        const auto col = src.circ.col_vector(i * src.dim_b + j);
        const auto lhs = m * std::span<const T>(col);
        const auto rhs = dst.product(mphi.col_vector(i), mpsi.col_vector(j));
        err = std::max(err, detail::scaled_error<T>(lhs, rhs));
      }
    ic.expect(err <= tol, err, [&] { return "V(φ⊗ψ)(v⊛w) != V(φ)v⊛V(ψ)w at φ=" + cat.key(phi) + ", ψ=" + cat.key(psi); });
  }
  return report;
}

}  // namespace catcom
