#pragma once

#include "catcom/fincat/validate.hpp"
#include "catcom/linalg.hpp"
#include "catcom/report.hpp"
#include "catcom/scalars.hpp"

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace catcom {

/// The ordered dual pair (V_o(A), V_o^#(A)) for one object, presented by
/// coordinates against a basis of hat vectors.
///
/// Vectors of V_o(A) are functions on effects(A); a vector is stored as its
/// coordinates over `basis`. Functionals of V_o^#(A) are stored as rows of
/// their values on the basis vectors.
template <FiniteSmc C>
struct OperationalSpace {
  using T = number_t<C>;

  object_t<C> object;
  std::string label;
  std::size_t probe_level = 0;
  std::vector<std::size_t> rank_history;  ///< hats rank per probe level tried

  std::vector<morphism_t<C>> states;
  std::vector<morphism_t<C>> effects;
  Matrix<T> hats;                       ///< hats(i, k) = p(effects[k] ∘ states[i])
  std::vector<std::size_t> basis;       ///< indices into states
  std::vector<std::size_t> dual_basis;  ///< indices into effects
  Matrix<T> cone;                       ///< states x dim: coordinates of every hat (cone generators)
  Matrix<T> dual;                       ///< effects x dim: every effect functional (dual cone generators)
  std::vector<std::vector<std::size_t>> effect_classes;  ///< effects with equal functionals

  std::size_t dim() const { return basis.size(); }

  /// Coordinates of the vector whose values on `effects` are `values`.
  /// Throws NotInSpan when no vector of V_o(A) has those values.
  std::vector<T> coordinates(std::span<const T> values) const {
    std::vector<T> x;
    if (dim() == 0) {
      x = {};
    } else if constexpr (is_exact_v<T>) {
      std::vector<T> restricted(dim());
      for (std::size_t j = 0; j < dim(); ++j) restricted[j] = values[dual_basis[j]];
      x = (*solver_.k_transpose_inverse) * std::span<const T>(restricted);
    } else {
      Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
      Eigen::VectorXd sol = solver_.qr->solve(b);
      x.assign(sol.data(), sol.data() + sol.size());
    }
    const auto back = reconstruct(x);
    double scale = 1.0;
    for (const auto& v : values) scale = std::max(scale, NumberTraits<T>::to_double(NumberTraits<T>::abs(v)));
    const double err = max_abs_diff<T>(back, values);
    const bool ok = is_exact_v<T> ? err == 0.0 : err <= solver_.residual_tol * scale;
    if (!ok)
      throw Error(ErrorKind::NotInSpan, "vector leaves V_o(" + label + ") (residual " + std::to_string(err) +
                                            "); the probe set may be inadequate");
    return x;
  }

  /// Values on `effects` of the vector with coordinates `x`.
  std::vector<T> reconstruct(std::span<const T> x) const {
    std::vector<T> out(effects.size(), T(0));
    for (std::size_t i = 0; i < dim(); ++i) {
      if (NumberTraits<T>::is_zero(x[i], 0.0)) continue;
      for (std::size_t k = 0; k < effects.size(); ++k) out[k] += x[i] * hats(basis[i], k);
    }
    return out;
  }

  /// Coordinates of the vector taking the values `v` on the dual basis.
  std::vector<T> coordinates_from_dual(std::span<const T> v) const {
    if (dim() == 0) return {};
    return (*solver_.k_transpose_inverse) * v;
  }

  /// Coefficients c with row = sum_k c_k * dual.row(dual_basis[k]).
  std::vector<T> dual_coordinates(std::span<const T> row) const {
    if (dim() == 0) return {};
    std::vector<T> c = (*solver_.k_inverse) * row;
    std::vector<T> back(dim(), T(0));
    for (std::size_t k = 0; k < dim(); ++k)
      for (std::size_t i = 0; i < dim(); ++i) back[i] += c[k] * dual(dual_basis[k], i);
    double scale = 1.0;
    for (const auto& v : row) scale = std::max(scale, NumberTraits<T>::to_double(NumberTraits<T>::abs(v)));
    const double err = max_abs_diff<T>(back, row);
    if (is_exact_v<T> ? err != 0.0 : err > solver_.residual_tol * scale)
      throw Error(ErrorKind::NotInSpan, "functional is not in the dual span of " + label);
    return c;
  }

  struct Solver {
    std::shared_ptr<const Matrix<T>> k_inverse;            ///< inverse of K(i,j) = hats(basis_i, dual_basis_j)
    std::shared_ptr<const Matrix<T>> k_transpose_inverse;  ///< inverse of K^T (exact backends)
    std::shared_ptr<const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>> qr;  ///< floating backends
    double residual_tol = 0.0;
  };
  Solver solver_;
};

/// Probe levels tried before giving up with RankUnstable.
inline constexpr std::size_t kMaxProbeLevel = 6;

/// The representation V_o of a category under a scalar homomorphism p.
/// Operational spaces are built lazily and cached per object.
template <FiniteSmc C>
class Representation {
 public:
  using T = number_t<C>;
  using Space = OperationalSpace<C>;

  Representation(const C& cat, ScalarHom<C> p, Tolerances tol = {}) : cat_(cat), p_(std::move(p)), tol_(tol) {}

  const C& category() const { return cat_; }
  const ScalarHom<C>& hom() const { return p_; }
  const Tolerances& tolerances() const { return tol_; }

  T prob(const morphism_t<C>& effect, const morphism_t<C>& state) const { return p_(cat_.compose(effect, state)); }

  const Space& space(const object_t<C>& a) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(a);
      if (it != cache_.end()) return *it->second;
    }
    auto built = std::make_shared<const Space>(build_space(a));
    std::lock_guard<std::mutex> lock(mu_);
    return *cache_.emplace(a, std::move(built)).first->second;
  }

  /// The hat vector of a state, as values on the effect list of its codomain.
  std::vector<T> hat(const morphism_t<C>& alpha) const {
    const auto& s = space(cat_.cod(alpha));
    std::vector<T> out;
    out.reserve(s.effects.size());
    for (const auto& e : s.effects) out.push_back(prob(e, alpha));
    return out;
  }

  std::vector<T> hat_coords(const morphism_t<C>& alpha) const {
    const auto values = hat(alpha);
    return space(cat_.cod(alpha)).coordinates(values);
  }

  /// The evaluation functional of an effect, as its values on the basis.
  std::vector<T> effect_functional(const morphism_t<C>& a) const {
    const auto& s = space(cat_.dom(a));
    std::vector<T> row;
    row.reserve(s.dim());
    for (auto i : s.basis) row.push_back(prob(a, s.states[i]));
    return row;
  }

  /// The matrix of V_o(phi) : V_o(A) -> V_o(B); column j is the coordinate
  /// vector of (phi ∘ basis_j)^.
  Matrix<T> rep_morphism(const morphism_t<C>& phi) const {
    const auto& sa = space(cat_.dom(phi));
    const auto& sb = space(cat_.cod(phi));
    Matrix<T> m(sb.dim(), sa.dim());
    for (std::size_t j = 0; j < sa.dim(); ++j) {
      const auto col = hat_coords(cat_.compose(phi, sa.states[sa.basis[j]]));
      for (std::size_t i = 0; i < sb.dim(); ++i) m(i, j) = col[i];
    }
    return m;
  }

 private:
  Space build_space(const object_t<C>& a) const;
  void finish_space(Space& s) const;

  const C& cat_;
  ScalarHom<C> p_;
  Tolerances tol_;
  mutable std::mutex mu_;
  mutable std::map<object_t<C>, std::shared_ptr<const Space>> cache_;
};

template <FiniteSmc C>
OperationalSpace<C> Representation<C>::build_space(const object_t<C>& a) const {
  Space s;
  s.object = a;
  s.label = cat_.label(a);
  auto fill = [&](Space& t, std::size_t level) {
    t.states = cat_.states(a, level);
    t.effects = cat_.effects(a, level);
    t.hats = Matrix<T>(t.states.size(), t.effects.size());
    for (std::size_t i = 0; i < t.states.size(); ++i)
      for (std::size_t k = 0; k < t.effects.size(); ++k) t.hats(i, k) = prob(t.effects[k], t.states[i]);
  };

  if constexpr (C::probe_based) {
    // Grow the probe sets until the rank survives two further doublings.
    std::vector<Space> levels;
    for (std::size_t level = 0; level <= kMaxProbeLevel; ++level) {
      Space t;
      fill(t, level);
      s.rank_history.push_back(rank(t.hats, tol_));
      levels.push_back(std::move(t));
      const auto& h = s.rank_history;
      if (level >= 2 && h[level] == h[level - 1] && h[level - 1] == h[level - 2]) {
        auto& chosen = levels[level - 2];
        s.probe_level = level - 2;
        s.states = std::move(chosen.states);
        s.effects = std::move(chosen.effects);
        s.hats = std::move(chosen.hats);
        finish_space(s);
        return s;
      }
    }
    std::string hist;
    for (auto r : s.rank_history) hist += (hist.empty() ? "" : ",") + std::to_string(r);
    throw Error(ErrorKind::RankUnstable, "rank of V_o(" + s.label + ") did not stabilize: " + hist);
  } else {
    fill(s, 0);
    s.rank_history.push_back(0);
    finish_space(s);
    s.rank_history[0] = s.dim();
    return s;
  }
}

template <FiniteSmc C>
void Representation<C>::finish_space(Space& s) const {
  const std::size_t ns = s.states.size();
  const std::size_t ne = s.effects.size();
  s.basis = greedy_independent_rows(s.hats, tol_);
  const std::size_t d = s.basis.size();
  const Matrix<T> basis_rows = s.hats.select_rows(s.basis);  // d x ne
  s.dual_basis = greedy_independent_cols(basis_rows, tol_);
  if (s.dual_basis.size() != d)
    throw Error(ErrorKind::RankUnstable, "effect probes do not separate V_o(" + s.label + ")");

  s.dual = basis_rows.transpose();  // ne x d
  Matrix<T> k(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) k(i, j) = basis_rows(i, s.dual_basis[j]);
  auto kinv = inverse(k);
  auto ktinv = inverse(k.transpose());
  if (d > 0 && (!kinv || !ktinv))
    throw Error(ErrorKind::RankUnstable, "pairing matrix of V_o(" + s.label + ") is singular");
  s.solver_.k_inverse = std::make_shared<const Matrix<T>>(d > 0 ? *kinv : Matrix<T>());
  s.solver_.k_transpose_inverse = std::make_shared<const Matrix<T>>(d > 0 ? *ktinv : Matrix<T>());
  s.solver_.residual_tol = tol_.cone;

  s.cone = Matrix<T>(ns, d);
  if constexpr (is_exact_v<T>) {
    for (std::size_t i = 0; i < ns; ++i) {
      const auto x = s.coordinates(s.hats.row(i));
      for (std::size_t j = 0; j < d; ++j) s.cone(i, j) = x[j];
    }
  } else {
    if (d > 0) {
      Eigen::MatrixXd a = detail::to_eigen(basis_rows).transpose();  // ne x d
      s.solver_.qr = std::make_shared<const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>>(a);
      Eigen::MatrixXd sol = s.solver_.qr->solve(detail::to_eigen(s.hats).transpose());  // d x ns
      for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j < d; ++j)
          s.cone(i, j) = sol(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
    }
  }

  std::vector<bool> assigned(ne, false);
  for (std::size_t k1 = 0; k1 < ne; ++k1) {
    if (assigned[k1]) continue;
    std::vector<std::size_t> cls{k1};
    for (std::size_t k2 = k1 + 1; k2 < ne; ++k2) {
      if (assigned[k2]) continue;
      if (max_abs_diff<T>(s.dual.row(k1), s.dual.row(k2)) <= (is_exact_v<T> ? 0.0 : tol_.num)) {
        cls.push_back(k2);
        assigned[k2] = true;
      }
    }
    s.effect_classes.push_back(std::move(cls));
  }
}

/// Draws composable pairs (phi : A -> B, psi : B -> C) over base objects.
/// Exhaustive over listed hom-sets when small enough, otherwise fresh
/// samples per pair.
template <FiniteSmc C, class F>
void for_each_composable_pair(const C& cat, const CheckOptions& opt, Check& check, F&& body) {
  Rng rng(opt.seed ^ fnv1a("composable-pairs"));
  const auto objs = cat.objects();
  std::map<std::pair<std::size_t, std::size_t>, std::optional<std::vector<morphism_t<C>>>> homs;
  std::size_t total = 0;
  bool listed = true;
  for (std::size_t i = 0; i < objs.size() && listed; ++i)
    for (std::size_t j = 0; j < objs.size() && listed; ++j) {
      auto h = cat.hom(objs[i], objs[j], opt.hom_limit);
      if (!h) listed = false;
      homs[{i, j}] = std::move(h);
    }
  if (listed) {
    for (std::size_t i = 0; i < objs.size(); ++i)
      for (std::size_t j = 0; j < objs.size(); ++j)
        for (std::size_t k = 0; k < objs.size(); ++k) total += homs[{i, j}]->size() * homs[{j, k}]->size();
  }
  if (listed && total <= opt.exhaustive_limit) {
    check.exhaustive = true;
    for (std::size_t i = 0; i < objs.size(); ++i)
      for (std::size_t j = 0; j < objs.size(); ++j)
        for (std::size_t k = 0; k < objs.size(); ++k)
          for (const auto& phi : *homs[{i, j}])
            for (const auto& psi : *homs[{j, k}]) body(phi, psi);
    return;
  }
  std::uniform_int_distribution<std::size_t> pick(0, objs.size() - 1);
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < opt.budget && attempt < 50 * opt.budget; ++attempt) {
    const auto a = objs[pick(rng)], b = objs[pick(rng)], c = objs[pick(rng)];
    auto phi = cat.sample_hom(a, b, rng);
    auto psi = cat.sample_hom(b, c, rng);
    if (!phi || !psi) continue;
    body(*phi, *psi);
    ++done;
  }
}

/// V_o(psi∘phi) = V_o(psi)V_o(phi), V_o(id) = 1 and naturality of hats,
/// (phi∘alpha)^ = V_o(phi)(alpha^).
template <FiniteSmc C>
Report check_functoriality(const Representation<C>& rep, const CheckOptions& opt = {}, double tol_check = 1e-8) {
  using T = number_t<C>;
  const auto& cat = rep.category();
  const double tol = is_exact_v<T> ? 0.0 : tol_check;
  Report report;
  {
    auto& c = report.add("identity_preserved");
    c.exhaustive = true;
    for (const auto& a : cat.objects()) {
      const auto m = rep.rep_morphism(cat.identity(a));
      const double err = max_abs_diff(m, Matrix<T>::identity(rep.space(a).dim()));
      c.expect(err <= tol, err, [&] { return "V_o(id_" + cat.label(a) + ") is not the identity"; });
    }
  }
  {
    auto& c = report.add("composition_preserved");
    for_each_composable_pair(cat, opt, c, [&](const morphism_t<C>& phi, const morphism_t<C>& psi) {
      const auto lhs = rep.rep_morphism(cat.compose(psi, phi));
      const auto rhs = rep.rep_morphism(psi) * rep.rep_morphism(phi);
      const double err = max_abs_diff(lhs, rhs);
      c.expect(err <= tol, err, [&] { return "V_o(ψ∘φ) != V_o(ψ)V_o(φ) for φ=" + cat.key(phi) + ", ψ=" + cat.key(psi); });
    });
  }
  {
    auto& c = report.add("hat_natural");
    CheckOptions small = opt;
    small.budget = std::max<std::size_t>(1, opt.budget / 10);
    for_each_composable_pair(cat, small, c, [&](const morphism_t<C>& phi, const morphism_t<C>&) {
      const auto m = rep.rep_morphism(phi);
      const auto& sa = rep.space(cat.dom(phi));
      for (std::size_t i = 0; i < sa.states.size(); ++i) {
        const auto lhs = rep.hat_coords(cat.compose(phi, sa.states[i]));
        const auto rhs = m * sa.cone.row(i);
        const double err = max_abs_diff<T>(lhs, rhs);
        c.expect(err <= tol, err, [&] { return "(φ∘α)^ != V_o(φ)α^ for φ=" + cat.key(phi) + ", α=" + cat.key(sa.states[i]); });
      }
    });
  }
  return report;
}

/// dim V_o(I) = 1 and s^ = p(s)·p for every enumerated (or sampled) scalar s,
/// where p = (id_I)^. V_o(I) is identified with R by v -> v(id_I).
template <FiniteSmc C>
Report canonical_scalar_iso(const Representation<C>& rep, const CheckOptions& opt = {}) {
  using T = number_t<C>;
  using NT = NumberTraits<T>;
  const auto& cat = rep.category();
  const auto& tol = rep.tolerances();
  Report report;
  auto& c = report.add("scalar_iso");
  const auto& s = rep.space(cat.unit());
  c.expect(s.dim() == 1, 0.0, [&] { return "dim V_o(I) = " + std::to_string(s.dim()); });
  std::vector<morphism_t<C>> scalars = s.states;
  c.exhaustive = !C::probe_based;
  if constexpr (SampledScalars<C>) {
    Rng rng(opt.seed ^ fnv1a("scalar-iso"));
    for (std::size_t k = 0; k < std::max<std::size_t>(100, opt.budget / 10); ++k) scalars.push_back(cat.sample_scalar(rng));
  }
  for (const auto& x : scalars) {
    const T px = rep.hom()(x);
    for (const auto& e : s.effects) {
      const T lhs = rep.prob(e, x);
      const T rhs = px * rep.hom()(e);
      const double err = NT::error(lhs, rhs);
      const double scale = std::max({1.0, NT::to_double(NT::abs(lhs)), NT::to_double(NT::abs(rhs))});
      c.expect(is_exact_v<T> ? err == 0.0 : err <= tol.num * scale, err / scale,
               [&] { return "ŝ != p(s)·p at s=" + cat.key(x) + ", effect " + cat.key(e); });
    }
  }
  if (s.dim() == 1)
    c.notes.push_back("V_o(I) ≅ ℝ via v ↦ v(id_I); basis vector is the hat of " + cat.key(s.states[s.basis[0]]));
  return report;
}

}  // namespace catcom
