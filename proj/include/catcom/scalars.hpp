#pragma once

#include "catcom/fincat/category.hpp"
#include "catcom/fincat/validate.hpp"
#include "catcom/linalg.hpp"
#include "catcom/report.hpp"

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace catcom {

/// A monoid homomorphism p from the scalars C(I,I) into ([0,inf), *).
template <FiniteSmc C>
struct ScalarHom {
  using T = number_t<C>;
  std::string kind;  ///< "table", "rule", "canonical-det" or "unique"
  std::string name;
  std::function<T(const morphism_t<C>&)> fn;

  T operator()(const morphism_t<C>& s) const { return fn(s); }
};

/// The scalar monoid. Finite backends list its elements (ordered by
/// canonical key) with the full composition table; probe backends only
/// carry a closed-form description.
template <FiniteSmc C>
struct ScalarMonoid {
  bool finite = true;
  std::string description;
  std::vector<morphism_t<C>> elements;
  std::vector<std::vector<std::size_t>> table;  ///< table[i][j] = index of elements[i] ∘ elements[j]
  std::size_t identity = 0;
};

template <class C>
concept DescribedScalars = requires(const C& c) {
  { c.scalar_description() } -> std::convertible_to<std::string>;
};

template <FiniteSmc C>
ScalarMonoid<C> scalar_monoid(const C& cat) {
  ScalarMonoid<C> m;
  if constexpr (C::probe_based) {
    m.finite = false;
    if constexpr (DescribedScalars<C>)
      m.description = cat.scalar_description();
    else
      m.description = "infinite monoid";
    return m;
  } else {
    auto elems = cat.states(cat.unit());
    std::map<std::string, morphism_t<C>> by_key;
    for (auto& s : elems) by_key.emplace(cat.key(s), s);
    std::map<std::string, std::size_t> index;
    for (auto& [k, s] : by_key) {
      index[k] = m.elements.size();
      m.elements.push_back(s);
    }
    const std::size_t n = m.elements.size();
    const auto id_key = cat.key(cat.identity(cat.unit()));
    auto it = index.find(id_key);
    if (it == index.end()) throw Error(ErrorKind::NotClosed, "id_I is missing from the scalar enumeration");
    m.identity = it->second;
    m.table.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto k = cat.key(cat.compose(m.elements[i], m.elements[j]));
        auto f = index.find(k);
        if (f == index.end())
          throw Error(ErrorKind::NotClosed,
                      cat.key(m.elements[i]) + "∘" + cat.key(m.elements[j]) + " = " + k + " is not an enumerated scalar");
        m.table[i][j] = f->second;
      }
    m.description = "finite monoid of order " + std::to_string(n);
    return m;
  }
}

/// p by a fixed named rule on the numeric value z of a scalar:
/// "abs2" (|z|^2), "abs" (|z|), "identity-on-nonneg" (z itself, for
/// real nonnegative scalars).
template <FiniteSmc C>
  requires NumericScalars<C>
ScalarHom<C> rule_hom(const C& cat, const std::string& rule) {
  using T = number_t<C>;
  std::function<double(std::complex<double>)> f;
  if (rule == "abs2")
    f = [](std::complex<double> z) { return std::norm(z); };
  else if (rule == "abs")
    f = [](std::complex<double> z) { return std::abs(z); };
  else if (rule == "identity-on-nonneg")
    f = [](std::complex<double> z) { return z.real(); };
  else
    throw Error(ErrorKind::Config, "unknown scalar rule '" + rule + "' (expected abs2, abs, identity-on-nonneg)");
  const C* c = &cat;
  return {"rule", rule, [c, f](const morphism_t<C>& s) -> T { return NumberTraits<T>::from_double(f(c->scalar_value(s))); }};
}

/// p given by explicit values keyed by the canonical key of each scalar.
template <FiniteSmc C>
ScalarHom<C> table_hom(const C& cat, std::map<std::string, number_t<C>> values) {
  const C* c = &cat;
  return {"table", "table", [c, values = std::move(values)](const morphism_t<C>& s) {
            auto it = values.find(c->key(s));
            if (it == values.end()) throw Error(ErrorKind::Config, "scalar_hom has no value for " + c->key(s));
            return it->second;
          }};
}

/// The constant homomorphism 1 (the only one on a trivial monoid).
template <FiniteSmc C>
ScalarHom<C> unique_hom(const C&) {
  return {"unique", "unique", [](const morphism_t<C>&) { return number_t<C>(1); }};
}

template <FiniteSmc C>
Report validate_hom(const C& cat, const ScalarHom<C>& p, const CheckOptions& opt = {}, const Tolerances& tol = {});

/// The right-regular action matrices R_s, with R_s[x][y] = [x∘s == y].
template <FiniteSmc C>
Matrix<Rational> right_action_matrix(const ScalarMonoid<C>& m, std::size_t s) {
  const std::size_t n = m.elements.size();
  Matrix<Rational> r(n, n);
  for (std::size_t x = 0; x < n; ++x) r(x, m.table[x][s]) = 1;
  return r;
}

/// p(s) = |det R_s| for a finite scalar monoid; validated before return.
template <FiniteSmc C>
ScalarHom<C> canonical_det_hom(const C& cat) {
  using T = number_t<C>;
  auto m = scalar_monoid(cat);
  if (!m.finite) throw Error(ErrorKind::InfiniteScalars, "the scalars of " + cat.name() + " are not finitely enumerated");
  std::map<std::string, T> values;
  for (std::size_t s = 0; s < m.elements.size(); ++s) {
    const Rational d = abs(determinant(right_action_matrix(m, s)));
    if constexpr (is_exact_v<T>)
      values[cat.key(m.elements[s])] = d;
    else
      values[cat.key(m.elements[s])] = d.get_d();
  }
  auto hom = table_hom(cat, std::move(values));
  hom.kind = "canonical-det";
  hom.name = "canonical-det";
  auto report = validate_hom(cat, hom);
  if (!report.passed()) throw Error(ErrorKind::NotMultiplicative, "canonical determinant homomorphism failed validation");
  return hom;
}

namespace detail {

template <class T>
bool close(const T& a, const T& b, double tol) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
  }
}

}  // namespace detail

/// Unitality, multiplicativity and nonnegativity of p: exhaustive on a
/// finite monoid; on at least 1000 sampled pairs otherwise. p(id) = 0 is
/// rejected as degenerate.
template <FiniteSmc C>
Report validate_hom(const C& cat, const ScalarHom<C>& p, const CheckOptions& opt, const Tolerances& tol) {
  using T = number_t<C>;
  using NT = NumberTraits<T>;
  Report report;
  const auto id = cat.identity(cat.unit());
  {
    auto& c = report.add("hom_unit");
    c.exhaustive = true;
    const T v = p(id);
    c.record(detail::close(v, T(1), tol.num), NT::error(v, T(1)));
    if (!c.passed) {
      if (NT::is_zero(v, tol.num))
        c.witness = "Degenerate: p(id_I) = 0 collapses every operational space";
      else
        c.witness = "UnitViolation: p(id_I) = " + NT::to_string(v);
    }
  }
  std::vector<morphism_t<C>> scalars;
  auto& nonneg = report.add("hom_nonnegative");
  auto& mult = report.add("hom_multiplicative");
  auto check_pair = [&](const morphism_t<C>& s, const morphism_t<C>& t) {
    const T lhs = p(cat.compose(s, t));
    const T rhs = p(s) * p(t);
    mult.expect(detail::close(lhs, rhs, tol.num), NT::error(lhs, rhs), [&] {
      return "NotMultiplicative: p(" + cat.key(s) + "∘" + cat.key(t) + ") = " + NT::to_string(lhs) + " but p(s)p(t) = " +
             NT::to_string(rhs);
    });
  };
  auto check_value = [&](const morphism_t<C>& s) {
    const T v = p(s);
    nonneg.expect(NT::nonneg(v, tol.num), 0.0, [&] { return "Negative: p(" + cat.key(s) + ") = " + NT::to_string(v); });
  };

  auto monoid = scalar_monoid(cat);
  if (monoid.finite) {
    nonneg.exhaustive = mult.exhaustive = true;
    for (const auto& s : monoid.elements) check_value(s);
    for (const auto& s : monoid.elements)
      for (const auto& t : monoid.elements) check_pair(s, t);
  } else {
    Rng rng(opt.seed ^ fnv1a("validate_hom"));
    std::vector<morphism_t<C>> pool = cat.states(cat.unit(), 0);
    const std::size_t pairs = std::max<std::size_t>(1000, opt.budget);
    auto draw = [&]() -> morphism_t<C> {
      if constexpr (SampledScalars<C>) {
        return cat.sample_scalar(rng);
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        return pool[pick(rng)];
      }
    };
    for (const auto& s : pool) check_value(s);
    for (std::size_t k = 0; k < pairs; ++k) {
      const auto s = draw();
      const auto t = draw();
      check_value(s);
      check_pair(s, t);
    }
    mult.notes.push_back(monoid.description + "; " + std::to_string(pairs) + " sampled pairs");
  }
  return report;
}

/// Throws the first failure of validate_hom as a typed error.
template <FiniteSmc C>
void require_valid_hom(const C& cat, const ScalarHom<C>& p, const CheckOptions& opt = {}, const Tolerances& tol = {}) {
  const auto r = validate_hom(cat, p, opt, tol);
  for (const auto& c : r.checks) {
    if (c.passed) continue;
    ErrorKind kind = ErrorKind::NotMultiplicative;
    if (c.name == "hom_unit") kind = c.witness.rfind("Degenerate", 0) == 0 ? ErrorKind::Degenerate : ErrorKind::UnitViolation;
    if (c.name == "hom_nonnegative") kind = ErrorKind::Negative;
    throw Error(kind, c.witness);
  }
}

}  // namespace catcom
