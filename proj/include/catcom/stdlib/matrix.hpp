#pragma once

#include "catcom/fincat/category.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <type_traits>
#include <vector>

namespace catcom::stdlib {

/// Probe sets stand in for the infinite hom-sets C(I,A) and C(A,I).
struct ProbeConfig {
  std::size_t states_per_object = 12;
  std::size_t effects_per_object = 12;
  std::uint64_t seed = 0;
};

template <class Field>
struct LinearMap {
  using Mat = Eigen::Matrix<Field, Eigen::Dynamic, Eigen::Dynamic>;
  Word dom;
  Word cod;
  Mat m;  ///< dim(cod) x dim(dom)
};

/// Finite-dimensional Hilbert spaces (complex) or their real analogue, with
/// linear maps as morphisms. Objects are words over atoms of fixed
/// dimension; the tensor is the Kronecker product with lexicographic index
/// flattening. Scalars are 1x1 matrices.
template <class Field>
class MatrixCategory {
 public:
  using object_type = Word;
  using morphism_type = LinearMap<Field>;
  using number_type = double;
  using Mat = typename LinearMap<Field>::Mat;
  using Vec = Eigen::Matrix<Field, Eigen::Dynamic, 1>;
  static constexpr bool probe_based = true;
  static constexpr bool is_complex = !std::is_same_v<Field, double>;

  struct Atom {
    std::string label;
    std::size_t dim;
  };

  MatrixCategory(std::string name, std::string unit_label, std::vector<Atom> atoms, ProbeConfig probes = {},
                 double tol_num = 1e-9)
      : name_(std::move(name)),
        unit_label_(std::move(unit_label)),
        atoms_(std::move(atoms)),
        probes_(probes),
        tol_(tol_num) {
    for (const auto& a : atoms_)
      if (a.dim == 0) throw Error(ErrorKind::Config, "matrix object '" + a.label + "' has dimension 0");
    if (probes_.states_per_object == 0 || probes_.effects_per_object == 0)
      throw Error(ErrorKind::Config, "probe counts must be positive");
  }

  static MatrixCategory with_dims(const std::vector<std::size_t>& dims, ProbeConfig probes = {}) {
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < dims.size(); ++i) atoms.push_back({"A" + std::to_string(i + 1), dims[i]});
    return MatrixCategory(is_complex ? "fdhilb" : "real-hilb", "I", std::move(atoms), probes);
  }

  const std::string& name() const { return name_; }
  const ProbeConfig& probes() const { return probes_; }
  double tolerance() const { return tol_; }
  Word unit() const { return {}; }
  Word atom(std::size_t i) const { return Word{{static_cast<std::uint32_t>(i)}}; }

  std::vector<Word> objects() const {
    std::vector<Word> out{unit()};
    for (std::size_t i = 0; i < atoms_.size(); ++i) out.push_back(atom(i));
    return out;
  }

  std::string label(const Word& w) const {
    if (w.is_unit()) return unit_label_;
    std::string s;
    for (std::size_t i = 0; i < w.atoms.size(); ++i) {
      if (i) s += "⊗";
      s += atoms_.at(w.atoms[i]).label;
    }
    return s;
  }

  std::size_t dim(const Word& w) const {
    std::size_t d = 1;
    for (auto a : w.atoms) d *= atoms_.at(a).dim;
    return d;
  }

  Word tensor(const Word& a, const Word& b) const { return concat(a, b); }

  LinearMap<Field> identity(const Word& a) const {
    const auto n = static_cast<Eigen::Index>(dim(a));
    return {a, a, Mat::Identity(n, n)};
  }

  LinearMap<Field> linear_map(const Word& a, const Word& b, Mat m) const {
    if (static_cast<std::size_t>(m.rows()) != dim(b) || static_cast<std::size_t>(m.cols()) != dim(a))
      throw Error(ErrorKind::TypeMismatch, "matrix shape does not match " + label(a) + " -> " + label(b));
    return {a, b, std::move(m)};
  }

  /// The state I -> A sending 1 to `v`.
  LinearMap<Field> vector_state(const Word& a, const Vec& v) const { return linear_map(unit(), a, v); }

  /// The effect x -> <v, x> (inner product conjugate-linear in v).
  LinearMap<Field> vector_effect(const Word& a, const Vec& v) const { return linear_map(a, unit(), v.adjoint()); }

  Word dom(const LinearMap<Field>& f) const { return f.dom; }
  Word cod(const LinearMap<Field>& f) const { return f.cod; }

  LinearMap<Field> compose(const LinearMap<Field>& g, const LinearMap<Field>& f) const {
    require_composable(*this, g, f);
    return {f.dom, g.cod, g.m * f.m};
  }

  LinearMap<Field> tensor(const LinearMap<Field>& f, const LinearMap<Field>& g) const {
    Mat k = Eigen::kroneckerProduct(f.m, g.m).eval();
    return {concat(f.dom, g.dom), concat(f.cod, g.cod), std::move(k)};
  }

  LinearMap<Field> swap(const Word& a, const Word& b) const {
    const std::size_t na = dim(a), nb = dim(b);
    Mat p = Mat::Zero(static_cast<Eigen::Index>(na * nb), static_cast<Eigen::Index>(na * nb));
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j) p(static_cast<Eigen::Index>(j * na + i), static_cast<Eigen::Index>(i * nb + j)) = 1;
    return {concat(a, b), concat(b, a), std::move(p)};
  }

  /// Structured probes first (standard basis, uniform superposition), then
  /// seeded random unit vectors. A larger level extends a smaller one.
  std::vector<LinearMap<Field>> states(const Word& a, std::size_t level = 0) const {
    std::vector<LinearMap<Field>> out;
    for (auto& v : probe_vectors(a, probes_.states_per_object << level, "state")) out.push_back(vector_state(a, v));
    return out;
  }

  std::vector<LinearMap<Field>> effects(const Word& a, std::size_t level = 0) const {
    std::vector<LinearMap<Field>> out;
    for (auto& v : probe_vectors(a, probes_.effects_per_object << level, "effect")) out.push_back(vector_effect(a, v));
    return out;
  }

  /// Equality of canonical forms: entries agree to within the tolerance,
  /// relative to the larger magnitude.
  bool equal(const LinearMap<Field>& f, const LinearMap<Field>& g) const {
    if (!(f.dom == g.dom) || !(f.cod == g.cod)) return false;
    if (f.m.size() == 0) return true;
    const double scale = std::max({1.0, f.m.cwiseAbs().maxCoeff(), g.m.cwiseAbs().maxCoeff()});
    return (f.m - g.m).cwiseAbs().maxCoeff() <= tol_ * scale;
  }

  std::string key(const LinearMap<Field>& f) const {
    std::string s = label(f.dom) + "->" + label(f.cod) + "[";
    char buf[64];
    for (Eigen::Index i = 0; i < f.m.rows(); ++i)
      for (Eigen::Index j = 0; j < f.m.cols(); ++j) {
        const std::complex<double> z(f.m(i, j));
        std::snprintf(buf, sizeof buf, "%s%.9f%+.9fi", (i || j) ? "," : "", round_entry(z.real()),
                      round_entry(z.imag()));
        s += buf;
      }
    return s + "]";
  }

  std::optional<std::vector<LinearMap<Field>>> hom(const Word&, const Word&, std::size_t) const { return std::nullopt; }

  std::optional<LinearMap<Field>> sample_hom(const Word& a, const Word& b, Rng& rng) const {
    Mat m(static_cast<Eigen::Index>(dim(b)), static_cast<Eigen::Index>(dim(a)));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = gaussian(rng);
    return LinearMap<Field>{a, b, std::move(m)};
  }

  /// A random map with operator norm at most one.
  LinearMap<Field> sample_contraction(const Word& a, const Word& b, Rng& rng) const {
    auto f = *sample_hom(a, b, rng);
    Eigen::JacobiSVD<Mat> svd(f.m);
    const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 1.0;
    std::uniform_real_distribution<double> u(0.1, 1.0);
    if (smax > 0) f.m *= Field(u(rng) / smax);
    return f;
  }

  /// Every object is self-dual with cup sum_i e_i (x) e_i.
  std::optional<Duality<Word, LinearMap<Field>>> duality(const Word& a) const {
    const std::size_t n = dim(a);
    Mat cup = Mat::Zero(static_cast<Eigen::Index>(n * n), 1);
    for (std::size_t i = 0; i < n; ++i) cup(static_cast<Eigen::Index>(i * n + i), 0) = 1;
    Mat cap = cup.transpose();
    return Duality<Word, LinearMap<Field>>{a, {unit(), concat(a, a), std::move(cup)},
                                           {concat(a, a), unit(), std::move(cap)}};
  }

  /// The trace as a sum of the standard-basis effects x -> <e_i, x>.
  std::optional<std::pair<std::string, std::vector<LinearMap<Field>>>> unit_effects(const Word& a) const {
    std::vector<LinearMap<Field>> out;
    const auto n = static_cast<Eigen::Index>(dim(a));
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(vector_effect(a, Vec::Unit(n, i)));
    return std::make_pair(std::string("trace"), std::move(out));
  }

  std::string scalar_description() const { return is_complex ? "(ℂ, ·)" : "(ℝ, ·)"; }

  std::complex<double> scalar_value(const LinearMap<Field>& s) const { return std::complex<double>(s.m(0, 0)); }

  LinearMap<Field> scalar_from_value(std::complex<double> z) const {
    Mat m(1, 1);
    if constexpr (is_complex)
      m(0, 0) = z;
    else
      m(0, 0) = z.real();
    return {unit(), unit(), std::move(m)};
  }

  LinearMap<Field> sample_scalar(Rng& rng) const {
    Mat m(1, 1);
    m(0, 0) = gaussian(rng);
    return {unit(), unit(), std::move(m)};
  }

  /// Multiplies a morphism by a real factor (used to draw sub-normalizing maps).
  LinearMap<Field> scaled(const LinearMap<Field>& f, double factor) const { return {f.dom, f.cod, f.m * Field(factor)}; }

 private:
  static double round_entry(double x) {
    double r = std::round(x * 1e9) / 1e9;
    return r == 0.0 ? 0.0 : r;
  }

  static Field gaussian(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    if constexpr (is_complex) {
      const double re = n(rng);
      const double im = n(rng);
      return {re, im};
    } else {
      return n(rng);
    }
  }

  std::vector<Vec> probe_vectors(const Word& a, std::size_t count, std::string_view stream) const {
    const std::size_t n = dim(a);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < n && out.size() < count; ++i) out.push_back(Vec::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i)));
    if (out.size() < count)
      out.push_back(Vec::Ones(static_cast<Eigen::Index>(n)) / Field(std::sqrt(static_cast<double>(n))));
    std::seed_seq seq{static_cast<std::uint32_t>(probes_.seed), static_cast<std::uint32_t>(probes_.seed >> 32),
                      static_cast<std::uint32_t>(fnv1a(label(a))), static_cast<std::uint32_t>(fnv1a(stream))};
    Rng rng(seq);
    while (out.size() < count) {
      Vec v(static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = gaussian(rng);
      const double norm = v.norm();
      if (norm == 0.0) continue;
      out.push_back(v / Field(norm));
    }
    return out;
  }

  std::string name_;
  std::string unit_label_;
  std::vector<Atom> atoms_;
  ProbeConfig probes_;
  double tol_;
};

using ComplexMatrixCategory = MatrixCategory<std::complex<double>>;
using RealMatrixCategory = MatrixCategory<double>;

static_assert(FiniteSmc<ComplexMatrixCategory>);
static_assert(NumericScalars<ComplexMatrixCategory>);
static_assert(SampledScalars<ComplexMatrixCategory>);
static_assert(FiniteSmc<RealMatrixCategory>);

}  // namespace catcom::stdlib
