#pragma once

#include "catcom/errors.hpp"
#include "catcom/numeric.hpp"

#include <complex>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace catcom {

using Rng = std::mt19937_64;

/// Object of a free strict monoidal category: a word over atom indices.
/// The empty word is the tensor unit, concatenation is the tensor.
struct Word {
  std::vector<std::uint32_t> atoms;

  bool is_unit() const noexcept { return atoms.empty(); }
  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;
};

inline Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.atoms.insert(w.atoms.end(), b.atoms.begin(), b.atoms.end());
  return w;
}

/// Object of a category with a finite object set.
struct ObjectId {
  std::size_t index = 0;
  friend auto operator<=>(const ObjectId&, const ObjectId&) = default;
  friend bool operator==(const ObjectId&, const ObjectId&) = default;
};

/// Compact-closure data for one object: cup : I -> A* (x) A and
/// cap : A (x) A* -> I.
template <class Object, class Morphism>
struct Duality {
  Object dual;
  Morphism cup;
  Morphism cap;
};

/// A strict symmetric monoidal category whose states C(I,A) and effects
/// C(A,I) can be enumerated. General hom-sets are not enumerated; morphisms
/// are composed on demand.
///
/// `level` selects the probe-set size for probe-based backends (doubling
/// with each level); finite backends ignore it.
template <class C>
concept FiniteSmc = requires(const C& c, const typename C::object_type& a, const typename C::morphism_type& f,
                             std::size_t n, Rng& rng) {
  typename C::object_type;
  typename C::morphism_type;
  typename C::number_type;
  { C::probe_based } -> std::convertible_to<bool>;
  { c.name() } -> std::convertible_to<std::string>;
  { c.unit() } -> std::same_as<typename C::object_type>;
  { c.objects() } -> std::same_as<std::vector<typename C::object_type>>;
  { c.label(a) } -> std::convertible_to<std::string>;
  { c.tensor(a, a) } -> std::same_as<typename C::object_type>;
  { c.identity(a) } -> std::same_as<typename C::morphism_type>;
  { c.dom(f) } -> std::same_as<typename C::object_type>;
  { c.cod(f) } -> std::same_as<typename C::object_type>;
  { c.compose(f, f) } -> std::same_as<typename C::morphism_type>;
  { c.tensor(f, f) } -> std::same_as<typename C::morphism_type>;
  { c.swap(a, a) } -> std::same_as<typename C::morphism_type>;
  { c.states(a, n) } -> std::same_as<std::vector<typename C::morphism_type>>;
  { c.effects(a, n) } -> std::same_as<std::vector<typename C::morphism_type>>;
  { c.equal(f, f) } -> std::same_as<bool>;
  { c.key(f) } -> std::convertible_to<std::string>;
  { c.hom(a, a, n) } -> std::same_as<std::optional<std::vector<typename C::morphism_type>>>;
  { c.sample_hom(a, a, rng) } -> std::same_as<std::optional<typename C::morphism_type>>;
  { c.duality(a) } -> std::same_as<std::optional<Duality<typename C::object_type, typename C::morphism_type>>>;
};

/// Backends whose scalars carry a numeric value (needed by rule-defined
/// scalar homomorphisms such as z -> |z|^2).
template <class C>
concept NumericScalars = FiniteSmc<C> && requires(const C& c, const typename C::morphism_type& s, Rng& rng) {
  { c.scalar_value(s) } -> std::same_as<std::complex<double>>;
  { c.scalar_from_value(std::complex<double>{}) } -> std::same_as<typename C::morphism_type>;
};

/// Backends that can draw scalars from an infinite monoid.
template <class C>
concept SampledScalars = FiniteSmc<C> && requires(const C& c, Rng& rng) {
  { c.sample_scalar(rng) } -> std::same_as<typename C::morphism_type>;
};

template <class C>
using object_t = typename C::object_type;
template <class C>
using morphism_t = typename C::morphism_type;
template <class C>
using number_t = typename C::number_type;

/// Throws TypeMismatch unless cod(f) == dom(g).
template <FiniteSmc C>
void require_composable(const C& c, const morphism_t<C>& g, const morphism_t<C>& f) {
  if (!(c.cod(f) == c.dom(g)))
    throw Error(ErrorKind::TypeMismatch,
                "cannot compose " + c.key(g) + " after " + c.key(f) + ": cod " + c.label(c.cod(f)) + " != dom " +
                    c.label(c.dom(g)));
}

}  // namespace catcom
