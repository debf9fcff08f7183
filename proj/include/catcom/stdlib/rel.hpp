#pragma once

#include "catcom/fincat/category.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace catcom::stdlib {

/// A binary relation between finite sets, stored as one bit row per
/// domain element.
struct Relation {
  Word dom;
  Word cod;
  std::size_t n = 1;  ///< |dom|
  std::size_t m = 1;  ///< |cod|
  std::vector<std::uint64_t> bits;

  Relation() = default;
  Relation(Word d, Word c, std::size_t dn, std::size_t cm)
      : dom(std::move(d)), cod(std::move(c)), n(dn), m(cm), bits(dn * words_for(cm), 0) {}

  static std::size_t words_for(std::size_t m) { return (m + 63) / 64; }
  std::size_t words() const { return words_for(m); }

  bool test(std::size_t x, std::size_t y) const { return (bits[x * words() + y / 64] >> (y % 64)) & 1U; }
  void set(std::size_t x, std::size_t y) { bits[x * words() + y / 64] |= std::uint64_t{1} << (y % 64); }
  bool empty() const {
    for (auto w : bits)
      if (w) return false;
    return true;
  }

  friend bool operator==(const Relation&, const Relation&) = default;
};

/// The category Rel of finite sets and relations. Objects are words over
/// the declared atoms; A (x) B is the product set with (i,j) -> i*|B|+j.
/// States and effects of A are both indexed by subsets of A, enumerated in
/// increasing bitmask order (element k <-> bit k).
class RelCategory {
 public:
  using object_type = Word;
  using morphism_type = Relation;
  using number_type = Rational;
  static constexpr bool probe_based = false;

  /// Largest set whose subsets are enumerated.
  static constexpr std::size_t kMaxEnumeratedSize = 12;

  struct Atom {
    std::string label;
    std::size_t size;
  };

  RelCategory(std::string name, std::string unit_label, std::vector<Atom> atoms)
      : name_(std::move(name)), unit_label_(std::move(unit_label)), atoms_(std::move(atoms)) {
    for (const auto& a : atoms_) {
      if (a.size == 0) throw Error(ErrorKind::Config, "rel object '" + a.label + "' has size 0");
      if (a.label == unit_label_) throw Error(ErrorKind::Config, "atom label collides with unit label");
    }
  }

  /// Convenience: atoms A1, A2, ... with the given sizes, unit "I".
  static RelCategory with_sizes(const std::vector<std::size_t>& sizes) {
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < sizes.size(); ++i) atoms.push_back({"A" + std::to_string(i + 1), sizes[i]});
    return RelCategory("rel", "I", std::move(atoms));
  }

  const std::string& name() const { return name_; }
  Word unit() const { return {}; }
  Word atom(std::size_t i) const { return Word{{static_cast<std::uint32_t>(i)}}; }
  std::size_t atom_count() const { return atoms_.size(); }

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

  std::size_t size(const Word& w) const {
    std::size_t s = 1;
    for (auto a : w.atoms) s *= atoms_.at(a).size;
    return s;
  }

  Word tensor(const Word& a, const Word& b) const { return concat(a, b); }

  Relation identity(const Word& a) const {
    const std::size_t n = size(a);
    Relation r(a, a, n, n);
    for (std::size_t i = 0; i < n; ++i) r.set(i, i);
    return r;
  }

  Word dom(const Relation& f) const { return f.dom; }
  Word cod(const Relation& f) const { return f.cod; }

  /// g after f: relational composition (boolean matrix product).
  Relation compose(const Relation& g, const Relation& f) const {
    require_composable(*this, g, f);
    Relation r(f.dom, g.cod, f.n, g.m);
    const std::size_t fw = f.words();
    const std::size_t gw = g.words();
    for (std::size_t x = 0; x < f.n; ++x) {
      std::uint64_t* out = r.bits.data() + x * gw;
      for (std::size_t k = 0; k < fw; ++k) {
        std::uint64_t word = f.bits[x * fw + k];
        while (word) {
          const std::size_t y = k * 64 + static_cast<std::size_t>(std::countr_zero(word));
          word &= word - 1;
          const std::uint64_t* src = g.bits.data() + y * gw;
          for (std::size_t j = 0; j < gw; ++j) out[j] |= src[j];
        }
      }
    }
    return r;
  }

  Relation tensor(const Relation& f, const Relation& g) const {
    Relation r(concat(f.dom, g.dom), concat(f.cod, g.cod), f.n * g.n, f.m * g.m);
    for (std::size_t x1 = 0; x1 < f.n; ++x1)
      for (std::size_t y1 = 0; y1 < f.m; ++y1) {
        if (!f.test(x1, y1)) continue;
        for (std::size_t x2 = 0; x2 < g.n; ++x2)
          for (std::size_t y2 = 0; y2 < g.m; ++y2)
            if (g.test(x2, y2)) r.set(x1 * g.n + x2, y1 * g.m + y2);
      }
    return r;
  }

  /// The pair-swap bijection A (x) B -> B (x) A.
  Relation swap(const Word& a, const Word& b) const {
    const std::size_t na = size(a), nb = size(b);
    Relation r(concat(a, b), concat(b, a), na * nb, na * nb);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j) r.set(i * nb + j, j * na + i);
    return r;
  }

  Relation subset_state(const Word& a, std::uint64_t mask) const {
    const std::size_t n = size(a);
    Relation r(unit(), a, 1, n);
    for (std::size_t k = 0; k < n; ++k)
      if ((mask >> k) & 1U) r.set(0, k);
    return r;
  }

  Relation subset_effect(const Word& a, std::uint64_t mask) const {
    const std::size_t n = size(a);
    Relation r(a, unit(), n, 1);
    for (std::size_t k = 0; k < n; ++k)
      if ((mask >> k) & 1U) r.set(k, 0);
    return r;
  }

  /// Relation from explicit pairs (x, y).
  Relation relation(const Word& a, const Word& b, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) const {
    Relation r(a, b, size(a), size(b));
    for (auto [x, y] : pairs) r.set(x, y);
    return r;
  }

  std::vector<Relation> states(const Word& a, std::size_t /*level*/ = 0) const {
    const std::size_t n = enumerable_size(a);
    std::vector<Relation> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) out.push_back(subset_state(a, mask));
    return out;
  }

  std::vector<Relation> effects(const Word& a, std::size_t /*level*/ = 0) const {
    const std::size_t n = enumerable_size(a);
    std::vector<Relation> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) out.push_back(subset_effect(a, mask));
    return out;
  }

  bool equal(const Relation& f, const Relation& g) const { return f == g; }

  /// Canonical form: the sorted pair list.
  std::string key(const Relation& f) const {
    std::string s = "{";
    bool first = true;
    for (std::size_t x = 0; x < f.n; ++x)
      for (std::size_t y = 0; y < f.m; ++y)
        if (f.test(x, y)) {
          if (!first) s += ",";
          first = false;
          s += "(" + std::to_string(x) + "," + std::to_string(y) + ")";
        }
    return s + "}";
  }

  std::optional<std::vector<Relation>> hom(const Word& a, const Word& b, std::size_t limit) const {
    const std::size_t na = size(a), nb = size(b);
    const std::size_t bits = na * nb;
    if (bits >= 40 || (std::size_t{1} << bits) > limit) return std::nullopt;
    std::vector<Relation> out;
    out.reserve(std::size_t{1} << bits);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
      Relation r(a, b, na, nb);
      for (std::size_t k = 0; k < bits; ++k)
        if ((code >> k) & 1U) r.set(k / nb, k % nb);
      out.push_back(std::move(r));
    }
    return out;
  }

  std::optional<Relation> sample_hom(const Word& a, const Word& b, Rng& rng) const {
    Relation r(a, b, size(a), size(b));
    std::bernoulli_distribution coin(0.5);
    for (std::size_t x = 0; x < r.n; ++x)
      for (std::size_t y = 0; y < r.m; ++y)
        if (coin(rng)) r.set(x, y);
    return r;
  }

  /// Every object is self-dual; cup and cap are the diagonal relations.
  std::optional<Duality<Word, Relation>> duality(const Word& a) const {
    const std::size_t n = size(a);
    Relation cup(unit(), concat(a, a), 1, n * n);
    Relation cap(concat(a, a), unit(), n * n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      cup.set(0, i * n + i);
      cap.set(i * n + i, 0);
    }
    return Duality<Word, Relation>{a, std::move(cup), std::move(cap)};
  }

  /// The discarding effect A -> I (the full subset); its functional is
  /// the natural unit.
  std::optional<std::pair<std::string, std::vector<Relation>>> unit_effects(const Word& a) const {
    Relation r(a, unit(), size(a), 1);
    for (std::size_t k = 0; k < r.n; ++k) r.set(k, 0);
    return std::make_pair(std::string("full-set"), std::vector<Relation>{std::move(r)});
  }

  std::complex<double> scalar_value(const Relation& s) const { return s.empty() ? 0.0 : 1.0; }
  Relation scalar_from_value(std::complex<double> z) const {
    Relation r(unit(), unit(), 1, 1);
    if (z != 0.0) r.set(0, 0);
    return r;
  }

 private:
  std::size_t enumerable_size(const Word& a) const {
    const std::size_t n = size(a);
    if (n > kMaxEnumeratedSize)
      throw Error(ErrorKind::EnumerationTooLarge,
                  label(a) + " has " + std::to_string(n) + " elements; subsets are enumerated only up to " +
                      std::to_string(kMaxEnumeratedSize));
    return n;
  }

  std::string name_;
  std::string unit_label_;
  std::vector<Atom> atoms_;
};

static_assert(FiniteSmc<RelCategory>);
static_assert(NumericScalars<RelCategory>);

}  // namespace catcom::stdlib
