#pragma once

#include "catcom/fincat/category.hpp"

#include <string>
#include <utility>
#include <vector>

namespace catcom::stdlib {

struct OrderArrow {
  ObjectId from;
  ObjectId to;
  friend bool operator==(const OrderArrow&, const OrderArrow&) = default;
};

/// A finite meet-semilattice viewed as a thin category: one arrow a -> b
/// iff a <= b, tensor = meet, unit = top. Only the top has states, so
/// every other object has a zero-dimensional operational space.
class SemilatticeCategory {
 public:
  using object_type = ObjectId;
  using morphism_type = OrderArrow;
  using number_type = Rational;
  static constexpr bool probe_based = false;

  /// `order` lists pairs (a, b) meaning a <= b; the reflexive-transitive
  /// closure is taken. Throws Config if the closure is not antisymmetric,
  /// a meet is missing, or the unit is not the top element.
  SemilatticeCategory(std::string name, std::vector<std::string> labels, const std::string& unit_label,
                      const std::vector<std::pair<std::string, std::string>>& order)
      : name_(std::move(name)), labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw Error(ErrorKind::Config, "semilattice has no elements");
    leq_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
    for (const auto& [a, b] : order) leq_[index_of(a)][index_of(b)] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[i][k] && leq_[k][j]) leq_[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (leq_[i][j] && leq_[j][i])
          throw Error(ErrorKind::Config, "order is not antisymmetric: " + labels_[i] + " and " + labels_[j]);
    meet_.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        bool found = false;
        for (std::size_t m = 0; m < n && !found; ++m) {
          if (!leq_[m][i] || !leq_[m][j]) continue;
          bool greatest = true;
          for (std::size_t l = 0; l < n && greatest; ++l)
            if (leq_[l][i] && leq_[l][j] && !leq_[l][m]) greatest = false;
          if (greatest) {
            meet_[i][j] = m;
            found = true;
          }
        }
        if (!found) throw Error(ErrorKind::Config, "no meet of " + labels_[i] + " and " + labels_[j]);
      }
    top_ = index_of(unit_label);
    for (std::size_t i = 0; i < n; ++i)
      if (!leq_[i][top_]) throw Error(ErrorKind::Config, "unit " + unit_label + " is not the top element");
  }

  /// A chain x_1 < x_2 < ... < x_n with the unit as the largest element.
  static SemilatticeCategory chain(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, std::string>> order;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(i + 1 == n ? "I" : "x" + std::to_string(i + 1));
    for (std::size_t i = 0; i + 1 < n; ++i) order.emplace_back(labels[i], labels[i + 1]);
    return SemilatticeCategory("chain" + std::to_string(n), labels, "I", order);
  }

  const std::string& name() const { return name_; }
  ObjectId unit() const { return {top_}; }
  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    throw Error(ErrorKind::Config, "unknown semilattice element '" + label + "'");
  }
  bool leq(ObjectId a, ObjectId b) const { return leq_.at(a.index).at(b.index); }

  std::vector<ObjectId> objects() const {
    std::vector<ObjectId> out;
    for (std::size_t i = 0; i < labels_.size(); ++i) out.push_back({i});
    return out;
  }
  std::string label(ObjectId a) const { return labels_.at(a.index); }
  ObjectId tensor(ObjectId a, ObjectId b) const { return {meet_.at(a.index).at(b.index)}; }

  OrderArrow identity(ObjectId a) const { return {a, a}; }
  ObjectId dom(const OrderArrow& f) const { return f.from; }
  ObjectId cod(const OrderArrow& f) const { return f.to; }

  OrderArrow compose(const OrderArrow& g, const OrderArrow& f) const {
    require_composable(*this, g, f);
    return {f.from, g.to};
  }
  OrderArrow tensor(const OrderArrow& f, const OrderArrow& g) const {
    return {tensor(f.from, g.from), tensor(f.to, g.to)};
  }
  OrderArrow swap(ObjectId a, ObjectId b) const { return identity(tensor(a, b)); }

  std::vector<OrderArrow> states(ObjectId a, std::size_t = 0) const {
    if (leq({top_}, a)) return {OrderArrow{{top_}, a}};
    return {};
  }
  std::vector<OrderArrow> effects(ObjectId a, std::size_t = 0) const { return {OrderArrow{a, {top_}}}; }

  bool equal(const OrderArrow& f, const OrderArrow& g) const { return f == g; }
  std::string key(const OrderArrow& f) const { return label(f.from) + "<=" + label(f.to); }

  std::optional<std::vector<OrderArrow>> hom(ObjectId a, ObjectId b, std::size_t) const {
    if (leq(a, b)) return std::vector<OrderArrow>{{a, b}};
    return std::vector<OrderArrow>{};
  }
  std::optional<OrderArrow> sample_hom(ObjectId a, ObjectId b, Rng&) const {
    if (leq(a, b)) return OrderArrow{a, b};
    return std::nullopt;
  }
  std::optional<Duality<ObjectId, OrderArrow>> duality(ObjectId) const { return std::nullopt; }

  /// The unique effect a -> I discards.
  std::optional<std::pair<std::string, std::vector<OrderArrow>>> unit_effects(ObjectId a) const {
    return std::make_pair(std::string("discard"), effects(a));
  }

  std::complex<double> scalar_value(const OrderArrow&) const { return 1.0; }
  OrderArrow scalar_from_value(std::complex<double>) const { return identity(unit()); }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::size_t>> meet_;
  std::size_t top_ = 0;
};

static_assert(FiniteSmc<SemilatticeCategory>);

}  // namespace catcom::stdlib
