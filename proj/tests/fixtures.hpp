#pragma once

#include "catcom/stdlib/matrix.hpp"
#include "catcom/stdlib/rel.hpp"
#include "catcom/stdlib/semilattice.hpp"
#include "catcom/stdlib/table.hpp"

#include <string>

namespace fixtures {

using catcom::stdlib::ComplexMatrixCategory;
using catcom::stdlib::RealMatrixCategory;
using catcom::stdlib::RelCategory;
using catcom::stdlib::SemilatticeCategory;
using catcom::stdlib::TableCategory;
using catcom::stdlib::TableDescription;

inline SemilatticeCategory diamond() {
  return SemilatticeCategory("diamond", {"bot", "x", "y", "I"}, "I", {{"bot", "x"}, {"bot", "y"}, {"x", "I"}, {"y", "I"}});
}

inline SemilatticeCategory chain3() { return SemilatticeCategory("chain", {"0", "m", "I"}, "I", {{"0", "m"}, {"m", "I"}}); }

/// One object I whose scalars are {e, s} with the given table for s∘s.
inline TableDescription monoid_on_unit(const std::string& ss) {
  TableDescription d;
  d.name = "two-scalars";
  d.objects = {"I"};
  d.unit = "I";
  d.morphisms = {{"e", "I", "I"}, {"s", "I", "I"}};
  d.identities = {{"I", "e"}};
  d.composition = {{"e", "e", "e"}, {"e", "s", "s"}, {"s", "e", "s"}, {"s", "s", ss}};
  d.tensor_objects = {{"I", "I", "I"}};
  d.tensor_morphisms = d.composition;
  d.symmetry = {{{"I", "I"}, "e"}};
  return d;
}

/// Z/2 = {e, s} with s∘s = e.
inline TableCategory z2() { return TableCategory(monoid_on_unit("e")); }

/// {0, 1} under multiplication: s∘s = s, s absorbing.
inline TableCategory and_monoid() { return TableCategory(monoid_on_unit("s")); }

inline ComplexMatrixCategory complex_dims(std::vector<std::size_t> dims) { return ComplexMatrixCategory::with_dims(dims); }
inline RealMatrixCategory real_dims(std::vector<std::size_t> dims) { return RealMatrixCategory::with_dims(dims); }

}  // namespace fixtures
