#pragma once

#include "catcom/scalars.hpp"
#include "catcom/stdlib/matrix.hpp"
#include "catcom/stdlib/rel.hpp"
#include "catcom/stdlib/semilattice.hpp"
#include "catcom/stdlib/table.hpp"

namespace catcom::stdlib {

/// The homomorphism each built-in backend uses when none is configured:
/// the inclusion {0,1} ⊆ R for relations, |z|^2 for matrices, the unique
/// one on a trivial monoid, and |det R_s| for table categories.
inline ScalarHom<RelCategory> default_hom(const RelCategory& c) { return rule_hom(c, "identity-on-nonneg"); }

template <class Field>
ScalarHom<MatrixCategory<Field>> default_hom(const MatrixCategory<Field>& c) {
  return rule_hom(c, "abs2");
}

inline ScalarHom<SemilatticeCategory> default_hom(const SemilatticeCategory& c) { return unique_hom(c); }

inline ScalarHom<TableCategory> default_hom(const TableCategory& c) { return canonical_det_hom(c); }

}  // namespace catcom::stdlib
