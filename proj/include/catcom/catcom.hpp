#pragma once

#include "catcom/cone.hpp"
#include "catcom/errors.hpp"
#include "catcom/fincat/category.hpp"
#include "catcom/fincat/validate.hpp"
#include "catcom/io/category_json.hpp"
#include "catcom/linalg.hpp"
#include "catcom/monoidal.hpp"
#include "catcom/normalize.hpp"
#include "catcom/numeric.hpp"
#include "catcom/oprep.hpp"
#include "catcom/report.hpp"
#include "catcom/scalars.hpp"
#include "catcom/stdlib/defaults.hpp"
#include "catcom/stdlib/matrix.hpp"
#include "catcom/stdlib/rel.hpp"
#include "catcom/stdlib/semilattice.hpp"
#include "catcom/stdlib/table.hpp"
#include "catcom/verify.hpp"
