#pragma once

#include <vector>

#include "dunkl/rational.hpp"

namespace dunkl {

/// Solves the square system A x = b exactly with fraction-free (Bareiss)
/// elimination. Rows are scaled to integers first. Throws
/// InternalInconsistency when A is singular.
RationalVector solve_exact(const std::vector<RationalVector>& a, const RationalVector& b);

}  // namespace dunkl
