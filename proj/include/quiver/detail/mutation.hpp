#pragma once

#include <span>

#include "quiver/quiver.hpp"

namespace quiver::detail {

// In-place matrix mutation of a rows x cols row-major extended exchange
// matrix whose leading cols x cols block is skew-symmetric. k is zero-based
// and must be < cols. Throws MultiplicityOverflow past cap.
void mutate_extended(std::span<Entry> data, int rows, int cols, int k, Entry cap);

}  // namespace quiver::detail
