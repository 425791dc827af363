#pragma once

#include <cstddef>

namespace chordal {

/// Worker count for grid scans: CHORDAL_THREADS when set to a positive
/// integer, hardware concurrency otherwise (0 or unset means auto).
std::size_t thread_count();

}  // namespace chordal
