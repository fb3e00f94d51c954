#pragma once

namespace overlap {

// Worker count for OpenMP regions: hardware default, capped by the
// OVERLAP_LAB_THREADS environment variable when set.
int resolve_threads();

} // namespace overlap
