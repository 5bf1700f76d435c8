#pragma once

#include <cstdlib>

namespace gaudin {

// Worker count: explicit request wins, then the GAUDIN_LAB_THREADS cap,
// else 1.  Results never depend on the value; it only splits start batches.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GAUDIN_LAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace gaudin
