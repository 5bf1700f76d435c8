#pragma once

#include "gaudin/poly.hpp"

namespace gaudin {

// All complex roots of p, via Durand-Kerner with a Newton polish.  Leading
// coefficients within rel_trim of the largest coefficient magnitude are
// treated as zero first.  Intended for the small degrees this project
// produces; clustered/multiple roots converge slowly and are not needed.
std::vector<Complex> find_roots(const Poly<Complex>& p, double rel_trim = 1e-12);

}  // namespace gaudin
