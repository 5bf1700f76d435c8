#pragma once

// Fibers of the map sending a quasi-polynomial pair to the coefficients of
// its Wronskian.  A fiber over a = (a_1..a_n) is computed through the Bethe
// correspondence: the roots b of x^n + sum (-1)^s a_s x^{n-s} become the
// poles of a spin-1/2 chain, each Bethe root vector t gives the p-part
// y = prod (x - t_i), and the q-part is its dual polynomial.

#include <string>
#include <vector>

#include "gaudin/bethe_solver.hpp"
#include "gaudin/quasipoly_wronski.hpp"

namespace gaudin {

long long binomial(int n, int k);

struct FiberPoint {
  QuasiPolyPair<Complex> pair;
  BetheSolution sol;                // the Bethe roots behind the p-part
  std::vector<Complex> dual_roots;  // roots of the q-part
  double sigma_residual = 0;        // max_s |sigma_s(pair) - a_s| / max(1, |a_s|)
  double dual_residual = 0;         // consistency defect of the dual linear system
};

struct WronskiFiberReport {
  std::vector<Complex> b;  // roots of x^n + sum (-1)^s a_s x^{n-s}
  std::vector<FiberPoint> points;
  long long expected = 0;  // binomial(n, m)
  bool generic = true;     // b distinct and nonzero
  bool complete = false;
  std::string message;
};

// Fiber over a of pairs with exponent zeta and part degrees (m, ell),
// n = m + ell = |a|.  Requires zeta outside (1/2)Z.  Non-generic a (repeated
// or zero roots) is reported, not solved.
WronskiFiberReport wronski_fiber(const std::vector<Complex>& a, const Complex& zeta, int m,
                                 int ell, const BetheSolveOptions& opt = {});

// sin of the angle between the complex lines spanned by u and v; 1.0 when
// either vanishes.
double collinearity_defect(const std::vector<Complex>& u, const std::vector<Complex>& v);

}  // namespace gaudin
