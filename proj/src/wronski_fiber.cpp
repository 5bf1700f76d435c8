#include "gaudin/wronski_fiber.hpp"

#include <algorithm>
#include <cmath>

#include "gaudin/poly_roots.hpp"

namespace gaudin {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double collinearity_defect(const std::vector<Complex>& u, const std::vector<Complex>& v) {
  // sin(angle) = |v - proj_u v| / |v|.  The rejection form stays accurate
  // near zero, where sqrt(1 - cos^2) bottoms out at sqrt(machine eps).
  Complex ip(0, 0);
  double nu = 0, nv = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    ip += std::conj(u[i]) * v[i];
    nu += std::norm(u[i]);
    nv += std::norm(v[i]);
  }
  if (nu == 0 || nv == 0) return 1.0;
  Complex coef = ip / nu;
  double rej = 0;
  for (size_t i = 0; i < u.size(); ++i) rej += std::norm(v[i] - coef * u[i]);
  return std::sqrt(rej / nv);
}

WronskiFiberReport wronski_fiber(const std::vector<Complex>& a, const Complex& zeta, int m,
                                 int ell, const BetheSolveOptions& opt) {
  if (m < 0 || ell < 0) throw std::invalid_argument("wronski_fiber: negative degrees");
  const int n = m + ell;
  if (int(a.size()) != n) throw std::invalid_argument("wronski_fiber: |a| != m + ell");
  if (is_half_integer(zeta)) throw std::domain_error("wronski_fiber: exponent lies in (1/2)Z");

  WronskiFiberReport rep;
  rep.expected = binomial(n, m);

  // Roots of x^n + sum (-1)^s a_s x^{n-s}.
  std::vector<Complex> coeffs(size_t(n) + 1, Complex(0, 0));
  coeffs[size_t(n)] = Complex(1, 0);
  double sign = -1;
  for (int s = 1; s <= n; ++s) {
    coeffs[size_t(n - s)] = sign * a[size_t(s - 1)];
    sign = -sign;
  }
  rep.b = find_roots(Poly<Complex>(coeffs));

  // A k-fold root is determined only to precision eps^{1/k} by the
  // coefficients, so the multiplicity screen must be far looser than the
  // solver tolerances.
  double scale = 1;
  for (const Complex& r : rep.b) scale = std::max(scale, std::abs(r));
  for (size_t i = 0; i < rep.b.size(); ++i) {
    if (std::abs(rep.b[i]) < 1e-6 * scale) {
      rep.generic = false;
      rep.message = "root of the target polynomial at 0";
      return rep;
    }
    for (size_t j = i + 1; j < rep.b.size(); ++j) {
      if (std::abs(rep.b[i] - rep.b[j]) < 1e-6 * scale) {
        rep.generic = false;
        rep.message = "repeated root of the target polynomial";
        return rep;
      }
    }
  }

  const int nu = n - 2 * m;
  const Complex mu = zeta + zeta + Complex(nu / 2.0, 0);
  const std::vector<int> ms(size_t(n), 1);
  BetheSolveReport bae = solve_bethe(rep.b, ms, mu, m, opt);
  rep.complete = bae.complete;
  if (!bae.complete)
    rep.message = "fiber incomplete: found " + std::to_string(bae.solutions.size()) + " of " +
                  std::to_string(rep.expected);

  for (BetheSolution& sol : bae.solutions) {
    FiberPoint pt;
    Poly<Complex> y = Poly<Complex>::from_roots(sol.roots);
    DualPolyResult<Complex> dual = dual_polynomial(y, rep.b, ms, mu);
    pt.pair = make_quasi_pair(zeta, y, dual.ytilde);
    pt.sol = std::move(sol);
    pt.dual_roots = dual.ytilde.degree() > 0 ? find_roots(dual.ytilde) : std::vector<Complex>{};
    pt.dual_residual = dual.residual;
    WronskiImage<Complex> im = wronskian_pair(pt.pair);
    double resid = 0;
    for (int s = 0; s < n; ++s)
      resid = std::max(resid, std::abs(im.sigma[size_t(s)] - a[size_t(s)]) /
                                  std::max(1.0, std::abs(a[size_t(s)])));
    pt.sigma_residual = resid;
    rep.points.push_back(std::move(pt));
  }
  return rep;
}

}  // namespace gaudin
