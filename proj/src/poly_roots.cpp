#include "gaudin/poly_roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gaudin {

std::vector<Complex> find_roots(const Poly<Complex>& p, double rel_trim) {
  double top = p.max_abs();
  if (top == 0) throw std::invalid_argument("find_roots: zero polynomial");
  int deg = int(p.c.size()) - 1;
  while (deg > 0 && std::abs(p.c[deg]) <= rel_trim * top) --deg;
  if (deg == 0) return {};

  std::vector<Complex> a(p.c.begin(), p.c.begin() + deg + 1);
  Complex lead = a[deg];
  for (auto& v : a) v /= lead;

  auto eval = [&](Complex x) {
    Complex r = a[deg];
    for (int i = deg - 1; i >= 0; --i) r = r * x + a[i];
    return r;
  };
  auto deriv = [&](Complex x) {
    Complex r = a[deg] * double(deg);
    for (int i = deg - 1; i >= 1; --i) r = r * x + a[i] * double(i);
    return r;
  };

  double rad = 0;
  for (int i = 0; i < deg; ++i) rad = std::max(rad, std::abs(a[i]));
  rad = 1 + rad;  // Cauchy bound

  std::vector<Complex> w(deg);
  for (int k = 0; k < deg; ++k)
    w[k] = 0.4 * rad * std::polar(1.0, 2 * std::numbers::pi * k / deg + 0.35);

  for (int it = 0; it < 600; ++it) {
    double moved = 0;
    for (int i = 0; i < deg; ++i) {
      Complex den = 1;
      for (int j = 0; j < deg; ++j)
        if (j != i) den *= w[i] - w[j];
      Complex delta = eval(w[i]) / den;
      w[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14 * std::max(1.0, rad)) break;
  }
  for (auto& root : w)
    for (int k = 0; k < 3; ++k) {
      Complex d = deriv(root);
      if (std::abs(d) < 1e-300) break;
      root -= eval(root) / d;
    }

  std::sort(w.begin(), w.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return w;
}

}  // namespace gaudin
