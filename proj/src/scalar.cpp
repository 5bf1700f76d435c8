#include "gaudin/scalar.hpp"

namespace gaudin {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational r;
    if (r.set_str(text, 10) != 0) throw std::invalid_argument("parse_rational: bad fraction '" + text + "'");
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return r;
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    Rational r;
    if (r.set_str(text, 10) != 0) throw std::invalid_argument("parse_rational: bad integer '" + text + "'");
    return r;
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  size_t frac_len = text.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
  mpz_class num;
  if (num.set_str(digits, 10) != 0)
    throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
  mpz_class den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

long nearest_integer(const Rational& r) {
  mpz_class num = r.get_num(), den = r.get_den();
  mpz_class q;
  if (num >= 0) {
    q = (2 * num + den) / (2 * den);
  } else {
    q = (-2 * num + den) / (2 * den);
    q = -q;
  }
  return long(q.get_si());
}

}  // namespace gaudin
