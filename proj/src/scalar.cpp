#include "trimoduli/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace trimoduli {

std::string to_string(const Rational& q) { return q.get_str(); }

Cyclotomic Cyclotomic::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) throw std::domain_error("Cyclotomic::inverse: zero element");
  Cyclotomic c = conj();
  return {Rational(c.rational_part() / n), Rational(c.epsilon_part() / n)};
}

Complex Cyclotomic::to_complex() const {
  const double a = a_.get_d();
  const double b = b_.get_d();
  return {a - 0.5 * b, 0.5 * std::sqrt(3.0) * b};
}

std::string Cyclotomic::to_string() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::string out;
  if (sgn(a_) != 0) out = a_.get_str() + (sgn(b_) > 0 ? "+" : "");
  out += b_.get_str() + "*e";
  return out;
}

std::string ScalarTraits<Complex>::to_string(const Complex& s) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", s.real(), s.imag());
  return buf;
}

}  // namespace trimoduli
