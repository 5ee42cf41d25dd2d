#include "trimoduli/c_formulas.hpp"

#include <cmath>

namespace trimoduli {

namespace {

// Coefficients (a, b, c) of the nine non-coordinate mirror forms a u + b v + c w,
// as powers of eps.
constexpr std::array<std::array<int, 3>, 9> kMirrorPowers = {{
    {0, 0, 0},  // u + v + w
    {1, 0, 0},  // eu + v + w
    {0, 1, 0},  // u + ev + w
    {2, 1, 0},  // e^2u + ev + w
    {0, 2, 0},  // u + e^2v + w
    {1, 1, 0},  // eu + ev + w
    {2, 0, 0},  // e^2u + v + w
    {1, 2, 0},  // eu + e^2v + w
    {2, 2, 0},  // e^2u + e^2v + w
}};

template <class T>
T eps_power(int k, const T& one, const T& eps) {
  T r = one;
  for (int i = 0; i < k; ++i) r = r * eps;
  return r;
}

template <class T>
T mirror_product(const T& u, const T& v, const T& w, const T& one, const T& eps) {
  T p = u * v * w;
  for (const auto& e : kMirrorPowers)
    p = p * (eps_power(e[0], one, eps) * u + eps_power(e[1], one, eps) * v + eps_power(e[2], one, eps) * w);
  return p;
}

MultiPoly<Rational> msym_poly(std::array<int, 3> exps) {
  auto cat = uvw_catalog();
  MultiPoly<Rational> p(cat);
  std::sort(exps.begin(), exps.end());
  do {
    Monomial m{};
    for (std::size_t i = 0; i < 3; ++i) m[i] = static_cast<std::uint8_t>(exps[i]);
    p.add_term(m, Rational(1));
  } while (std::next_permutation(exps.begin(), exps.end()));
  return p;
}

MultiPoly<Rational> var(int i) { return MultiPoly<Rational>::variable(uvw_catalog(), i); }

}  // namespace

Cyclotomic c12_prime_product(const Cyclotomic& u, const Cyclotomic& v, const Cyclotomic& w) {
  return mirror_product(u, v, w, Cyclotomic(1), Cyclotomic::epsilon());
}

Complex c12_prime_product(Complex u, Complex v, Complex w) {
  return mirror_product(u, v, w, Complex(1.0), Cyclotomic::epsilon().to_complex());
}

Rational c12_prime_scale() { return Rational(-1, 9); }

CValues c_formulas(const ParameterTriple& t) {
  CValues c;
  c.c6 = c6_value(t.u, t.v, t.w);
  c.c9 = c9_value(t.u, t.v, t.w);
  c.c12 = c12_value(t.u, t.v, t.w);
  c.c18 = c18_value(t.u, t.v, t.w);
  c.c12_prime = c12_prime_scale().get_d() * c12_prime_product(t.u, t.v, t.w);
  return c;
}

CatalogPtr uvw_catalog() {
  static const CatalogPtr cat = Catalog::named({"u", "v", "w"});
  return cat;
}

MultiPoly<Rational> c6_poly() { return msym_poly({6, 0, 0}) - msym_poly({3, 3, 0}).scaled(Rational(10)); }

MultiPoly<Rational> c9_poly() {
  const auto u3 = var(0).pow(3), v3 = var(1).pow(3), w3 = var(2).pow(3);
  return (u3 - v3) * (u3 - w3) * (v3 - w3);
}

MultiPoly<Rational> c12_poly() {
  return msym_poly({12, 0, 0}) + msym_poly({9, 3, 0}).scaled(Rational(4)) +
         msym_poly({6, 6, 0}).scaled(Rational(6)) + msym_poly({6, 3, 3}).scaled(Rational(228));
}

MultiPoly<Cyclotomic> c12_prime_poly() {
  auto cat = uvw_catalog();
  auto v = [&](int i) { return MultiPoly<Cyclotomic>::variable(cat, i); };
  auto one = MultiPoly<Cyclotomic>::constant(cat, Cyclotomic(1));
  auto eps = MultiPoly<Cyclotomic>::constant(cat, Cyclotomic::epsilon());
  return mirror_product(v(0), v(1), v(2), one, eps).scaled(Cyclotomic(c12_prime_scale()));
}

JacobianCheck jacobian_check(const ParameterTriple& t) {
  const std::array<MultiPoly<Rational>, 3> cs = {c6_poly(), c9_poly(), c12_poly()};
  const std::array<Complex, 3> point = {t.u, t.v, t.w};
  Eigen::Matrix3cd jac;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      jac(r, c) = cs[static_cast<std::size_t>(r)].diff(c).eval<Complex>(point);
  JacobianCheck out;
  out.jacobian = jac.determinant();
  const Complex cp = c_formulas(t).c12_prime;
  const double scale = std::max({std::abs(t.u), std::abs(t.v), std::abs(t.w)});
  if (std::abs(cp) > 1e-12 * std::pow(scale, 12)) out.ratio = out.jacobian / (cp * cp);
  return out;
}

}  // namespace trimoduli
