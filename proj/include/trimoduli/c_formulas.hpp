#pragma once

// Invariants of the normal form N_uvw as closed formulas in (u, v, w).
//
//   C6  = m(6) - 10 m(3,3)
//   C9  = (u^3 - v^3)(u^3 - w^3)(v^3 - w^3)
//   C12 = m(12) + 4 m(9,3) + 6 m(6,6) + 228 m(6,3,3)
//   C18 = psi^6 - (5/2) lambda psi^3 - lambda^2 / 8,   lambda = 216 (uvw)^3
//   C'12 = -(1/9) * product of the twelve mirror forms
//
// with m(...) the monomial symmetric functions of u, v, w and
// psi = u^3 + v^3 + w^3. The -1/9 makes Delta(N_uvw) = C'12^3 hold with
// Delta = 27(64 S^3 + T^2).

#include "trimoduli/multipoly.hpp"
#include "trimoduli/state.hpp"

#include <optional>

namespace trimoduli {

struct CValues {
  Complex c6{};
  Complex c9{};
  Complex c12{};
  Complex c18{};
  Complex c12_prime{};
};

/// Sum of u^p v^q w^r over the distinct permutations of (p, q, r).
template <RingScalar S>
S monomial_symmetric(const S& u, const S& v, const S& w, std::array<int, 3> exps) {
  auto power = [](const S& x, int e) {
    S r = scalar_from_int<S>(1);
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
  };
  std::sort(exps.begin(), exps.end());
  S sum = scalar_from_int<S>(0);
  do {
    sum = sum + power(u, exps[0]) * power(v, exps[1]) * power(w, exps[2]);
  } while (std::next_permutation(exps.begin(), exps.end()));
  return sum;
}

template <RingScalar S>
S c6_value(const S& u, const S& v, const S& w) {
  return monomial_symmetric(u, v, w, {6, 0, 0}) - scalar_from_int<S>(10) * monomial_symmetric(u, v, w, {3, 3, 0});
}

template <RingScalar S>
S c9_value(const S& u, const S& v, const S& w) {
  const S u3 = u * u * u, v3 = v * v * v, w3 = w * w * w;
  return (u3 - v3) * (u3 - w3) * (v3 - w3);
}

template <RingScalar S>
S c12_value(const S& u, const S& v, const S& w) {
  return monomial_symmetric(u, v, w, {12, 0, 0}) + scalar_from_int<S>(4) * monomial_symmetric(u, v, w, {9, 3, 0}) +
         scalar_from_int<S>(6) * monomial_symmetric(u, v, w, {6, 6, 0}) +
         scalar_from_int<S>(228) * monomial_symmetric(u, v, w, {6, 3, 3});
}

template <RingScalar S>
S c18_value(const S& u, const S& v, const S& w) {
  const S psi = u * u * u + v * v * v + w * w * w;
  const S phi = u * v * w;
  const S lambda = scalar_from_int<S>(216) * phi * phi * phi;
  const S psi3 = psi * psi * psi;
  return psi3 * psi3 - ScalarTraits<S>::from_rational(Rational(5, 2)) * lambda * psi3 -
         ScalarTraits<S>::from_rational(Rational(1, 8)) * lambda * lambda;
}

/// The twelve linear forms uvw (u+v+w)(eu+v+w)... without the -1/9.
Cyclotomic c12_prime_product(const Cyclotomic& u, const Cyclotomic& v, const Cyclotomic& w);
Complex c12_prime_product(Complex u, Complex v, Complex w);

/// Scale applied to the product of the twelve forms.
Rational c12_prime_scale();

CValues c_formulas(const ParameterTriple& t);

/// Exact polynomials in the named catalog (u, v, w).
CatalogPtr uvw_catalog();
MultiPoly<Rational> c6_poly();
MultiPoly<Rational> c9_poly();
MultiPoly<Rational> c12_poly();
MultiPoly<Cyclotomic> c12_prime_poly();

struct JacobianCheck {
  Complex jacobian{};
  std::optional<Complex> ratio;  // jacobian / C'12^2; empty when C'12 = 0
};

/// det d(C6, C9, C12)/d(u, v, w) from exact derivatives of the closed forms.
JacobianCheck jacobian_check(const ParameterTriple& t);

}  // namespace trimoduli
