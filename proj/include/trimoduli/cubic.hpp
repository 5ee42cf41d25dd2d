#pragma once

// Ternary cubics and their Aronhold invariants S (degree 4) and T (degree 6).
//
// S and T are full contractions of the symmetric coefficient tensor with
// Levi-Civita symbols, in the classical symbolic forms
//   S ~ (abc)(abd)(acd)(bcd),   T ~ (abc)(abd)(ace)(bcf)(def)^2,
// scaled so that on the Hesse form -phi(x1^3+x2^3+x3^3) + psi x1x2x3
//   6^4 S = -psi(psi^3 + (6phi)^3),  6^6 T = (6phi)^6 + 20(6phi)^3 psi^3 - 8 psi^6.

#include "trimoduli/multipoly.hpp"

#include <array>

namespace trimoduli {

template <RingScalar R>
struct TernaryCubic {
  // Symmetric tensor a_ijk with F = sum_{ijk} a_ijk x_i x_j x_k.
  std::array<R, 27> tensor{};

  R operator()(int i, int j, int k) const { return tensor[static_cast<std::size_t>(9 * i + 3 * j + k)]; }

  /// Reads a cubic in the three variables of group g (slot 1).
  static TernaryCubic from_poly(const MultiPoly<R>& p, Group g) {
    TernaryCubic c;
    c.tensor.fill(scalar_from_int<R>(0));
    const Catalog& cat = *p.catalog();
    std::array<int, 3> pos{};
    for (int i = 0; i < 3; ++i) pos[static_cast<std::size_t>(i)] = cat.require({g, i + 1, 1});
    for (const auto& [m, coef] : p.terms()) {
      std::array<int, 3> e{};
      int total = 0;
      for (int i = 0; i < 3; ++i) {
        e[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])];
        total += e[static_cast<std::size_t>(i)];
      }
      int other = 0;
      for (int v = 0; v < cat.size(); ++v) other += m[static_cast<std::size_t>(v)];
      if (total != 3 || other != 3) throw std::invalid_argument("TernaryCubic: not a cubic in the requested group");
      c.add_monomial(e, coef);
    }
    return c;
  }

  /// Adds coef * x1^e0 x2^e1 x3^e2 (e0 + e1 + e2 = 3).
  void add_monomial(const std::array<int, 3>& e, const R& coef) {
    static constexpr std::array<int, 4> fact = {1, 1, 2, 6};
    const int count = 6 / (fact[static_cast<std::size_t>(e[0])] * fact[static_cast<std::size_t>(e[1])] *
                           fact[static_cast<std::size_t>(e[2])]);
    const R share = coef * ScalarTraits<R>::from_rational(Rational(1, count));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          std::array<int, 3> f{};
          ++f[static_cast<std::size_t>(i)];
          ++f[static_cast<std::size_t>(j)];
          ++f[static_cast<std::size_t>(k)];
          if (f == e) tensor[static_cast<std::size_t>(9 * i + 3 * j + k)] += share;
        }
  }
};

template <RingScalar R>
struct AronholdPair {
  R S{};
  R T{};
};

namespace detail {

inline constexpr std::array<std::array<int, 3>, 6> kLeviPerms = {
    {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
inline constexpr std::array<int, 6> kLeviSigns = {1, 1, 1, -1, -1, -1};

// sum over four Levi-Civita symbols of
//   A[p1_0 p2_0 p3_0] A[p1_1 p2_1 p4_0] A[p1_2 p3_1 p4_1] L[p2_2 p3_2 p4_2]
// i.e. the bracket pattern (abc)(abd)(acd)(bcd) with the fourth letter's
// tensor L.
template <RingScalar R>
R four_bracket_contraction(const std::array<R, 27>& a, const std::array<R, 27>& last) {
  auto at = [](const std::array<R, 27>& t, int i, int j, int k) -> const R& {
    return t[static_cast<std::size_t>(9 * i + 3 * j + k)];
  };
  R sum = scalar_from_int<R>(0);
  for (std::size_t q1 = 0; q1 < 6; ++q1) {
    const auto& p1 = kLeviPerms[q1];
    for (std::size_t q2 = 0; q2 < 6; ++q2) {
      const auto& p2 = kLeviPerms[q2];
      for (std::size_t q3 = 0; q3 < 6; ++q3) {
        const auto& p3 = kLeviPerms[q3];
        const R& ta = at(a, p1[0], p2[0], p3[0]);
        if (ScalarTraits<R>::is_zero(ta)) continue;
        for (std::size_t q4 = 0; q4 < 6; ++q4) {
          const auto& p4 = kLeviPerms[q4];
          const R& tb = at(a, p1[1], p2[1], p4[0]);
          const R& tc = at(a, p1[2], p3[1], p4[1]);
          const R& td = at(last, p2[2], p3[2], p4[2]);
          if (ScalarTraits<R>::is_zero(tb) || ScalarTraits<R>::is_zero(tc) || ScalarTraits<R>::is_zero(td))
            continue;
          const int sign = kLeviSigns[q1] * kLeviSigns[q2] * kLeviSigns[q3] * kLeviSigns[q4];
          R term = ta * tb * tc * td;
          if (sign > 0)
            sum += term;
          else
            sum -= term;
        }
      }
    }
  }
  return sum;
}

}  // namespace detail

template <RingScalar R>
AronholdPair<R> aronhold(const TernaryCubic<R>& cubic) {
  const auto& a = cubic.tensor;
  // (def)^2 with one free index per letter.
  std::array<R, 27> m;
  m.fill(scalar_from_int<R>(0));
  for (std::size_t q1 = 0; q1 < 6; ++q1) {
    const auto& p1 = detail::kLeviPerms[q1];
    for (std::size_t q2 = 0; q2 < 6; ++q2) {
      const auto& p2 = detail::kLeviPerms[q2];
      const int sign = detail::kLeviSigns[q1] * detail::kLeviSigns[q2];
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
          for (int r = 0; r < 3; ++r) {
            R term = cubic(p, p1[0], p2[0]) * cubic(q, p1[1], p2[1]) * cubic(r, p1[2], p2[2]);
            auto& slot = m[static_cast<std::size_t>(9 * p + 3 * q + r)];
            if (sign > 0)
              slot += term;
            else
              slot -= term;
          }
    }
  }
  AronholdPair<R> out;
  out.S = detail::four_bracket_contraction(a, a) * ScalarTraits<R>::from_rational(Rational(-1, 24));
  out.T = detail::four_bracket_contraction(a, m) * ScalarTraits<R>::from_rational(Rational(-1, 6));
  return out;
}

/// 27(64 S^3 + T^2); vanishes exactly on singular cubics.
template <RingScalar R>
R cubic_discriminant(const AronholdPair<R>& st) {
  R s3 = st.S * st.S * st.S;
  return scalar_from_int<R>(27) * (scalar_from_int<R>(64) * s3 + st.T * st.T);
}

/// Hesse form -phi(x1^3 + x2^3 + x3^3) + psi x1 x2 x3.
template <RingScalar R>
TernaryCubic<R> hesse_cubic(const R& phi, const R& psi) {
  TernaryCubic<R> c;
  c.tensor.fill(scalar_from_int<R>(0));
  const R minus_phi = scalar_from_int<R>(0) - phi;
  c.add_monomial({3, 0, 0}, minus_phi);
  c.add_monomial({0, 3, 0}, minus_phi);
  c.add_monomial({0, 0, 3}, minus_phi);
  c.add_monomial({1, 1, 1}, psi);
  return c;
}

}  // namespace trimoduli
