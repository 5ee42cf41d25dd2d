#pragma once

// Three-qutrit states |psi> = sum A_ijk |ijk>, identified with the trilinear
// form f = sum A_ijk x_i y_j z_k, and the local SL(3)^3 action on them.
//
// Indices are 0-based in code; the flat amplitude index is 9i + 3j + k.

#include "trimoduli/multipoly.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>

namespace trimoduli {

using Matrix3 = Eigen::Matrix3cd;

inline constexpr int flat_index(int i, int j, int k) { return 9 * i + 3 * j + k; }

struct ParameterTriple {
  Complex u{};
  Complex v{};
  Complex w{};
};

class State {
 public:
  using Amplitudes = std::array<Complex, 27>;

  State() { amps_.fill(Complex{}); }
  explicit State(const Amplitudes& a) : amps_(a) {}

  static State basis(int i, int j, int k) {
    State s;
    s.at(i, j, k) = 1.0;
    return s;
  }

  const Amplitudes& amplitudes() const { return amps_; }
  Complex operator()(int i, int j, int k) const { return amps_[static_cast<std::size_t>(flat_index(i, j, k))]; }
  Complex& at(int i, int j, int k) { return amps_[static_cast<std::size_t>(flat_index(i, j, k))]; }

  double norm_squared() const;
  State scaled(Complex t) const;

  friend bool operator==(const State&, const State&) = default;

 private:
  Amplitudes amps_;
};

/// g = (g1, g2, g3), one matrix per party.
struct LocalTransform {
  std::array<Matrix3, 3> g{Matrix3::Identity(), Matrix3::Identity(), Matrix3::Identity()};
  bool det_normalized = false;

  static LocalTransform identity() {
    LocalTransform t;
    t.det_normalized = true;
    return t;
  }

  /// Composition: (this * other) acts as this after other.
  LocalTransform operator*(const LocalTransform& other) const;
};

/// Amplitudes of the Vinberg normal form N_uvw over any ring.
template <RingScalar S>
std::array<S, 27> normal_form_amplitudes(const S& u, const S& v, const S& w) {
  std::array<S, 27> a;
  a.fill(scalar_from_int<S>(0));
  for (int i = 0; i < 3; ++i) a[static_cast<std::size_t>(flat_index(i, i, i))] = u;
  // x1y3z2 + x2y1z3 + x3y2z1
  a[static_cast<std::size_t>(flat_index(0, 2, 1))] = v;
  a[static_cast<std::size_t>(flat_index(1, 0, 2))] = v;
  a[static_cast<std::size_t>(flat_index(2, 1, 0))] = v;
  // x1y2z3 + x2y3z1 + x3y1z2
  a[static_cast<std::size_t>(flat_index(0, 1, 2))] = w;
  a[static_cast<std::size_t>(flat_index(1, 2, 0))] = w;
  a[static_cast<std::size_t>(flat_index(2, 0, 1))] = w;
  return a;
}

State normal_form_state(const ParameterTriple& t);

/// f = sum A_ijk x_i y_j z_k over the single-slot catalog.
template <RingScalar S>
MultiPoly<S> trilinear_form(const std::array<S, 27>& a) {
  auto cat = Catalog::single_slot();
  MultiPoly<S> f(cat);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Monomial m{};
        m[static_cast<std::size_t>(cat->require({Group::x, i + 1, 1}))] = 1;
        m[static_cast<std::size_t>(cat->require({Group::y, j + 1, 1}))] = 1;
        m[static_cast<std::size_t>(cat->require({Group::z, k + 1, 1}))] = 1;
        f.add_term(m, a[static_cast<std::size_t>(flat_index(i, j, k))]);
      }
  return f;
}

MultiPoly<Complex> trilinear_form(const State& s);

State apply_local(const State& s, const LocalTransform& g);
State apply_on_party(const State& s, int party, const Matrix3& g);

enum class Axis { x, y, z };

/// det M_axis: f = y^T M_x(x) z = x^T M_y(y) z = x^T M_z(z) y.
template <RingScalar S>
MultiPoly<S> slice_cubic(const std::array<S, 27>& a, Axis axis) {
  auto cat = Catalog::single_slot();
  const Group g = axis == Axis::x ? Group::x : (axis == Axis::y ? Group::y : Group::z);
  std::array<std::array<MultiPoly<S>, 3>, 3> m{
      {{MultiPoly<S>(cat), MultiPoly<S>(cat), MultiPoly<S>(cat)},
       {MultiPoly<S>(cat), MultiPoly<S>(cat), MultiPoly<S>(cat)},
       {MultiPoly<S>(cat), MultiPoly<S>(cat), MultiPoly<S>(cat)}}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const S& c = a[static_cast<std::size_t>(flat_index(i, j, k))];
        if (ScalarTraits<S>::is_zero(c)) continue;
        int r = 0, col = 0, var = 0;
        switch (axis) {
          case Axis::x: r = j; col = k; var = i; break;
          case Axis::y: r = i; col = k; var = j; break;
          case Axis::z: r = i; col = j; var = k; break;
        }
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] +=
            MultiPoly<S>::variable(cat, VariableRef{g, var + 1, 1}).scaled(c);
      }
  auto e = [&](int r, int c) -> const MultiPoly<S>& {
    return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
         e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

MultiPoly<Complex> slice_cubic(const State& s, Axis axis);

/// Unnormalized reduced density of party 1, 2 or 3.
Matrix3 reduced_density(const State& s, int party);

/// Complex rank of the 27x24 tangent map of the SL(3)^3 action at s.
int orbit_dimension(const State& s, double relative_cutoff = 1e-8);

/// 27 amplitudes with independent N(0,1) real and imaginary parts.
State random_state(std::uint64_t seed);

/// Gaussian matrices rescaled to unit determinant.
LocalTransform random_local_transform(std::uint64_t seed);

ParameterTriple random_triple(std::uint64_t seed);

}  // namespace trimoduli
