#include "trimoduli/state.hpp"

#include "trimoduli/random.hpp"

#include <cmath>

namespace trimoduli {

double State::norm_squared() const {
  double n = 0.0;
  for (const auto& a : amps_) n += std::norm(a);
  return n;
}

State State::scaled(Complex t) const {
  State out = *this;
  for (auto& a : out.amps_) a *= t;
  return out;
}

LocalTransform LocalTransform::operator*(const LocalTransform& other) const {
  LocalTransform out;
  for (std::size_t p = 0; p < 3; ++p) out.g[p] = g[p] * other.g[p];
  out.det_normalized = det_normalized && other.det_normalized;
  return out;
}

State normal_form_state(const ParameterTriple& t) {
  return State(normal_form_amplitudes<Complex>(t.u, t.v, t.w));
}

MultiPoly<Complex> trilinear_form(const State& s) { return trilinear_form<Complex>(s.amplitudes()); }

MultiPoly<Complex> slice_cubic(const State& s, Axis axis) { return slice_cubic<Complex>(s.amplitudes(), axis); }

State apply_on_party(const State& s, int party, const Matrix3& g) {
  State out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Complex acc{};
        for (int p = 0; p < 3; ++p) {
          switch (party) {
            case 1: acc += g(i, p) * s(p, j, k); break;
            case 2: acc += g(j, p) * s(i, p, k); break;
            case 3: acc += g(k, p) * s(i, j, p); break;
            default: throw std::invalid_argument("apply_on_party: party must be 1, 2 or 3");
          }
        }
        out.at(i, j, k) = acc;
      }
  return out;
}

State apply_local(const State& s, const LocalTransform& g) {
  State out = s;
  for (int p = 1; p <= 3; ++p) {
    const Matrix3& m = g.g[static_cast<std::size_t>(p - 1)];
    if (m.isIdentity(0.0)) continue;
    out = apply_on_party(out, p, m);
  }
  return out;
}

Matrix3 reduced_density(const State& s, int party) {
  if (party < 1 || party > 3) throw std::invalid_argument("reduced_density: party must be 1, 2 or 3");
  Matrix3 rho = Matrix3::Zero();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
          switch (party) {
            case 1: rho(a, b) += s(a, m, n) * std::conj(s(b, m, n)); break;
            case 2: rho(a, b) += s(m, a, n) * std::conj(s(m, b, n)); break;
            default: rho(a, b) += s(m, n, a) * std::conj(s(m, n, b)); break;
          }
        }
  return rho;
}

int orbit_dimension(const State& s, double relative_cutoff) {
  std::vector<Matrix3> basis;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      Matrix3 e = Matrix3::Zero();
      e(i, j) = 1.0;
      basis.push_back(e);
    }
  for (int i = 0; i < 2; ++i) {
    Matrix3 h = Matrix3::Zero();
    h(i, i) = 1.0;
    h(i + 1, i + 1) = -1.0;
    basis.push_back(h);
  }
  Eigen::MatrixXcd tangent(27, 24);
  int col = 0;
  for (int party = 1; party <= 3; ++party) {
    for (const auto& x : basis) {
      const State d = apply_on_party(s, party, x);
      for (int r = 0; r < 27; ++r) tangent(r, col) = d.amplitudes()[static_cast<std::size_t>(r)];
      ++col;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(tangent);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > relative_cutoff * sv(0)) ++rank;
  return rank;
}

State random_state(std::uint64_t seed) {
  GaussianStream rng(seed);
  State s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) s.at(i, j, k) = rng.next_complex();
  return s;
}

LocalTransform random_local_transform(std::uint64_t seed) {
  GaussianStream rng(seed);
  LocalTransform t;
  for (auto& m : t.g) {
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = rng.next_complex();
    const Complex d = m.determinant();
    m /= std::pow(d, 1.0 / 3.0);
  }
  t.det_normalized = true;
  return t;
}

ParameterTriple random_triple(std::uint64_t seed) {
  GaussianStream rng(seed);
  ParameterTriple t;
  t.u = rng.next_complex();
  t.v = rng.next_complex();
  t.w = rng.next_complex();
  return t;
}

}  // namespace trimoduli
