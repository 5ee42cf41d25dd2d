#pragma once

// Chanler's concomitants of the trilinear form f, the fundamental invariants
// I6, I9, I12 built from them by transvectants, the derived invariant I18,
// the hyperdeterminant-type discriminant Delta and the twelve syzygies.

#include "trimoduli/c_formulas.hpp"
#include "trimoduli/cubic.hpp"
#include "trimoduli/omega.hpp"
#include "trimoduli/state.hpp"

#include <string>
#include <utility>
#include <vector>

namespace trimoduli {

enum class Greek { alpha, beta, gamma };

template <RingScalar S>
struct ConcomitantBundle {
  MultiPoly<S> f{Catalog::single_slot()};
  MultiPoly<S> p_alpha{Catalog::single_slot()};
  MultiPoly<S> p_beta{Catalog::single_slot()};
  MultiPoly<S> p_gamma{Catalog::single_slot()};
  MultiPoly<S> q_alpha{Catalog::single_slot()};
  MultiPoly<S> q_beta{Catalog::single_slot()};
  MultiPoly<S> q_gamma{Catalog::single_slot()};
  MultiPoly<S> b_alpha{Catalog::single_slot()};
  MultiPoly<S> b_beta{Catalog::single_slot()};
  MultiPoly<S> b_gamma{Catalog::single_slot()};
  MultiPoly<S> c_alpha_beta{Catalog::single_slot()};
  MultiPoly<S> c_beta_alpha{Catalog::single_slot()};
  MultiPoly<S> c_alpha_gamma{Catalog::single_slot()};
  MultiPoly<S> c_gamma_alpha{Catalog::single_slot()};
  MultiPoly<S> c_beta_gamma{Catalog::single_slot()};
  MultiPoly<S> c_gamma_beta{Catalog::single_slot()};
  MultiPoly<S> d_alpha{Catalog::single_slot()};
  MultiPoly<S> d_beta{Catalog::single_slot()};
  MultiPoly<S> d_gamma{Catalog::single_slot()};
  MultiPoly<S> e_alpha{Catalog::single_slot()};
  MultiPoly<S> e_beta{Catalog::single_slot()};
  MultiPoly<S> e_gamma{Catalog::single_slot()};
  MultiPoly<S> g_alpha{Catalog::single_slot()};
  MultiPoly<S> g_beta{Catalog::single_slot()};
  MultiPoly<S> g_gamma{Catalog::single_slot()};
  MultiPoly<S> h{Catalog::single_slot()};
};

/// P_alpha = sum xi_i x_i, P_beta = sum eta_j y_j, P_gamma = sum zeta_k z_k.
template <RingScalar S>
MultiPoly<S> absolute_invariant(Greek which) {
  auto cat = Catalog::single_slot();
  const auto [co, contra] = which == Greek::alpha  ? std::pair{Group::x, Group::xi}
                            : which == Greek::beta ? std::pair{Group::y, Group::eta}
                                                   : std::pair{Group::z, Group::zeta};
  MultiPoly<S> p(cat);
  for (int i = 1; i <= 3; ++i)
    p += MultiPoly<S>::variable(cat, VariableRef{co, i, 1}) * MultiPoly<S>::variable(cat, VariableRef{contra, i, 1});
  return p;
}

namespace detail {

template <RingScalar S>
S rational_scalar(long num, long den) {
  return ScalarTraits<S>::from_rational(Rational(num, den));
}

template <RingScalar S>
S constant_term(const MultiPoly<S>& p) {
  if (p.total_degree() != 0) throw std::logic_error("expected an invariant (constant polynomial)");
  return p.coefficient(Monomial{});
}

}  // namespace detail

/// Q_alpha = (f, f, P_beta P_gamma)^{011} and its beta/gamma analogues.
template <RingScalar S>
MultiPoly<S> q_concomitant(const MultiPoly<S>& f, Greek which) {
  const auto pa = absolute_invariant<S>(Greek::alpha);
  const auto pb = absolute_invariant<S>(Greek::beta);
  const auto pc = absolute_invariant<S>(Greek::gamma);
  switch (which) {
    case Greek::alpha: return transvectant(f, f, pb * pc, {{0, 1, 1}, {}});
    case Greek::beta: return transvectant(f, f, pa * pc, {{1, 0, 1}, {}});
    case Greek::gamma: break;
  }
  return transvectant(f, f, pa * pb, {{1, 1, 0}, {}});
}

/// B_alpha = (f, f, f)^{011}, etc.
template <RingScalar S>
MultiPoly<S> b_concomitant(const MultiPoly<S>& f, Greek which) {
  switch (which) {
    case Greek::alpha: return transvectant(f, f, f, {{0, 1, 1}, {}});
    case Greek::beta: return transvectant(f, f, f, {{1, 0, 1}, {}});
    case Greek::gamma: break;
  }
  return transvectant(f, f, f, {{1, 1, 0}, {}});
}

/// E_alpha = (Q_alpha, f, P_alpha)^{100}, etc.
template <RingScalar S>
MultiPoly<S> e_concomitant(const MultiPoly<S>& f, const MultiPoly<S>& q, Greek which) {
  const auto p = absolute_invariant<S>(which);
  switch (which) {
    case Greek::alpha: return transvectant(q, f, p, {{1, 0, 0}, {}});
    case Greek::beta: return transvectant(q, f, p, {{0, 1, 0}, {}});
    case Greek::gamma: break;
  }
  return transvectant(q, f, p, {{0, 0, 1}, {}});
}

template <RingScalar S>
ConcomitantBundle<S> build_concomitants(const MultiPoly<S>& f) {
  using detail::rational_scalar;
  ConcomitantBundle<S> b;
  b.f = f;
  b.p_alpha = absolute_invariant<S>(Greek::alpha);
  b.p_beta = absolute_invariant<S>(Greek::beta);
  b.p_gamma = absolute_invariant<S>(Greek::gamma);
  const auto& pa = b.p_alpha;
  const auto& pb = b.p_beta;
  const auto& pc = b.p_gamma;

  b.q_alpha = q_concomitant(f, Greek::alpha);
  b.q_beta = q_concomitant(f, Greek::beta);
  b.q_gamma = q_concomitant(f, Greek::gamma);

  b.b_alpha = b_concomitant(f, Greek::alpha);
  b.b_beta = b_concomitant(f, Greek::beta);
  b.b_gamma = b_concomitant(f, Greek::gamma);

  const S quarter = rational_scalar<S>(1, 4);
  const auto fpa = f * pa, fpb = f * pb, fpc = f * pc;
  b.c_alpha_beta = transvectant(f, f, fpb, {{1, 1, 0}, {}}).scaled(quarter);
  b.c_beta_alpha = transvectant(f, f, fpa, {{1, 1, 0}, {}}).scaled(quarter);
  b.c_alpha_gamma = transvectant(f, f, fpc, {{1, 0, 1}, {}}).scaled(quarter);
  b.c_gamma_alpha = transvectant(f, f, fpa, {{1, 0, 1}, {}}).scaled(quarter);
  b.c_beta_gamma = transvectant(f, f, fpc, {{0, 1, 1}, {}}).scaled(quarter);
  b.c_gamma_beta = transvectant(f, f, fpb, {{0, 1, 1}, {}}).scaled(quarter);

  b.d_alpha = transvectant(fpb, fpc, f, {{1, 1, 1}, {}}).scaled(rational_scalar<S>(-2, 1));
  b.d_beta = transvectant(fpa, fpc, f, {{1, 1, 1}, {}}).scaled(rational_scalar<S>(2, 1));
  b.d_gamma = transvectant(fpa, fpb, f, {{1, 1, 1}, {}}).scaled(rational_scalar<S>(-2, 1));

  b.e_alpha = e_concomitant(f, b.q_alpha, Greek::alpha);
  b.e_beta = e_concomitant(f, b.q_beta, Greek::beta);
  b.e_gamma = e_concomitant(f, b.q_gamma, Greek::gamma);

  const S g1 = rational_scalar<S>(-3, 8);
  const S g2 = rational_scalar<S>(5, 16);
  b.g_alpha = transvectant(fpb, fpc, f, {{0, 1, 1}, {}}).scaled(g1) +
              transvectant(fpb * pc, f, f, {{0, 1, 1}, {}}).scaled(g2);
  b.g_beta = transvectant(fpa, fpc, f, {{1, 0, 1}, {}}).scaled(g1) +
             transvectant(fpa * pc, f, f, {{1, 0, 1}, {}}).scaled(g2);
  b.g_gamma = transvectant(fpa, fpb, f, {{1, 1, 0}, {}}).scaled(g1) +
              transvectant(fpa * pb, f, f, {{1, 1, 0}, {}}).scaled(g2);

  b.h = transvectant(fpa, fpb, fpc, {{1, 1, 1}, {}}).scaled(rational_scalar<S>(1, 2));
  return b;
}

ConcomitantBundle<Complex> build_concomitants(const State& s);

/// One syzygy: the constituent terms, which sum to zero identically.
template <RingScalar S>
struct SyzygyTerms {
  std::string name;
  std::vector<MultiPoly<S>> terms;
};

template <RingScalar S>
std::vector<SyzygyTerms<S>> syzygy_terms(const ConcomitantBundle<S>& b) {
  const S three = scalar_from_int<S>(3), six = scalar_from_int<S>(6);
  const S minus_one = scalar_from_int<S>(-1), minus_three = scalar_from_int<S>(-3);
  return {
      {"H+E_a-E_g+D_b*P_b", {b.h, b.e_alpha, -b.e_gamma, b.d_beta * b.p_beta}},
      {"H+E_b-E_a+D_g*P_g", {b.h, b.e_beta, -b.e_alpha, b.d_gamma * b.p_gamma}},
      {"H+E_g-E_b+D_a*P_a", {b.h, b.e_gamma, -b.e_beta, b.d_alpha * b.p_alpha}},
      {"3C_ab-B_g*P_b", {b.c_alpha_beta.scaled(three), (b.b_gamma * b.p_beta).scaled(minus_one)}},
      {"3C_ba-B_g*P_a", {b.c_beta_alpha.scaled(three), (b.b_gamma * b.p_alpha).scaled(minus_one)}},
      {"3C_ag-B_b*P_g", {b.c_alpha_gamma.scaled(three), (b.b_beta * b.p_gamma).scaled(minus_one)}},
      {"3C_ga-B_b*P_a", {b.c_gamma_alpha.scaled(three), (b.b_beta * b.p_alpha).scaled(minus_one)}},
      {"3C_bg-B_a*P_g", {b.c_beta_gamma.scaled(three), (b.b_alpha * b.p_gamma).scaled(minus_one)}},
      {"3C_gb-B_a*P_b", {b.c_gamma_beta.scaled(three), (b.b_alpha * b.p_beta).scaled(minus_one)}},
      {"6G_a-3Q_a*f+B_a*P_b*P_g",
       {b.g_alpha.scaled(six), (b.q_alpha * b.f).scaled(minus_three), b.b_alpha * b.p_beta * b.p_gamma}},
      {"6G_b-3Q_b*f+B_b*P_a*P_g",
       {b.g_beta.scaled(six), (b.q_beta * b.f).scaled(minus_three), b.b_beta * b.p_alpha * b.p_gamma}},
      {"6G_g-3Q_g*f+B_g*P_a*P_b",
       {b.g_gamma.scaled(six), (b.q_gamma * b.f).scaled(minus_three), b.b_gamma * b.p_alpha * b.p_beta}},
  };
}

struct SyzygyResidual {
  std::string name;
  double residual = 0.0;  // |sum of terms| / max |term|, 0 when every term vanishes
  double largest_term = 0.0;
};

/// Evaluates the twelve syzygies at a seeded random point of all 18 variables.
std::vector<SyzygyResidual> syzygy_residuals(const State& s, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Invariants

/// Which third factor enters the degree-9 transvectant (E_a, E_b, E_?)^{111}_{111}.
enum class I9Variant { e_beta, e_gamma };

/// (Q_a, Q_a, Q_a)^{200}_{011} and its beta/gamma forms, unscaled.
template <RingScalar S>
S raw_i6(const MultiPoly<S>& f, Greek which = Greek::alpha) {
  const auto q = q_concomitant(f, which);
  switch (which) {
    case Greek::alpha: return detail::constant_term(transvectant(q, q, q, {{2, 0, 0}, {0, 1, 1}}));
    case Greek::beta: return detail::constant_term(transvectant(q, q, q, {{0, 2, 0}, {1, 0, 1}}));
    case Greek::gamma: break;
  }
  return detail::constant_term(transvectant(q, q, q, {{0, 0, 2}, {1, 1, 0}}));
}

/// (f^2, f^2, f^2)^{222}, unscaled.
template <RingScalar S>
S raw_i6_ground(const MultiPoly<S>& f) {
  const auto f2 = f * f;
  return detail::constant_term(transvectant(f2, f2, f2, {{2, 2, 2}, {}}));
}

template <RingScalar S>
S raw_i9(const MultiPoly<S>& f, I9Variant variant) {
  const auto ea = e_concomitant(f, q_concomitant(f, Greek::alpha), Greek::alpha);
  const auto eb = e_concomitant(f, q_concomitant(f, Greek::beta), Greek::beta);
  if (variant == I9Variant::e_beta) return detail::constant_term(transvectant(ea, eb, eb, {{1, 1, 1}, {1, 1, 1}}));
  const auto eg = e_concomitant(f, q_concomitant(f, Greek::gamma), Greek::gamma);
  return detail::constant_term(transvectant(ea, eb, eg, {{1, 1, 1}, {1, 1, 1}}));
}

/// (B_a f, B_a f, B_a f)^{411}, unscaled.
template <RingScalar S>
S raw_i12(const MultiPoly<S>& f) {
  const auto bf = b_concomitant(f, Greek::alpha) * f;
  return detail::constant_term(transvectant(bf, bf, bf, {{4, 1, 1}, {}}));
}

/// Fitted normalization constants. Every invariant is scale * raw value.
struct Calibration {
  Rational i6_scale;
  Rational i6_ground_scale;
  Rational i9_scale;
  I9Variant i9_variant = I9Variant::e_gamma;
  Rational i12_scale;
  Rational i18_per_aronhold_t;  // I18 = this * T(slice cubic)
  Rational aronhold_s_scale;    // S = this * (abc)(abd)(acd)(bcd)
  Rational aronhold_t_scale;    // T = this * (abc)(abd)(ace)(bcf)(def)^2
  Rational c12_prime_scale;
  Rational delta_per_c9_squared;   // a^3 - 3ab + 2c = this * C9^2
  Rational jacobian_per_c12_prime_squared;
  // Nominal constants, kept for comparison in the report.
  Rational i6_nominal{1, 96};
  Rational i6_ground_nominal{1, 1152};
  Rational i9_nominal{1, 576};
  Rational i12_nominal{1, 124416};
  // Exact confirmations at a second normal form, by name.
  std::vector<std::pair<std::string, bool>> checks;
};

/// Runs the exact calibration against the closed formulas on normal forms.
Calibration calibrate();

/// The process-wide calibration, computed on first use and immutable after.
const Calibration& calibration();

/// {"constant_name": value} with exact values as "p/q" strings.
std::string calibration_report_json(const Calibration& c);

struct InvariantSet {
  Complex i6{};
  Complex i9{};
  Complex i12{};
  Complex i18{};
  Complex delta{};
};

/// Evaluated after a few local filtering steps toward the balanced point of
/// the orbit, which keeps the invariants and improves conditioning.
InvariantSet invariants(const State& s);

/// Direct evaluation on s itself.
InvariantSet invariants_unbalanced(const State& s);

/// Aronhold S and T of a slice cubic of s.
AronholdPair<Complex> slice_aronhold(const State& s, Axis axis);

struct SemistabilityReport {
  bool semistable = false;
  std::string witness;  // "I6", "I9", "I12" or empty
};

SemistabilityReport is_semistable(const State& s, double tol = 1e-6);
SemistabilityReport is_semistable(const InvariantSet& inv, double norm, double tol = 1e-6);

/// Canonical representative of (I6 : I9 : I12) in P(6, 9, 12).
struct WeightedPoint {
  Complex i6{};
  Complex i9{};
  Complex i12{};
};

WeightedPoint projective_point(const State& s);
WeightedPoint projective_point(const InvariantSet& inv, double norm);

}  // namespace trimoduli
