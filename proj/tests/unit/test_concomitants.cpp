#include <doctest.h>

#include "test_support.hpp"
#include "trimoduli/concomitants.hpp"

#include <json.hpp>

using namespace trimoduli;
using namespace trimoduli::testing;

namespace {

std::array<Rational, 27> integer_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-3, 3);
  std::array<Rational, 27> a;
  for (auto& x : a) x = d(rng);
  return a;
}

struct Profile {
  int x, y, z, xi, eta, zeta;
};

template <RingScalar S>
void check_profile(const MultiPoly<S>& p, Profile want) {
  REQUIRE_FALSE(p.is_zero());
  CHECK(p.degree(Group::x) == want.x);
  CHECK(p.degree(Group::y) == want.y);
  CHECK(p.degree(Group::z) == want.z);
  CHECK(p.degree(Group::xi) == want.xi);
  CHECK(p.degree(Group::eta) == want.eta);
  CHECK(p.degree(Group::zeta) == want.zeta);
}

// Relative error scaled by the weighted size of the triple, for values that
// can vanish.
double weighted_rel(Complex got, Complex want, const ParameterTriple& t, int weight) {
  const double r = std::max({std::abs(t.u), std::abs(t.v), std::abs(t.w)});
  return rel_err_floor(got, want, std::pow(r, weight));
}

}  // namespace

TEST_CASE("normal form invariant examples") {
  const InvariantSet n100 = invariants(normal_form_state({1, 0, 0}));
  CHECK(std::abs(n100.i6 - Complex(1)) < 1e-12);
  CHECK(std::abs(n100.i9) < 1e-12);
  CHECK(std::abs(n100.i12 - Complex(1)) < 1e-12);
  const InvariantSet n111 = invariants(normal_form_state({1, 1, 1}));
  CHECK(std::abs(n111.i6 - Complex(-27)) < 1e-10);
  CHECK(std::abs(n111.i12 - Complex(729)) < 1e-8);
  const InvariantSet prod = invariants(State::basis(0, 0, 0));
  CHECK(std::abs(prod.i6) == 0.0);
  CHECK(std::abs(prod.i9) == 0.0);
  CHECK(std::abs(prod.i12) == 0.0);
}

TEST_CASE("homogeneity") {
  const State s = random_state(21);
  const InvariantSet a = invariants(s), b = invariants(s.scaled(2.0));
  CHECK(rel_err(b.i6, 64.0 * a.i6) < 1e-12);
  CHECK(rel_err(b.i9, 512.0 * a.i9) < 1e-12);
  CHECK(rel_err(b.i12, 4096.0 * a.i12) < 1e-12);
  CHECK(rel_err(b.i18, std::pow(2.0, 18) * a.i18) < 1e-12);
  CHECK(rel_err(b.delta, std::pow(2.0, 36) * a.delta) < 1e-12);
  const Complex t(0.7, -1.3);
  const InvariantSet c = invariants(s.scaled(t));
  CHECK(rel_err(c.i9, std::pow(t, 9) * a.i9) < 1e-12);
}

TEST_CASE("exact normal-form specialization") {
  const Calibration& cal = calibration();
  for (const auto& [name, ok] : cal.checks) {
    CAPTURE(name);
    CHECK(ok);
  }
  CHECK(cal.i6_scale == Rational(1, 96));
  CHECK(cal.i6_ground_scale == Rational(1, 1152));
  CHECK(cal.i9_scale == Rational(1, 576));
  CHECK(cal.i12_scale == Rational(-1, 124416));
  CHECK(cal.i18_per_aronhold_t == Rational(-5832));
  CHECK(cal.delta_per_c9_squared == Rational(432));
  // Independent exact evaluation at a third normal form.
  const Rational u(2), v(-1), w(3);
  const auto f = trilinear_form(normal_form_amplitudes(u, v, w));
  CHECK(cal.i6_scale * raw_i6(f) == c6_value(u, v, w));
  CHECK(cal.i9_scale * raw_i9(f, cal.i9_variant) == c9_value(u, v, w));
}

TEST_CASE("calibration report is machine readable") {
  const auto j = nlohmann::json::parse(calibration_report_json(calibration()));
  CHECK(j.contains("i6_scale"));
  CHECK(j.contains("i12_scale"));
  CHECK(j.contains("i18_per_aronhold_t"));
  CHECK(j.contains("c12_prime_scale"));
}

TEST_CASE("specialization to the C formulas at random triples") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ParameterTriple t = random_triple(seed);
    const InvariantSet inv = invariants(normal_form_state(t));
    const CValues cv = c_formulas(t);
    CHECK(weighted_rel(inv.i6, cv.c6, t, 6) < 1e-9);
    CHECK(weighted_rel(inv.i9, cv.c9, t, 9) < 1e-9);
    CHECK(weighted_rel(inv.i12, cv.c12, t, 12) < 1e-9);
    CHECK(weighted_rel(inv.i18, cv.c18, t, 18) < 1e-9);
  }
}

TEST_CASE("SLOCC invariance") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const State s = random_state(100 + seed);
    const InvariantSet a = invariants(s);
    for (std::uint64_t k = 0; k < 10; ++k) {
      const InvariantSet b = invariants(apply_local(s, random_local_transform(seed * 1000 + k)));
      CHECK(rel_err(a.i6, b.i6) < 1e-8);
      CHECK(rel_err(a.i9, b.i9) < 1e-8);
      CHECK(rel_err(a.i12, b.i12) < 1e-8);
      CHECK(rel_err(a.i18, b.i18) < 1e-8);
    }
  }
}

TEST_CASE("balanced and direct evaluation agree") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const State s = random_state(seed);
    const InvariantSet a = invariants(s), b = invariants_unbalanced(s);
    CHECK(rel_err(a.i6, b.i6) < 1e-10);
    CHECK(rel_err(a.i9, b.i9) < 1e-10);
    CHECK(rel_err(a.i12, b.i12) < 1e-10);
    CHECK(rel_err(a.i18, b.i18) < 1e-10);
    CHECK(rel_err(a.delta, b.delta) < 1e-10);
  }
}

TEST_CASE("dual sextic formulas agree") {
  const Calibration& cal = calibration();
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto f = trilinear_form(random_state(seed));
    const Complex a = cal.i6_scale.get_d() * raw_i6(f, Greek::alpha);
    CHECK(rel_err(a, cal.i6_scale.get_d() * raw_i6(f, Greek::beta)) < 1e-10);
    CHECK(rel_err(a, cal.i6_scale.get_d() * raw_i6(f, Greek::gamma)) < 1e-10);
    CHECK(rel_err(a, cal.i6_ground_scale.get_d() * raw_i6_ground(f)) < 1e-10);
  }
}

TEST_CASE("concomitant degree profiles") {
  const auto b = build_concomitants(random_state(5));
  check_profile(b.q_alpha, {2, 0, 0, 0, 1, 1});
  check_profile(b.q_beta, {0, 2, 0, 1, 0, 1});
  check_profile(b.q_gamma, {0, 0, 2, 1, 1, 0});
  check_profile(b.b_alpha, {3, 0, 0, 0, 0, 0});
  check_profile(b.b_beta, {0, 3, 0, 0, 0, 0});
  check_profile(b.b_gamma, {0, 0, 3, 0, 0, 0});
  check_profile(b.c_alpha_beta, {0, 1, 3, 0, 1, 0});
  check_profile(b.c_gamma_beta, {3, 1, 0, 0, 1, 0});
  check_profile(b.d_alpha, {0, 1, 1, 0, 1, 1});
  check_profile(b.d_beta, {1, 0, 1, 1, 0, 1});
  check_profile(b.d_gamma, {1, 1, 0, 1, 1, 0});
  check_profile(b.e_alpha, {1, 1, 1, 1, 1, 1});
  check_profile(b.e_beta, {1, 1, 1, 1, 1, 1});
  check_profile(b.g_alpha, {3, 1, 1, 0, 1, 1});
  check_profile(b.g_gamma, {1, 1, 3, 1, 1, 0});
  check_profile(b.h, {1, 1, 1, 1, 1, 1});
}

TEST_CASE("zero state has zero concomitants") {
  const auto b = build_concomitants(State());
  for (const auto* p : {&b.q_alpha, &b.b_alpha, &b.c_alpha_beta, &b.d_alpha, &b.e_alpha, &b.g_alpha, &b.h})
    CHECK(p->is_zero());
  for (const auto& r : syzygy_residuals(State(), 1)) CHECK(r.residual == 0.0);
}

TEST_CASE("B_alpha at N_100") {
  const auto f = trilinear_form(normal_form_amplitudes<Rational>(Rational(1), Rational(0), Rational(0)));
  auto cat = Catalog::single_slot();
  auto x = [&](int i) { return MultiPoly<Rational>::variable(cat, VariableRef{Group::x, i, 1}); };
  CHECK(b_concomitant(f, Greek::alpha) == (x(1) * x(2) * x(3)).scaled(Rational(6)));
}

TEST_CASE("syzygies hold identically in exact arithmetic") {
  for (std::uint64_t seed : {1u, 2u}) {
    const auto b = build_concomitants(trilinear_form(integer_state(seed)));
    for (const auto& syz : syzygy_terms(b)) {
      CAPTURE(syz.name);
      MultiPoly<Rational> sum(Catalog::single_slot());
      bool any = false;
      for (const auto& t : syz.terms) {
        sum += t;
        any = any || !t.is_zero();
      }
      CHECK(any);
      CHECK(sum.is_zero());
    }
  }
}

TEST_CASE("syzygy residuals on random and scaled states") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const State s = random_state(seed);
    const auto res = syzygy_residuals(s, seed + 50);
    REQUIRE(res.size() == 12);
    for (const auto& r : res) {
      CAPTURE(r.name);
      CHECK(r.residual < 1e-9);
      CHECK(r.largest_term > 0.0);
    }
    for (const auto& r : syzygy_residuals(s.scaled(Complex(3.0, 1.0)), seed + 50)) CHECK(r.residual < 1e-9);
  }
}

TEST_CASE("Aronhold invariants of reference cubics") {
  const auto fermat = aronhold(hesse_cubic(Rational(-1), Rational(0)));
  CHECK(fermat.S == Rational(0));
  CHECK(fermat.T == Rational(1));
  CHECK(Rational(64) * fermat.S * fermat.S * fermat.S + fermat.T * fermat.T == Rational(1));
  const auto tri = aronhold(hesse_cubic(Rational(0), Rational(1)));
  CHECK(tri.S == Rational(-1, 1296));
  CHECK(Rational(46656) * tri.T == Rational(-8));
  CHECK(cubic_discriminant(tri) == Rational(0));
}

TEST_CASE("discriminant vanishes exactly on singular cubics") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> d(-4, 4);
  const std::vector<std::array<int, 3>> all = {{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {2, 1, 0}, {2, 0, 1},
                                               {1, 2, 0}, {0, 2, 1}, {1, 0, 2}, {0, 1, 2}, {1, 1, 1}};
  int smooth = 0;
  for (int t = 0; t < 20; ++t) {
    TernaryCubic<Rational> sing, generic;
    sing.tensor.fill(Rational(0));
    generic.tensor.fill(Rational(0));
    for (const auto& e : all) {
      const Rational c = d(rng);
      generic.add_monomial(e, c);
      // No x3^3, x1 x3^2, x2 x3^2: singular at (0, 0, 1).
      if (e[2] < 2) sing.add_monomial(e, c);
    }
    CHECK(cubic_discriminant(aronhold(sing)) == Rational(0));
    smooth += cubic_discriminant(aronhold(generic)) != Rational(0) ? 1 : 0;
  }
  CHECK(smooth >= 18);
  // The cusp x2^2 x3 - x1^3.
  TernaryCubic<Rational> cusp;
  cusp.tensor.fill(Rational(0));
  cusp.add_monomial({0, 2, 1}, Rational(1));
  cusp.add_monomial({3, 0, 0}, Rational(-1));
  CHECK(cubic_discriminant(aronhold(cusp)) == Rational(0));
}

TEST_CASE("Hesse closed forms for S and T") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int t = 0; t < 20; ++t) {
    const Rational phi = d(rng), psi = d(rng);
    const auto st = aronhold(hesse_cubic(phi, psi));
    const Rational p6 = 6 * phi;
    CHECK(Rational(1296) * st.S == -psi * (psi * psi * psi + p6 * p6 * p6));
    CHECK(Rational(46656) * st.T == p6 * p6 * p6 * p6 * p6 * p6 + 20 * p6 * p6 * p6 * psi * psi * psi - 8 * psi * psi * psi * psi * psi * psi);
  }
}

TEST_CASE("slice cubics share S and T; 6^4 S = -I12") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const State s = random_state(seed);
    const auto x = slice_aronhold(s, Axis::x);
    for (Axis a : {Axis::y, Axis::z}) {
      const auto o = slice_aronhold(s, a);
      CHECK(rel_err(x.S, o.S) < 1e-9);
      CHECK(rel_err(x.T, o.T) < 1e-9);
    }
    CHECK(rel_err(1296.0 * x.S, -invariants(s).i12) < 1e-9);
  }
}

TEST_CASE("Delta equals C'12 cubed on normal forms") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ParameterTriple t = random_triple(seed);
    const Complex cp = c_formulas(t).c12_prime;
    CHECK(weighted_rel(invariants(normal_form_state(t)).delta, cp * cp * cp, t, 36) < 1e-9);
  }
}

TEST_CASE("C formula examples") {
  const CValues a = c_formulas({1, 1, 1});
  CHECK(std::abs(a.c6 - Complex(-27)) < 1e-12);
  CHECK(std::abs(a.c9) < 1e-12);
  CHECK(std::abs(a.c12 - Complex(729)) < 1e-12);
  const CValues b = c_formulas({1, -1, 0});
  CHECK(std::abs(b.c6 - Complex(12)) < 1e-12);
  CHECK(std::abs(b.c9 - Complex(-2)) < 1e-12);
  CHECK(std::abs(b.c12) < 1e-12);
  CHECK(std::abs(b.c18) < 1e-12);
  CHECK(std::abs(b.c12_prime) < 1e-12);
  // Exact values.
  CHECK(c6_value(Rational(1), Rational(1), Rational(1)) == Rational(-27));
  CHECK(c12_value(Rational(1), Rational(1), Rational(1)) == Rational(729));
  CHECK(c9_value(Rational(1), Rational(-1), Rational(0)) == Rational(-2));
}

TEST_CASE("C6 and C12 in terms of psi, chi, lambda") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ParameterTriple t = random_triple(seed);
    const Complex u3 = std::pow(t.u, 3), v3 = std::pow(t.v, 3), w3 = std::pow(t.w, 3);
    const Complex psi = u3 + v3 + w3;
    const Complex chi = u3 * v3 + v3 * w3 + w3 * u3;
    const Complex lambda = 216.0 * std::pow(t.u * t.v * t.w, 3);
    const CValues cv = c_formulas(t);
    CHECK(weighted_rel(cv.c6, psi * psi - 12.0 * chi, t, 6) < 1e-12);
    CHECK(weighted_rel(cv.c12, std::pow(psi, 4) + lambda * psi, t, 12) < 1e-12);
  }
}

TEST_CASE("delta identity") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ParameterTriple t = random_triple(seed);
    const CValues cv = c_formulas(t);
    const Complex d = std::pow(cv.c6, 3) - 3.0 * cv.c6 * cv.c12 + 2.0 * cv.c18;
    CHECK(weighted_rel(d, 432.0 * cv.c9 * cv.c9, t, 18) < 1e-9);
  }
}

TEST_CASE("Jacobian is proportional to C'12 squared") {
  const auto first = jacobian_check(random_triple(1));
  REQUIRE(first.ratio.has_value());
  for (std::uint64_t seed = 2; seed <= 20; ++seed) {
    const auto j = jacobian_check(random_triple(seed));
    REQUIRE(j.ratio.has_value());
    CHECK(rel_err(*j.ratio, *first.ratio) < 1e-9);
  }
  CHECK(std::abs(*first.ratio - Complex(209952)) < 1e-6 * 209952);
  const auto mirror = jacobian_check({1, -1, 0});
  CHECK(std::abs(mirror.jacobian) < 1e-12);
  CHECK_FALSE(mirror.ratio.has_value());
  const ParameterTriple t = random_triple(3);
  const Complex s(1.1, 0.4);
  const auto scaled = jacobian_check({s * t.u, s * t.v, s * t.w});
  CHECK(rel_err(scaled.jacobian, std::pow(s, 24) * jacobian_check(t).jacobian) < 1e-10);
}

TEST_CASE("semistability") {
  const auto n = is_semistable(normal_form_state({1, 0, 0}));
  CHECK(n.semistable);
  CHECK(n.witness == "I6");
  CHECK_FALSE(is_semistable(State::basis(0, 0, 0)).semistable);
  CHECK_FALSE(is_semistable(State()).semistable);
  CHECK(is_semistable(random_state(2)).semistable);
}

TEST_CASE("projective point") {
  const WeightedPoint p = projective_point(normal_form_state({1, 0, 0}));
  CHECK(std::abs(p.i6 - Complex(1)) < 1e-12);
  CHECK(std::abs(p.i9) < 1e-12);
  CHECK(std::abs(p.i12 - Complex(1)) < 1e-12);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const State s = random_state(seed);
    const Complex t(0.3 * static_cast<double>(seed), -0.8);
    const WeightedPoint a = projective_point(s), b = projective_point(s.scaled(t));
    CHECK(rel_err(a.i6, b.i6) < 1e-10);
    CHECK(rel_err(a.i9, b.i9) < 1e-10);
    CHECK(rel_err(a.i12, b.i12) < 1e-10);
  }
  CHECK_THROWS_AS(projective_point(State()), std::invalid_argument);
}
