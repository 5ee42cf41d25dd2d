#include <doctest.h>

#include "test_support.hpp"
#include "trimoduli/c_formulas.hpp"
#include "trimoduli/form_problem.hpp"
#include "trimoduli/reflection_group.hpp"

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <chrono>
#include <sstream>

using namespace trimoduli;
using namespace trimoduli::testing;

namespace {

// Roots of c[0] x^n + ... + c[n] from the companion matrix.
std::vector<Complex> companion_roots(const std::vector<Complex>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -c[static_cast<std::size_t>(n - i)] / c[0];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

// Largest distance under greedy nearest matching.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0.0;
  for (Complex z : a) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < b.size(); ++i)
      if (std::abs(b[i] - z) < std::abs(b[best] - z)) best = i;
    worst = std::max(worst, std::abs(b[best] - z));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

Complex eval_poly(const std::vector<Complex>& c, Complex x) {
  Complex r = 0.0;
  for (Complex k : c) r = r * x + k;
  return r;
}

double max_abs(const std::vector<Complex>& c) {
  double m = 0.0;
  for (Complex k : c) m = std::max(m, std::abs(k));
  return m;
}

Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

FormProblemInput input_of(const ParameterTriple& t, bool with_i9 = true) {
  const CValues cv = c_formulas(t);
  FormProblemInput in;
  in.a = cv.c6;
  in.b = cv.c12;
  in.c = cv.c18;
  if (with_i9) in.i9 = cv.c9;
  return in;
}

FormProblemInput input_of(Complex a, Complex b, Complex c, std::optional<Complex> i9) {
  FormProblemInput in;
  in.a = a;
  in.b = b;
  in.c = c;
  in.i9 = i9;
  return in;
}

bool contains(const std::vector<ParameterTriple>& set, const ParameterTriple& t, double tol) {
  for (const auto& p : set)
    if (std::abs(p.u - t.u) + std::abs(p.v - t.v) + std::abs(p.w - t.w) < tol) return true;
  return false;
}

void check_reproduction(const Classification& cl) {
  const auto& in = cl.input;
  const double scale = 1.0 + std::abs(in.a) + std::abs(in.b) + std::abs(in.c);
  const double tol = 1e-8 * scale;
  const Complex c9sq = cl.orbit_class.delta / 432.0;
  for (const auto& t : cl.solutions.triples) {
    const CValues cv = c_formulas(t);
    CHECK(std::abs(cv.c6 - in.a) < tol);
    CHECK(std::abs(cv.c12 - in.b) < tol);
    CHECK(std::abs(cv.c18 - in.c) < tol);
    CHECK(rel_err_floor(cv.c9 * cv.c9, c9sq, 1e-8 * scale) < 1e-8);
  }
}

}  // namespace

TEST_CASE("cubic and quartic solvers against the companion matrix") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<Complex, 4> c3;
    for (auto& z : c3) z = random_complex(rng);
    const std::vector<Complex> v3(c3.begin(), c3.end());
    const auto r3 = solve_cubic_radicals(c3);
    REQUIRE(r3.size() == 3);
    for (Complex z : r3) CHECK(std::abs(eval_poly(v3, z)) < 1e-9 * max_abs(v3));
    CHECK(multiset_distance(r3, companion_roots(v3)) < 1e-8);

    std::array<Complex, 5> c4;
    for (auto& z : c4) z = random_complex(rng);
    const std::vector<Complex> v4(c4.begin(), c4.end());
    const auto r4 = solve_quartic_radicals(c4);
    REQUIRE(r4.size() == 4);
    for (Complex z : r4) CHECK(std::abs(eval_poly(v4, z)) < 1e-9 * max_abs(v4));
    CHECK(multiset_distance(r4, companion_roots(v4)) < 1e-8);
  }
}

TEST_CASE("solver examples") {
  // Cube roots of unity.
  const auto r = solve_cubic_radicals({1.0, 0.0, 0.0, -1.0});
  const Complex e = std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0);
  CHECK(multiset_distance(r, {1.0, e, e * e}) < 1e-14);

  // 27 X^4 - 18 X^2 - 8 X - 1 = 27 (X - 1)(X + 1/3)^3.
  const auto q = merge_root_clusters(solve_quartic_radicals({27.0, 0.0, -18.0, -8.0, -1.0}));
  CHECK(multiset_distance(q, {1.0, -1.0 / 3, -1.0 / 3, -1.0 / 3}) < 1e-12);
  for (Complex qv : {Complex(2.0, 0.0), Complex(0.3, -1.1)}) {
    const Complex q2 = qv * qv, q4 = q2 * q2;
    const auto rq = merge_root_clusters(solve_quartic_radicals({27.0, 0.0, -18.0 * q4, -8.0 * q4 * q2, -q4 * q4}));
    CHECK(multiset_distance(rq, {q2, -q2 / 3.0, -q2 / 3.0, -q2 / 3.0}) < 1e-9 * std::abs(q2));
  }

  // b = 0: X (27 X^3 - 8 c).
  const Complex c = {0.7, 0.4};
  const auto rb = solve_quartic_radicals({27.0, 0.0, 0.0, -8.0 * c, 0.0});
  REQUIRE(rb.size() == 4);
  int zeros = 0;
  for (Complex z : rb) {
    if (std::abs(z) < 1e-12)
      ++zeros;
    else
      CHECK(std::abs(z * z * z - 8.0 * c / 27.0) < 1e-12);
  }
  CHECK(zeros == 1);

  // Degree reduction.
  CHECK(solve_cubic_radicals({0.0, 1.0, -3.0, 2.0}).size() == 2);
  CHECK(solve_quartic_radicals({0.0, 0.0, 0.0, 2.0, -4.0}).size() == 1);
}

TEST_CASE("merge_root_clusters") {
  const auto m = merge_root_clusters({1.0, 1.0 + 1e-7, Complex(1.0, -1e-7), 5.0});
  REQUIRE(m.size() == 4);
  CHECK(std::count(m.begin(), m.end(), m[0]) + std::count(m.begin(), m.end(), 5.0) == 4);
  const auto keep = merge_root_clusters({1.0, 2.0, 3.0});
  CHECK(multiset_distance(keep, {1.0, 2.0, 3.0}) == 0.0);
}

TEST_CASE("psi system examples") {
  const auto b12 = solve_psi_system(input_of(12.0, 0.0, 0.0, std::nullopt));
  REQUIRE(b12.size() == 1);
  CHECK(b12[0].psi == Complex{});
  CHECK(b12[0].lambda == Complex{});
  CHECK(std::abs(b12[0].chi + 1.0) < 1e-15);

  const auto b0 = solve_psi_system(input_of(0.0, 0.0, 0.0, std::nullopt));
  REQUIRE(b0.size() == 1);
  CHECK(b0[0].psi == Complex{});
  CHECK(b0[0].chi == Complex{});

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const FormProblemInput in = input_of(random_triple(seed));
    const auto br = solve_psi_system(in);
    CHECK(br.size() == 8);
    for (const auto& b : br) {
      const auto res = branch_residuals(b, in);
      CHECK(res[0] < 1e-9 * (1.0 + std::abs(in.a)));
      CHECK(res[1] < 1e-9 * (1.0 + std::abs(in.b)));
      CHECK(res[2] < 1e-9 * (1.0 + std::abs(in.c)));
      CHECK(std::abs(b.e3 - b.lambda / 216.0) == 0.0);
    }
  }
}

TEST_CASE("raw enumeration counts") {
  const auto in12 = input_of(12.0, 0.0, 0.0, std::nullopt);
  const auto raw12 = enumerate_triples(solve_psi_system(in12), in12);
  CHECK(raw12.raw_count == 54);
  CHECK(raw12.triples.size() == 54);
  const auto f12 = filter_sign(raw12, -2.0);
  CHECK(f12.triples.size() == 27);
  CHECK(contains(f12.triples, {1.0, -1.0, 0.0}, 1e-9));
  CHECK_FALSE(contains(f12.triples, {-1.0, 1.0, 0.0}, 1e-9));

  const auto in0 = input_of(0.0, 0.0, 0.0, std::nullopt);
  const auto raw0 = enumerate_triples(solve_psi_system(in0), in0);
  CHECK(raw0.triples.size() == 1);
  CHECK(filter_sign(raw0, 0.0).triples.size() == 1);

  const FormProblemInput g = input_of(random_triple(3));
  const auto rawg = enumerate_triples(solve_psi_system(g), g);
  CHECK(rawg.triples.size() == 1296);
  CHECK(filter_sign(rawg, *g.i9).triples.size() == 648);
  CHECK(std::is_sorted(rawg.triples.begin(), rawg.triples.end(), [](const auto& x, const auto& y) {
    return std::make_tuple(x.u.real(), x.u.imag(), x.v.real(), x.v.imag(), x.w.real(), x.w.imag()) <
           std::make_tuple(y.u.real(), y.u.imag(), y.v.real(), y.v.imag(), y.w.real(), y.w.imag());
  }));
}

TEST_CASE("inconsistent sign datum") {
  const auto in12 = input_of(12.0, 0.0, 0.0, std::nullopt);
  const auto raw = enumerate_triples(solve_psi_system(in12), in12);
  CHECK_THROWS_AS(filter_sign(raw, 5.0), InconsistentInvariantsError);
  CHECK_THROWS_AS(classify(input_of(12.0, 0.0, 0.0, Complex(5.0))), InconsistentInvariantsError);
}

TEST_CASE("stratum counts") {
  struct Case {
    Complex a, b, c;
    std::optional<Complex> i9;
    std::size_t count;
    const char* polytope;
    const char* stabilizer;
  };
  const std::vector<Case> cases = {
      {12.0, 0.0, 0.0, -2.0, 27, "hessian-vertices", "G4"},
      {0.0, 0.0, 0.0, 0.0, 1, "origin", "full"},
      {1.0, 1.0, 1.0, 0.0, 72, "hessian-edge-centers", "C3xC3"},
      {1.0, 0.25, -0.125, 0.0, 216, "edges-2{4}3{3}3", "C3"},
      {13.0, -215.0, -5291.0, 0.0, 648, "generic", "trivial"},
      {1.0, 0.0, 2.0, std::nullopt, 648, "generic", "trivial"},
  };
  for (const auto& k : cases) {
    CAPTURE(k.a);
    CAPTURE(k.b);
    CAPTURE(k.c);
    const auto start = std::chrono::steady_clock::now();
    const auto cl = classify(input_of(k.a, k.b, k.c, k.i9));
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 5.0);
    const auto& oc = cl.orbit_class;
    CHECK(oc.count == k.count);
    CHECK(oc.polytope_label == k.polytope);
    CHECK(oc.stabilizer_label == k.stabilizer);
    CHECK(oc.count * oc.stabilizer_order == 648);
    CHECK(oc.case_tree_agrees);
    check_reproduction(cl);
  }
}

TEST_CASE("delta vanishes on N(1,1,-1) exactly") {
  CHECK(cubic_delta(Rational(13), Rational(-215), Rational(-5291)) == Rational(0));
  CHECK(cubic_delta(Rational(1), Rational(1), Rational(1)) == Rational(0));
  const CValues cv = c_formulas({1.0, 1.0, -1.0});
  CHECK(std::abs(cv.c6 - 13.0) < 1e-12);
  CHECK(std::abs(cv.c12 + 215.0) < 1e-10);
  CHECK(std::abs(cv.c18 + 5291.0) < 1e-9);
  const auto cl = classify(input_of(13.0, -215.0, -5291.0, 0.0));
  CHECK(cl.orbit_class.case_path == "D!=0, delta=0");
  CHECK(contains(cl.solutions.triples, {1.0, 1.0, -1.0}, 1e-7));
}

TEST_CASE("form discriminant") {
  CHECK(form_discriminant(Rational(1), Rational(1)) == Rational(0));
  CHECK(form_discriminant(Rational(0), Rational(3)) == Rational(0));
  // b^2 (b^3 - c^2)^4 at b = 2, c = 1: 4 * 7^4.
  CHECK(form_discriminant(Rational(2), Rational(1)) == Rational(4 * 2401));
  CHECK(std::abs(form_discriminant(Complex(2.0), Complex(1.0)) - 9604.0) < 1e-9);
}

TEST_CASE("stratum of (1,2,0) has C3 stabilizer") {
  const auto cl = classify(input_of({1.0, 2.0, 0.0}));
  CHECK(cl.orbit_class.count == 216);
  CHECK(cl.orbit_class.stabilizer_label == "C3");
  CHECK(contains(cl.solutions.triples, {1.0, 2.0, 0.0}, 1e-7));
  check_reproduction(cl);
}

TEST_CASE("missing i9 is inferred") {
  const auto cl = classify(input_of(random_triple(4), false));
  CHECK(cl.i9_inferred);
  CHECK(cl.orbit_class.count == 648);
  check_reproduction(cl);
}

TEST_CASE("round trip on random triples") {
  const auto& k = group_k();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    const ParameterTriple t = random_triple(seed);
    const auto cl = classify(input_of(t));
    const auto& sol = cl.solutions.triples;
    CHECK(sol.size() == 648);
    CHECK(contains(sol, t, 1e-7));
    const auto o = orbit(k, t);
    CHECK(max_point_to_set_distance(o, sol) < 1e-6);
    CHECK(max_point_to_set_distance(sol, o) < 1e-6);
    check_reproduction(cl);
  }
}

TEST_CASE("snapping small invariants") {
  const auto s = snap_small_invariants(input_of(1.0, 1e-14, 1e-15, Complex(1e-13)));
  CHECK(s.b == Complex{});
  CHECK(s.c == Complex{});
  CHECK(*s.i9 == Complex{});
  CHECK(s.a == Complex(1.0));
  CHECK(weighted_magnitude(input_of(64.0, 0.0, 0.0, std::nullopt)) == doctest::Approx(2.0));
}

TEST_CASE("configurations") {
  const std::vector<std::pair<ConfigurationCase, std::size_t>> cases = {
      {ConfigurationCase::hessian_vertices, 27},
      {ConfigurationCase::hessian_edge_centers, 72},
      {ConfigurationCase::edges_24333, 216},
  };
  for (const auto& [c, n] : cases) {
    const auto e = emit_configuration(c);
    CHECK(e.points.size() == n);
    CHECK(e.single_orbit);
    std::istringstream lines(e.csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "re_u,im_u,re_v,im_v,re_w,im_w");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
      CHECK(std::count(line.begin(), line.end(), ',') == 5);
      ++rows;
    }
    CHECK(rows == n);
    CHECK(parse_configuration_case(configuration_case_name(c)) == c);
  }
  CHECK_FALSE(parse_configuration_case("icosahedron"));
  const auto scaled = emit_configuration(ConfigurationCase::hessian_vertices, Complex(2.0, 0.5));
  CHECK(scaled.points.size() == 27);
  CHECK(scaled.single_orbit);
}

TEST_CASE("classification JSON") {
  const auto cl = classify(input_of(12.0, 0.0, 0.0, -2.0));
  const auto j = nlohmann::json::parse(classification_to_json(cl, true));
  for (const char* key : {"a", "b", "c", "i9", "D", "delta", "count", "polytope_label", "stabilizer_label"})
    CHECK(j.contains(key));
  CHECK(j["count"] == 27);
  CHECK(j["polytope_label"] == "hessian-vertices");
  CHECK(j["stabilizer_label"] == "G4");
  CHECK(j["a"][0] == 12.0);
  CHECK(j["triples"].size() == 27);
  CHECK_FALSE(nlohmann::json::parse(classification_to_json(cl)).contains("triples"));
}

TEST_CASE("polytope labels") {
  CHECK(polytope_label_for_count(648) == "generic");
  CHECK(polytope_label_for_count(216) == "edges-2{4}3{3}3");
  CHECK(polytope_label_for_count(72) == "hessian-edge-centers");
  CHECK(polytope_label_for_count(27) == "hessian-vertices");
  CHECK(polytope_label_for_count(1) == "origin");
  CHECK(polytope_label_for_count(5) == "unclassified");
}
