#include <doctest.h>

#include "test_support.hpp"
#include "trimoduli/c_formulas.hpp"
#include "trimoduli/concomitants.hpp"
#include "trimoduli/slocc_normalize.hpp"

#include <json.hpp>

using namespace trimoduli;
using namespace trimoduli::testing;

namespace {

FormProblemInput input_from(const InvariantSet& inv) {
  FormProblemInput in;
  in.a = inv.i6;
  in.b = inv.i12;
  in.c = inv.i18;
  in.i9 = inv.i9;
  return in;
}

// Degree-d values are compared against ||limit||^d where they vanish.
void check_invariants_close(const InvariantSet& x, const InvariantSet& y, double tol, double norm) {
  CHECK(rel_err_floor(x.i6, y.i6, std::pow(norm, 6)) < tol);
  CHECK(rel_err_floor(x.i9, y.i9, std::pow(norm, 9)) < tol);
  CHECK(rel_err_floor(x.i12, y.i12, std::pow(norm, 12)) < tol);
}

bool norms_non_increasing(const IterationTrace& tr) {
  for (std::size_t i = 1; i < tr.steps.size(); ++i)
    if (tr.steps[i].norm_squared > tr.steps[i - 1].norm_squared) return false;
  return true;
}

}  // namespace

TEST_CASE("normal form is a fixed point") {
  const State n = normal_form_state({1.0, 1.0, -1.0});
  const auto res = normalize_slocc(n);
  CHECK(res.trace.status == NormalizeStatus::converged);
  REQUIRE(res.trace.steps.size() == 1);
  CHECK(res.trace.steps[0].step == 0);
  CHECK(res.limit == n);
  for (int p = 1; p <= 3; ++p) CHECK(density_deviation(reduced_density(n, p)) < 1e-15);
}

TEST_CASE("filtered normal form converges back") {
  const State n = normal_form_state({1.0, 1.0, -1.0});
  const State s = apply_local(n, random_local_transform(7));
  const auto res = normalize_slocc(s, 1e-10, 10000);
  REQUIRE(res.trace.status == NormalizeStatus::converged);
  for (int p = 1; p <= 3; ++p) CHECK(density_deviation(reduced_density(res.limit, p)) < 1e-10);
  CHECK(res.limit.norm_squared() <= s.norm_squared());
  check_invariants_close(invariants_unbalanced(res.limit), invariants_unbalanced(s), 1e-6,
                         std::sqrt(res.limit.norm_squared()));
  // The limit sits on the minimal-norm point, which N itself attains.
  CHECK(rel_err(res.limit.norm_squared(), n.norm_squared()) < 1e-8);
}

TEST_CASE("random states: monotone norm, preserved invariants") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    const State s = random_state(seed);
    const auto res = normalize_slocc(s);
    CHECK(res.trace.status == NormalizeStatus::converged);
    CHECK(norms_non_increasing(res.trace));
    CHECK(res.trace.steps.back().deviation < 1e-10);
    check_invariants_close(invariants_unbalanced(res.limit), invariants_unbalanced(s), 1e-6,
                         std::sqrt(res.limit.norm_squared()));
  }
}

TEST_CASE("product state is unstable") {
  const State s = State::basis(1, 1, 1);
  const auto res = normalize_slocc(s);
  CHECK(res.trace.status == NormalizeStatus::unstable);
  CHECK(std::sqrt(res.limit.norm_squared()) < 1e-12);
  CHECK(norms_non_increasing(res.trace));
  const InvariantSet inv = invariants(s);
  CHECK(std::abs(inv.i6) < 1e-12);
  CHECK(std::abs(inv.i9) < 1e-12);
  CHECK(std::abs(inv.i12) < 1e-12);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(normalize_slocc(State{}), std::invalid_argument);
  CHECK_THROWS_AS(normalize_slocc(random_state(1), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(normalize_slocc(random_state(1), -1.0), std::invalid_argument);
}

TEST_CASE("max iterations status") {
  const auto res = normalize_slocc(random_state(3), 1e-10, 2);
  CHECK(res.trace.status == NormalizeStatus::max_iterations);
  CHECK(res.trace.steps.size() == 3);
  CHECK(std::string(status_name(res.trace.status)) == "max-iterations");
}

TEST_CASE("local filter has unit determinant") {
  const State s = random_state(11);
  for (int p = 1; p <= 3; ++p) {
    const Matrix3 rho = reduced_density(s, p);
    const Matrix3 g = local_filter(rho, p);
    CHECK(std::abs(g.determinant() - 1.0) < 1e-12);
    CHECK((g - g.adjoint()).norm() < 1e-12);
    // The filter whitens rho up to a scalar.
    const Matrix3 w = g * rho * g.adjoint();
    CHECK(density_deviation(w) < 1e-12);
  }
  Matrix3 bad = Matrix3::Zero();
  CHECK_THROWS_AS(local_filter(bad, 2), ConditioningError);
  try {
    local_filter(bad, 2);
  } catch (const ConditioningError& e) {
    CHECK(e.party() == 2);
  }
}

TEST_CASE("party order is round robin") {
  const auto res = normalize_slocc(random_state(4), 1e-10, 9);
  for (std::size_t i = 1; i < res.trace.steps.size(); ++i)
    CHECK(res.trace.steps[i].party == static_cast<int>((i - 1) % 3 + 1));
}

TEST_CASE("determinism") {
  const auto a = normalize_slocc(random_state(5));
  const auto b = normalize_slocc(random_state(5));
  CHECK(a.limit == b.limit);
  CHECK(a.trace.to_json() == b.trace.to_json());
}

TEST_CASE("trace JSON") {
  const auto res = normalize_slocc(random_state(2), 1e-10, 5);
  const auto j = nlohmann::json::parse(res.trace.to_json());
  REQUIRE(j.is_array());
  REQUIRE(j.size() == res.trace.steps.size());
  CHECK(j[0]["step"] == 0);
  CHECK(j[1]["party"] == 1);
  CHECK(j[1]["norm_squared"].get<double>() == res.trace.steps[1].norm_squared);
  CHECK(j[2].contains("deviation"));
}

TEST_CASE("fixed point iff balanced") {
  const auto res = normalize_slocc(random_state(8));
  REQUIRE(res.trace.status == NormalizeStatus::converged);
  const auto again = normalize_slocc(res.limit, 1e-10);
  CHECK(again.trace.steps.size() == 1);
  CHECK(again.limit == res.limit);
  // One step away from balance is not a fixed point.
  const auto early = normalize_slocc(random_state(8), 1e-10, 1);
  CHECK(normalize_slocc(early.limit).trace.steps.size() > 1);
}

TEST_CASE("verify_vinberg") {
  const State s = apply_local(normal_form_state({1.0, 1.0, -1.0}), random_local_transform(7));
  const auto res = normalize_slocc(s);
  const auto cls = classify(input_from(invariants(s)));
  const auto rep = verify_vinberg(res.limit, cls.solutions);
  CHECK(rep.passed);
  CHECK(rep.norm_rel_error < 1e-5);

  const State n = normal_form_state({1.0, 0.0, 0.0});
  const auto cn = classify(input_from(invariants(n)));
  CHECK(verify_vinberg(n, cn.solutions).passed);

  // Candidates from another state do not fit.
  const auto other = classify(input_from(invariants(random_state(9))));
  const auto bad = verify_vinberg(res.limit, other.solutions);
  CHECK_FALSE(bad.passed);
  CHECK_FALSE(bad.message.empty());

  CHECK_FALSE(verify_vinberg(res.limit, SolutionSet{}).passed);
}

TEST_CASE("random state limit matches its candidates") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CAPTURE(seed);
    const State s = random_state(seed);
    const auto res = normalize_slocc(s);
    const auto cls = classify(input_from(invariants(s)));
    CHECK(cls.solutions.triples.size() == 648);
    CHECK(verify_vinberg(res.limit, cls.solutions).passed);
  }
}
