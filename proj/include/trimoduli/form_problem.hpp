#pragma once

// Klein's form problem for K: recover every normal-form triple (u, v, w)
// from the invariant values a = I6, b = I12, c = I18 and the alternating I9,
// through a quartic in psi^2 followed by cubics in u^3, v^3, w^3.

#include "trimoduli/state.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trimoduli {

class FormProblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The given I9 matches no triple with the given (a, b, c).
class InconsistentInvariantsError : public FormProblemError {
 public:
  using FormProblemError::FormProblemError;
};

/// Roots of c[0] x^3 + c[1] x^2 + c[2] x + c[3] by Cardano. A zero leading
/// coefficient lowers the degree (fewer roots returned).
std::vector<Complex> solve_cubic_radicals(const std::array<Complex, 4>& c);

/// Roots of c[0] x^4 + ... + c[4] by Ferrari, same conventions.
std::vector<Complex> solve_quartic_radicals(const std::array<Complex, 5>& c);

/// Replaces every group of roots closer than rel_tol * max|root| by the
/// group mean. Float roots of multiplicity m scatter by about eps^(1/m).
std::vector<Complex> merge_root_clusters(std::vector<Complex> roots, double rel_tol = 1e-4);

struct FormProblemInput {
  Complex a{};
  Complex b{};
  Complex c{};
  std::optional<Complex> i9;
  double tol = 1e-8;
};

/// Weighted size max(|a|^(1/6), |b|^(1/12), |c|^(1/18), |i9|^(1/9)).
double weighted_magnitude(const FormProblemInput& inp);

/// Sets b, c, i9 to exact zero when negligible against the weighted size.
FormProblemInput snap_small_invariants(FormProblemInput inp, double rel = 1e-9);

template <RingScalar S>
S form_discriminant(const S& b, const S& c) {
  const S d = b * b * b - c * c;
  const S d2 = d * d;
  return b * b * d2 * d2;
}

/// a^3 - 3ab + 2c, equal to 432 C9^2 on normal forms.
template <RingScalar S>
S cubic_delta(const S& a, const S& b, const S& c) {
  return a * a * a - scalar_from_int<S>(3) * a * b + scalar_from_int<S>(2) * c;
}

struct PsiBranch {
  Complex psi{};
  Complex lambda{};
  Complex chi{};
  Complex e3{};
  int multiplicity = 1;
};

std::vector<PsiBranch> solve_psi_system(const FormProblemInput& inp);

/// Residuals of psi^2 - 12 chi - a, psi^4 + lambda psi - b (psi != 0) and
/// psi^6 - (5/2) lambda psi^3 - lambda^2/8 - c.
std::array<double, 3> branch_residuals(const PsiBranch& br, const FormProblemInput& inp);

struct SolutionSet {
  std::vector<ParameterTriple> triples;  // lexicographic by (Re u, Im u, Re v, ...)
  std::size_t raw_count = 0;
  std::size_t filtered_count = 0;
  std::vector<std::string> diagnostics;
};

SolutionSet enumerate_triples(const std::vector<PsiBranch>& branches, const FormProblemInput& inp);

/// Keeps triples whose C9 matches i9; an empty result throws
/// InconsistentInvariantsError.
SolutionSet filter_sign(const SolutionSet& raw, Complex i9, double tol = 1e-6);

struct OrbitClass {
  std::size_t count = 0;
  std::string polytope_label;
  std::string stabilizer_label;
  std::size_t stabilizer_order = 0;
  Complex D{};
  Complex delta{};
  std::optional<std::size_t> case_tree_count;  // empty where the case analysis is silent
  std::string case_path;
  bool case_tree_agrees = true;
};

struct Classification {
  FormProblemInput input;  // after snapping
  Complex i9_used{};
  bool i9_inferred = false;
  std::vector<PsiBranch> branches;
  SolutionSet solutions;
  OrbitClass orbit_class;
};

std::string polytope_label_for_count(std::size_t count);

Classification classify(const FormProblemInput& inp);

/// {a, b, c, i9, D, delta, count, polytope_label, stabilizer_label, ...}
std::string classification_to_json(const Classification& c, bool include_triples = false);

enum class ConfigurationCase { hessian_vertices, hessian_edge_centers, edges_24333 };

std::optional<ConfigurationCase> parse_configuration_case(const std::string& name);
std::string configuration_case_name(ConfigurationCase c);

struct EmittedConfiguration {
  std::vector<ParameterTriple> points;
  bool single_orbit = false;
  std::string csv;
};

EmittedConfiguration emit_configuration(ConfigurationCase which, Complex scale = 1.0);

std::string triples_to_csv(const std::vector<ParameterTriple>& triples);

}  // namespace trimoduli
