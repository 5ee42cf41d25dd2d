#pragma once

// Local filtering toward the Vinberg normal form: each step replaces the state
// by (det rho_p)^(1/6) rho_p^(-1/2) acting on party p, which keeps the
// determinant at 1 and never increases the norm.

#include "trimoduli/form_problem.hpp"
#include "trimoduli/state.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace trimoduli {

enum class NormalizeStatus { converged, unstable, max_iterations };

const char* status_name(NormalizeStatus s);

struct StepRecord {
  int step = 0;
  int party = 0;  // 0 for the initial record
  double norm_squared = 0.0;
  double deviation = 0.0;  // max_p ||rho_p - (tr rho_p / 3) I||_F / tr rho_p
};

struct IterationTrace {
  std::vector<StepRecord> steps;
  NormalizeStatus status = NormalizeStatus::max_iterations;

  std::string to_json() const;
};

struct NormalizeResult {
  State limit;
  IterationTrace trace;
};

class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(int party, const std::string& what) : std::runtime_error(what), party_(party) {}
  int party() const { return party_; }

 private:
  int party_;
};

/// ||rho - (tr rho / 3) I||_F / tr rho, 0 for rho = 0.
double density_deviation(const Matrix3& rho);
double max_density_deviation(const State& s);

/// The unit-determinant filter for party p, with eigenvalues floored at
/// floor_rel * tr rho.
Matrix3 local_filter(const Matrix3& rho, int party, double floor_rel = 1e-14);

NormalizeResult normalize_slocc(const State& s, double tol = 1e-10, int max_iter = 10000);

struct VinbergReport {
  bool passed = false;
  double limit_norm_squared = 0.0;
  double candidate_norm_squared = 0.0;
  double norm_rel_error = 0.0;
  double invariant_rel_error = 0.0;
  std::string message;
};

VinbergReport verify_vinberg(const State& limit, const SolutionSet& candidates, double tol = 1e-5);

}  // namespace trimoduli
