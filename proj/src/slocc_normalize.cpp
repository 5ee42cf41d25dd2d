#include "trimoduli/slocc_normalize.hpp"

#include "trimoduli/c_formulas.hpp"
#include "trimoduli/concomitants.hpp"

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <cmath>

namespace trimoduli {

const char* status_name(NormalizeStatus s) {
  switch (s) {
    case NormalizeStatus::converged: return "converged";
    case NormalizeStatus::unstable: return "unstable";
    case NormalizeStatus::max_iterations: break;
  }
  return "max-iterations";
}

std::string IterationTrace::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : steps)
    arr.push_back({{"step", r.step}, {"party", r.party}, {"norm_squared", r.norm_squared}, {"deviation", r.deviation}});
  return arr.dump();
}

double density_deviation(const Matrix3& rho) {
  const double tr = rho.trace().real();
  if (tr <= 0.0) return 0.0;
  const Matrix3 centered = rho - (tr / 3.0) * Matrix3::Identity();
  return centered.norm() / tr;
}

double max_density_deviation(const State& s) {
  double d = 0.0;
  for (int p = 1; p <= 3; ++p) d = std::max(d, density_deviation(reduced_density(s, p)));
  return d;
}

Matrix3 local_filter(const Matrix3& rho, int party, double floor_rel) {
  const double tr = rho.trace().real();
  if (!std::isfinite(tr) || tr <= 0.0) throw ConditioningError(party, "reduced density has no positive trace");
  Eigen::SelfAdjointEigenSolver<Matrix3> eig(rho);
  if (eig.info() != Eigen::Success || !eig.eigenvalues().allFinite() || !eig.eigenvectors().allFinite())
    throw ConditioningError(party, "Hermitian eigendecomposition failed");
  Eigen::Vector3d lam = eig.eigenvalues();
  const double floor = floor_rel * tr;
  for (int i = 0; i < 3; ++i) lam(i) = std::max(lam(i), floor);
  const double det_root = std::pow(lam(0) * lam(1) * lam(2), 1.0 / 6.0);
  const Eigen::Vector3d inv_sqrt = lam.cwiseSqrt().cwiseInverse() * det_root;
  return eig.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
}

NormalizeResult normalize_slocc(const State& s, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("normalize_slocc: tol must be positive");
  const double norm0 = s.norm_squared();
  if (norm0 == 0.0) throw std::invalid_argument("normalize_slocc: zero state");
  NormalizeResult res{s, {}};
  State& cur = res.limit;
  double norm = norm0;
  double dev = max_density_deviation(cur);
  res.trace.steps.push_back({0, 0, norm, dev});
  if (dev < tol) {
    res.trace.status = NormalizeStatus::converged;
    return res;
  }
  for (int step = 1; step <= max_iter; ++step) {
    const int party = (step - 1) % 3 + 1;
    const Matrix3 g = local_filter(reduced_density(cur, party), party);
    State next = apply_on_party(cur, party, g);
    double next_norm = next.norm_squared();
    if (!std::isfinite(next_norm)) throw ConditioningError(party, "filtered state is not finite");
    // Near the fixed point the exact decrease drops below rounding and the
    // computed norm can creep up by a few ulps. Such growth is scaled away;
    // anything larger is left visible in the trace.
    if (next_norm > norm && next_norm <= norm * (1.0 + 1e-13)) {
      next = next.scaled(std::sqrt(norm / next_norm));
      for (int k = 0; k < 4 && next.norm_squared() > norm; ++k) next = next.scaled(1.0 - 0x1.0p-52);
      next_norm = next.norm_squared();
    }
    cur = std::move(next);
    norm = next_norm;
    dev = max_density_deviation(cur);
    res.trace.steps.push_back({step, party, norm, dev});
    if (std::sqrt(norm) < 1e-12 * std::sqrt(norm0)) {
      res.trace.status = NormalizeStatus::unstable;
      return res;
    }
    if (dev < tol) {
      res.trace.status = NormalizeStatus::converged;
      return res;
    }
  }
  res.trace.status = NormalizeStatus::max_iterations;
  return res;
}

VinbergReport verify_vinberg(const State& limit, const SolutionSet& candidates, double tol) {
  VinbergReport rep;
  rep.limit_norm_squared = limit.norm_squared();
  if (candidates.triples.empty()) {
    rep.message = "no candidate triples";
    return rep;
  }
  // Every candidate has the same norm since K is unitary; check all anyway.
  const InvariantSet inv = invariants(limit);
  double worst_norm = 0.0, worst_inv = 0.0;
  for (const auto& t : candidates.triples) {
    const double cand = 3.0 * (std::norm(t.u) + std::norm(t.v) + std::norm(t.w));
    worst_norm = std::max(worst_norm, std::abs(rep.limit_norm_squared - cand) / std::max(cand, 1e-300));
    const CValues cv = c_formulas(t);
    const double r = std::max({std::abs(t.u), std::abs(t.v), std::abs(t.w)});
    const std::array<std::pair<Complex, Complex>, 3> pairs = {{{inv.i6, cv.c6}, {inv.i9, cv.c9}, {inv.i12, cv.c12}}};
    const std::array<double, 3> weights = {6, 9, 12};
    for (std::size_t k = 0; k < 3; ++k) {
      const double denom = std::max(std::abs(pairs[k].second), std::pow(r, weights[k]));
      worst_inv = std::max(worst_inv, std::abs(pairs[k].first - pairs[k].second) / std::max(denom, 1e-300));
    }
  }
  rep.candidate_norm_squared = 3.0 * (std::norm(candidates.triples.front().u) + std::norm(candidates.triples.front().v) +
                                      std::norm(candidates.triples.front().w));
  rep.norm_rel_error = worst_norm;
  rep.invariant_rel_error = worst_inv;
  rep.passed = worst_norm < tol && worst_inv < tol;
  if (rep.passed)
    rep.message = "limit norm and invariants match the candidates";
  else if (worst_norm >= tol)
    rep.message = "mismatch: limit norm differs from 3(|u|^2+|v|^2+|w|^2)";
  else
    rep.message = "mismatch: limit invariants differ from the candidates' C-values";
  return rep;
}

}  // namespace trimoduli
