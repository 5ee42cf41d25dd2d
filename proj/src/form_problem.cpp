#include "trimoduli/form_problem.hpp"

#include "trimoduli/c_formulas.hpp"
#include "trimoduli/reflection_group.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

namespace trimoduli {

namespace {

const Complex kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

template <std::size_t N>
Complex horner(const std::array<Complex, N>& c, Complex x) {
  Complex acc{};
  for (const auto& k : c) acc = acc * x + k;
  return acc;
}

template <std::size_t N>
Complex horner_derivative(const std::array<Complex, N>& c, Complex x) {
  Complex acc{};
  const std::size_t deg = N - 1;
  for (std::size_t i = 0; i < deg; ++i) acc = acc * x + c[i] * static_cast<double>(deg - i);
  return acc;
}

// A few guarded Newton steps on isolated roots; a step is kept only if the
// residual drops. Clustered roots are left alone so their mean stays exact
// to first order.
template <std::size_t N>
void polish(const std::array<Complex, N>& c, std::vector<Complex>& roots) {
  double scale = 0.0;
  for (Complex r : roots) scale = std::max(scale, std::abs(r));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Complex& r = roots[i];
    bool isolated = true;
    for (std::size_t j = 0; j < roots.size(); ++j)
      if (j != i && std::abs(roots[j] - r) <= 1e-3 * scale) isolated = false;
    if (!isolated) continue;
    for (int it = 0; it < 3; ++it) {
      const Complex f = horner(c, r);
      const Complex df = horner_derivative(c, r);
      if (f == Complex{} || df == Complex{}) break;
      const Complex next = r - f / df;
      if (!(std::abs(horner(c, next)) < std::abs(f))) break;
      r = next;
    }
  }
}

std::vector<Complex> quadratic_roots(Complex b, Complex c) {
  // x^2 + b x + c, cancellation-free form.
  const Complex disc = std::sqrt(b * b - 4.0 * c);
  const Complex q = -0.5 * (b + (std::real(std::conj(b) * disc) >= 0.0 ? disc : -disc));
  if (q == Complex{}) return {Complex{}, Complex{}};
  return {q, c / q};
}

Complex principal_cbrt(Complex z) {
  if (z == Complex{}) return {};
  return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0);
}

double triple_scale(const std::vector<ParameterTriple>& ts) {
  double s = 0.0;
  for (const auto& t : ts) s = std::max({s, std::abs(t.u), std::abs(t.v), std::abs(t.w)});
  return s;
}

double triple_distance(const ParameterTriple& a, const ParameterTriple& b) {
  return std::max({std::abs(a.u - b.u), std::abs(a.v - b.v), std::abs(a.w - b.w)});
}

bool lex_less(const ParameterTriple& a, const ParameterTriple& b) {
  const std::array<double, 6> x = {a.u.real(), a.u.imag(), a.v.real(), a.v.imag(), a.w.real(), a.w.imag()};
  const std::array<double, 6> y = {b.u.real(), b.u.imag(), b.v.real(), b.v.imag(), b.w.real(), b.w.imag()};
  return x < y;
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

}  // namespace

std::vector<Complex> solve_cubic_radicals(const std::array<Complex, 4>& c) {
  if (c[0] == Complex{}) {
    if (c[1] == Complex{}) {
      if (c[2] == Complex{}) return {};
      return {-c[3] / c[2]};
    }
    return quadratic_roots(c[2] / c[1], c[3] / c[1]);
  }
  const Complex A = c[1] / c[0], B = c[2] / c[0], C = c[3] / c[0];
  if (C == Complex{}) {
    auto rest = quadratic_roots(A, B);
    rest.insert(rest.begin(), Complex{});
    return rest;
  }
  // x = y - A/3 gives y^3 + p y + q.
  const Complex p = B - A * A / 3.0;
  const Complex q = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;
  const Complex s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  const Complex w1 = -q / 2.0 + s, w2 = -q / 2.0 - s;
  const Complex w = std::abs(w1) >= std::abs(w2) ? w1 : w2;
  std::vector<Complex> roots;
  if (w == Complex{}) {
    roots.assign(3, -A / 3.0);
  } else {
    Complex ck = principal_cbrt(w);
    for (int k = 0; k < 3; ++k, ck *= kOmega) roots.push_back(ck - p / (3.0 * ck) - A / 3.0);
  }
  polish(std::array<Complex, 4>{1.0, A, B, C}, roots);
  return roots;
}

std::vector<Complex> solve_quartic_radicals(const std::array<Complex, 5>& c) {
  if (c[0] == Complex{}) return solve_cubic_radicals({c[1], c[2], c[3], c[4]});
  const Complex A = c[1] / c[0], B = c[2] / c[0], C = c[3] / c[0], D = c[4] / c[0];
  if (D == Complex{}) {
    auto rest = solve_cubic_radicals({1.0, A, B, C});
    rest.insert(rest.begin(), Complex{});
    return rest;
  }
  // x = y - A/4 gives y^4 + p y^2 + q y + r.
  const Complex A2 = A * A;
  const Complex p = B - 3.0 * A2 / 8.0;
  const Complex q = C - A * B / 2.0 + A2 * A / 8.0;
  const Complex r = D - A * C / 4.0 + A2 * B / 16.0 - 3.0 * A2 * A2 / 256.0;
  // Resolvent 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0; take the largest root.
  const auto ms = solve_cubic_radicals({8.0, 8.0 * p, 2.0 * p * p - 8.0 * r, -q * q});
  Complex m = *std::max_element(ms.begin(), ms.end(), [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
  std::vector<Complex> ys;
  if (m == Complex{}) {
    // q = 0 as well: biquadratic.
    for (Complex z : quadratic_roots(p, r)) {
      const Complex y = std::sqrt(z);
      ys.push_back(y);
      ys.push_back(-y);
    }
  } else {
    const Complex s = std::sqrt(2.0 * m);
    for (Complex y : quadratic_roots(s, p / 2.0 + m - q / (2.0 * s))) ys.push_back(y);
    for (Complex y : quadratic_roots(-s, p / 2.0 + m + q / (2.0 * s))) ys.push_back(y);
  }
  std::vector<Complex> roots;
  for (Complex y : ys) roots.push_back(y - A / 4.0);
  polish(std::array<Complex, 5>{1.0, A, B, C, D}, roots);
  return roots;
}

std::vector<Complex> merge_root_clusters(std::vector<Complex> roots, double rel_tol) {
  double scale = 0.0;
  for (Complex r : roots) scale = std::max(scale, std::abs(r));
  const double eps = rel_tol * scale;
  const std::size_t n = roots.size();
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    // Grow the cluster transitively.
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (label[j] >= 0) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (label[k] == next && std::abs(roots[j] - roots[k]) <= eps) {
            label[j] = next;
            grew = true;
            break;
          }
        }
      }
    }
    ++next;
  }
  std::vector<Complex> out(n);
  for (int l = 0; l < next; ++l) {
    Complex sum{};
    int count = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (label[i] == l) {
        sum += roots[i];
        ++count;
      }
    for (std::size_t i = 0; i < n; ++i)
      if (label[i] == l) out[i] = sum / static_cast<double>(count);
  }
  return out;
}

double weighted_magnitude(const FormProblemInput& inp) {
  double r = std::max({std::pow(std::abs(inp.a), 1.0 / 6.0), std::pow(std::abs(inp.b), 1.0 / 12.0),
                       std::pow(std::abs(inp.c), 1.0 / 18.0)});
  if (inp.i9) r = std::max(r, std::pow(std::abs(*inp.i9), 1.0 / 9.0));
  return r;
}

FormProblemInput snap_small_invariants(FormProblemInput inp, double rel) {
  const double r = weighted_magnitude(inp);
  auto snap = [&](Complex& z, double weight) {
    if (std::abs(z) <= rel * std::pow(r, weight)) z = 0.0;
  };
  snap(inp.a, 6);
  snap(inp.b, 12);
  snap(inp.c, 18);
  if (inp.i9) snap(*inp.i9, 9);
  return inp;
}

std::vector<PsiBranch> solve_psi_system(const FormProblemInput& raw) {
  const FormProblemInput inp = snap_small_invariants(raw);
  const double r = weighted_magnitude(inp);
  const Complex a = inp.a, b = inp.b, c = inp.c;
  auto roots = merge_root_clusters(solve_quartic_radicals({27.0, 0.0, -18.0 * b, -8.0 * c, -b * b}));
  for (auto& z : roots)
    if (std::abs(z) <= 1e-12 * std::pow(r, 6)) z = 0.0;

  std::vector<std::pair<Complex, int>> distinct;
  for (Complex z : roots) {
    auto it = std::find_if(distinct.begin(), distinct.end(), [&](const auto& d) { return d.first == z; });
    if (it == distinct.end())
      distinct.emplace_back(z, 1);
    else
      ++it->second;
  }

  std::vector<PsiBranch> out;
  auto add = [&](Complex psi, Complex lambda, int mult) {
    PsiBranch br;
    br.psi = psi;
    br.lambda = lambda;
    br.chi = (psi * psi - a) / 12.0;
    br.e3 = lambda / 216.0;
    br.multiplicity = mult;
    // psi has weight 3 and lambda weight 9 in (u, v, w).
    const double r3 = r * r * r;
    for (auto& o : out) {
      if (std::abs(o.psi - psi) <= 1e-9 * r3 && std::abs(o.lambda - lambda) <= 1e-9 * r3 * r3 * r3) {
        o.multiplicity += mult;
        return;
      }
    }
    out.push_back(br);
  };
  for (const auto& [big_psi, mult] : distinct) {
    if (big_psi == Complex{}) {
      // Only reachable with b = 0; lambda^2 = -8c, both signs.
      const Complex l = std::sqrt(-8.0 * c);
      add(0.0, l, mult);
      add(0.0, -l, mult);
      continue;
    }
    const Complex s = std::sqrt(big_psi);
    for (Complex psi : {s, -s}) add(psi, (b - psi * psi * psi * psi) / psi, mult);
  }
  return out;
}

std::array<double, 3> branch_residuals(const PsiBranch& br, const FormProblemInput& inp) {
  const Complex p = br.psi, l = br.lambda;
  const Complex p3 = p * p * p;
  std::array<double, 3> res{};
  res[0] = std::abs(p * p - 12.0 * br.chi - inp.a);
  res[1] = p == Complex{} ? 0.0 : std::abs(p3 * p + l * p - inp.b);
  res[2] = std::abs(p3 * p3 - 2.5 * l * p3 - l * l / 8.0 - inp.c);
  return res;
}

SolutionSet enumerate_triples(const std::vector<PsiBranch>& branches, const FormProblemInput& raw) {
  const FormProblemInput inp = snap_small_invariants(raw);
  const double r = weighted_magnitude(inp);
  SolutionSet set;
  std::vector<ParameterTriple> all;
  for (const auto& br : branches) {
    auto us = merge_root_clusters(solve_cubic_radicals({1.0, -br.psi, br.chi, -br.e3}));
    double uscale = r * r * r;
    for (Complex z : us) uscale = std::max(uscale, std::abs(z));
    for (auto& z : us)
      if (std::abs(z) <= 1e-9 * uscale) z = 0.0;
    if (us.size() != 3) continue;

    std::set<std::array<std::pair<double, double>, 3>> orderings;
    std::array<int, 3> idx = {0, 1, 2};
    do {
      std::array<std::pair<double, double>, 3> key;
      for (std::size_t i = 0; i < 3; ++i) {
        const Complex z = us[static_cast<std::size_t>(idx[i])];
        key[i] = {z.real(), z.imag()};
      }
      orderings.insert(key);
    } while (std::next_permutation(idx.begin(), idx.end()));

    for (const auto& key : orderings) {
      std::array<std::vector<Complex>, 3> choices;
      for (std::size_t i = 0; i < 3; ++i) {
        const Complex z(key[i].first, key[i].second);
        if (z == Complex{}) {
          choices[i] = {Complex{}};
        } else {
          const Complex c0 = principal_cbrt(z);
          choices[i] = {c0, c0 * kOmega, c0 * kOmega * kOmega};
        }
      }
      for (Complex u : choices[0])
        for (Complex v : choices[1])
          for (Complex w : choices[2]) all.push_back({u, v, w});
    }
  }

  const double bound = inp.tol * (1.0 + std::abs(inp.a) + std::abs(inp.b) + std::abs(inp.c));
  std::vector<ParameterTriple> verified;
  for (const auto& t : all) {
    const CValues cv = c_formulas(t);
    if (std::abs(cv.c6 - inp.a) < bound && std::abs(cv.c12 - inp.b) < bound && std::abs(cv.c18 - inp.c) < bound) {
      verified.push_back(t);
    } else {
      std::ostringstream os;
      os.precision(17);
      os << "dropped triple (" << t.u << ", " << t.v << ", " << t.w << "): does not reproduce (a, b, c)";
      set.diagnostics.push_back(os.str());
    }
  }

  std::sort(verified.begin(), verified.end(), lex_less);
  const double eps = inp.tol * std::max(triple_scale(verified), 1e-300);
  for (const auto& t : verified) {
    const bool dup = std::any_of(set.triples.begin(), set.triples.end(),
                                 [&](const ParameterTriple& o) { return triple_distance(o, t) <= eps; });
    if (!dup) set.triples.push_back(t);
  }
  set.raw_count = set.triples.size();
  set.filtered_count = set.raw_count;
  return set;
}

SolutionSet filter_sign(const SolutionSet& raw, Complex i9, double tol) {
  const double scale = triple_scale(raw.triples);
  const double threshold = tol * std::max(std::abs(i9), std::pow(scale, 9));
  SolutionSet out;
  out.raw_count = raw.raw_count;
  out.diagnostics = raw.diagnostics;
  for (const auto& t : raw.triples) {
    if (std::abs(c9_value(t.u, t.v, t.w) - i9) <= threshold) out.triples.push_back(t);
  }
  out.filtered_count = out.triples.size();
  if (out.triples.empty()) throw InconsistentInvariantsError("no triple reproduces the given I9: inconsistent (a, b, c, i9)");
  return out;
}

std::string polytope_label_for_count(std::size_t count) {
  switch (count) {
    case 648: return "generic";
    case 216: return "edges-2{4}3{3}3";
    case 72: return "hessian-edge-centers";
    case 27: return "hessian-vertices";
    case 1: return "origin";
    default: break;
  }
  return "unclassified";
}

Classification classify(const FormProblemInput& raw_input) {
  Classification cl;
  cl.input = snap_small_invariants(raw_input);
  const FormProblemInput& inp = cl.input;
  cl.branches = solve_psi_system(inp);
  SolutionSet raw = enumerate_triples(cl.branches, inp);
  if (raw.triples.empty()) throw FormProblemError("no triple reproduces (a, b, c)");
  if (inp.i9) {
    cl.i9_used = *inp.i9;
  } else {
    const auto& t = raw.triples.front();
    cl.i9_used = c9_value(t.u, t.v, t.w);
    cl.i9_inferred = true;
  }
  cl.solutions = filter_sign(raw, cl.i9_used);

  OrbitClass& oc = cl.orbit_class;
  const Complex a = inp.a, b = inp.b, c = inp.c;
  oc.D = form_discriminant(b, c);
  oc.delta = cubic_delta(a, b, c);
  oc.count = cl.solutions.triples.size();
  oc.polytope_label = polytope_label_for_count(oc.count);

  // Advisory case analysis with weighted zero tests.
  const double r = weighted_magnitude(inp);
  auto zero = [&](Complex z, double weight) { return std::abs(z) <= 1e-7 * std::pow(r, weight); };
  if (r == 0.0) {
    oc.case_tree_count = 1;
    oc.case_path = "a=b=c=0";
  } else if (zero(b, 12)) {
    if (!zero(c, 18)) {
      oc.case_tree_count = 648;
      oc.case_path = "b=0, c!=0";
    } else if (!zero(a, 6)) {
      oc.case_tree_count = 27;
      oc.case_path = "b=c=0, a!=0";
    } else {
      oc.case_tree_count = 1;
      oc.case_path = "a=b=c=0";
    }
  } else if (!zero(b * b * b - c * c, 36)) {
    oc.case_tree_count = 648;
    oc.case_path = zero(oc.delta, 18) ? "D!=0, delta=0" : "D!=0, delta!=0";
  } else if (!zero(cl.i9_used, 9)) {
    oc.case_tree_count = 216;
    oc.case_path = "b^3=c^2, C9!=0";
  } else if (zero(b - a * a / 4.0, 12) && zero(c + a * a * a / 8.0, 18)) {
    oc.case_tree_count = 216;
    oc.case_path = "b^3=c^2, C9=0, b=a^2/4, c=-a^3/8";
  } else if (zero(b - a * a, 12) && zero(c - a * a * a, 18)) {
    oc.case_tree_count = 72;
    oc.case_path = "b^3=c^2, C9=0, b=a^2, c=a^3";
  } else {
    oc.case_path = "b^3=c^2, C9=0, not covered by the case analysis";
  }
  oc.case_tree_agrees = !oc.case_tree_count || *oc.case_tree_count == oc.count;
  if (!oc.case_tree_agrees) cl.solutions.diagnostics.push_back("case analysis disagrees with the enumerated count");

  const auto stab = stabilizer(group_k(), cl.solutions.triples.front(), 1e-6);
  oc.stabilizer_order = stab.size();
  oc.stabilizer_label = stabilizer_type(stab, group_k().order());
  if (oc.count * oc.stabilizer_order != group_k().order())
    cl.solutions.diagnostics.push_back("count times stabilizer order differs from 648");
  return cl;
}

std::string classification_to_json(const Classification& c, bool include_triples) {
  nlohmann::ordered_json j;
  j["a"] = complex_json(c.input.a);
  j["b"] = complex_json(c.input.b);
  j["c"] = complex_json(c.input.c);
  j["i9"] = complex_json(c.i9_used);
  j["i9_inferred"] = c.i9_inferred;
  j["D"] = complex_json(c.orbit_class.D);
  j["delta"] = complex_json(c.orbit_class.delta);
  j["count"] = c.orbit_class.count;
  j["raw_count"] = c.solutions.raw_count;
  j["polytope_label"] = c.orbit_class.polytope_label;
  j["stabilizer_label"] = c.orbit_class.stabilizer_label;
  j["stabilizer_order"] = c.orbit_class.stabilizer_order;
  j["case_path"] = c.orbit_class.case_path;
  j["case_tree_count"] = c.orbit_class.case_tree_count ? nlohmann::ordered_json(*c.orbit_class.case_tree_count)
                                                       : nlohmann::ordered_json(nullptr);
  j["case_tree_agrees"] = c.orbit_class.case_tree_agrees;
  j["diagnostics"] = c.solutions.diagnostics;
  if (include_triples) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : c.solutions.triples)
      arr.push_back({complex_json(t.u), complex_json(t.v), complex_json(t.w)});
    j["triples"] = arr;
  }
  return j.dump(2);
}

std::optional<ConfigurationCase> parse_configuration_case(const std::string& name) {
  if (name == "hessian-vertices") return ConfigurationCase::hessian_vertices;
  if (name == "hessian-edge-centers") return ConfigurationCase::hessian_edge_centers;
  if (name == "edges-2{4}3{3}3") return ConfigurationCase::edges_24333;
  return std::nullopt;
}

std::string configuration_case_name(ConfigurationCase c) {
  switch (c) {
    case ConfigurationCase::hessian_vertices: return "hessian-vertices";
    case ConfigurationCase::hessian_edge_centers: return "hessian-edge-centers";
    case ConfigurationCase::edges_24333: break;
  }
  return "edges-2{4}3{3}3";
}

EmittedConfiguration emit_configuration(ConfigurationCase which, Complex scale) {
  const Complex s6 = std::pow(scale, 6), s9 = std::pow(scale, 9);
  const Complex s12 = s6 * s6, s18 = s12 * s6;
  FormProblemInput inp;
  switch (which) {
    case ConfigurationCase::hessian_vertices:
      inp.a = 12.0 * s6;
      inp.i9 = -2.0 * s9;
      break;
    case ConfigurationCase::hessian_edge_centers:
      inp.a = s6;
      inp.b = s12;
      inp.c = s18;
      inp.i9 = 0.0;
      break;
    case ConfigurationCase::edges_24333:
      inp.a = s6;
      inp.b = s12 / 4.0;
      inp.c = -s18 / 8.0;
      inp.i9 = 0.0;
      break;
  }
  EmittedConfiguration out;
  out.points = classify(inp).solutions.triples;
  const auto orb = orbit(group_k(), out.points.front(), 1e-9);
  const double tol = 1e-6 * std::max(1.0, triple_scale(out.points));
  out.single_orbit = orb.size() == out.points.size() && max_point_to_set_distance(orb, out.points) < tol &&
                     max_point_to_set_distance(out.points, orb) < tol;
  out.csv = triples_to_csv(out.points);
  return out;
}

std::string triples_to_csv(const std::vector<ParameterTriple>& triples) {
  std::string csv = "re_u,im_u,re_v,im_v,re_w,im_w\n";
  char buf[256];
  for (const auto& t : triples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t.u.real(), t.u.imag(), t.v.real(),
                  t.v.imag(), t.w.real(), t.w.imag());
    csv += buf;
  }
  return csv;
}

}  // namespace trimoduli
