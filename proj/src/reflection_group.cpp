#include "trimoduli/reflection_group.hpp"

#include "trimoduli/c_formulas.hpp"

#include <json.hpp>

#include <deque>
#include <numeric>
#include <set>

namespace trimoduli {

GroupElement GroupElement::identity() { return diagonal(1, 1, 1); }

GroupElement GroupElement::diagonal(const Cyclotomic& a, const Cyclotomic& b, const Cyclotomic& c) {
  Entries e{};
  e[0] = a;
  e[4] = b;
  e[8] = c;
  return GroupElement(e);
}

GroupElement operator*(const GroupElement& l, const GroupElement& r) {
  GroupElement::Entries e{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Cyclotomic s;
      for (int k = 0; k < 3; ++k) {
        if (l(i, k).is_zero() || r(k, j).is_zero()) continue;
        s += l(i, k) * r(k, j);
      }
      e[static_cast<std::size_t>(3 * i + j)] = s;
    }
  return GroupElement(e);
}

GroupElement GroupElement::conjugate_transpose() const {
  Entries e{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e[static_cast<std::size_t>(3 * i + j)] = (*this)(j, i).conj();
  return GroupElement(e);
}

int GroupElement::fixed_space_codimension() const {
  std::array<std::array<Cyclotomic, 3>, 3> a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j) - (i == j ? Cyclotomic(1) : Cyclotomic(0));
  int rank = 0;
  for (int col = 0; col < 3 && rank < 3; ++col) {
    int pivot = -1;
    for (int r = rank; r < 3; ++r) {
      if (!a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(a[static_cast<std::size_t>(rank)], a[static_cast<std::size_t>(pivot)]);
    const Cyclotomic inv = a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)].inverse();
    for (int r = rank + 1; r < 3; ++r) {
      const Cyclotomic factor = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] * inv;
      if (factor.is_zero()) continue;
      for (int c = col; c < 3; ++c)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            factor * a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
    }
    ++rank;
  }
  return rank;
}

int GroupElement::order(int cap) const {
  GroupElement p = *this;
  for (int k = 1; k <= cap; ++k) {
    if (p.is_identity()) return k;
    p = p * *this;
  }
  return 0;
}

ExactTriple GroupElement::apply(const ExactTriple& t) const {
  ExactTriple out;
  for (int i = 0; i < 3; ++i) {
    Cyclotomic s;
    for (int k = 0; k < 3; ++k) s += (*this)(i, k) * t[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

Matrix3 GroupElement::to_complex() const {
  Matrix3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = (*this)(i, j).to_complex();
  return m;
}

ParameterTriple GroupElement::apply(const ParameterTriple& t) const {
  const Eigen::Vector3cd v = to_complex() * Eigen::Vector3cd(t.u, t.v, t.w);
  return {v(0), v(1), v(2)};
}

Cyclotomic inverse_i_sqrt3() {
  const Cyclotomic e = Cyclotomic::epsilon();
  return (e * e - e) * Cyclotomic(Rational(1, 3));
}

Generators generators() {
  const Cyclotomic e = Cyclotomic::epsilon();
  const Cyclotomic e2 = e * e;
  Generators g;
  g.A = GroupElement({0, 1, 0, 0, 0, 1, 1, 0, 0});
  g.B = GroupElement({1, 0, 0, 0, 0, 1, 0, 1, 0});
  g.C = GroupElement::diagonal(1, e, e2);
  g.D = GroupElement::diagonal(1, e, e);
  const Cyclotomic k = inverse_i_sqrt3();
  g.E = GroupElement({k, k, k, k, k * e, k * e2, k, k * e2, k * e});
  return g;
}

bool MatrixGroup::contains(const GroupElement& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

MatrixGroup generate_closure(const std::vector<GroupElement>& gens, std::size_t cap) {
  std::set<GroupElement> seen{GroupElement::identity()};
  std::deque<GroupElement> frontier{GroupElement::identity()};
  while (!frontier.empty()) {
    const GroupElement g = frontier.front();
    frontier.pop_front();
    for (const auto& s : gens) {
      GroupElement h = g * s;
      if (seen.insert(h).second) {
        if (seen.size() > cap) throw GroupClosureError("group closure exceeded the element cap");
        frontier.push_back(std::move(h));
      }
    }
  }
  return {std::vector<GroupElement>(seen.begin(), seen.end()), gens};
}

const MatrixGroup& group_k() {
  static const MatrixGroup k = [] {
    const auto g = generators();
    return generate_closure({g.A, g.C, g.D, g.E});
  }();
  return k;
}

const MatrixGroup& group_h() {
  static const MatrixGroup h = [] {
    const auto g = generators();
    return generate_closure({g.A, g.B, g.C, g.D, g.E});
  }();
  return h;
}

namespace {

double triple_scale(const ParameterTriple& t) { return std::max({std::abs(t.u), std::abs(t.v), std::abs(t.w)}); }

double triple_distance(const ParameterTriple& a, const ParameterTriple& b) {
  return std::max({std::abs(a.u - b.u), std::abs(a.v - b.v), std::abs(a.w - b.w)});
}

}  // namespace

std::vector<ExactTriple> orbit(const MatrixGroup& group, const ExactTriple& t) {
  std::set<ExactTriple> pts;
  for (const auto& g : group.elements) pts.insert(g.apply(t));
  return {pts.begin(), pts.end()};
}

std::vector<ParameterTriple> orbit(const MatrixGroup& group, const ParameterTriple& t, double tol) {
  const double eps = tol * std::max(1.0, triple_scale(t));
  std::vector<ParameterTriple> out;
  for (const auto& g : group.elements) {
    const ParameterTriple p = g.apply(t);
    const bool dup = std::any_of(out.begin(), out.end(), [&](const ParameterTriple& q) { return triple_distance(p, q) <= eps; });
    if (!dup) out.push_back(p);
  }
  return out;
}

std::vector<GroupElement> stabilizer(const MatrixGroup& group, const ExactTriple& t) {
  std::vector<GroupElement> out;
  for (const auto& g : group.elements)
    if (g.apply(t) == t) out.push_back(g);
  return out;
}

std::vector<GroupElement> stabilizer(const MatrixGroup& group, const ParameterTriple& t, double tol) {
  const double eps = tol * std::max(1.0, triple_scale(t));
  std::vector<GroupElement> out;
  for (const auto& g : group.elements)
    if (triple_distance(g.apply(t), t) <= eps) out.push_back(g);
  return out;
}

bool is_abelian(const std::vector<GroupElement>& elements) {
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j)
      if (elements[i] * elements[j] != elements[j] * elements[i]) return false;
  return true;
}

int exponent(const std::vector<GroupElement>& elements) {
  int e = 1;
  for (const auto& g : elements) e = std::lcm(e, g.order());
  return e;
}

std::string stabilizer_type(const std::vector<GroupElement>& subgroup, std::size_t full_order) {
  const std::size_t n = subgroup.size();
  if (n == 1) return "trivial";
  if (n == full_order) return "full";
  if (n == 3) return exponent(subgroup) == 3 ? "C3" : "unclassified";
  if (n == 9) return is_abelian(subgroup) && exponent(subgroup) == 3 ? "C3xC3" : "unclassified";
  if (n == 24) {
    const bool reflection = std::any_of(subgroup.begin(), subgroup.end(), [](const GroupElement& g) {
      return g.order() == 3 && g.fixed_space_codimension() == 1;
    });
    return !is_abelian(subgroup) && reflection ? "G4" : "unclassified";
  }
  return "unclassified";
}

MultiPoly<Cyclotomic> compose_linear(const MultiPoly<Cyclotomic>& p, const GroupElement& g) {
  const CatalogPtr& cat = p.catalog();
  if (cat->size() != 3) throw CatalogError("compose_linear: expected a polynomial in three variables");
  std::array<std::vector<MultiPoly<Cyclotomic>>, 3> powers;
  for (int i = 0; i < 3; ++i) {
    MultiPoly<Cyclotomic> form(cat);
    for (int k = 0; k < 3; ++k) form += MultiPoly<Cyclotomic>::variable(cat, k).scaled(g(i, k));
    powers[static_cast<std::size_t>(i)].push_back(MultiPoly<Cyclotomic>::constant(cat, 1));
    powers[static_cast<std::size_t>(i)].push_back(form);
  }
  auto power = [&](int i, int e) -> const MultiPoly<Cyclotomic>& {
    auto& list = powers[static_cast<std::size_t>(i)];
    while (static_cast<int>(list.size()) <= e) list.push_back(list.back() * list[1]);
    return list[static_cast<std::size_t>(e)];
  };
  MultiPoly<Cyclotomic> out(cat);
  for (const auto& [m, c] : p.terms()) {
    MultiPoly<Cyclotomic> term = MultiPoly<Cyclotomic>::constant(cat, c);
    for (int i = 0; i < 3; ++i) term *= power(i, m[static_cast<std::size_t>(i)]);
    out += term;
  }
  return out;
}

std::vector<InvarianceEntry> verify_invariance() {
  const auto g = generators();
  auto lift = [](const MultiPoly<Rational>& p) {
    return p.map_coefficients<Cyclotomic>([](const Rational& q) { return Cyclotomic(q); });
  };
  const std::array<std::pair<const char*, MultiPoly<Cyclotomic>>, 3> invs = {
      {{"C6", lift(c6_poly())}, {"C9", lift(c9_poly())}, {"C12", lift(c12_poly())}}};
  const std::array<std::pair<const char*, const GroupElement*>, 5> gens = {
      {{"A", &g.A}, {"B", &g.B}, {"C", &g.C}, {"D", &g.D}, {"E", &g.E}}};
  std::vector<InvarianceEntry> out;
  for (const auto& [gname, elem] : gens)
    for (const auto& [cname, poly] : invs) {
      const auto composed = compose_linear(poly, *elem);
      const std::size_t same = (composed - poly).size(), flip = (composed + poly).size();
      out.push_back({gname, cname, same == 0, flip == 0, same, flip});
    }
  return out;
}

std::string group_to_json(const MatrixGroup& group) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& g : group.elements) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < 3; ++j)
        row.push_back({to_string(g(i, j).rational_part()), to_string(g(i, j).epsilon_part())});
      rows.push_back(row);
    }
    arr.push_back(rows);
  }
  return arr.dump();
}

double max_point_to_set_distance(const std::vector<ParameterTriple>& a, const std::vector<ParameterTriple>& b) {
  double worst = 0.0;
  for (const auto& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : b) best = std::min(best, triple_distance(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace trimoduli
