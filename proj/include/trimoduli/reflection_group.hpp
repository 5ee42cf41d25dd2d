#pragma once

// Maschke's group H (order 1296) and its index-2 subgroup K = G25 (order 648)
// acting on the normal-form parameters (u, v, w), with exact entries in Q(eps).

#include "trimoduli/multipoly.hpp"
#include "trimoduli/state.hpp"

#include <array>
#include <string>
#include <vector>

namespace trimoduli {

using ExactTriple = std::array<Cyclotomic, 3>;

class GroupElement {
 public:
  using Entries = std::array<Cyclotomic, 9>;

  GroupElement() = default;
  explicit GroupElement(const Entries& e) : m_(e) {}

  static GroupElement identity();
  static GroupElement diagonal(const Cyclotomic& a, const Cyclotomic& b, const Cyclotomic& c);

  const Cyclotomic& operator()(int r, int c) const { return m_[static_cast<std::size_t>(3 * r + c)]; }
  const Entries& entries() const { return m_; }

  bool is_identity() const { return *this == identity(); }
  GroupElement conjugate_transpose() const;
  bool is_unitary() const { return *this * conjugate_transpose() == identity(); }
  /// Rank of g - I over Q(eps); 1 for a pseudo-reflection.
  int fixed_space_codimension() const;
  /// Smallest k >= 1 with g^k = I, or 0 when above the cap.
  int order(int cap = 1000) const;

  ExactTriple apply(const ExactTriple& t) const;
  ParameterTriple apply(const ParameterTriple& t) const;
  Matrix3 to_complex() const;

  friend GroupElement operator*(const GroupElement& l, const GroupElement& r);
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& l, const GroupElement& r) { return l.m_ <=> r.m_; }

 private:
  Entries m_{};
};

struct Generators {
  GroupElement A;  // (u,v,w) -> (v,w,u)
  GroupElement B;  // (u,v,w) -> (u,w,v)
  GroupElement C;  // (u,v,w) -> (u, eps v, eps^2 w)
  GroupElement D;  // (u,v,w) -> (u, eps v, eps w)
  GroupElement E;  // (u,v,w) -> (u+v+w, u+eps v+eps^2 w, u+eps^2 v+eps w)/(i sqrt 3)
};

Generators generators();

/// 1/(i sqrt 3) = (eps^2 - eps)/3.
Cyclotomic inverse_i_sqrt3();

class GroupClosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatrixGroup {
  std::vector<GroupElement> elements;  // sorted
  std::vector<GroupElement> generators;

  std::size_t order() const { return elements.size(); }
  bool contains(const GroupElement& g) const;
};

/// Breadth-first closure under right multiplication by the generators.
MatrixGroup generate_closure(const std::vector<GroupElement>& gens, std::size_t cap = 100000);

/// K = <A, C, D, E> and H = <A, B, C, D, E>, built once.
const MatrixGroup& group_k();
const MatrixGroup& group_h();

std::vector<ExactTriple> orbit(const MatrixGroup& group, const ExactTriple& t);
std::vector<ParameterTriple> orbit(const MatrixGroup& group, const ParameterTriple& t, double tol = 1e-9);

std::vector<GroupElement> stabilizer(const MatrixGroup& group, const ExactTriple& t);
std::vector<GroupElement> stabilizer(const MatrixGroup& group, const ParameterTriple& t, double tol = 1e-9);

/// "trivial", "C3", "C3xC3", "G4", "full" or "unclassified".
std::string stabilizer_type(const std::vector<GroupElement>& subgroup, std::size_t full_order = 648);

bool is_abelian(const std::vector<GroupElement>& elements);
/// Least common multiple of element orders.
int exponent(const std::vector<GroupElement>& elements);

/// p(g * (u, v, w)) as an exact polynomial over Q(eps).
MultiPoly<Cyclotomic> compose_linear(const MultiPoly<Cyclotomic>& p, const GroupElement& g);

struct InvarianceEntry {
  std::string generator;
  std::string invariant;
  bool invariant_holds = false;  // C o g == C
  bool sign_flip = false;        // C o g == -C
  std::size_t invariant_residual_terms = 0;  // terms of C o g - C
  std::size_t flip_residual_terms = 0;       // terms of C o g + C
};

/// C6, C9, C12 composed with each of A, B, C, D, E.
std::vector<InvarianceEntry> verify_invariance();

/// Sorted list of elements as [[["a","b"] x3] x3] with "p/q" strings.
std::string group_to_json(const MatrixGroup& group);

/// Maximum over p in a of the distance to the nearest point of b.
double max_point_to_set_distance(const std::vector<ParameterTriple>& a, const std::vector<ParameterTriple>& b);

}  // namespace trimoduli
