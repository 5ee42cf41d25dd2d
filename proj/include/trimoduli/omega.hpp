#pragma once

// Cayley's Omega process and multiple transvectants.
//
// Omega_g is the 3x3 determinant of partials d/dg_i^(s) (row i, column
// slot s) acting on a polynomial over three slot copies of group g. A
// transvectant places F1, F2, F3 in slots 1, 2, 3, applies a product of
// Omega powers and identifies the slots again (the trace).

#include "trimoduli/multipoly.hpp"

#include <array>
#include <map>
#include <vector>

namespace trimoduli {

/// Omega powers (n_x, n_y, n_z) and (m_xi, m_eta, m_zeta).
struct OmegaBudget {
  std::array<int, 3> upper{};
  std::array<int, 3> lower{};

  int power(Group g) const {
    const auto k = static_cast<std::size_t>(g);
    return k < 3 ? upper[k] : lower[k - 3];
  }
};

namespace detail {

// One term of the expanded differential operator: an integer coefficient
// and, per slot, the derivative orders over the single-slot catalog.
struct OperatorTerm {
  long long coefficient = 0;
  std::array<Monomial, 3> orders{};
};

std::vector<OperatorTerm> expand_omega_operator(const OmegaBudget& budget);

}  // namespace detail

/// Copies a single-slot polynomial into slot `slot` of the three-slot catalog.
template <RingScalar S>
MultiPoly<S> place_in_slot(const MultiPoly<S>& p, int slot) {
  if (p.catalog()->kind() != Catalog::Kind::single_slot)
    throw CatalogError("place_in_slot: expected a single-slot polynomial");
  if (slot < 1 || slot > 3) throw CatalogError("place_in_slot: slot must be 1..3");
  MultiPoly<S> out(Catalog::three_slot());
  const int offset = (slot - 1) * 18;
  for (const auto& [m, c] : p.terms()) {
    Monomial r{};
    for (int i = 0; i < 18; ++i) r[static_cast<std::size_t>(offset + i)] = m[static_cast<std::size_t>(i)];
    out.add_term(r, c);
  }
  return out;
}

/// Applies Omega_g^power to a polynomial over the three-slot catalog.
template <RingScalar S>
MultiPoly<S> omega_apply(const MultiPoly<S>& p, Group g, int power) {
  if (p.catalog()->kind() != Catalog::Kind::three_slot)
    throw CatalogError("omega_apply: expected a three-slot polynomial");
  static constexpr std::array<std::array<int, 3>, 6> kPerms = {
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
  const Catalog& cat = *p.catalog();
  MultiPoly<S> cur = p;
  for (int n = 0; n < power; ++n) {
    MultiPoly<S> next(p.catalog());
    for (std::size_t k = 0; k < kPerms.size(); ++k) {
      Monomial orders{};
      for (int s = 0; s < 3; ++s)
        orders[static_cast<std::size_t>(cat.require({g, kPerms[k][static_cast<std::size_t>(s)] + 1, s + 1}))] = 1;
      MultiPoly<S> d = cur.derivative(orders);
      if (k < 3)
        next += d;
      else
        next -= d;
    }
    cur = std::move(next);
  }
  return cur;
}

/// Identifies the three slot copies of every variable (Olver's trace).
template <RingScalar S>
MultiPoly<S> trace_collapse(const MultiPoly<S>& p) {
  if (p.catalog()->kind() != Catalog::Kind::three_slot)
    throw CatalogError("trace_collapse: expected a three-slot polynomial");
  MultiPoly<S> out(Catalog::single_slot());
  for (const auto& [m, c] : p.terms()) {
    Monomial r{};
    for (int s = 0; s < 3; ++s) {
      for (int i = 0; i < 18; ++i) {
        const int e = r[static_cast<std::size_t>(i)] + m[static_cast<std::size_t>(s * 18 + i)];
        if (e > 255) throw std::overflow_error("trace_collapse: exponent overflow");
        r[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
      }
    }
    out.add_term(r, c);
  }
  return out;
}

/// F1(slot 1) F2(slot 2) F3(slot 3) with a pending Omega budget. Evaluation
/// distributes each operator term over the factors instead of expanding the
/// product.
template <RingScalar S>
class FactoredTriple {
 public:
  FactoredTriple(MultiPoly<S> f1, MultiPoly<S> f2, MultiPoly<S> f3, OmegaBudget budget)
      : factors_{std::move(f1), std::move(f2), std::move(f3)}, budget_(budget) {
    for (const auto& f : factors_) {
      if (f.catalog()->kind() != Catalog::Kind::single_slot)
        throw CatalogError("FactoredTriple: factors must be single-slot polynomials");
    }
  }

  const std::array<MultiPoly<S>, 3>& factors() const { return factors_; }
  const OmegaBudget& budget() const { return budget_; }

  /// Applies the budget and traces, factor by factor.
  MultiPoly<S> evaluate() const {
    const auto ops = detail::expand_omega_operator(budget_);
    std::array<std::map<Monomial, MultiPoly<S>>, 3> memo;
    auto partial = [&](int slot, const Monomial& orders) -> const MultiPoly<S>& {
      auto& cache = memo[static_cast<std::size_t>(slot)];
      auto it = cache.find(orders);
      if (it == cache.end())
        it = cache.emplace(orders, factors_[static_cast<std::size_t>(slot)].derivative(orders)).first;
      return it->second;
    };
    MultiPoly<S> out(Catalog::single_slot());
    for (const auto& op : ops) {
      const auto& d1 = partial(0, op.orders[0]);
      if (d1.is_zero()) continue;
      const auto& d2 = partial(1, op.orders[1]);
      if (d2.is_zero()) continue;
      const auto& d3 = partial(2, op.orders[2]);
      if (d3.is_zero()) continue;
      accumulate_product(out, d1, d2, d3, scalar_from_int<S>(op.coefficient));
    }
    return out;
  }

  /// Reference path: expand the slot product, apply Omega powers, trace.
  MultiPoly<S> evaluate_naive() const {
    MultiPoly<S> p = place_in_slot(factors_[0], 1) * place_in_slot(factors_[1], 2) *
                     place_in_slot(factors_[2], 3);
    for (Group g : kAllGroups) p = omega_apply(p, g, budget_.power(g));
    return trace_collapse(p);
  }

 private:
  // out += coef * a * b * c
  static void accumulate_product(MultiPoly<S>& out, const MultiPoly<S>& a, const MultiPoly<S>& b,
                                 const MultiPoly<S>& c, const S& coef) {
    for (const auto& [ma, ca] : a.terms()) {
      S ca_coef = coef * ca;
      for (const auto& [mb, cb] : b.terms()) {
        S cab = ca_coef * cb;
        Monomial mab{};
        for (std::size_t i = 0; i < 18; ++i) mab[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
        for (const auto& [mc, cc] : c.terms()) {
          Monomial m = mab;
          for (std::size_t i = 0; i < 18; ++i) m[i] = static_cast<std::uint8_t>(m[i] + mc[i]);
          out.add_term(m, cab * cc);
        }
      }
    }
  }

  std::array<MultiPoly<S>, 3> factors_;
  OmegaBudget budget_;
};

template <RingScalar S>
MultiPoly<S> transvectant(const MultiPoly<S>& f1, const MultiPoly<S>& f2, const MultiPoly<S>& f3,
                          const OmegaBudget& budget) {
  return FactoredTriple<S>(f1, f2, f3, budget).evaluate();
}

template <RingScalar S>
MultiPoly<S> transvectant_naive(const MultiPoly<S>& f1, const MultiPoly<S>& f2, const MultiPoly<S>& f3,
                                const OmegaBudget& budget) {
  return FactoredTriple<S>(f1, f2, f3, budget).evaluate_naive();
}

}  // namespace trimoduli
