#pragma once

// Sparse multivariate polynomials over a fixed variable catalog.
//
// The standard catalogs hold the six ternary groups x, y, z (covariant) and
// xi, eta, zeta (contravariant), either once (single slot) or in three slot
// copies as needed by the Omega process. Named catalogs carry free variables
// such as the normal-form parameters (u, v, w).

#include "trimoduli/scalar.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace trimoduli {

enum class Group : std::uint8_t { x = 0, y = 1, z = 2, xi = 3, eta = 4, zeta = 5 };

inline constexpr int kGroupCount = 6;
inline constexpr std::array<Group, 6> kAllGroups = {Group::x,  Group::y,   Group::z,
                                                    Group::xi, Group::eta, Group::zeta};

const char* group_name(Group g);

struct VariableRef {
  Group group = Group::x;
  int index = 1;  // 1..3
  int slot = 1;   // 1..3
  friend bool operator==(const VariableRef&, const VariableRef&) = default;
};

inline constexpr int kMaxVariables = 54;
using Monomial = std::array<std::uint8_t, kMaxVariables>;

class CatalogError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Catalog {
 public:
  enum class Kind { single_slot, three_slot, named };

  static std::shared_ptr<const Catalog> single_slot();
  static std::shared_ptr<const Catalog> three_slot();
  static std::shared_ptr<const Catalog> named(std::vector<std::string> names);

  Kind kind() const { return kind_; }
  int size() const { return static_cast<int>(names_.size()); }
  int slots() const;
  const std::string& name(int pos) const { return names_.at(static_cast<std::size_t>(pos)); }

  /// Position of a group variable, or nullopt when the catalog lacks it.
  std::optional<int> position(const VariableRef& v) const;
  int require(const VariableRef& v) const;
  std::optional<VariableRef> reference(int pos) const;

  friend bool operator==(const Catalog& l, const Catalog& r) {
    return l.kind_ == r.kind_ && l.names_ == r.names_;
  }

 private:
  Catalog(Kind k, std::vector<std::string> names) : kind_(k), names_(std::move(names)) {}
  Kind kind_;
  std::vector<std::string> names_;
};

using CatalogPtr = std::shared_ptr<const Catalog>;

inline bool same_catalog(const CatalogPtr& a, const CatalogPtr& b) {
  return a == b || (a && b && *a == *b);
}

template <RingScalar S>
class MultiPoly {
 public:
  using Scalar = S;
  using TermMap = std::map<Monomial, S>;

  explicit MultiPoly(CatalogPtr catalog) : catalog_(std::move(catalog)) {
    if (!catalog_) throw CatalogError("MultiPoly: null catalog");
  }

  static MultiPoly constant(CatalogPtr catalog, const S& value) {
    MultiPoly p(std::move(catalog));
    p.add_term(Monomial{}, value);
    return p;
  }

  static MultiPoly variable(CatalogPtr catalog, int pos) {
    check_position(*catalog, pos);
    MultiPoly p(std::move(catalog));
    Monomial m{};
    m[static_cast<std::size_t>(pos)] = 1;
    p.add_term(m, scalar_from_int<S>(1));
    return p;
  }

  static MultiPoly variable(CatalogPtr catalog, const VariableRef& v) {
    const int pos = catalog->require(v);
    return variable(std::move(catalog), pos);
  }

  const CatalogPtr& catalog() const { return catalog_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? scalar_from_int<S>(0) : it->second;
  }

  void add_term(const Monomial& m, const S& c) {
    if (ScalarTraits<S>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (ScalarTraits<S>::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Highest total degree in the variables of one (group, slot).
  int degree(Group g, int slot = 1) const {
    std::array<int, 3> pos{};
    for (int i = 0; i < 3; ++i) pos[static_cast<std::size_t>(i)] = catalog_->require({g, i + 1, slot});
    int best = 0;
    for (const auto& [m, c] : terms_) {
      int d = 0;
      for (int p : pos) d += m[static_cast<std::size_t>(p)];
      best = std::max(best, d);
    }
    return best;
  }

  int total_degree() const {
    int best = 0;
    for (const auto& [m, c] : terms_) {
      int d = 0;
      for (int i = 0; i < catalog_->size(); ++i) d += m[static_cast<std::size_t>(i)];
      best = std::max(best, d);
    }
    return best;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend MultiPoly operator+(MultiPoly l, const MultiPoly& r) { return l += r; }
  friend MultiPoly operator-(MultiPoly l, const MultiPoly& r) { return l -= r; }
  friend MultiPoly operator-(const MultiPoly& p) { return p.scaled(scalar_from_int<S>(-1)); }

  friend MultiPoly operator*(const MultiPoly& l, const MultiPoly& r) {
    l.require_same(r);
    MultiPoly out(l.catalog_);
    const int n = l.catalog_->size();
    for (const auto& [ml, cl] : l.terms_) {
      for (const auto& [mr, cr] : r.terms_) {
        Monomial m{};
        for (int i = 0; i < n; ++i) {
          const auto k = static_cast<std::size_t>(i);
          const int e = ml[k] + mr[k];
          if (e > 255) throw std::overflow_error("MultiPoly: exponent overflow");
          m[k] = static_cast<std::uint8_t>(e);
        }
        out.add_term(m, cl * cr);
      }
    }
    return out;
  }

  MultiPoly scaled(const S& s) const {
    MultiPoly out(catalog_);
    if (ScalarTraits<S>::is_zero(s)) return out;
    for (const auto& [m, c] : terms_) out.add_term(m, c * s);
    return out;
  }

  MultiPoly pow(int e) const {
    if (e < 0) throw std::invalid_argument("MultiPoly::pow: negative exponent");
    MultiPoly out = constant(catalog_, scalar_from_int<S>(1));
    for (int i = 0; i < e; ++i) out *= *this;
    return out;
  }

  /// Formal partial derivative in the variable at catalog position pos.
  MultiPoly diff(int pos) const {
    check_position(*catalog_, pos);
    Monomial orders{};
    orders[static_cast<std::size_t>(pos)] = 1;
    return derivative(orders);
  }
  MultiPoly diff(const VariableRef& v) const { return diff(catalog_->require(v)); }

  /// Mixed partial derivative with the given order per variable.
  MultiPoly derivative(const Monomial& orders) const {
    MultiPoly out(catalog_);
    const int n = catalog_->size();
    for (const auto& [m, c] : terms_) {
      Monomial r = m;
      long factor = 1;
      bool alive = true;
      for (int i = 0; i < n && alive; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const int want = orders[k];
        if (want == 0) continue;
        if (m[k] < want) {
          alive = false;
          break;
        }
        for (int j = 0; j < want; ++j) factor *= (m[k] - j);
        r[k] = static_cast<std::uint8_t>(m[k] - want);
      }
      if (alive) out.add_term(r, c * scalar_from_int<S>(factor));
    }
    return out;
  }

  /// Evaluates at a full assignment (one value per catalog variable).
  template <class T = S>
  T eval(std::span<const T> assignment) const {
    if (static_cast<int>(assignment.size()) != catalog_->size())
      throw CatalogError("MultiPoly::eval: assignment size does not match catalog");
    T sum{};
    for (const auto& [m, c] : terms_) {
      T term = convert<T>(c);
      for (int i = 0; i < catalog_->size(); ++i) {
        for (int j = 0; j < m[static_cast<std::size_t>(i)]; ++j)
          term = term * assignment[static_cast<std::size_t>(i)];
      }
      sum = sum + term;
    }
    return sum;
  }

  template <class T, class F>
  MultiPoly<T> map_coefficients(F&& f) const {
    MultiPoly<T> out(catalog_);
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

  MultiPoly<Complex> to_complex() const {
    return map_coefficients<Complex>([](const S& c) { return ScalarTraits<S>::to_complex(c); });
  }

  /// Reinterprets the same terms over another catalog of identical size.
  MultiPoly relabel(CatalogPtr other) const {
    if (other->size() != catalog_->size()) throw CatalogError("MultiPoly::relabel: size mismatch");
    MultiPoly out(std::move(other));
    out.terms_ = terms_;
    return out;
  }

  /// Debug serialization: sorted term list "coef*var^e*...".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << ScalarTraits<S>::to_string(c);
      for (int i = 0; i < catalog_->size(); ++i) {
        const int e = m[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        os << '*' << catalog_->name(i);
        if (e > 1) os << '^' << e;
      }
    }
    return os.str();
  }

  friend bool operator==(const MultiPoly& l, const MultiPoly& r) {
    return same_catalog(l.catalog_, r.catalog_) && l.terms_ == r.terms_;
  }

 private:
  template <class T>
  static T convert(const S& c) {
    if constexpr (std::is_same_v<T, S>) {
      return c;
    } else {
      return T(ScalarTraits<S>::to_complex(c));
    }
  }

  static void check_position(const Catalog& cat, int pos) {
    if (pos < 0 || pos >= cat.size()) throw CatalogError("variable outside catalog");
  }

  void require_same(const MultiPoly& o) const {
    if (!same_catalog(catalog_, o.catalog_)) throw CatalogError("MultiPoly: catalog mismatch");
  }

  CatalogPtr catalog_;
  TermMap terms_;
};

}  // namespace trimoduli
