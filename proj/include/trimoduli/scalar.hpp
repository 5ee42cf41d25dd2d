#pragma once

// Scalar domains shared by the polynomial engine and the group code:
// exact rationals (GMP), the cyclotomic field Q(eps) with eps^2 + eps + 1 = 0,
// and IEEE complex doubles.

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <string>

namespace trimoduli {

using Rational = mpq_class;
using Complex = std::complex<double>;

std::string to_string(const Rational& q);

/// Element a + b*eps of Q(eps), eps = exp(2 pi i / 3).
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  static Cyclotomic epsilon() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& epsilon_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  // Complex conjugation maps eps to eps^2 = -1 - eps.
  Cyclotomic conj() const { return {Rational(a_ - b_), Rational(-b_)}; }

  // Field norm a^2 - ab + b^2.
  Rational norm() const { return Rational(a_ * a_ - a_ * b_ + b_ * b_); }

  Cyclotomic inverse() const;

  Complex to_complex() const;
  std::string to_string() const;

  Cyclotomic& operator+=(const Cyclotomic& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  friend Cyclotomic operator+(Cyclotomic l, const Cyclotomic& r) { return l += r; }
  friend Cyclotomic operator-(Cyclotomic l, const Cyclotomic& r) { return l -= r; }
  friend Cyclotomic operator-(const Cyclotomic& v) { return {Rational(-v.a_), Rational(-v.b_)}; }
  friend Cyclotomic operator*(const Cyclotomic& l, const Cyclotomic& r) {
    // (a + b e)(c + d e) = ac - bd + (ad + bc - bd) e
    Rational bd = l.b_ * r.b_;
    return {Rational(l.a_ * r.a_ - bd), Rational(l.a_ * r.b_ + l.b_ * r.a_ - bd)};
  }

  friend bool operator==(const Cyclotomic& l, const Cyclotomic& r) {
    return l.a_ == r.a_ && l.b_ == r.b_;
  }
  friend std::strong_ordering operator<=>(const Cyclotomic& l, const Cyclotomic& r) {
    int c = cmp(l.a_, r.a_);
    if (c == 0) c = cmp(l.b_, r.b_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational a_{0};
  Rational b_{0};
};

/// Uniform access to the three coefficient domains.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& s) { return sgn(s) == 0; }
  static Complex to_complex(const Rational& s) { return {s.get_d(), 0.0}; }
  static std::string to_string(const Rational& s) { return trimoduli::to_string(s); }
  static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct ScalarTraits<Cyclotomic> {
  static constexpr bool exact = true;
  static bool is_zero(const Cyclotomic& s) { return s.is_zero(); }
  static Complex to_complex(const Cyclotomic& s) { return s.to_complex(); }
  static std::string to_string(const Cyclotomic& s) { return s.to_string(); }
  static Cyclotomic from_rational(const Rational& q) { return Cyclotomic(q); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& s) { return s.real() == 0.0 && s.imag() == 0.0; }
  static Complex to_complex(const Complex& s) { return s; }
  static std::string to_string(const Complex& s);
  static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
};

template <class S>
concept RingScalar = requires(S a, S b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { ScalarTraits<S>::is_zero(a) } -> std::convertible_to<bool>;
  { ScalarTraits<S>::to_complex(a) } -> std::convertible_to<Complex>;
};

template <RingScalar S>
S scalar_from_int(long v) {
  return ScalarTraits<S>::from_rational(Rational(v));
}

}  // namespace trimoduli
