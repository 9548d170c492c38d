#pragma once

#include <gmpxx.h>

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace crf {

// Arbitrary-precision rational; GMP keeps it canonical (gcd 1, den > 0).
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

// Exact square root of a non-negative rational, if it is rational.
std::optional<Rational> rational_sqrt(const Rational& q);

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = 0);
  GaussianRational(long re) : GaussianRational(Rational(re)) {}
  GaussianRational(int re) : GaussianRational(Rational(re)) {}

  static GaussianRational imag_unit() { return {0, 1}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  GaussianRational conj() const { return {re_, -im_}; }
  // |x|^2, always rational.
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

 private:
  Rational re_;
  Rational im_;
};

// Square root in Q(i) when one exists; the root with positive real part
// (or positive imaginary part when purely imaginary) is returned.
std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& x);

// Literal syntax: "p/q", "r/s i", "-r/s i", "p/q+r/s i", "i", "-i".
GaussianRational parse_gaussian(std::string_view text);
std::string format_gaussian(const GaussianRational& x);

std::ostream& operator<<(std::ostream& os, const GaussianRational& x);

}  // namespace crf
