#pragma once

#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crf/numeric.hpp"

namespace crf {

// Exponent of z^alpha zbar^beta in n complex variables, stored as
// (alpha_1..alpha_n, beta_1..beta_n). For n = 2 the components are named
// s (z1), t (z2), h (zbar1), r (zbar2); the bracket index [t s r h] used by
// the flattening tables is converted here and nowhere else.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::vector<int> e);
  Exponent(int s, int t, int h, int r) : Exponent(std::vector<int>{s, t, h, r}) {}

  // Monomial z1^s z2^t zbar1^h zbar2^r addressed by the bracket order [t s r h].
  static Exponent bracket(int t, int s, int r, int h) { return Exponent(s, t, h, r); }
  static Exponent zero(int nvars) { return Exponent(std::vector<int>(2 * nvars, 0)); }

  int nvars() const { return static_cast<int>(e_.size() / 2); }
  int degree() const { return degree_; }
  int hol(int j) const { return e_[j]; }
  int antihol(int j) const { return e_[nvars() + j]; }
  int s() const { return e_[0]; }
  int t() const { return e_[1]; }
  int h() const { return e_[2]; }
  int r() const { return e_[3]; }
  const std::vector<int>& raw() const { return e_; }

  Exponent conj() const;
  Exponent operator+(const Exponent& o) const;
  std::string str() const;

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.e_ == b.e_; }
  // Graded order: total degree first, then lexicographic on the raw vector.
  friend bool operator<(const Exponent& a, const Exponent& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.e_ < b.e_;
  }

 private:
  std::vector<int> e_;
  int degree_ = 0;
};

// Differentiation variable: z_j or zbar_j (0-based j).
struct Var {
  int index;
  bool bar;
};
inline Var z(int j) { return {j - 1, false}; }
inline Var zb(int j) { return {j - 1, true}; }

// Truncated polynomial over GaussianRational. All stored terms have degree
// <= trunc and nonzero coefficient; the value is exact through degree trunc.
class Series {
 public:
  using Terms = std::map<Exponent, GaussianRational>;

  Series() = default;
  Series(int nvars, int trunc);

  static Series monomial(const Exponent& e, const GaussianRational& c, int trunc);
  static Series constant(int nvars, const GaussianRational& c, int trunc);
  // The variable z_j or zbar_j as a series.
  static Series variable(int nvars, Var v, int trunc);

  int nvars() const { return nvars_; }
  int trunc() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Coefficient lookup; absent exponents and negative components give 0.
  GaussianRational coeff(const Exponent& e) const;
  GaussianRational coeff(int s, int t, int h, int r) const;

  // Adds c to the coefficient at e; terms above trunc are dropped.
  void add_term(const Exponent& e, const GaussianRational& c);
  void set_term(const Exponent& e, const GaussianRational& c);

  // Lowest degree with a nonzero term, or trunc + 1 when the value is zero.
  int valuation() const;
  Series homogeneous_part(int degree) const;
  // Lowers the truncation; raising it is never allowed.
  Series truncated(int trunc) const;

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series operator-() const;

  friend bool operator==(const Series& a, const Series& b) {
    return a.nvars_ == b.nvars_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

 private:
  int nvars_ = 0;
  int trunc_ = 0;
  Terms terms_;
};

Series operator+(Series a, const Series& b);
Series operator-(Series a, const Series& b);
Series operator*(const GaussianRational& c, const Series& a);

// Product truncated to min(a.trunc, b.trunc).
Series operator*(const Series& a, const Series& b);

// Product that keeps every degree fixed by the inputs: since a is exact
// through a.trunc with valuation va (likewise b), the product is exact
// through min(a.trunc + vb, b.trunc + va).
Series mul_graded(const Series& a, const Series& b);

// Same value as operator*, with the outer loop split across OpenMP threads.
Series mul_parallel(const Series& a, const Series& b);

Series conj(const Series& a);
Series d(const Series& a, Var v);
bool is_real(const Series& a);

// Polynomial in (z, zbar, w): (exponent, w power) -> coefficient.
using WPolynomial = std::map<std::pair<Exponent, int>, GaussianRational>;

// Replaces w by value; the result carries value's truncation.
Series subst_w(const WPolynomial& tmpl, const Series& value);

// Substitutes z = zt * P (row vector times P) and zbar = conj of that.
Series linear_subst(const Series& a, const std::vector<std::vector<GaussianRational>>& p);

// Canonical term lines "s t h r re im", one per stored term, graded order.
std::string format_terms(const Series& a);
// Parses term lines into a; duplicates and degree > trunc are errors.
void parse_term_line(const std::string& line, Series& a, std::set<Exponent>& seen);

}  // namespace crf
