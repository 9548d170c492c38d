#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>

#include "crf/linalg.hpp"
#include "crf/series.hpp"

namespace crf {

// w = R(z, zbar) with R = O(|z|^2); the value is exact through R.trunc().
class Germ {
 public:
  Germ() = default;
  // Rejects constant and linear terms, trunc < 2, and a quadratic part whose
  // zbar^2 block is not the conjugate of its z^2 block.
  explicit Germ(Series r);

  int n() const { return r_.nvars(); }
  int trunc() const { return r_.trunc(); }
  const Series& R() const { return r_; }

  friend bool operator==(const Germ& a, const Germ& b) { return a.r_ == b.r_; }

 private:
  Series r_;
};

// G = (R + conj R)/2 and E = (R - conj R)/(2i), so R = G + iE with G, E real.
struct GESplit {
  Series G;
  Series E;
};

// Quadratic part zAz^t + conj(zAz^t) + zBzbar^t, with A symmetric.
struct QuadraticPair {
  ExactMatrix A;
  ExactMatrix B;
  friend bool operator==(const QuadraticPair& x, const QuadraticPair& y) { return x.A == y.A && x.B == y.B; }
};

// Symmetrizes A.
QuadraticPair make_pair(const ExactMatrix& a, const ExactMatrix& b);
// Quadratic series of a pair, at the given truncation.
Series pair_series(const QuadraticPair& p, int trunc);
// Transform by z = zt P, w = mu wt: A -> P A P^t / conj(mu), B -> P B conj(P)^t / mu.
QuadraticPair transform_pair(const QuadraticPair& p, const ExactMatrix& P, const GaussianRational& mu);

// Coefficients b_{a1 a2 j} of B(z, w) = sum b z1^a1 z2^a2 w^j with a1 + a2 + 2j = m.
struct KernelPolynomial {
  int m = 0;
  std::map<std::array<int, 3>, GaussianRational> coeffs;

  // Checks the weight condition and b_{0 0 m/2} = 0 for even m.
  void validate() const;
  WPolynomial to_template() const;
  bool is_zero() const { return coeffs.empty(); }
};

GESplit germ_split(const Germ& g);
QuadraticPair germ_quadratic(const Germ& g);

// w = mu wt, z = zt P, followed by the holomorphic quadratic correction
// that restores the conjugate-symmetric quadratic form.
Germ germ_linear_change(const Germ& g, const ExactMatrix& P, const GaussianRational& mu);

// z' = z, w' = w + B(z, w): R' = R + B(z, R) truncated to g.trunc().
Germ germ_shear(const Germ& g, const KernelPolynomial& k);

// Text formats. Germ: "vars n", "order N", term lines. Kernel: "weight m",
// lines "a1 a2 j re im". Series: "vars n", "order N", term lines.
Germ read_germ(std::istream& is);
void write_germ(std::ostream& os, const Germ& g);
Series read_series(std::istream& is);
void write_series(std::ostream& os, const Series& s);
KernelPolynomial read_kernel(std::istream& is);
void write_kernel(std::ostream& os, const KernelPolynomial& k);

Germ load_germ(const std::string& path);
Series load_series(const std::string& path);
KernelPolynomial load_kernel(const std::string& path);

// Strips comments and blank lines; returns the remaining lines in order.
std::vector<std::string> content_lines(std::istream& is);

}  // namespace crf
