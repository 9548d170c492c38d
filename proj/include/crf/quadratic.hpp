#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crf/germ.hpp"

namespace crf {

struct FlattenabilityVerdict {
  bool flattenable = false;
  // B = lambda * adjoint(B), |lambda| = 1.
  std::optional<GaussianRational> lambda;
  // mu with mu / conj(mu) = lambda; hermitian_B = B / mu is Hermitian.
  std::optional<GaussianRational> mu_witness;
  std::optional<ExactMatrix> hermitian_B;
};

enum class BClass {
  Zero,
  Rank1Herm,
  Rank1NonHerm,
  HermRank2,
  UnimodularPair,
  RealReciprocalPair,
  Jordan,
};

struct CoarseBClass {
  BClass tag = BClass::Zero;
  // Eigenvalues of the cosquare when they lie in Q(i), else its characteristic polynomial.
  std::string cosquare_spectrum;
};

std::string to_string(BClass c);

struct SliceReport {
  GaussianRational alpha;
  GaussianRational gamma;
  Rational lambda_sq;
  bool elliptic = false;
};

struct EllipticCandidate {
  // Recognized shape ("A" .. "F") or "search".
  std::string source;
  // Empty when the recipe direction is not Gaussian rational.
  std::vector<GaussianRational> c;
  std::optional<SliceReport> slice;
  std::string note;

  bool verified() const { return slice && slice->elliptic; }
};

struct JacobianReport {
  // Rows: linear parts of dR/dzbar1, dR/dzbar2, d(conj R)/dz1, d(conj R)/dz2.
  // Columns: z1, zbar1, z2, zbar2.
  ExactMatrix J;
  size_t rank = 0;
  int dim_bound = 4;
};

// Exact match of B against the representative B' shapes of the quadratic list.
struct BShape {
  int family = 0;
  std::string params;
};

FlattenabilityVerdict is_hermitianizable(const QuadraticPair& pair);
CoarseBClass coarse_b_class(const QuadraticPair& pair);
std::optional<BShape> recognize_b_shape(const ExactMatrix& B);

// Rows and columns i, j (1-based, i < j) of both matrices.
QuadraticPair subslice_pair(const QuadraticPair& pair, int i, int j);

// Slice quadric w = alpha xi^2 + conj(alpha) conj(xi)^2 + gamma |xi|^2 along c.
SliceReport bishop_slice(const QuadraticPair& pair, const std::vector<GaussianRational>& c);

// Recipe candidates for the recognized shapes, each checked with bishop_slice,
// then (search_bound > 0) the first elliptic direction among c = (0, 1) and
// c = (1, x + iy) with x, y = p/q, |p| <= bound, 1 <= q <= bound.
std::vector<EllipticCandidate> elliptic_candidates(const QuadraticPair& pair, int search_bound = 6);

JacobianReport cr_singular_linearization(const Germ& g);

// min(l, n - l): largest null subspace of diag(I_l, -I_{n-l}).
int max_null_dim(int l, int n);

}  // namespace crf
