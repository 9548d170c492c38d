#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crf/germ.hpp"
#include "crf/linalg.hpp"

namespace crf {

// Degree-m part of Im F for a germ over the parabolic quadric. Entry [t s r h]
// is the coefficient of z1^s z2^t zbar1^h zbar2^r; negative indices read as 0.
struct HTable {
  int m = 0;
  Series poly;

  GaussianRational at(int t, int s, int r, int h) const { return poly.coeff(s, t, h, r); }
  bool is_zero() const { return poly.is_zero(); }
};

// Keeps only the degree-m part of s.
HTable make_htable(const Series& s, int m);

struct PhiPsiTables {
  int m = 0;
  Series phi;  // degree m
  Series psi;  // degree m + 1
};

using TermList = std::vector<std::pair<Exponent, GaussianRational>>;

struct FundamentalCheck {
  bool holds = true;
  TermList violations;
};

struct AuditLine {
  std::string name;
  long checked = 0;
  long failed = 0;
};

struct AuditReport {
  bool skipped = false;
  std::string reason;
  std::vector<AuditLine> lines;
  bool ok() const;
};

struct KTransform {
  int k = 0;
  std::map<std::pair<int, int>, GaussianRational> values;  // [s h]
};

struct NormConstraint {
  Exponent e;
  bool real_only = false;
  std::string label;
};

struct NormalizationSystem {
  int m = 0;
  std::vector<NormConstraint> constraints;
  int duplicates_merged = 0;
  size_t row_count() const;
};

struct KernelSolve {
  KernelPolynomial kernel;
  bool consistent = false;
  // H + Im B(z, q) for the returned kernel.
  HTable normalized;
  // Labels of constraints the normalized table still violates.
  std::vector<std::string> violated;
};

struct FlattenStep {
  int m = 0;
  KernelPolynomial kernel;
  bool consistent = true;
  bool normalized_zero = true;
  HTable remainder;
  std::vector<std::string> violated;
  FundamentalCheck fundamental;
};

struct FlattenResult {
  std::vector<FlattenStep> steps;
  Germ final;
  // True when every degree up to the requested order normalized to zero.
  bool completed = false;
};

struct NullspaceResult {
  size_t unknowns = 0;
  size_t rows = 0;
  std::vector<HTable> basis;
  size_t dim() const { return basis.size(); }
};

struct ParityReport {
  bool fundamental_ok = false;
  bool normalization_ok = false;
  TermList violations;
  bool ok() const { return violations.empty(); }
};

// |z1|^2 + |z2|^2 + (z1^2 + z2^2 + zbar1^2 + zbar2^2)/2.
Series p1_quadric(int trunc);
Germ p1_germ(int trunc);
// Real basis of the real homogeneous polynomials of degree m:
// x^e for self-conjugate e, x^e + x^conj(e) and i(x^e - x^conj(e)) otherwise.
std::vector<Series> real_basis(int m);

HTable h_from_germ(const Germ& g, int m);
PhiPsiTables phi_psi(const HTable& H);
// (z2 + zbar2) Psi_1 - (z1 + zbar1) Psi_2.
Series fundamental_expression(const PhiPsiTables& t);
FundamentalCheck check_fundamental(const PhiPsiTables& t);

KTransform k_transform(const Series& table, int deg, int k);

AuditReport recursion_audit(const HTable& H, const PhiPsiTables& t);
AuditReport identity_audit(const HTable& H);
// Odd part in z1 (s + h odd) of a normalized solution for odd m; it must vanish.
ParityReport parity_audit(const HTable& H, bool require_preconditions = true);

NormalizationSystem normalization_system(int m);
// Violated constraint labels of a degree-m table.
std::vector<std::string> normalization_violations(const NormalizationSystem& sys, const Series& h);

// Keys (a1, a2, j) with a1 + a2 + 2j = m, without (0, 0, m/2).
std::vector<std::array<int, 3>> kernel_keys(int m);
// Degree-m part of Im B(z, q).
Series kernel_image(const KernelPolynomial& k);

KernelSolve solve_kernel_detailed(const Germ& g, int m, Exec exec = Exec::Serial);
// Throws ConsistencyError when no kernel normalizes H.
KernelPolynomial solve_kernel(const Germ& g, int m, Exec exec = Exec::Serial);

FlattenResult flatten_to_order(const Germ& g, int order, Exec exec = Exec::Serial);

std::vector<HTable> fundamental_nullspace(int m, Exec exec = Exec::Serial);
NullspaceResult uniqueness_nullspace(int m, Exec exec = Exec::Serial);

// "[t s r h] re im" lines, graded order.
std::string format_htable(const HTable& H, const std::string& prefix = "");

}  // namespace crf
