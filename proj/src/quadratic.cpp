#include "crf/quadratic.hpp"

#include <algorithm>
#include <set>

#include "crf/errors.hpp"

namespace crf {

namespace {

const GaussianRational kI = GaussianRational::imag_unit();

ExactMatrix mat2(GaussianRational a, GaussianRational b, GaussianRational c, GaussianRational d) {
  return ExactMatrix(2, 2, {a, b, c, d});
}

bool is_real_nonneg(const GaussianRational& x) { return x.is_real() && sgn(x.re()) >= 0; }

bool is_diag(const ExactMatrix& m) { return m(0, 1).is_zero() && m(1, 0).is_zero(); }

void require_n2(const QuadraticPair& p) {
  if (p.A.rows() != 2) throw PreconditionError("operation requires n = 2");
}

std::string roots_text(std::vector<GaussianRational> roots) {
  std::sort(roots.begin(), roots.end(), [](const GaussianRational& a, const GaussianRational& b) {
    if (a.re() != b.re()) return a.re() < b.re();
    return a.im() < b.im();
  });
  std::string out = "{";
  for (size_t k = 0; k < roots.size(); ++k) out += (k ? ", " : "") + format_gaussian(roots[k]);
  return out + "}";
}

EllipticCandidate evaluate(const QuadraticPair& pair, std::string source, std::vector<GaussianRational> c,
                           std::string note = {}) {
  EllipticCandidate cand{std::move(source), std::move(c), std::nullopt, std::move(note)};
  try {
    cand.slice = bishop_slice(pair, cand.c);
  } catch (const PreconditionError&) {
    cand.note += cand.note.empty() ? "degenerate slice" : "; degenerate slice";
  }
  return cand;
}

EllipticCandidate irrational(std::string source, std::string note) {
  return EllipticCandidate{std::move(source), {}, std::nullopt, "irrational candidate: " + std::move(note)};
}

void recipe_candidates(const QuadraticPair& pair, std::vector<EllipticCandidate>& out) {
  const ExactMatrix& A = pair.A;
  const ExactMatrix& B = pair.B;
  const GaussianRational half(make_rational(1, 2));
  const ExactMatrix id = ExactMatrix::identity(2);
  const ExactMatrix split = mat2(1, 0, 0, -1);
  const ExactMatrix anti = mat2(0, 1, 1, 0);

  if (B == id && is_diag(A) && is_real_nonneg(A(0, 0)) && is_real_nonneg(A(1, 1))) {
    const GaussianRational& l1 = A(0, 0);
    const GaussianRational& l2 = A(1, 1);
    std::vector<GaussianRational> c;
    if (l1 == l2)
      c = {1, kI};
    else if (l1.re() < l2.re())
      c = {l2, kI * l1};
    else
      c = {kI * l2, l1};
    auto cand = evaluate(pair, "A", c);
    if (!cand.verified()) cand.note = "recipe direction is not elliptic";
    out.push_back(std::move(cand));
    return;
  }
  if (B == split && is_diag(A) && is_real_nonneg(A(0, 0)) && A(1, 1).is_real() && A(0, 0).re() <= A(1, 1).re()) {
    const Rational& l1 = A(0, 0).re();
    const Rational& l2 = A(1, 1).re();
    if (l1 < make_rational(1, 2)) {
      out.push_back(evaluate(pair, "B", {1, 0}));
    } else if (l1 < l2) {
      auto root = rational_sqrt(l1 / l2);
      if (root)
        out.push_back(evaluate(pair, "B", {1, kI * GaussianRational(*root)}));
      else
        out.push_back(irrational("B", "lambda1/lambda2 = " + format_rational(l1 / l2) + " is not a rational square"));
    }
    return;
  }
  if (B == split && A(0, 0).is_zero() && A(1, 1).is_zero() && A(0, 1).is_real() && sgn(A(0, 1).re()) > 0) {
    out.push_back(evaluate(pair, "C", {1, 0}));
    return;
  }
  if (B == split && A == mat2(half, half, half, half)) {
    out.push_back(evaluate(pair, "D", {1, GaussianRational(make_rational(-9, 10))}));
    return;
  }
  if (B == anti && A(0, 0).is_zero() && A(1, 1) == half && A(0, 1).is_real() && sgn(A(0, 1).re()) > 0) {
    out.push_back(evaluate(pair, "E", {1, GaussianRational(-4) * A(0, 1)}));
    return;
  }
  if (B == anti && is_diag(A) && A(0, 0) == half && sgn(A(1, 1).im()) > 0) {
    GaussianRational c2 = -(GaussianRational(2) * A(1, 1)).inverse();
    auto root = gaussian_sqrt(c2);
    if (root)
      out.push_back(evaluate(pair, "F", {1, *root}));
    else
      out.push_back(irrational("F", "C^2 = " + format_gaussian(c2) + " has no root in Q(i)"));
  }
}

}  // namespace

std::string to_string(BClass c) {
  switch (c) {
    case BClass::Zero: return "ZERO";
    case BClass::Rank1Herm: return "RANK1_HERM";
    case BClass::Rank1NonHerm: return "RANK1_NONHERM";
    case BClass::HermRank2: return "HERM_RANK2";
    case BClass::UnimodularPair: return "UNIMODULAR_PAIR";
    case BClass::RealReciprocalPair: return "REAL_RECIPROCAL_PAIR";
    case BClass::Jordan: return "JORDAN";
  }
  return "UNKNOWN";
}

FlattenabilityVerdict is_hermitianizable(const QuadraticPair& pair) {
  const ExactMatrix& B = pair.B;
  size_t n = B.rows();
  FlattenabilityVerdict v;
  std::optional<GaussianRational> lambda;
  bool decided = false;
  for (size_t i = 0; i < n && !decided; ++i)
    for (size_t j = 0; j < n && !decided; ++j) {
      if (B(i, j).is_zero() && B(j, i).is_zero()) continue;
      decided = true;
      if (B(j, i).is_zero()) return v;
      lambda = B(i, j) / B(j, i).conj();
    }
  if (!decided) lambda = GaussianRational(1);
  if (lambda->norm() != 1) return v;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (B(i, j) != *lambda * B(j, i).conj()) return v;
  v.flattenable = true;
  v.lambda = lambda;
  if (*lambda == GaussianRational(1))
    v.mu_witness = GaussianRational(1);
  else if (*lambda == GaussianRational(-1))
    v.mu_witness = kI;
  else
    v.mu_witness = GaussianRational(1) + *lambda;
  v.hermitian_B = scale(v.mu_witness->inverse(), B);
  return v;
}

CoarseBClass coarse_b_class(const QuadraticPair& pair) {
  require_n2(pair);
  const ExactMatrix& B = pair.B;
  size_t rk = rank(B);
  bool herm = is_hermitianizable(pair).flattenable;
  if (rk == 0) return {BClass::Zero, ""};
  if (rk == 1) return {herm ? BClass::Rank1Herm : BClass::Rank1NonHerm, ""};
  if (herm) return {BClass::HermRank2, ""};

  ExactMatrix S = inverse2(adjoint(B)) * B;
  GaussianRational tr = S(0, 0) + S(1, 1);
  GaussianRational det = det2(S);
  GaussianRational q = tr * tr / det;
  if (!q.is_real()) throw ConsistencyError("cosquare invariant tr^2/det is not real");
  const Rational four(4);
  BClass tag;
  if (q.re() < four) {
    tag = BClass::UnimodularPair;
  } else if (q.re() > four) {
    tag = BClass::RealReciprocalPair;
  } else {
    if (is_diag(S) && S(0, 0) == S(1, 1)) throw ConsistencyError("scalar cosquare for a non-hermitianizable B");
    tag = BClass::Jordan;
  }
  GaussianRational disc = tr * tr - GaussianRational(4) * det;
  std::string spectrum;
  if (auto root = gaussian_sqrt(disc)) {
    GaussianRational half(make_rational(1, 2));
    spectrum = roots_text({(tr + *root) * half, (tr - *root) * half});
  } else {
    spectrum = "x^2 - (" + format_gaussian(tr) + ") x + (" + format_gaussian(det) + ")";
  }
  return {tag, spectrum};
}

std::optional<BShape> recognize_b_shape(const ExactMatrix& B) {
  if (B.rows() != 2 || B.cols() != 2) return std::nullopt;
  if (B == ExactMatrix(2, 2)) return BShape{9, ""};
  if (B == ExactMatrix::identity(2)) return BShape{5, ""};
  if (B == mat2(1, 0, 0, -1)) return BShape{6, ""};
  if (B == mat2(0, 1, 1, 0)) return BShape{7, ""};
  if (B == mat2(1, 0, 0, 0)) return BShape{8, ""};
  if (B == mat2(0, 1, 0, 0)) return BShape{4, ""};
  if (B == mat2(0, 1, 1, kI)) return BShape{3, ""};
  if (B(0, 0).is_zero() && B(0, 1) == GaussianRational(1) && B(1, 1).is_zero() && B(1, 0).is_real() &&
      sgn(B(1, 0).re()) > 0 && B(1, 0).re() < 1)
    return BShape{2, "tau=" + format_gaussian(B(1, 0))};
  if (is_diag(B) && B(0, 0) == GaussianRational(1) && B(1, 1).norm() == 1 && sgn(B(1, 1).im()) > 0)
    return BShape{1, "u=" + format_gaussian(B(1, 1))};
  return std::nullopt;
}

QuadraticPair subslice_pair(const QuadraticPair& pair, int i, int j) {
  int n = static_cast<int>(pair.A.rows());
  if (n < 3) throw PreconditionError("subslice requires n >= 3");
  if (i < 1 || j <= i || j > n) throw PreconditionError("subslice indices must satisfy 1 <= i < j <= n");
  size_t idx[2] = {static_cast<size_t>(i - 1), static_cast<size_t>(j - 1)};
  ExactMatrix a(2, 2), b(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      a(r, c) = pair.A(idx[r], idx[c]);
      b(r, c) = pair.B(idx[r], idx[c]);
    }
  return {a, b};
}

SliceReport bishop_slice(const QuadraticPair& pair, const std::vector<GaussianRational>& c) {
  size_t n = pair.A.rows();
  if (c.size() != n) throw PreconditionError("direction length must equal n");
  if (std::all_of(c.begin(), c.end(), [](const GaussianRational& x) { return x.is_zero(); }))
    throw PreconditionError("direction must be nonzero");
  SliceReport s;
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k) {
      s.alpha += c[j] * pair.A(j, k) * c[k];
      s.gamma += c[j] * pair.B(j, k) * c[k].conj();
    }
  if (s.gamma.is_zero()) throw PreconditionError("degenerate slice: gamma = 0");
  s.lambda_sq = s.alpha.norm() / s.gamma.norm();
  s.elliptic = 4 * s.alpha.norm() < s.gamma.norm();
  return s;
}

std::vector<EllipticCandidate> elliptic_candidates(const QuadraticPair& pair, int search_bound) {
  require_n2(pair);
  std::vector<EllipticCandidate> out;
  recipe_candidates(pair, out);
  if (search_bound <= 0) return out;

  std::set<Rational> grid;
  for (int q = 1; q <= search_bound; ++q)
    for (int p = -search_bound; p <= search_bound; ++p) grid.insert(make_rational(p, q));
  auto try_dir = [&](std::vector<GaussianRational> c) {
    auto cand = evaluate(pair, "search", std::move(c));
    if (!cand.verified()) return false;
    out.push_back(std::move(cand));
    return true;
  };
  if (try_dir({0, 1})) return out;
  for (const Rational& x : grid)
    for (const Rational& y : grid)
      if (try_dir({1, GaussianRational(x, y)})) return out;
  return out;
}

JacobianReport cr_singular_linearization(const Germ& g) {
  if (g.n() != 2) throw PreconditionError("operation requires n = 2");
  Series rc = conj(g.R());
  Series eqs[4] = {d(g.R(), zb(1)), d(g.R(), zb(2)), d(rc, z(1)), d(rc, z(2))};
  // Column order z1, zbar1, z2, zbar2.
  const Exponent cols[4] = {Exponent(1, 0, 0, 0), Exponent(0, 0, 1, 0), Exponent(0, 1, 0, 0), Exponent(0, 0, 0, 1)};
  JacobianReport rep;
  rep.J = ExactMatrix(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) rep.J(r, c) = eqs[r].coeff(cols[c]);
  rep.rank = rank(rep.J);
  rep.dim_bound = 4 - static_cast<int>(rep.rank);
  return rep;
}

int max_null_dim(int l, int n) {
  if (l < 0 || l > n) throw PreconditionError("max_null_dim requires 0 <= l <= n");
  return std::min(l, n - l);
}

}  // namespace crf
