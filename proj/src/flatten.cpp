#include "crf/flatten.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "crf/errors.hpp"

namespace crf {

namespace {

const GaussianRational kI = GaussianRational::imag_unit();

// Row selector of a real linear system: real or imaginary part of one coefficient.
struct RowKey {
  Exponent e;
  bool imag = false;
};

RationalMatrix real_matrix(const std::vector<Series>& cols, const std::vector<RowKey>& rows) {
  RationalMatrix a(rows.size(), cols.size());
  for (size_t c = 0; c < cols.size(); ++c)
    for (size_t r = 0; r < rows.size(); ++r) {
      GaussianRational v = cols[c].coeff(rows[r].e);
      a(r, c) = rows[r].imag ? v.im() : v.re();
    }
  return a;
}

void add_complex_rows(std::vector<RowKey>& rows, const Exponent& e) {
  rows.push_back({e, false});
  rows.push_back({e, true});
}

std::vector<RowKey> norm_rows(const NormalizationSystem& sys) {
  std::vector<RowKey> rows;
  for (const auto& c : sys.constraints) {
    rows.push_back({c.e, false});
    if (!c.real_only) rows.push_back({c.e, true});
  }
  return rows;
}

Series combine(const std::vector<Series>& basis, const std::vector<Rational>& x, int nvars, int trunc) {
  Series out(nvars, trunc);
  for (size_t j = 0; j < x.size(); ++j)
    if (sgn(x[j]) != 0) out += GaussianRational(x[j]) * basis[j];
  return out;
}

std::vector<Exponent> monomials(int m) {
  std::vector<Exponent> out;
  for (int s = 0; s <= m; ++s)
    for (int t = 0; s + t <= m; ++t)
      for (int h = 0; s + t + h <= m; ++h) out.emplace_back(s, t, h, m - s - t - h);
  std::sort(out.begin(), out.end());
  return out;
}

// Real and imaginary parts of every coefficient that any column produces.
std::vector<RowKey> support_rows(const std::vector<Series>& cols) {
  std::set<Exponent> support;
  for (const auto& c : cols)
    for (const auto& [e, v] : c.terms()) support.insert(e);
  std::vector<RowKey> rows;
  for (const auto& e : support) add_complex_rows(rows, e);
  return rows;
}

void require_p1(const Germ& g) {
  if (g.n() != 2 || g.R().truncated(2) != p1_quadric(2))
    throw PreconditionError("flattening driver requires parabolic quadric (P1)");
}

Series imag_part(const Series& p) { return GaussianRational(0, make_rational(-1, 2)) * (p - conj(p)); }

RationalMatrix normalization_image_matrix(const NormalizationSystem& sys, const std::vector<Series>& images) {
  return real_matrix(images, norm_rows(sys));
}

std::vector<Series> kernel_columns(int m) {
  std::vector<Series> cols;
  for (const auto& key : kernel_keys(m))
    for (const GaussianRational& c : {GaussianRational(1), kI}) {
      KernelPolynomial k;
      k.m = m;
      k.coeffs[key] = c;
      cols.push_back(kernel_image(k));
    }
  return cols;
}

KernelPolynomial kernel_from(int m, const std::vector<Rational>& x) {
  KernelPolynomial k;
  k.m = m;
  auto keys = kernel_keys(m);
  for (size_t j = 0; j < keys.size(); ++j) {
    GaussianRational c(x[2 * j], x[2 * j + 1]);
    if (!c.is_zero()) k.coeffs[keys[j]] = c;
  }
  return k;
}

}  // namespace

HTable make_htable(const Series& s, int m) {
  HTable h;
  h.m = m;
  h.poly = Series(2, m);
  for (const auto& [e, c] : s.terms())
    if (e.degree() == m) h.poly.add_term(e, c);
  return h;
}

Series p1_quadric(int trunc) {
  Series q(2, trunc);
  GaussianRational half(make_rational(1, 2));
  q.add_term(Exponent(1, 0, 1, 0), 1);
  q.add_term(Exponent(0, 1, 0, 1), 1);
  q.add_term(Exponent(2, 0, 0, 0), half);
  q.add_term(Exponent(0, 2, 0, 0), half);
  q.add_term(Exponent(0, 0, 2, 0), half);
  q.add_term(Exponent(0, 0, 0, 2), half);
  return q;
}

Germ p1_germ(int trunc) { return Germ(p1_quadric(trunc)); }

std::vector<Series> real_basis(int m) {
  std::vector<Series> out;
  std::set<Exponent> seen;
  for (const auto& e : monomials(m)) {
    if (seen.count(e)) continue;
    Exponent ce = e.conj();
    seen.insert(e);
    seen.insert(ce);
    if (ce == e) {
      out.push_back(Series::monomial(e, 1, m));
    } else {
      Series re(2, m), im(2, m);
      re.add_term(e, 1);
      re.add_term(ce, 1);
      im.add_term(e, kI);
      im.add_term(ce, -kI);
      out.push_back(re);
      out.push_back(im);
    }
  }
  return out;
}

HTable h_from_germ(const Germ& g, int m) {
  require_p1(g);
  if (m > g.trunc()) throw PreconditionError("degree exceeds germ truncation");
  return make_htable(germ_split(g).E, m);
}

std::vector<std::array<int, 3>> kernel_keys(int m) {
  std::vector<std::array<int, 3>> keys;
  for (int j = 0; 2 * j <= m; ++j) {
    int a = m - 2 * j;
    if (a == 0) continue;
    for (int a1 = 0; a1 <= a; ++a1) keys.push_back({a1, a - a1, j});
  }
  return keys;
}

Series kernel_image(const KernelPolynomial& k) {
  k.validate();
  return make_htable(imag_part(subst_w(k.to_template(), p1_quadric(k.m))), k.m).poly;
}

size_t NormalizationSystem::row_count() const {
  size_t n = 0;
  for (const auto& c : constraints) n += c.real_only ? 1 : 2;
  return n;
}

NormalizationSystem normalization_system(int m) {
  if (m < 3) throw PreconditionError("normalization system requires m >= 3");
  std::vector<NormConstraint> raw;
  auto add = [&](int s, int t, int h, int r, bool real_only, const std::string& label) {
    raw.push_back({Exponent(s, t, h, r), real_only, label});
  };
  for (int s1 = 0; s1 <= m; ++s1) add(s1, m - s1, 0, 0, false, "ng.hol");
  // z1^t1 z2^T zbar2^s, s >= 1, with T >= s (t1 > 0) or T >= s + 1 (t1 = 0).
  for (int t1 = 0; t1 <= m; ++t1)
    for (int T = 0; t1 + T <= m; ++T) {
      int s = m - t1 - T;
      if (s < 1) continue;
      if ((t1 > 0 && T >= s) || (t1 == 0 && T >= s + 1)) add(t1, T, 0, s, false, "ng.mixed");
    }
  int mh = (m + 3) / 6;
  int rem = m - 6 * mh;
  std::string block = "II" + std::to_string(rem);
  int lo1 = 0, lo2 = 0, hi2 = 0;
  switch (rem) {
    case -3: lo1 = 4 * mh - 1; lo2 = 2 * mh - 2; hi2 = 3 * mh - 3; break;
    case -2: lo1 = 4 * mh - 1; lo2 = 2 * mh - 1; hi2 = 3 * mh - 3; break;
    case -1: lo1 = 4 * mh;     lo2 = 2 * mh - 1; hi2 = 3 * mh - 2; break;
    case 0:  lo1 = 4 * mh + 1; lo2 = 2 * mh - 1; hi2 = 3 * mh - 2; break;
    case 1:  lo1 = 4 * mh + 1; lo2 = 2 * mh;     hi2 = 3 * mh - 1; break;
    default: lo1 = 4 * mh + 2; lo2 = 2 * mh;     hi2 = 3 * mh - 1; break;
  }
  for (int t = lo1; t <= m - 1; ++t) add(0, t, 0, m - t, false, block + ".a");
  for (int t = lo2; t <= hi2; ++t) add(1, 2 * t + 1, 1, m - 2 * t - 3, false, block + ".b");
  if (rem == -2) add(1, 4 * mh - 3, 1, 2 * mh - 1, true, block + ".re");
  if (rem == 0) add(0, 4 * mh, 0, 2 * mh, true, block + ".re");
  if (rem == 2) add(0, 4 * mh + 1, 0, 2 * mh + 1, true, block + ".re");

  NormalizationSystem sys;
  sys.m = m;
  for (auto& c : raw) {
    auto it = std::find_if(sys.constraints.begin(), sys.constraints.end(),
                           [&](const NormConstraint& o) { return o.e == c.e; });
    if (it == sys.constraints.end()) {
      sys.constraints.push_back(std::move(c));
      continue;
    }
    ++sys.duplicates_merged;
    it->label += "/" + c.label;
    it->real_only = it->real_only && c.real_only;
  }
  return sys;
}

std::vector<std::string> normalization_violations(const NormalizationSystem& sys, const Series& h) {
  std::vector<std::string> out;
  for (const auto& c : sys.constraints) {
    GaussianRational v = h.coeff(c.e);
    bool bad = c.real_only ? sgn(v.re()) != 0 : !v.is_zero();
    if (bad) out.push_back(c.label + " " + c.e.str());
  }
  return out;
}

KernelSolve solve_kernel_detailed(const Germ& g, int m, Exec exec) {
  require_p1(g);
  if (m < 3 || m > g.trunc()) throw PreconditionError("kernel degree must satisfy 3 <= m <= trunc");
  Series E = germ_split(g).E;
  for (int k = 3; k < m; ++k)
    if (!E.homogeneous_part(k).is_zero())
      throw PreconditionError("germ is not flattened to order " + std::to_string(m - 1));
  HTable H = h_from_germ(g, m);
  NormalizationSystem sys = normalization_system(m);
  RationalMatrix NL = normalization_image_matrix(sys, kernel_columns(m));
  if (rank(NL, exec) != NL.cols()) {
    std::ostringstream os;
    os << "normalization system singular at m = " << m << " (" << NL.rows() << " x " << NL.cols()
       << ", rank " << rank(NL, exec) << "): " << format_matrix(to_exact(NL));
    throw ConsistencyError(os.str());
  }
  RationalMatrix NH = real_matrix({H.poly}, norm_rows(sys));
  std::vector<Rational> rhs(NH.rows());
  for (size_t r = 0; r < NH.rows(); ++r) rhs[r] = -NH(r, 0);

  SolveResult<Rational> sol = exact_solve(NL, rhs, exec);
  if (sol.status == SolveStatus::Inconsistent) {
    // Least-index independent rows give a square invertible subsystem.
    RationalMatrix t = NL.transpose();
    std::vector<size_t> pick = rref(t, exec);
    RationalMatrix sq(pick.size(), NL.cols());
    std::vector<Rational> srhs(pick.size());
    for (size_t i = 0; i < pick.size(); ++i) {
      for (size_t c = 0; c < NL.cols(); ++c) sq(i, c) = NL(pick[i], c);
      srhs[i] = rhs[pick[i]];
    }
    sol = exact_solve(sq, srhs, exec);
    if (sol.status != SolveStatus::Unique) throw ConsistencyError("pivot subsystem of the normalization is not invertible");
    sol.status = SolveStatus::Inconsistent;
  }
  KernelSolve ks;
  ks.kernel = kernel_from(m, sol.x);
  ks.normalized = make_htable(H.poly + kernel_image(ks.kernel), m);
  ks.violated = normalization_violations(sys, ks.normalized.poly);
  ks.consistent = ks.violated.empty();
  if (ks.consistent != (sol.status == SolveStatus::Unique))
    throw ConsistencyError("normalization solve status disagrees with the residual check");
  return ks;
}

KernelPolynomial solve_kernel(const Germ& g, int m, Exec exec) {
  KernelSolve ks = solve_kernel_detailed(g, m, exec);
  if (!ks.consistent)
    throw ConsistencyError("no kernel normalizes H at m = " + std::to_string(m) + "; violated: " + ks.violated.front());
  return ks.kernel;
}

FlattenResult flatten_to_order(const Germ& g, int order, Exec exec) {
  require_p1(g);
  if (order > g.trunc()) throw PreconditionError("flatten order exceeds germ truncation");
  FlattenResult res;
  Germ cur = g;
  for (int m = 3; m <= order; ++m) {
    KernelSolve ks = solve_kernel_detailed(cur, m, exec);
    FlattenStep step;
    step.m = m;
    step.kernel = ks.kernel;
    step.consistent = ks.consistent;
    if (!ks.consistent) {
      step.normalized_zero = false;
      step.remainder = ks.normalized;
      step.violated = ks.violated;
      step.fundamental = check_fundamental(phi_psi(ks.normalized));
      res.steps.push_back(std::move(step));
      res.final = cur;
      return res;
    }
    Germ next = ks.kernel.is_zero() ? cur : germ_shear(cur, ks.kernel);
    HTable after = h_from_germ(next, m);
    if (!(after.poly - ks.normalized.poly).is_zero())
      throw ConsistencyError("sheared germ disagrees with the predicted normalized table at m = " + std::to_string(m));
    step.normalized_zero = after.is_zero();
    if (!step.normalized_zero) {
      step.remainder = after;
      step.fundamental = check_fundamental(phi_psi(after));
      res.steps.push_back(std::move(step));
      res.final = next;
      return res;
    }
    res.steps.push_back(std::move(step));
    cur = std::move(next);
  }
  res.final = cur;
  res.completed = true;
  return res;
}

std::vector<HTable> fundamental_nullspace(int m, Exec exec) {
  std::vector<Series> basis = real_basis(m);
  std::vector<Series> fund;
  fund.reserve(basis.size());
  for (const auto& b : basis) fund.push_back(fundamental_expression(phi_psi(make_htable(b, m))));
  RationalMatrix a = real_matrix(fund, support_rows(fund));
  std::vector<HTable> out;
  for (const auto& v : exact_nullspace(a, exec)) out.push_back(make_htable(combine(basis, v, 2, m), m));
  return out;
}

NullspaceResult uniqueness_nullspace(int m, Exec exec) {
  std::vector<Series> basis = real_basis(m);
  std::vector<Series> fund;
  fund.reserve(basis.size());
  for (const auto& b : basis) fund.push_back(fundamental_expression(phi_psi(make_htable(b, m))));
  RationalMatrix F = real_matrix(fund, support_rows(fund));

  std::vector<RowKey> rows = norm_rows(normalization_system(m));
  for (const auto& e : monomials(m)) {
    bool family1 = e.s() == 1 && e.h() == 1;
    bool family0 = e.s() == 0 && e.h() == 0;
    if (family1 || family0) add_complex_rows(rows, e);
  }
  RationalMatrix N = real_matrix(basis, rows);

  RationalMatrix all(F.rows() + N.rows(), basis.size());
  for (size_t r = 0; r < F.rows(); ++r)
    for (size_t c = 0; c < F.cols(); ++c) all(r, c) = F(r, c);
  for (size_t r = 0; r < N.rows(); ++r)
    for (size_t c = 0; c < N.cols(); ++c) all(F.rows() + r, c) = N(r, c);

  NullspaceResult res;
  res.unknowns = basis.size();
  res.rows = all.rows();
  for (const auto& v : exact_nullspace(all, exec)) res.basis.push_back(make_htable(combine(basis, v, 2, m), m));
  return res;
}

std::string format_htable(const HTable& H, const std::string& prefix) {
  std::ostringstream os;
  for (const auto& [e, c] : H.poly.terms())
    os << prefix << (prefix.empty() ? "" : " ") << '[' << e.t() << ' ' << e.s() << ' ' << e.r() << ' ' << e.h()
       << "] " << format_rational(c.re()) << ' ' << format_rational(c.im()) << '\n';
  return os.str();
}

}  // namespace crf
