#include "crf/germ.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "crf/errors.hpp"

namespace crf {

namespace {

Exponent quad_exp(int n, int j, bool jbar, int k, bool kbar) {
  std::vector<int> e(2 * n, 0);
  ++e[jbar ? n + j : j];
  ++e[kbar ? n + k : k];
  return Exponent(std::move(e));
}

int header_value(const std::string& line, const std::string& key) {
  std::istringstream is(line);
  std::string k, extra;
  long v = 0;
  if (!(is >> k) || k != key || !(is >> v) || (is >> extra))
    throw ParseError("expected '" + key + " <int>', got '" + line + "'");
  return static_cast<int>(v);
}

}  // namespace

Germ::Germ(Series r) : r_(std::move(r)) {
  if (r_.trunc() < 2) throw PreconditionError("germ truncation must be at least 2");
  for (const auto& [e, c] : r_.terms()) {
    if (e.degree() >= 2) break;
    throw PreconditionError("germ has a term of degree " + std::to_string(e.degree()) + " (" + e.str() + ")");
  }
  germ_quadratic(*this);
}

QuadraticPair make_pair(const ExactMatrix& a, const ExactMatrix& b) {
  size_t n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n) throw PreconditionError("pair matrices must be n x n");
  ExactMatrix s(n, n);
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k) s(j, k) = (a(j, k) + a(k, j)) * GaussianRational(make_rational(1, 2));
  return {s, b};
}

Series pair_series(const QuadraticPair& p, int trunc) {
  int n = static_cast<int>(p.A.rows());
  Series s(n, trunc);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      s.add_term(quad_exp(n, j, false, k, false), p.A(j, k));
      s.add_term(quad_exp(n, j, true, k, true), p.A(j, k).conj());
      s.add_term(quad_exp(n, j, false, k, true), p.B(j, k));
    }
  return s;
}

QuadraticPair transform_pair(const QuadraticPair& p, const ExactMatrix& P, const GaussianRational& mu) {
  if (mu.is_zero()) throw PreconditionError("mu must be nonzero");
  ExactMatrix a = scale(mu.conj().inverse(), P * p.A * P.transpose());
  ExactMatrix b = scale(mu.inverse(), P * p.B * adjoint(P));
  return {a, b};
}

void KernelPolynomial::validate() const {
  if (m < 1) throw PreconditionError("kernel weight must be positive");
  for (const auto& [key, c] : coeffs) {
    if (key[0] < 0 || key[1] < 0 || key[2] < 0) throw PreconditionError("negative kernel index");
    if (key[0] + key[1] + 2 * key[2] != m)
      throw PreconditionError("kernel term violates the weight condition |a| + 2j = m");
    if (m % 2 == 0 && key[0] == 0 && key[1] == 0 && !c.is_zero())
      throw PreconditionError("kernel coefficient b_{0,m/2} must vanish for even m");
  }
}

WPolynomial KernelPolynomial::to_template() const {
  WPolynomial t;
  for (const auto& [key, c] : coeffs)
    if (!c.is_zero()) t[{Exponent(key[0], key[1], 0, 0), key[2]}] = c;
  return t;
}

GESplit germ_split(const Germ& g) {
  Series cr = conj(g.R());
  Series G = GaussianRational(make_rational(1, 2)) * (g.R() + cr);
  Series E = GaussianRational(0, make_rational(-1, 2)) * (g.R() - cr);
  return {G, E};
}

QuadraticPair germ_quadratic(const Germ& g) {
  int n = g.n();
  const Series& r = g.R();
  ExactMatrix a(n, n), b(n, n);
  GaussianRational half(make_rational(1, 2));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      b(j, k) = r.coeff(quad_exp(n, j, false, k, true));
      GaussianRational c = r.coeff(quad_exp(n, j, false, k, false));
      a(j, k) = j == k ? c : c * half;
    }
  QuadraticPair p{a, b};
  Series rebuilt = pair_series(p, 2);
  if (rebuilt != r.truncated(2).homogeneous_part(2))
    throw PreconditionError("quadratic part is not of the form 2Re(zAz^t) + zBzbar^t");
  return p;
}

Germ germ_linear_change(const Germ& g, const ExactMatrix& P, const GaussianRational& mu) {
  int n = g.n();
  if (static_cast<int>(P.rows()) != n || static_cast<int>(P.cols()) != n)
    throw PreconditionError("P must be n x n");
  if (rank(P) != static_cast<size_t>(n)) throw PreconditionError("P is singular");
  if (mu.is_zero()) throw PreconditionError("mu must be nonzero");
  std::vector<std::vector<GaussianRational>> rows(n, std::vector<GaussianRational>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) rows[j][k] = P(j, k);
  // R has no w dependence, so the graph form is reached in one step.
  Series rt = mu.inverse() * linear_subst(g.R(), rows);
  QuadraticPair p = germ_quadratic(g);
  ExactMatrix pap = P * p.A * P.transpose();
  GaussianRational shift = mu.conj().inverse() - mu.inverse();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) rt.add_term(quad_exp(n, j, false, k, false), shift * pap(j, k));
  return Germ(rt);
}

Germ germ_shear(const Germ& g, const KernelPolynomial& k) {
  k.validate();
  if (g.n() != 2) throw PreconditionError("shear kernels are defined for n = 2");
  return Germ(g.R() + subst_w(k.to_template(), g.R()));
}

std::vector<std::string> content_lines(std::istream& is) {
  std::vector<std::string> out;
  for (std::string line; std::getline(is, line);) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

Series read_series(std::istream& is) {
  auto lines = content_lines(is);
  if (lines.size() < 2) throw ParseError("missing 'vars' / 'order' header");
  int n = header_value(lines[0], "vars");
  int order = header_value(lines[1], "order");
  if (n < 1) throw ParseError("vars must be positive");
  if (order < 0) throw ParseError("order must be non-negative");
  Series s(n, order);
  std::set<Exponent> seen;
  for (size_t k = 2; k < lines.size(); ++k) parse_term_line(lines[k], s, seen);
  return s;
}

void write_series(std::ostream& os, const Series& s) {
  os << "vars " << s.nvars() << "\norder " << s.trunc() << '\n' << format_terms(s);
}

Germ read_germ(std::istream& is) { return Germ(read_series(is)); }
void write_germ(std::ostream& os, const Germ& g) { write_series(os, g.R()); }

KernelPolynomial read_kernel(std::istream& is) {
  auto lines = content_lines(is);
  if (lines.empty()) throw ParseError("missing 'weight' header");
  KernelPolynomial k;
  k.m = header_value(lines[0], "weight");
  for (size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ls(lines[i]);
    std::array<int, 3> key{};
    std::string re, im, extra;
    if (!(ls >> key[0] >> key[1] >> key[2] >> re >> im) || (ls >> extra))
      throw ParseError("kernel line needs 'a1 a2 j re im': '" + lines[i] + "'");
    if (k.coeffs.count(key)) throw ParseError("duplicate kernel index in '" + lines[i] + "'");
    GaussianRational c(parse_rational(re), parse_rational(im));
    if (!c.is_zero()) k.coeffs[key] = c;
  }
  try {
    k.validate();
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  return k;
}

void write_kernel(std::ostream& os, const KernelPolynomial& k) {
  os << "weight " << k.m << '\n';
  for (const auto& [key, c] : k.coeffs)
    os << key[0] << ' ' << key[1] << ' ' << key[2] << ' ' << format_rational(c.re()) << ' '
       << format_rational(c.im()) << '\n';
}

namespace {
std::ifstream open_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  return f;
}
}  // namespace

Germ load_germ(const std::string& path) {
  auto f = open_input(path);
  return read_germ(f);
}

Series load_series(const std::string& path) {
  auto f = open_input(path);
  return read_series(f);
}

KernelPolynomial load_kernel(const std::string& path) {
  auto f = open_input(path);
  return read_kernel(f);
}

}  // namespace crf
