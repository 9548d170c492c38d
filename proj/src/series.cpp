#include "crf/series.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>

#include "crf/errors.hpp"

namespace crf {

Exponent::Exponent(std::vector<int> e) : e_(std::move(e)) {
  if (e_.size() % 2 != 0) throw PreconditionError("exponent needs an even number of components");
  for (int x : e_) {
    if (x < 0) throw PreconditionError("negative exponent");
    degree_ += x;
  }
}

Exponent Exponent::conj() const {
  int n = nvars();
  std::vector<int> c(e_.size());
  for (int j = 0; j < n; ++j) {
    c[j] = e_[n + j];
    c[n + j] = e_[j];
  }
  return Exponent(std::move(c));
}

Exponent Exponent::operator+(const Exponent& o) const {
  std::vector<int> s(e_.size());
  for (size_t k = 0; k < e_.size(); ++k) s[k] = e_[k] + o.e_[k];
  return Exponent(std::move(s));
}

std::string Exponent::str() const {
  std::string out;
  for (size_t k = 0; k < e_.size(); ++k) {
    if (k) out.push_back(' ');
    out += std::to_string(e_[k]);
  }
  return out;
}

Series::Series(int nvars, int trunc) : nvars_(nvars), trunc_(trunc) {
  if (nvars < 1) throw PreconditionError("series needs at least one variable");
  if (trunc < 0) throw PreconditionError("negative truncation");
}

Series Series::monomial(const Exponent& e, const GaussianRational& c, int trunc) {
  Series s(e.nvars(), trunc);
  s.add_term(e, c);
  return s;
}

Series Series::constant(int nvars, const GaussianRational& c, int trunc) {
  return monomial(Exponent::zero(nvars), c, trunc);
}

Series Series::variable(int nvars, Var v, int trunc) {
  std::vector<int> e(2 * nvars, 0);
  e[v.bar ? nvars + v.index : v.index] = 1;
  return monomial(Exponent(e), 1, trunc);
}

GaussianRational Series::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussianRational() : it->second;
}

GaussianRational Series::coeff(int s, int t, int h, int r) const {
  if (s < 0 || t < 0 || h < 0 || r < 0) return {};
  return coeff(Exponent(s, t, h, r));
}

void Series::add_term(const Exponent& e, const GaussianRational& c) {
  if (e.nvars() != nvars_) throw PreconditionError("exponent arity does not match series");
  if (e.degree() > trunc_ || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Series::set_term(const Exponent& e, const GaussianRational& c) {
  if (e.nvars() != nvars_) throw PreconditionError("exponent arity does not match series");
  if (e.degree() > trunc_) return;
  if (c.is_zero())
    terms_.erase(e);
  else
    terms_[e] = c;
}

int Series::valuation() const { return terms_.empty() ? trunc_ + 1 : terms_.begin()->first.degree(); }

Series Series::homogeneous_part(int degree) const {
  Series out(nvars_, trunc_);
  for (const auto& [e, c] : terms_)
    if (e.degree() == degree) out.terms_.emplace_hint(out.terms_.end(), e, c);
  return out;
}

Series Series::truncated(int trunc) const {
  if (trunc > trunc_) throw PreconditionError("cannot raise truncation");
  Series out(nvars_, trunc);
  for (const auto& [e, c] : terms_)
    if (e.degree() <= trunc) out.terms_.emplace_hint(out.terms_.end(), e, c);
  return out;
}

Series& Series::operator+=(const Series& o) {
  if (o.nvars_ != nvars_) throw PreconditionError("nvars mismatch");
  if (o.trunc_ < trunc_) *this = truncated(o.trunc_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series Series::operator-() const {
  Series out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Series operator+(Series a, const Series& b) { return a += b; }
Series operator-(Series a, const Series& b) { return a -= b; }

Series operator*(const GaussianRational& c, const Series& a) {
  Series out(a.nvars(), a.trunc());
  if (c.is_zero()) return out;
  for (const auto& [e, x] : a.terms()) out.add_term(e, c * x);
  return out;
}

namespace {

void accumulate(Series::Terms& acc, const Series::Terms& a, const Series::Terms& b, int trunc) {
  for (const auto& [ea, ca] : a) {
    if (ea.degree() > trunc) break;
    for (const auto& [eb, cb] : b) {
      if (ea.degree() + eb.degree() > trunc) break;
      GaussianRational p = ca * cb;
      auto [it, inserted] = acc.try_emplace(ea + eb, p);
      if (!inserted) it->second += p;
    }
  }
}

Series product(const Series& a, const Series& b, int trunc) {
  if (a.nvars() != b.nvars()) throw PreconditionError("nvars mismatch");
  Series::Terms acc;
  accumulate(acc, a.terms(), b.terms(), trunc);
  Series out(a.nvars(), trunc);
  for (const auto& [e, c] : acc) out.add_term(e, c);
  return out;
}

}  // namespace

Series operator*(const Series& a, const Series& b) { return product(a, b, std::min(a.trunc(), b.trunc())); }

Series mul_graded(const Series& a, const Series& b) {
  int trunc = std::min(a.trunc() + b.valuation(), b.trunc() + a.valuation());
  return product(a, b, trunc);
}

Series mul_parallel(const Series& a, const Series& b) {
  if (a.nvars() != b.nvars()) throw PreconditionError("nvars mismatch");
  int trunc = std::min(a.trunc(), b.trunc());
  std::vector<std::pair<Exponent, GaussianRational>> left(a.terms().begin(), a.terms().end());
  std::vector<Series::Terms> partial;
#pragma omp parallel
  {
#pragma omp single
    partial.resize(omp_get_num_threads());
    Series::Terms& acc = partial[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (long k = 0; k < static_cast<long>(left.size()); ++k) {
      Series::Terms one{{left[k].first, left[k].second}};
      accumulate(acc, one, b.terms(), trunc);
    }
  }
  // Exact addition is order independent, so the merged value matches the serial product.
  Series out(a.nvars(), trunc);
  for (const auto& acc : partial)
    for (const auto& [e, c] : acc) out.add_term(e, c);
  return out;
}

Series conj(const Series& a) {
  Series out(a.nvars(), a.trunc());
  for (const auto& [e, c] : a.terms()) out.add_term(e.conj(), c.conj());
  return out;
}

Series d(const Series& a, Var v) {
  if (v.index < 0 || v.index >= a.nvars()) throw PreconditionError("unknown differentiation variable");
  int slot = v.bar ? a.nvars() + v.index : v.index;
  Series out(a.nvars(), std::max(a.trunc() - 1, 0));
  for (const auto& [e, c] : a.terms()) {
    int k = e.raw()[slot];
    if (k == 0) continue;
    std::vector<int> r = e.raw();
    --r[slot];
    out.add_term(Exponent(std::move(r)), GaussianRational(k) * c);
  }
  return out;
}

bool is_real(const Series& a) { return conj(a) == a; }

Series subst_w(const WPolynomial& tmpl, const Series& value) {
  if (!value.coeff(Exponent::zero(value.nvars())).is_zero())
    throw PreconditionError("substituted value has a constant term");
  int maxpow = 0;
  for (const auto& [key, c] : tmpl) maxpow = std::max(maxpow, key.second);
  std::vector<Series> powers{Series::constant(value.nvars(), 1, value.trunc())};
  for (int k = 1; k <= maxpow; ++k) powers.push_back(powers.back() * value);
  Series out(value.nvars(), value.trunc());
  for (const auto& [key, c] : tmpl) {
    if (key.first.nvars() != value.nvars()) throw PreconditionError("template arity mismatch");
    out += Series::monomial(key.first, c, value.trunc()) * powers[key.second];
  }
  return out;
}

Series linear_subst(const Series& a, const std::vector<std::vector<GaussianRational>>& p) {
  int n = a.nvars();
  if (static_cast<int>(p.size()) != n) throw PreconditionError("substitution matrix has wrong size");
  // z_j = sum_k zt_k p[k][j]; zbar_j is its conjugate.
  std::vector<Series> image(2 * n, Series(n, a.trunc()));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      image[j] += p[k][j] * Series::variable(n, {k, false}, a.trunc());
      image[n + j] += p[k][j].conj() * Series::variable(n, {k, true}, a.trunc());
    }
  std::vector<std::vector<Series>> powers(2 * n);
  Series out(n, a.trunc());
  for (const auto& [e, c] : a.terms()) {
    Series term = Series::constant(n, c, a.trunc());
    for (int slot = 0; slot < 2 * n; ++slot) {
      int k = e.raw()[slot];
      auto& pw = powers[slot];
      if (pw.empty()) pw.push_back(Series::constant(n, 1, a.trunc()));
      while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * image[slot]);
      if (k) term = term * pw[k];
    }
    out += term;
  }
  return out;
}

std::string format_terms(const Series& a) {
  std::ostringstream os;
  for (const auto& [e, c] : a.terms())
    os << e.str() << ' ' << format_rational(c.re()) << ' ' << format_rational(c.im()) << '\n';
  return os.str();
}

void parse_term_line(const std::string& line, Series& a, std::set<Exponent>& seen) {
  std::istringstream is(line);
  std::vector<std::string> tok;
  for (std::string w; is >> w;) tok.push_back(w);
  size_t need = 2 * a.nvars() + 2;
  if (tok.size() != need)
    throw ParseError("term line needs " + std::to_string(need) + " fields: '" + line + "'");
  std::vector<int> e(2 * a.nvars());
  for (size_t k = 0; k < e.size(); ++k) {
    const std::string& w = tok[k];
    if (w.empty() || !std::all_of(w.begin(), w.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      throw ParseError("bad exponent '" + w + "'");
    e[k] = std::stoi(w);
  }
  Exponent ex(e);
  if (ex.degree() > a.trunc()) throw ParseError("term degree exceeds order: '" + line + "'");
  if (!seen.insert(ex).second) throw ParseError("duplicate exponent " + ex.str());
  a.add_term(ex, GaussianRational(parse_rational(tok[need - 2]), parse_rational(tok[need - 1])));
}

}  // namespace crf
