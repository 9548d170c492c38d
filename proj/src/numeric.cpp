#include "crf/numeric.hpp"

#include <cctype>

#include "crf/errors.hpp"

namespace crf {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw PreconditionError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  std::string_view v(s);
  bool neg = false;
  if (!v.empty() && (v[0] == '-' || v[0] == '+')) {
    neg = v[0] == '-';
    v.remove_prefix(1);
  }
  auto slash = v.find('/');
  std::string_view num = v.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : v.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational '" + s + "'");
  mpz_class n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational q(neg ? mpz_class(-n) : n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(rn, rd);
}

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of zero");
  Rational n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  return *this *= o.inverse();
}

std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& x) {
  if (x.is_zero()) return GaussianRational();
  // (u + iv)^2 = a + ib with u^2 = (a + |x|)/2, v = b/(2u).
  auto modulus = rational_sqrt(x.norm());
  if (!modulus) return std::nullopt;
  Rational u2 = (x.re() + *modulus) / 2;
  if (sgn(u2) == 0) {
    auto v = rational_sqrt(-x.re());
    if (!v) return std::nullopt;
    return GaussianRational(0, *v);
  }
  auto u = rational_sqrt(u2);
  if (!u) return std::nullopt;
  Rational v = x.im() / (2 * *u);
  return GaussianRational(*u, v);
}

GaussianRational parse_gaussian(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty Gaussian literal");
  if (s.back() != 'i') return GaussianRational(parse_rational(s));
  s.pop_back();
  // Split at the last sign that is not the leading one.
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
  return GaussianRational(re, parse_rational(im_part));
}

std::string format_gaussian(const GaussianRational& x) {
  if (x.is_real()) return format_rational(x.re());
  std::string im = format_rational(x.im()) + " i";
  if (sgn(x.re()) == 0) return im;
  if (sgn(x.im()) > 0) return format_rational(x.re()) + "+" + im;
  return format_rational(x.re()) + im;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << format_gaussian(x); }

}  // namespace crf
