#include "crf/case_tables.hpp"

#include <map>
#include <sstream>

#include "crf/errors.hpp"

namespace crf {

namespace {

using G = GaussianRational;
const G kI = G::imag_unit();

G q(long n, long d = 1) { return G(make_rational(n, d)); }

// Quadratic monomials as printed: "1B2" is z1 zbar2, "B12" is zbar1 z2.
const std::map<std::string, Exponent>& monomials() {
  static const std::map<std::string, Exponent> m = {
      {"11", Exponent(2, 0, 0, 0)},   {"1B1", Exponent(1, 0, 1, 0)}, {"12", Exponent(1, 1, 0, 0)},
      {"B1B1", Exponent(0, 0, 2, 0)}, {"1B2", Exponent(1, 0, 0, 1)}, {"B12", Exponent(0, 1, 1, 0)},
      {"B1B2", Exponent(0, 0, 1, 1)}, {"22", Exponent(0, 2, 0, 0)},  {"2B2", Exponent(0, 1, 0, 1)},
      {"B2B2", Exponent(0, 0, 0, 2)}};
  return m;
}

Series poly(std::initializer_list<std::pair<const char*, G>> terms) {
  Series s(2, 2);
  for (const auto& [name, c] : terms) s.add_term(monomials().at(name), c);
  return s;
}

Germ quadric(const CaseParams& p, const G& b11, const G& b12, const G& b21, const G& b22, int trunc) {
  ExactMatrix A(2, 2, {p.a, p.b, p.b, p.d});
  ExactMatrix B(2, 2, {b11, b12, b21, b22});
  return Germ(pair_series(make_pair(A, B), trunc));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError("case parameter constraint violated: " + what);
}
bool real(const G& x) { return x.is_real(); }
bool pos(const G& x) { return x.is_real() && sgn(x.re()) > 0; }
bool nonneg(const G& x) { return x.is_real() && sgn(x.re()) >= 0; }

void require_u(const G& u) { require(u.norm() == 1 && sgn(u.im()) > 0, "u = e^{i theta} with 0 < theta < pi"); }
void require_tau(const G& t) { require(pos(t) && t.re() < 1, "0 < tau < 1"); }

XYSeries case1a(const CaseParams& p) {
  const G &a = p.a, &b = p.b, &d = p.d, &u = p.u;
  G ub = u.conj(), bb = b.conj(), B2 = b * bb;
  XYSeries s;
  s.X1 = poly({{"1B1", 2 * b * u + 2 * bb * (4 * a * d - 4 * b * b)},
               {"1B2", -2 * a + 2 * d * (4 * a * d - 4 * b * b)},
               {"B1B1", 4 * a * b * u + 4 * bb * d},
               {"B12", 2 * a * (4 * b * b - 4 * a * d) * u + 2 * d * u},
               {"B1B2", -4 * a * a + 4 * d * d + 4 * B2 * u - 4 * B2 * ub},
               {"2B2", 2 * bb * (4 * b * b - 4 * a * d) * u - 2 * b},
               {"B2B2", -4 * a * bb - 4 * b * d * ub}});
  // z1 z2 coefficient is 2b e^{i theta} + 2b e^{-i theta}; the display as typeset drops a term.
  s.X2 = poly({{"11", 2 * a * ub},
               {"1B1", 4 * B2 + 4 * a * a * ub + ub},
               {"12", 2 * b * u + 2 * b * ub},
               {"B1B1", 2 * a * ub},
               {"1B2", 4 * b * d + 4 * a * bb * ub},
               {"B12", 4 * bb * d + 4 * a * b * ub},
               {"B1B2", 4 * bb * ub},
               {"22", 2 * d * u},
               {"2B2", 4 * d * d + 1 + 4 * B2 * ub},
               {"B2B2", 2 * d * ub}});
  s.Y1 = poly({{"11", 8 * a * b * ub - 8 * a * b * u},
               {"1B1", 8 * b * B2 - 8 * a * bb * d + 2 * b * ub - 4 * b * u},
               {"B1B1", -4 * a * b * ub - 4 * bb * d},
               {"12", 4 * b * b * ub - 4 * b * b * u + 12 * a * d * ub - 12 * a * d * u},
               {"1B2", 6 * a * ub * ub - 4 * a + 8 * b * b * d - 8 * a * d * d},
               {"B12", 8 * a * a * d * ub + 4 * d * ub - 6 * d * u - 8 * a * b * b * ub},
               {"B1B2", 4 * a * a * ub * ub - 4 * d * d + 2 * ub * ub - 2},
               {"22", 8 * b * d * ub - 8 * b * d * u},
               {"2B2", 8 * a * bb * d * ub + 4 * b * ub * ub - 8 * b * B2 * ub - 2 * b},
               {"B2B2", 4 * a * bb * ub * ub + 4 * b * d * ub}});
  s.Y2 = poly({{"11", -2 * a * u},
               {"1B1", -4 * a * a * u - 4 * B2 - u},
               {"12", -4 * b * u},
               {"1B2", -4 * a * bb * u - 4 * b * d},
               {"B1B1", -2 * a * u},
               {"B12", -4 * a * b * u - 4 * bb * d},
               {"B1B2", -2 * bb * ub - 2 * bb * u},
               {"22", -2 * d * u},
               {"2B2", -4 * d * d - 1 - 4 * B2 * u},
               {"B2B2", -2 * d * ub}});
  return s;
}

XYSeries case2a(const CaseParams& p) {
  const G &a = p.a, &b = p.b, &d = p.d, &t = p.tau;
  G ab = a.conj(), db = d.conj(), A2 = a * ab, D2 = d * db;
  XYSeries s;
  s.X1 = poly({{"1B1", 2 * ab * (4 * b * b - 4 * a * d) + 2 * a * t},
               {"B1B1", 4 * ab * b + 4 * a * b * t},
               {"1B2", 2 * b * (4 * b * b - 4 * a * d) - 2 * b * t * t},
               {"B12", 2 * b * t + 2 * b * (4 * a * d * t - 4 * b * b * t)},
               {"B1B2", 4 * t * a * db - 4 * t * ab * d + 4 * b * b - 4 * b * b * t * t},
               {"2B2", 2 * db * (4 * a * d * t - 4 * b * b * t) - 2 * t * t * d},
               {"B2B2", -4 * t * b * d - 4 * b * db * t * t}});
  s.X2 = poly({{"11", -2 * a},
               {"1B1", -4 * ab * b * t - 4 * a * b},
               {"12", -2 * b * t * t - 2 * b},
               {"1B2", -4 * b * b * t - 4 * a * db - t},
               {"B1B1", -2 * ab * t},
               {"B12", -4 * ab * d * t - t * t - 4 * b * b},
               {"B1B2", -4 * b * t},
               {"22", -2 * d * t * t},
               {"2B2", -4 * b * d * t - 4 * b * db},
               {"B2B2", -2 * db * t}});
  s.Y1 = poly({{"11", 8 * a * b * t * t - 8 * a * b},
               {"1B1", 4 * a * t * t - 6 * a + 8 * A2 * d * t - 8 * ab * b * b * t},
               {"B2B2", 4 * b * db * t + 4 * b * d * t * t},
               {"1B2", 4 * b * t * t * t - 8 * b * b * b * t + 8 * a * b * d * t - 2 * b * t},
               {"B1B1", -4 * a * b - 4 * ab * b * t},
               {"22", 8 * b * d * t * t - 8 * b * d},
               {"B12", 2 * b * (4 * b * b + 4 * ab * d * t - 2) + 2 * b * t * t - 2 * d * (4 * a * b + 4 * ab * b * t)},
               {"B1B2", 2 * t * t * t - 2 * t + 4 * ab * d * t * t - 4 * a * db},
               {"2B2", 6 * d * t * t * t - 8 * a * D2 + 8 * b * b * db - 4 * d * t},
               {"12", 12 * a * d * t * t - 12 * a * d + 4 * b * b * t * t - 4 * b * b}});
  s.Y2 = poly({{"11", 2 * a * t},
               {"1B1", 4 * ab * b + 4 * a * b * t},
               {"12", 4 * b * t},
               {"1B2", 4 * b * b + 4 * a * db * t + t * t},
               {"B1B1", 2 * ab},
               {"B12", 4 * ab * d + t + 4 * b * b * t},
               {"B1B2", 2 * b + 2 * b * t * t},
               {"22", 2 * d * t},
               {"2B2", 4 * b * d + 4 * b * db * t},
               {"B2B2", 2 * db * t * t}});
  return s;
}

// Printed separately for a = 0; the d = 0 specialization is the printed (2c) display.
XYSeries case2b(const CaseParams& p) {
  const G &b = p.b, &d = p.d, &t = p.tau;
  G db = d.conj();
  XYSeries s;
  s.X1 = poly({{"1B2", 8 * b * b * b - 2 * b * t * t},
               {"B12", 2 * b * t - 8 * b * b * b * t},
               {"B1B2", 4 * b * b - 4 * b * b * t * t},
               {"2B2", -8 * db * b * b * t - 2 * t * t * d},
               {"B2B2", -4 * t * b * d - 4 * b * db * t * t}});
  s.X2 = poly({{"12", -2 * b * t * t - 2 * b},
               {"1B2", -4 * b * b * t - t},
               {"B12", -t * t - 4 * b * b},
               {"B1B2", -4 * b * t},
               {"22", -2 * d * t * t},
               {"2B2", -4 * b * d * t - 4 * b * db},
               {"B2B2", -2 * db * t}});
  s.Y1 = poly({{"12", 4 * b * b * t * t - 4 * b * b},
               {"1B2", 4 * b * t * t * t - 8 * b * b * b * t - 2 * b * t},
               {"B1B2", 2 * t * t * t - 2 * t},
               {"B12", 8 * b * b * b - 4 * b + 2 * b * t * t},
               {"22", 8 * b * d * t * t - 8 * b * d},
               {"2B2", 6 * d * t * t * t + 8 * b * b * db - 4 * d * t},
               {"B2B2", 4 * b * db * t + 4 * b * d * t * t}});
  s.Y2 = poly({{"12", 4 * b * t},
               {"1B2", 4 * b * b + t * t},
               {"B12", t + 4 * b * b * t},
               {"B1B2", 2 * b + 2 * b * t * t},
               {"22", 2 * d * t},
               {"2B2", 4 * b * d + 4 * b * db * t},
               {"B2B2", 2 * db * t * t}});
  return s;
}

// The b = 0 display shared by (2d), (2e), (2f).
XYSeries case2def(const CaseParams& p) {
  const G &a = p.a, &d = p.d, &t = p.tau;
  G ab = a.conj(), db = d.conj(), A2 = a * ab, D2 = d * db;
  XYSeries s;
  s.X1 = poly({{"1B1", 2 * a * t - 8 * A2 * d},
               {"B1B2", 4 * t * a * db - 4 * t * ab * d},
               {"2B2", 8 * a * D2 * t - 2 * t * t * d}});
  s.X2 = poly({{"11", -2 * a},
               {"1B2", -4 * a * db - t},
               {"B1B1", -2 * ab * t},
               {"B12", -4 * ab * d * t - t * t},
               {"22", -2 * d * t * t},
               {"B2B2", -2 * db * t}});
  s.Y1 = poly({{"1B1", 4 * a * t * t - 6 * a + 8 * A2 * d * t},
               {"12", 12 * a * d * t * t - 12 * a * d},
               {"B1B2", 2 * t * t * t - 2 * t + 4 * ab * d * t * t - 4 * a * db},
               {"2B2", 6 * d * t * t * t - 8 * a * D2 - 4 * d * t}});
  s.Y2 = poly({{"11", 2 * a * t},
               {"1B2", 4 * a * db * t + t * t},
               {"B1B1", 2 * ab},
               {"B12", 4 * ab * d + t},
               {"22", 2 * d * t},
               {"B2B2", 2 * db * t * t}});
  return s;
}

XYSeries case3(const CaseParams& p) {
  const G &a = p.a, &b = p.b, &d = p.d;
  const G& i = kI;
  G ab = a.conj(), db = d.conj(), A2 = a * ab, D2 = d * db;
  XYSeries s;
  s.X1 = poly({{"1B1", 8 * ab * b * b - 8 * A2 * d + 2 * a},
               {"1B2", 8 * b * b * b - 8 * a * b * d - 2 * a * i - 2 * b},
               {"B1B1", 4 * ab * b + 4 * a * b - 4 * A2 * i},
               {"B12", 8 * ab * b * b * i - 8 * A2 * d * i + 2 * b + 8 * a * b * d - 8 * b * b * b},
               {"B1B2", 4 * a * db - 4 * ab * d - 4 * A2 - 8 * b * a * i},
               {"2B2", 8 * i * b * b * b - 8 * i * a * b * d + 8 * a * D2 - 8 * db * b * b - 2 * d - 2 * b * i},
               {"B2B2", -4 * b * a - 4 * b * d - 4 * db * a * i - 4 * db * b}});
  s.X2 = poly({{"11", -2 * a},
               {"1B1", -4 * ab * b - 4 * a * b - 4 * i * A2},
               {"12", -4 * b - 4 * a * i},
               {"B1B1", -2 * ab},
               {"B12", -4 * ab * d - 1 - 4 * b * b - 4 * ab * b * i},
               {"B1B2", -4 * b},
               {"22", -2 * d - 4 * b * i},
               {"1B2", -4 * b * b - 4 * a * db - 4 * i * a * b - 1},
               {"2B2", -4 * b * d - 4 * b * db - 4 * b * b * i - i},
               {"B2B2", -2 * db}});
  s.Y1 = poly({{"11", 16 * a * a * i},
               {"1B1", -8 * ab * b * b - 2 * a + 8 * A2 * d},
               {"B2B2", 4 * b * db + 4 * b * d + 4 * i + 8 * b * b * i + 4 * a * db * i - 4 * a * b},
               {"1B2", 2 * b - 8 * b * b * b + 8 * a * b * d + 18 * a * i},
               {"B1B2", 4 * ab * d - 4 * a * db - 4 * A2 + 8 * ab * b * i},
               {"12", 32 * a * b * i},
               {"B1B1", -4 * a * b - 4 * ab * b - 4 * A2 * i},
               {"B12", 8 * b * b * b - 8 * a * b * d - 2 * b - 8 * d * A2 * i + 8 * ab * b * b * i - 4 * a * i},
               {"22", 24 * b * b * i - 8 * a * d * i},
               {"2B2", 2 * d - 8 * a * D2 + 8 * b * b * db - 4 * a + 22 * b * i - 8 * a * b * d * i + 8 * b * b * b * i}});
  s.Y2 = poly({{"11", 2 * a},
               {"1B1", 4 * ab * b + 4 * a * b - 4 * A2 * i},
               {"12", 4 * b},
               {"1B2", 4 * b * b + 4 * a * db + 1 - 4 * a * b * i},
               {"B12", 4 * ab * d + 1 + 4 * b * b - 4 * ab * b * i},
               {"B1B2", 4 * b - 4 * ab * i},
               {"22", 2 * d},
               {"B1B1", 2 * ab},
               {"2B2", 4 * b * d + 4 * b * db - i - 4 * b * b * i},
               {"B2B2", 2 * db - 4 * b * i}});
  return s;
}

XYSeries case4(const CaseParams& p) {
  const G &a = p.a, &b = p.b, &d = p.d;
  G ab = a.conj(), A2 = a * ab;
  XYSeries s;
  s.X1 = poly({{"1B1", 8 * ab * b * b - 8 * A2 * d},
               {"B1B1", 4 * ab * b},
               {"1B2", 8 * b * b * b - 8 * a * b * d},
               {"B1B2", 4 * b * b}});
  s.X2 = poly({{"11", -2 * a},
               {"1B1", -4 * a * b},
               {"12", -2 * b},
               {"1B2", -4 * a * d},
               {"B12", -4 * b * b},
               {"2B2", -4 * b * d}});
  s.Y1 = poly({{"11", -8 * a * b},
               {"1B1", -6 * a},
               {"12", -12 * a * d - 4 * b * b},
               {"B1B1", -4 * a * b},
               {"B1B2", -4 * a * d},
               {"B12", 8 * b * b * b - 4 * b - 8 * a * b * d},
               {"22", -8 * b * d},
               {"2B2", -8 * a * d * d + 8 * b * b * d}});
  s.Y2 = poly({{"1B1", 4 * ab * b},
               {"1B2", 4 * b * b},
               {"B1B1", 2 * ab},
               {"B12", 4 * ab * d},
               {"B1B2", 2 * b},
               {"2B2", 4 * b * d}});
  return s;
}

}  // namespace

CaseParams parse_case_params(const std::string& text) {
  CaseParams p;
  std::map<std::string, G*> slots = {{"a", &p.a}, {"b", &p.b}, {"d", &p.d}, {"u", &p.u}, {"tau", &p.tau}};
  std::stringstream ss(text);
  std::set<std::string> seen;
  for (std::string item; std::getline(ss, item, ',');) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("case parameter '" + item + "' is not key=value");
    std::string key = item.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    auto it = slots.find(key);
    if (it == slots.end()) throw ParseError("unknown case parameter '" + key + "'");
    if (!seen.insert(key).second) throw ParseError("duplicate case parameter '" + key + "'");
    *it->second = parse_gaussian(item.substr(eq + 1));
  }
  return p;
}

std::vector<std::string> implemented_cases() { return {"1a", "1b", "1c", "2a", "2b", "2c", "2d-f", "3", "4"}; }

CaseOracle case_display_series(const std::string& id, const CaseParams& p, int trunc) {
  const G zero;
  if (id == "1a" || id == "1b" || id == "1c") {
    require_u(p.u);
    if (id == "1a") require(pos(p.a) && pos(p.d), "a > 0, d > 0");
    if (id == "1b") require(p.a.is_zero() && nonneg(p.b) && nonneg(p.d), "a = 0, b >= 0, d >= 0");
    if (id == "1c") require(pos(p.a) && nonneg(p.b) && p.d.is_zero(), "a > 0, b >= 0, d = 0");
    return {case1a(p), quadric(p, 1, 0, 0, p.u, trunc)};
  }
  if (id == "2a" || id == "2b" || id == "2c" || id == "2d-f") {
    require_tau(p.tau);
    XYSeries s;
    if (id == "2a") {
      require(pos(p.b) && p.a.norm() == make_rational(1, 4), "b > 0, |a| = 1/2");
      s = case2a(p);
    } else if (id == "2b") {
      require(p.a.is_zero() && pos(p.b) && p.d.norm() == make_rational(1, 4), "a = 0, b > 0, |d| = 1/2");
      s = case2b(p);
    } else if (id == "2c") {
      require(p.a.is_zero() && pos(p.b) && p.d.is_zero(), "a = d = 0, b > 0");
      s = case2b(p);
    } else {
      bool shape = (p.a == q(1, 2)) || (p.a.is_zero() && (p.d == q(1, 2) || p.d.is_zero()));
      require(p.b.is_zero() && shape, "b = 0 and A = diag(1/2, d), diag(0, 1/2) or 0");
      s = case2def(p);
    }
    return {s, quadric(p, 0, 1, p.tau, 0, trunc)};
  }
  if (id == "3") {
    require(nonneg(p.a) && real(p.b), "a >= 0, b real");
    if (p.a.is_zero() && !p.b.is_zero()) require(pos(p.b) && real(p.d), "a = 0: b > 0, d real");
    if (p.a.is_zero() && p.b.is_zero()) require(nonneg(p.d), "a = b = 0: d >= 0");
    return {case3(p), quadric(p, 0, 1, 1, kI, trunc)};
  }
  if (id == "4") {
    require(nonneg(p.b) && real(p.d), "b >= 0, d real");
    return {case4(p), quadric(p, 0, 1, 0, 0, trunc)};
  }
  throw PreconditionError("unknown case id '" + id + "'");
}

}  // namespace crf
