#include <doctest.h>

#include <sstream>

#include "crf/errors.hpp"
#include "crf/series.hpp"
#include "oracles.hpp"

using namespace crf;

TEST_CASE("bracket index maps [t s r h] to z1^s z2^t zbar1^h zbar2^r") {
  Exponent e = Exponent::bracket(1, 2, 3, 4);
  CHECK(e.s() == 2);
  CHECK(e.t() == 1);
  CHECK(e.r() == 3);
  CHECK(e.h() == 4);
  CHECK(e.degree() == 10);
  CHECK(e.conj() == Exponent(4, 3, 2, 1));
  CHECK_THROWS_AS(Exponent(std::vector<int>{1, -1}), PreconditionError);
}

TEST_CASE("truncation drops high terms and reads absent coefficients as zero") {
  Series s(2, 3);
  s.add_term(Exponent(2, 2, 0, 0), 5);
  CHECK(s.is_zero());
  s.add_term(Exponent(1, 0, 0, 1), 2);
  s.add_term(Exponent(1, 0, 0, 1), -2);
  CHECK(s.is_zero());
  CHECK(s.coeff(-1, 0, 0, 0).is_zero());
  CHECK(s.valuation() == 4);
  CHECK_THROWS_AS(s.truncated(4), PreconditionError);
}

TEST_CASE("products agree with the schoolbook oracle") {
  oracle::Gen gen(31);
  for (int k = 0; k < 60; ++k) {
    int trunc = gen.integer(2, 7);
    Series a = gen.series(2, trunc, 0, gen.integer(0, 12), 5);
    Series b = gen.series(2, trunc, 0, gen.integer(0, 12), 5);
    oracle::Poly want = oracle::multiply(oracle::from_series(a), oracle::from_series(b), trunc);
    CHECK(oracle::same(want, a * b));
    CHECK(mul_parallel(a, b) == a * b);
  }
}

TEST_CASE("mul_graded keeps exactly the degrees fixed by the inputs") {
  oracle::Gen gen(32);
  for (int k = 0; k < 40; ++k) {
    // Exact values at a high truncation, then seen through lower ones.
    Series A = gen.series(2, 10, 1, 10, 4), B = gen.series(2, 10, 1, 10, 4);
    int ta = gen.integer(2, 6), tb = gen.integer(2, 6);
    Series a = A.truncated(ta), b = B.truncated(tb);
    Series g = mul_graded(a, b);
    CHECK(g.trunc() == std::min(ta + b.valuation(), tb + a.valuation()));
    if (g.trunc() <= 10) CHECK(g == (A * B).truncated(g.trunc()));
  }
}

TEST_CASE("conjugation, reality and derivatives") {
  oracle::Gen gen(33);
  for (int k = 0; k < 40; ++k) {
    Series a = gen.series(2, 6, 0, 10, 5), b = gen.series(2, 6, 0, 10, 5);
    CHECK(conj(conj(a)) == a);
    CHECK(is_real(a + conj(a)));
    CHECK(conj(a * b) == conj(a) * conj(b));
    for (Var v : {z(1), z(2), zb(1), zb(2)}) {
      // Leibniz rule, compared where both sides are exact.
      Series lhs = d(a * b, v).truncated(4);
      Series rhs = (d(a, v) * b + a * d(b, v)).truncated(4);
      CHECK(lhs == rhs);
    }
    CHECK(oracle::same(oracle::diff(oracle::from_series(a), 2), d(a, zb(1))));
  }
}

TEST_CASE("w substitution expands powers of the value") {
  Series v(2, 6);
  v.add_term(Exponent(1, 0, 1, 0), 1);
  v.add_term(Exponent(0, 1, 0, 0), 2);
  WPolynomial t;
  t[{Exponent(1, 0, 0, 0), 2}] = 3;
  t[{Exponent(0, 0, 0, 0), 1}] = -1;
  Series want = GaussianRational(3) * (Series::variable(2, z(1), 6) * v * v) - v;
  CHECK(subst_w(t, v) == want);
  Series bad = v;
  bad.add_term(Exponent(0, 0, 0, 0), 1);
  CHECK_THROWS_AS(subst_w(t, bad), PreconditionError);
}

TEST_CASE("linear substitution is a ring map") {
  oracle::Gen gen(34);
  for (int k = 0; k < 20; ++k) {
    Series a = gen.series(2, 5, 0, 6, 4), b = gen.series(2, 5, 0, 6, 4);
    std::vector<std::vector<GaussianRational>> p = {{gen.gaussian(3), gen.gaussian(3)},
                                                    {gen.gaussian(3), gen.gaussian(3)}};
    CHECK(linear_subst(a * b, p) == linear_subst(a, p) * linear_subst(b, p));
    CHECK(linear_subst(conj(a), p) == conj(linear_subst(a, p)));
  }
  std::vector<std::vector<GaussianRational>> id = {{1, 0}, {0, 1}};
  Series a = gen.series(2, 5, 0, 6, 4);
  CHECK(linear_subst(a, id) == a);
}

TEST_CASE("term lines round-trip and reject malformed input") {
  oracle::Gen gen(35);
  for (int k = 0; k < 20; ++k) {
    Series a = gen.series(2, 6, 0, 12, 7);
    Series b(2, 6);
    std::set<Exponent> seen;
    std::istringstream in(format_terms(a));
    for (std::string line; std::getline(in, line);) parse_term_line(line, b, seen);
    CHECK(a == b);
  }
  Series s(2, 3);
  std::set<Exponent> seen;
  parse_term_line("1 0 0 1 1/2 -3", s, seen);
  CHECK(s.coeff(1, 0, 0, 1) == GaussianRational(make_rational(1, 2), -3));
  CHECK_THROWS_AS(parse_term_line("1 0 0 1 1 0", s, seen), ParseError);
  CHECK_THROWS_AS(parse_term_line("4 0 0 0 1 0", s, seen), ParseError);
  CHECK_THROWS_AS(parse_term_line("1 0 0 1", s, seen), ParseError);
  CHECK_THROWS_AS(parse_term_line("1 x 0 1 1 0", s, seen), ParseError);
}
