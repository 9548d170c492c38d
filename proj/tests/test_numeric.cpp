#include <doctest.h>

#include "crf/errors.hpp"
#include "crf/linalg.hpp"
#include "oracles.hpp"

using namespace crf;

TEST_CASE("rational literals parse canonically and round-trip") {
  CHECK(parse_rational("6/4") == make_rational(3, 2));
  CHECK(parse_rational(" -0/5 ") == 0);
  CHECK(format_rational(parse_rational("+10/4")) == "5/2");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("gaussian literals") {
  const GaussianRational i = GaussianRational::imag_unit();
  CHECK(parse_gaussian("i") == i);
  CHECK(parse_gaussian("-i") == -i);
  CHECK(parse_gaussian("3/5+4/5 i") == GaussianRational(make_rational(3, 5), make_rational(4, 5)));
  CHECK(parse_gaussian("-1/2 i") == GaussianRational(0, make_rational(-1, 2)));
  CHECK_THROWS_AS(parse_gaussian("1+"), ParseError);
  oracle::Gen gen(11);
  for (int k = 0; k < 200; ++k) {
    GaussianRational x = gen.gaussian(9);
    CHECK(parse_gaussian(format_gaussian(x)) == x);
  }
}

TEST_CASE("field operations") {
  oracle::Gen gen(12);
  for (int k = 0; k < 200; ++k) {
    GaussianRational a = gen.gaussian(7), b = gen.gaussian(7);
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK((a * a.conj()) == GaussianRational(a.norm()));
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
  CHECK_THROWS(GaussianRational().inverse());
}

TEST_CASE("exact square roots") {
  CHECK(rational_sqrt(make_rational(9, 49)) == make_rational(3, 7));
  CHECK_FALSE(rational_sqrt(make_rational(2)).has_value());
  CHECK_FALSE(rational_sqrt(make_rational(-4)).has_value());
  oracle::Gen gen(13);
  for (int k = 0; k < 200; ++k) {
    GaussianRational x = gen.gaussian(9);
    auto r = gaussian_sqrt(x * x);
    REQUIRE(r.has_value());
    CHECK(*r * *r == x * x);
    CHECK((*r == x || *r == -x));
    if (!r->is_zero()) CHECK((sgn(r->re()) > 0 || (sgn(r->re()) == 0 && sgn(r->im()) > 0)));
  }
  // i has no square root in Q(i): (1 + i)/sqrt 2 is irrational.
  CHECK_FALSE(gaussian_sqrt(GaussianRational::imag_unit()).has_value());
  CHECK(gaussian_sqrt(GaussianRational(0, 2)) == GaussianRational(1, 1));
}

TEST_CASE("rref is identical in serial and parallel modes") {
  oracle::Gen gen(21);
  for (int k = 0; k < 30; ++k) {
    size_t r = gen.integer(1, 12), c = gen.integer(1, 12);
    RationalMatrix m(r, c);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) m(i, j) = gen.integer(0, 2) ? gen.rational(5) : mpq_class(0);
    RationalMatrix a = m, b = m;
    auto pa = rref(a, Exec::Serial);
    auto pb = rref(b, Exec::Parallel);
    CHECK(pa == pb);
    CHECK(a == b);
  }
}

TEST_CASE("nullspace basis is annihilated and matches rank-nullity") {
  oracle::Gen gen(22);
  for (int k = 0; k < 30; ++k) {
    size_t r = gen.integer(1, 8), c = gen.integer(1, 8);
    ExactMatrix m(r, c);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) m(i, j) = gen.integer(0, 2) ? gen.gaussian(4) : GaussianRational();
    auto basis = exact_nullspace(m);
    CHECK(basis.size() + rank(m) == c);
    for (const auto& v : basis)
      for (const auto& x : crf::apply(m, v)) CHECK(x.is_zero());
    // Floating-point rank as an independent witness.
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(oracle::to_complex(m));
    lu.setThreshold(1e-9);
    CHECK(static_cast<size_t>(lu.rank()) == rank(m));
  }
}

TEST_CASE("exact_solve statuses") {
  RationalMatrix a(2, 2, {1, 1, 2, 2});
  auto inc = exact_solve(a, {mpq_class(1), mpq_class(3)});
  CHECK(inc.status == SolveStatus::Inconsistent);
  CHECK(inc.conflict_row == 1);
  auto und = exact_solve(a, {mpq_class(1), mpq_class(2)});
  CHECK(und.status == SolveStatus::Underdetermined);
  CHECK(crf::apply(a, und.x) == std::vector<mpq_class>{1, 2});
  oracle::Gen gen(23);
  for (int k = 0; k < 20; ++k) {
    ExactMatrix m = gen.invertible(3, 5);
    std::vector<GaussianRational> x = {gen.gaussian(5), gen.gaussian(5), gen.gaussian(5)};
    auto s = exact_solve(m, crf::apply(m, x), k % 2 ? Exec::Parallel : Exec::Serial);
    CHECK(s.status == SolveStatus::Unique);
    CHECK(s.x == x);
  }
}

TEST_CASE("2x2 helpers and matrix text") {
  oracle::Gen gen(24);
  for (int k = 0; k < 50; ++k) {
    ExactMatrix m = gen.invertible(2, 6);
    CHECK(m * inverse2(m) == ExactMatrix::identity(2));
    CHECK(det2(m) == m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    CHECK(parse_matrix(format_matrix(m)) == m);
  }
  CHECK(format_matrix(ExactMatrix(2, 2, {0, 1, 0, 0})) == "[[0,1],[0,0]]");
  CHECK_THROWS_AS(parse_matrix("[[1,2],[3]]"), ParseError);
  CHECK_THROWS_AS(inverse2(ExactMatrix(2, 2)), PreconditionError);
}
