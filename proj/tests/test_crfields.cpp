#include <doctest.h>

#include <sstream>

#include "crf/case_tables.hpp"
#include "crf/crfields.hpp"
#include "crf/errors.hpp"
#include "crf/flatten.hpp"
#include "oracles.hpp"

using namespace crf;

namespace {

const GaussianRational kI = GaussianRational::imag_unit();

Series poly(std::initializer_list<std::pair<Exponent, GaussianRational>> terms, int trunc) {
  Series s(2, trunc);
  for (const auto& [e, c] : terms) s.add_term(e, c);
  return s;
}

std::string data(const std::string& name) { return std::string(CRF_DATA_DIR) + "/" + name; }

struct Sample {
  std::string id;
  std::string params;
};

const std::vector<Sample> kSamples = {
    {"1a", "a=1, b=1, d=1, u=3/5+4/5 i"},
    {"1a", "a=2, b=1/3+i, d=1/2, u=5/13+12/13 i"},
    {"1a", "a=1/2, b=-2/3 i, d=3, u=-3/5+4/5 i"},
    {"1b", "a=0, b=1, d=2, u=3/5+4/5 i"},
    {"1c", "a=1, b=1/2, d=0, u=-5/13+12/13 i"},
    {"2a", "a=1/2, b=1, d=2+i, tau=1/2"},
    {"2a", "a=3/10+2/5 i, b=1/3, d=-1, tau=1/3"},
    {"2a", "a=-1/2 i, b=2, d=1/5 i, tau=3/4"},
    {"2b", "a=0, b=1, d=3/10+2/5 i, tau=1/2"},
    {"2b", "a=0, b=1/4, d=-1/2, tau=2/3"},
    {"2c", "a=0, b=1/2, d=0, tau=1/5"},
    {"2d-f", "a=1/2, b=0, d=1+i, tau=1/2"},
    {"2d-f", "a=0, b=0, d=1/2, tau=1/3"},
    {"2d-f", "a=0, b=0, d=0, tau=2/7"},
    {"3", "a=1, b=1, d=1"},
    {"3", "a=2, b=-1/2, d=3+i"},
    {"3", "a=0, b=1, d=-2"},
    {"4", "a=1+i, b=1, d=-2"},
    {"4", "a=-1/3, b=0, d=1/2"},
    {"4", "a=2 i, b=3, d=0"},
};

}  // namespace

TEST_CASE("canonical field of the rank-one example") {
  Germ g = load_germ(data("ex31.germ"));
  TangentField f = build_canonical_field(g);
  CHECK(f.cf_z1 == poly({{Exponent(1, 0, 0, 0), 1}, {Exponent(0, 0, 1, 0), 1}}, f.cf_z1.trunc()));
  CHECK(f.cf_z2 == poly({{Exponent(0, 1, 0, 0), -1}}, f.cf_z2.trunc()));
  CHECK(f.cf_w ==
        poly({{Exponent(1, 0, 0, 1), 1}, {Exponent(0, 1, 1, 0), 1}, {Exponent(0, 0, 1, 1), 1}}, f.cf_w.trunc()));
  CHECK(f.cf_z1.trunc() == 7);
  CHECK(f.cf_w.trunc() == 8);
}

TEST_CASE("witness fixtures verify and agree with the direct oracle") {
  for (const std::string ex : {"ex31", "ex32", "ex33"}) {
    CAPTURE(ex);
    Germ g = load_germ(data(ex + ".germ"));
    TangentField f = load_field(data(ex + ".field"));
    Series chi = load_series(data(ex + ".chi"));
    WitnessCheck w = verify_witness(g, f, chi);
    CHECK(w.h);
    CHECK(w.hbar);
    REQUIRE(w.chi.has_value());
    CHECK(*w.chi);
    auto o = oracle::witness(oracle::from_series(g.R()), oracle::from_series(f.cf_z1), oracle::from_series(f.cf_z2),
                             oracle::from_series(f.cf_w), oracle::from_series(chi), 8);
    CHECK(o == std::array<bool, 3>{true, true, true});

    // A perturbed field fails the same checks.
    TangentField bad = f;
    bad.cf_w.add_term(Exponent(1, 1, 0, 0), 1);
    CHECK_FALSE(verify_witness(g, bad, chi).h);
    CHECK_FALSE(verify_witness(g, f, std::nullopt).chi.has_value());
  }
}

TEST_CASE("non-minimal germs have vanishing obstruction residual") {
  for (const std::string ex : {"ex31", "ex32", "ex33"}) {
    CAPTURE(ex);
    Germ g = load_germ(data(ex + ".germ"));
    ObstructionReport r = obstruction(g, 10);
    CHECK(r.achievable_order >= 10);
    CHECK(r.residual.is_zero());
    CHECK_FALSE(r.first_nonzero.has_value());
  }
}

TEST_CASE("residual equals X1 X2 - Y1 Y2 by schoolbook multiplication") {
  oracle::Gen gen(61);
  for (int k = 0; k < 8; ++k) {
    Series r = pair_series(make_pair(gen.matrix(2, 3), gen.matrix(2, 3)), 5) + gen.series(2, 5, 3, 6, 3);
    Germ g(r);
    ObstructionReport rep = obstruction(g, 6);
    const XYSeries& xy = rep.xy;
    oracle::Poly want = oracle::add(
        oracle::multiply(oracle::from_series(xy.X1), oracle::from_series(xy.X2), 6),
        oracle::scale({-1, 0}, oracle::multiply(oracle::from_series(xy.Y1), oracle::from_series(xy.Y2), 6)));
    CHECK(oracle::same(want, rep.residual));
    CHECK_THROWS_AS(obstruction(g, 8), PreconditionError);
  }
}

TEST_CASE("engine matches every transcribed case display") {
  for (const auto& s : kSamples) {
    CAPTURE(s.id);
    CAPTURE(s.params);
    CaseOracle c = case_display_series(s.id, parse_case_params(s.params), 4);
    XYSeries e = xy_series(c.germ);
    CHECK(e.X1.homogeneous_part(2).truncated(2) == c.printed.X1);
    CHECK(e.X2.homogeneous_part(2).truncated(2) == c.printed.X2);
    CHECK(e.Y1.homogeneous_part(2).truncated(2) == c.printed.Y1);
    CHECK(e.Y2.homogeneous_part(2).truncated(2) == c.printed.Y2);
  }
}

TEST_CASE("case parameters outside the normal form are rejected") {
  CHECK_THROWS_AS(case_display_series("1a", parse_case_params("a=1, b=1, d=1, u=1"), 2), PreconditionError);
  CHECK_THROWS_AS(case_display_series("1a", parse_case_params("a=0, b=1, d=1, u=i"), 2), PreconditionError);
  CHECK_THROWS_AS(case_display_series("2a", parse_case_params("a=1, b=1, tau=1/2"), 2), PreconditionError);
  CHECK_THROWS_AS(case_display_series("2a", parse_case_params("a=1/2, b=1, tau=1"), 2), PreconditionError);
  CHECK_THROWS_AS(case_display_series("3", parse_case_params("a=i, b=1"), 2), PreconditionError);
  CHECK_THROWS_AS(case_display_series("9", parse_case_params("a=1"), 2), PreconditionError);
  CHECK_THROWS_AS(parse_case_params("a=1, q=2"), ParseError);
  CHECK(implemented_cases().size() == 9);
}

TEST_CASE("case (1a) sample certifies the obstruction") {
  CaseOracle c = case_display_series("1a", parse_case_params("a=1, b=1, d=1, u=3/5+4/5 i"), 8);
  XYSeries e = xy_series(c.germ);
  CHECK(e.X2.coeff(1, 0, 1, 0) == GaussianRational(7, -4));
  ObstructionReport r = obstruction(c.germ, 4);
  GaussianRational z1b4 = r.residual.coeff(0, 0, 4, 0);
  CHECK(z1b4 == GaussianRational(0, make_rational(-64, 5)));
  // -8 a conj(b) d (u - conj u) at a = b = d = 1.
  GaussianRational u(make_rational(3, 5), make_rational(4, 5));
  CHECK(z1b4 == GaussianRational(-8) * (u - u.conj()));
  CHECK(r.first_nonzero.has_value());
}

TEST_CASE("bracket coefficients satisfy the conjugation pattern") {
  oracle::Gen gen(62);
  for (int k = 0; k < 5; ++k) {
    Germ g(pair_series(make_pair(gen.matrix(2, 3), gen.matrix(2, 3)), 5) + gen.series(2, 5, 3, 6, 3));
    TangentField f = build_canonical_field(g);
    BracketData bd = bracket_data(g);
    // The canonical field annihilates h and conj h.
    CHECK(verify_witness(g, f, std::nullopt).h);
    CHECK(verify_witness(g, f, std::nullopt).hbar);
    XYSeries a = xy_series(g), b = xy_series(g, bd);
    CHECK(a.X1 == b.X1);
    CHECK(a.Y2 == b.Y2);
  }
}

TEST_CASE("field files round-trip") {
  TangentField f = load_field(data("ex31.field"));
  std::ostringstream out;
  write_field(out, f);
  std::istringstream in(out.str());
  CHECK(read_field(in) == f);
  std::istringstream dup("order 3\ncoef z1\ncoef z1\n");
  CHECK_THROWS_AS(read_field(dup), ParseError);
  std::istringstream stray("order 3\n1 0 0 0 1 0\n");
  CHECK_THROWS_AS(read_field(stray), ParseError);
}
