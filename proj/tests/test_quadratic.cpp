#include <doctest.h>

#include "crf/errors.hpp"
#include "crf/quadratic.hpp"
#include "oracles.hpp"

using namespace crf;

namespace {

const GaussianRational kI = GaussianRational::imag_unit();
const GaussianRational kHalf(make_rational(1, 2));

ExactMatrix m2(GaussianRational a, GaussianRational b, GaussianRational c, GaussianRational d) {
  return ExactMatrix(2, 2, {a, b, c, d});
}

Germ germ_of(const ExactMatrix& A, const ExactMatrix& B) { return Germ(pair_series(make_pair(A, B), 4)); }

// alpha and gamma read off R(c xi) by direct substitution.
std::pair<GaussianRational, GaussianRational> slice_oracle(const QuadraticPair& p, const std::vector<GaussianRational>& c) {
  oracle::Poly R = oracle::from_series(pair_series(p, 2));
  oracle::Poly out;
  for (const auto& [e, v] : R) {
    oracle::Poly term{{{0, 0, 0, 0}, v}};
    for (int slot = 0; slot < 4; ++slot)
      for (int k = 0; k < e[slot]; ++k) {
        GaussianRational f = slot < 2 ? c[slot] : c[slot - 2].conj();
        std::array<int, 4> var = slot < 2 ? std::array<int, 4>{1, 0, 0, 0} : std::array<int, 4>{0, 0, 1, 0};
        term = oracle::multiply(term, {{var, {f.re(), f.im()}}}, 2);
      }
    out = oracle::add(out, term);
  }
  auto get = [&](std::array<int, 4> e) {
    auto it = out.find(e);
    return it == out.end() ? GaussianRational() : GaussianRational(it->second.re, it->second.im);
  };
  return {get({2, 0, 0, 0}), get({1, 0, 1, 0})};
}

}  // namespace

TEST_CASE("hermitianizability of the representative B shapes") {
  const GaussianRational u(make_rational(3, 5), make_rational(4, 5));
  const std::vector<ExactMatrix> no = {m2(1, 0, 0, u), m2(0, 1, make_rational(1, 3), 0), m2(0, 1, 1, kI),
                                       m2(0, 1, 0, 0), m2(1, 0, 0, GaussianRational(make_rational(-5, 13), make_rational(12, 13)))};
  const std::vector<ExactMatrix> yes = {ExactMatrix::identity(2), m2(1, 0, 0, -1), m2(0, 1, 1, 0), m2(1, 0, 0, 0),
                                        ExactMatrix(2, 2)};
  oracle::Gen gen(51);
  const ExactMatrix A = m2(make_rational(1, 3), 1, 1, kHalf);
  for (const auto& B : no) {
    CAPTURE(format_matrix(B));
    QuadraticPair p = make_pair(A, B);
    CHECK_FALSE(is_hermitianizable(p).flattenable);
    for (int k = 0; k < 5; ++k) {
      GaussianRational mu = gen.gaussian(3);
      if (mu.is_zero()) mu = kI;
      CHECK_FALSE(is_hermitianizable(transform_pair(p, gen.invertible(2, 3), mu)).flattenable);
    }
  }
  for (const auto& B : yes) {
    CAPTURE(format_matrix(B));
    QuadraticPair p = make_pair(A, B);
    FlattenabilityVerdict v = is_hermitianizable(p);
    REQUIRE(v.flattenable);
    CHECK(*v.hermitian_B == adjoint(*v.hermitian_B));
    for (int k = 0; k < 5; ++k) {
      GaussianRational mu = gen.gaussian(3);
      if (mu.is_zero()) mu = kI;
      QuadraticPair q = transform_pair(p, gen.invertible(2, 3), mu);
      FlattenabilityVerdict w = is_hermitianizable(q);
      REQUIRE(w.flattenable);
      CHECK(w.lambda->norm() == 1);
      CHECK(scale(*w.mu_witness, *w.hermitian_B) == q.B);
      CHECK(*w.hermitian_B == adjoint(*w.hermitian_B));
    }
  }
}

TEST_CASE("verdict witnesses satisfy B = lambda B^* and mu / conj(mu) = lambda") {
  oracle::Gen gen(52);
  for (int k = 0; k < 100; ++k) {
    size_t n = gen.integer(1, 4);
    GaussianRational c = gen.gaussian(4);
    if (c.is_zero()) c = 1;
    ExactMatrix B = scale(c, gen.hermitian(n, 4));
    QuadraticPair p = make_pair(gen.matrix(n, 3), B);
    FlattenabilityVerdict v = is_hermitianizable(p);
    REQUIRE(v.flattenable);
    CHECK(B == scale(*v.lambda, adjoint(B)));
    CHECK(*v.mu_witness / v.mu_witness->conj() == *v.lambda);
    CHECK(scale(*v.mu_witness, *v.hermitian_B) == B);
  }
}

TEST_CASE("exact verdicts agree with the floating-point Schur oracle") {
  oracle::Gen gen(53);
  int positives = 0;
  for (int k = 0; k < 200; ++k) {
    size_t n = gen.integer(2, 4);
    ExactMatrix B;
    if (k % 2 == 0) {
      do {
        B = gen.hermitian(n, 5);
      } while (rank(B) < n);
      B = scale(gen.unimodular() * GaussianRational(gen.integer(1, 4)), B);
    } else {
      B = gen.invertible(n, 5);
    }
    bool exact = is_hermitianizable(make_pair(ExactMatrix(n, n), B)).flattenable;
    positives += exact;
    CHECK(exact == oracle::schur_hermitianizable(oracle::to_complex(B), 1e-9));
  }
  CHECK(positives >= 100);
}

TEST_CASE("coarse class of B") {
  const GaussianRational u(make_rational(3, 5), make_rational(4, 5));
  auto tag = [](const ExactMatrix& B) { return coarse_b_class(make_pair(ExactMatrix(2, 2), B)); };
  CHECK(tag(ExactMatrix(2, 2)).tag == BClass::Zero);
  CHECK(tag(m2(1, 0, 0, 0)).tag == BClass::Rank1Herm);
  CHECK(tag(m2(0, 1, 0, 0)).tag == BClass::Rank1NonHerm);
  CHECK(tag(m2(1, 0, 0, -1)).tag == BClass::HermRank2);
  CoarseBClass c1 = tag(m2(1, 0, 0, u));
  CHECK(c1.tag == BClass::UnimodularPair);
  // Cosquare diag(1, u / conj u) = diag(1, u^2).
  CHECK(c1.cosquare_spectrum == "{-7/25+24/25 i, 1}");
  CoarseBClass c2 = tag(m2(0, 1, make_rational(1, 3), 0));
  CHECK(c2.tag == BClass::RealReciprocalPair);
  CHECK(c2.cosquare_spectrum == "{1/3, 3}");
  CHECK(tag(m2(0, 1, 1, kI)).tag == BClass::Jordan);

  // Float oracle: for a non-hermitianizable invertible B the cosquare spectrum
  // is unimodular exactly for the unimodular-pair class.
  oracle::Gen gen(54);
  for (int k = 0; k < 100; ++k) {
    ExactMatrix B = gen.invertible(2, 4);
    CoarseBClass c = tag(B);
    Eigen::MatrixXcd Bc = oracle::to_complex(B);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Bc.adjoint().inverse() * Bc);
    bool unimodular = std::abs(std::abs(es.eigenvalues()(0)) - 1) < 1e-9 && std::abs(std::abs(es.eigenvalues()(1)) - 1) < 1e-9;
    if (c.tag == BClass::Jordan) continue;
    CHECK((c.tag == BClass::UnimodularPair) == unimodular);
  }
}

TEST_CASE("shape recognizer") {
  CHECK(recognize_b_shape(m2(0, 1, 0, 0))->family == 4);
  CHECK(recognize_b_shape(m2(0, 1, 1, kI))->family == 3);
  CHECK(recognize_b_shape(m2(0, 1, make_rational(1, 3), 0))->params == "tau=1/3");
  CHECK(recognize_b_shape(m2(1, 0, 0, GaussianRational(make_rational(3, 5), make_rational(4, 5))))->family == 1);
  CHECK(recognize_b_shape(ExactMatrix::identity(2))->family == 5);
  CHECK_FALSE(recognize_b_shape(m2(2, 0, 0, 0)).has_value());
}

TEST_CASE("CR singular locus linearizations for the elliptic slice cases") {
  const GaussianRational lam(make_rational(2, 3));
  const GaussianRational b(make_rational(1, 3));
  const GaussianRational two(2);
  const ExactMatrix split = m2(1, 0, 0, -1), anti = m2(0, 1, 1, 0);

  JacobianReport c = cr_singular_linearization(germ_of(m2(0, lam * kHalf, lam * kHalf, 0), split));
  CHECK(c.J == ExactMatrix(4, 4, {1, 0, 0, lam, 0, lam, -1, 0, 0, 1, lam, 0, lam, 0, 0, -1}));
  CHECK(c.rank == 4);
  CHECK(c.dim_bound == 0);

  JacobianReport d = cr_singular_linearization(germ_of(m2(kHalf, kHalf, kHalf, kHalf), split));
  CHECK(d.J == ExactMatrix(4, 4, {1, 1, 0, 1, 0, 1, -1, 1, 1, 1, 1, 0, 1, 0, 1, -1}));
  CHECK(d.rank == 4);

  JacobianReport e = cr_singular_linearization(germ_of(m2(0, b, b, kHalf), anti));
  CHECK(e.J == ExactMatrix(4, 4, {0, 0, 1, two * b, 1, two * b, 0, 1, 0, 0, two * b, 1, two * b, 1, 1, 0}));
  CHECK(e.rank >= 3);

  for (GaussianRational dd : {kI, GaussianRational(1, 2), GaussianRational(make_rational(-1, 3), make_rational(1, 5))}) {
    JacobianReport f = cr_singular_linearization(germ_of(m2(kHalf, 0, 0, dd), anti));
    CHECK(f.J == ExactMatrix(4, 4, {0, 1, 1, 0, 1, 0, 0, two * dd.conj(), 1, 0, 0, 1, 0, 1, two * dd, 0}));
    CHECK(f.rank == 4);
  }
  // 2d = 1 makes rows 2, 3 and rows 1, 4 coincide.
  CHECK(cr_singular_linearization(germ_of(m2(kHalf, 0, 0, kHalf), anti)).rank == 2);
}

TEST_CASE("bishop slices match direct substitution") {
  oracle::Gen gen(55);
  for (int k = 0; k < 50; ++k) {
    QuadraticPair p = make_pair(gen.matrix(2, 4), gen.hermitian(2, 4));
    std::vector<GaussianRational> c = {gen.gaussian(3), gen.gaussian(3)};
    auto [alpha, gamma] = slice_oracle(p, c);
    if (gamma.is_zero()) {
      CHECK_THROWS_AS(bishop_slice(p, c), PreconditionError);
      continue;
    }
    SliceReport s = bishop_slice(p, c);
    CHECK(s.alpha == alpha);
    CHECK(s.gamma == gamma);
    CHECK(s.lambda_sq == alpha.norm() / gamma.norm());
    CHECK(s.elliptic == (4 * alpha.norm() < gamma.norm()));
  }
}

TEST_CASE("elliptic directions of the slice cases") {
  const ExactMatrix split = m2(1, 0, 0, -1), anti = m2(0, 1, 1, 0);
  const GaussianRational quarter(make_rational(1, 4));

  SliceReport c = bishop_slice(make_pair(m2(0, 1, 1, 0), split), {1, 0});
  CHECK(c.elliptic);
  CHECK(c.lambda_sq == 0);

  const GaussianRational b(make_rational(2, 5));
  SliceReport e = bishop_slice(make_pair(m2(0, b, b, kHalf), anti), {1, GaussianRational(-4) * b});
  CHECK(e.elliptic);
  CHECK(e.lambda_sq == 0);

  SliceReport bb = bishop_slice(make_pair(m2(quarter, 0, 0, 1), split), {1, 0});
  CHECK(bb.elliptic);
  CHECK(bb.lambda_sq == make_rational(1, 16));

  for (GaussianRational l : {kHalf, GaussianRational(1), GaussianRational(3)}) {
    auto cands = elliptic_candidates(make_pair(m2(l, 0, 0, l), split), 6);
    for (const auto& cand : cands) CHECK_FALSE(cand.verified());
  }
}

TEST_CASE("recipe candidates are verified where the recipe is rational") {
  const ExactMatrix split = m2(1, 0, 0, -1), anti = m2(0, 1, 1, 0);
  auto first = [](const QuadraticPair& p) { return elliptic_candidates(p, 0).at(0); };
  CHECK(first(make_pair(m2(0, 0, 0, 1), ExactMatrix::identity(2))).verified());
  EllipticCandidate a = first(make_pair(m2(kHalf, 0, 0, kHalf), ExactMatrix::identity(2)));
  CHECK(a.verified());
  CHECK(a.slice->lambda_sq == 0);
  CHECK(first(make_pair(m2(make_rational(1, 4), 0, 0, 1), split)).verified());
  EllipticCandidate b2 = first(make_pair(m2(1, 0, 0, 4), split));
  CHECK(b2.verified());
  CHECK(b2.c == std::vector<GaussianRational>{1, GaussianRational(0, make_rational(1, 2))});
  CHECK(first(make_pair(m2(1, 0, 0, 2), split)).c.empty());
  CHECK(first(make_pair(m2(0, 3, 3, 0), split)).verified());
  CHECK(first(make_pair(m2(kHalf, kHalf, kHalf, kHalf), split)).verified());
  CHECK(first(make_pair(m2(0, make_rational(1, 3), make_rational(1, 3), kHalf), anti)).verified());
  EllipticCandidate f = first(make_pair(m2(kHalf, 0, 0, kI), anti));
  CHECK(f.verified());
  CHECK(f.c[1] * f.c[1] == GaussianRational(0, make_rational(1, 2)));
  EllipticCandidate f2 = first(make_pair(m2(kHalf, 0, 0, GaussianRational(0, 2)), anti));
  CHECK(f2.c.empty());
  CHECK(f2.note.find("irrational") != std::string::npos);
}

TEST_CASE("subslices and Levi null dimension") {
  QuadraticPair p = make_pair(ExactMatrix(3, 3, {1, 2, 3, 2, 4, 5, 3, 5, 6}), ExactMatrix::identity(3));
  QuadraticPair s = subslice_pair(p, 1, 3);
  CHECK(s.A == m2(1, 3, 3, 6));
  CHECK(s.B == ExactMatrix::identity(2));
  CHECK_THROWS_AS(subslice_pair(p, 2, 2), PreconditionError);
  CHECK(max_null_dim(1, 3) == 1);
  CHECK(max_null_dim(2, 4) == 2);
  CHECK(max_null_dim(0, 5) == 0);
}
