#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "crf/germ.hpp"

namespace crf {

// L = cf_z1 d/dz1 + cf_z2 d/dz2 + cf_w d/dw, restricted to the graph w = R.
struct TangentField {
  Series cf_z1;
  Series cf_z2;
  Series cf_w;
  friend bool operator==(const TangentField& a, const TangentField& b) {
    return a.cf_z1 == b.cf_z1 && a.cf_z2 == b.cf_z2 && a.cf_w == b.cf_w;
  }
};

// lambda[k] and gamma[k] hold the coefficients with index k + 1.
struct BracketData {
  std::array<Series, 6> lambda;
  std::array<Series, 6> gamma;
};

struct XYSeries {
  Series X1, X2, Y1, Y2;
};

struct ObstructionReport {
  XYSeries xy;
  // X1 X2 - Y1 Y2, truncated to the requested order.
  Series residual;
  // Highest order through which the residual is exact for this germ.
  int achievable_order = 0;
  std::optional<std::pair<Exponent, GaussianRational>> first_nonzero;
};

struct WitnessCheck {
  bool h = false;
  bool hbar = false;
  std::optional<bool> chi;
};

// A = G_2 - iE_2, cf_z1 = A, cf_z2 = -(G_1 - iE_1), cf_w = 2i(G_2 E_1 - G_1 E_2).
// With R exact through N, the coefficients are exact through N - 1 and cf_w through N.
TangentField build_canonical_field(const Germ& g);

// Every product keeps its exact range (mul_graded), so lambda and gamma are
// exact through N - 1 and X1, X2, Y1, Y2 through N.
BracketData bracket_data(const Germ& g);
XYSeries xy_series(const Germ& g);
XYSeries xy_series(const Germ& g, const BracketData& bd);

// Residual exact through achievable_order, which is N + 2 for a germ exact through N.
ObstructionReport obstruction(const Germ& g, int order);

// h = -w + R: L(h) = f1 R_1 + f2 R_2 - f3, L(conj h) = f1 (conj R)_1 + f2 (conj R)_2,
// L(chi) = f1 chi_1 + f2 chi_2. Each holds iff the truncated series vanishes.
WitnessCheck verify_witness(const Germ& g, const TangentField& f, const std::optional<Series>& chi);

// Field file: "order N", then blocks "coef z1", "coef z2", "coef w" of term lines.
TangentField read_field(std::istream& is);
void write_field(std::ostream& os, const TangentField& f);
TangentField load_field(const std::string& path);

}  // namespace crf
