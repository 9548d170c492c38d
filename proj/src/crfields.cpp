#include "crf/crfields.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "crf/errors.hpp"

namespace crf {

namespace {

const GaussianRational kI = GaussianRational::imag_unit();

Series mul(const Series& a, const Series& b) { return mul_graded(a, b); }

void require_n2(const Germ& g) {
  if (g.n() != 2) throw PreconditionError("bracket calculus requires n = 2");
}

// The coefficient pair (A, B) of L = A d/dz1 - B d/dz2, plus C.
struct Coefs {
  Series A, B, C;
};

Coefs coefs(const Germ& g) {
  TangentField f = build_canonical_field(g);
  return {f.cf_z1, -f.cf_z2, f.cf_w};
}

}  // namespace

TangentField build_canonical_field(const Germ& g) {
  require_n2(g);
  GESplit s = germ_split(g);
  Series G1 = d(s.G, z(1)), G2 = d(s.G, z(2));
  Series E1 = d(s.E, z(1)), E2 = d(s.E, z(2));
  TangentField f;
  f.cf_z1 = G2 - kI * E2;
  f.cf_z2 = -(G1 - kI * E1);
  f.cf_w = GaussianRational(0, 2) * (mul(G2, E1) - mul(G1, E2));
  return f;
}

BracketData bracket_data(const Germ& g) {
  require_n2(g);
  auto [A, B, C] = coefs(g);
  Series Ab = conj(A), Bb = conj(B), Cb = conj(C);
  auto D = [&](const Series& f) { return mul(A, d(f, z(1))) - mul(B, d(f, z(2))); };
  auto Dbar = [&](const Series& f) { return -mul(Ab, d(f, zb(1))) + mul(Bb, d(f, zb(2))); };

  BracketData bd;
  auto& l = bd.lambda;
  l[0] = D(Ab);
  l[1] = -D(Bb);
  l[2] = D(Cb);
  l[3] = Dbar(A);
  l[4] = -Dbar(B);
  l[5] = Dbar(C);

  // Terms from differentiating the coefficients of [L, Lbar] along L.
  auto feedback = [&](const Series& f) {
    return mul(l[0], d(f, zb(1))) + mul(l[1], d(f, zb(2))) + mul(l[3], d(f, z(1))) + mul(l[4], d(f, z(2)));
  };
  auto& gm = bd.gamma;
  gm[0] = D(l[0]);
  gm[1] = D(l[1]);
  gm[2] = D(l[2]);
  gm[3] = D(l[3]) - feedback(A);
  gm[4] = D(l[4]) + feedback(B);
  gm[5] = D(l[5]) - feedback(C);
  return bd;
}

XYSeries xy_series(const Germ& g, const BracketData& bd) {
  auto [A, B, C] = coefs(g);
  Series Ab = conj(A), Bb = conj(B);
  const auto& l = bd.lambda;
  const auto& gm = bd.gamma;
  XYSeries xy;
  xy.X1 = mul(Bb, gm[0]) + mul(Ab, gm[1]);
  xy.X2 = mul(l[3], B) + mul(l[4], A);
  xy.Y1 = mul(B, gm[3]) + mul(A, gm[4]);
  xy.Y2 = mul(l[0], Bb) + mul(l[1], Ab);
  return xy;
}

XYSeries xy_series(const Germ& g) { return xy_series(g, bracket_data(g)); }

ObstructionReport obstruction(const Germ& g, int order) {
  require_n2(g);
  ObstructionReport rep;
  rep.xy = xy_series(g);
  Series full = mul(rep.xy.X1, rep.xy.X2) - mul(rep.xy.Y1, rep.xy.Y2);
  rep.achievable_order = full.trunc();
  if (order > rep.achievable_order)
    throw PreconditionError("order " + std::to_string(order) + " exceeds the achievable residual order " +
                            std::to_string(rep.achievable_order) + " for germ truncation " +
                            std::to_string(g.trunc()));
  if (order < 0) throw PreconditionError("order must be non-negative");
  rep.residual = full.truncated(order);
  if (!rep.residual.is_zero()) rep.first_nonzero = *rep.residual.terms().begin();
  return rep;
}

WitnessCheck verify_witness(const Germ& g, const TangentField& f, const std::optional<Series>& chi) {
  require_n2(g);
  const Series& R = g.R();
  Series Rc = conj(R);
  auto apply = [&](const Series& u) { return mul(f.cf_z1, d(u, z(1))) + mul(f.cf_z2, d(u, z(2))); };
  WitnessCheck w;
  w.h = (apply(R) - f.cf_w).is_zero();
  w.hbar = apply(Rc).is_zero();
  if (chi) {
    if (chi->nvars() != 2) throw PreconditionError("chi must be a series in two variables");
    w.chi = apply(*chi).is_zero();
  }
  return w;
}

TangentField read_field(std::istream& is) {
  auto lines = content_lines(is);
  if (lines.empty()) throw ParseError("missing 'order' header");
  std::istringstream hs(lines[0]);
  std::string key, extra;
  int order = -1;
  if (!(hs >> key >> order) || key != "order" || order < 0 || (hs >> extra))
    throw ParseError("expected 'order <N>', got '" + lines[0] + "'");
  TangentField f{Series(2, order), Series(2, order), Series(2, order)};
  Series* cur = nullptr;
  std::set<Exponent> seen[3];
  std::set<Exponent>* cur_seen = nullptr;
  bool present[3] = {false, false, false};
  for (size_t k = 1; k < lines.size(); ++k) {
    std::istringstream ls(lines[k]);
    std::string w1, w2;
    ls >> w1;
    if (w1 == "coef") {
      if (!(ls >> w2) || (ls >> extra)) throw ParseError("bad block header '" + lines[k] + "'");
      int slot = w2 == "z1" ? 0 : w2 == "z2" ? 1 : w2 == "w" ? 2 : -1;
      if (slot < 0) throw ParseError("unknown block 'coef " + w2 + "'");
      if (present[slot]) throw ParseError("duplicate block 'coef " + w2 + "'");
      present[slot] = true;
      cur = slot == 0 ? &f.cf_z1 : slot == 1 ? &f.cf_z2 : &f.cf_w;
      cur_seen = &seen[slot];
      continue;
    }
    if (!cur) throw ParseError("term line before any 'coef' block");
    parse_term_line(lines[k], *cur, *cur_seen);
  }
  return f;
}

void write_field(std::ostream& os, const TangentField& f) {
  int order = std::max({f.cf_z1.trunc(), f.cf_z2.trunc(), f.cf_w.trunc()});
  os << "order " << order << "\ncoef z1\n"
     << format_terms(f.cf_z1) << "coef z2\n"
     << format_terms(f.cf_z2) << "coef w\n"
     << format_terms(f.cf_w);
}

TangentField load_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_field(in);
}

}  // namespace crf
