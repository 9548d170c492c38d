#include "crf/flatten.hpp"

#include "crf/errors.hpp"

namespace crf {

namespace {

// Copy of s exact through degree trunc; s must be a polynomial of lower degree.
Series lifted(const Series& s, int trunc) {
  Series out(2, trunc);
  for (const auto& [e, c] : s.terms()) out.add_term(e, c);
  return out;
}

Series x1(int trunc) { return Series::variable(2, z(1), trunc) + Series::variable(2, zb(1), trunc); }
Series x2(int trunc) { return Series::variable(2, z(2), trunc) + Series::variable(2, zb(2), trunc); }

// [t s r h] lookup; negative indices read as zero.
GaussianRational at(const Series& p, int t, int s, int r, int h) { return p.coeff(s, t, h, r); }

long binom(int n, int k) {
  if (k < 0 || n < k) return 0;
  long v = 1;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

void tally(AuditLine& line, bool ok) {
  ++line.checked;
  if (!ok) ++line.failed;
}

}  // namespace

bool AuditReport::ok() const {
  if (skipped) return false;
  for (const auto& l : lines)
    if (l.failed) return false;
  return true;
}

PhiPsiTables phi_psi(const HTable& H) {
  int m = H.m;
  int top = m + 6;
  Series h = lifted(H.poly, top);
  Series X1 = x1(top), X2 = x2(top);
  Series phi = X2 * d(h, zb(1)) - X1 * d(h, zb(2));
  Series psi = X2 * X2 * d(phi, z(1)) - X2 * X1 * d(phi, z(2)) + X1 * phi;
  return {m, make_htable(phi, m).poly, make_htable(psi, m + 1).poly};
}

Series fundamental_expression(const PhiPsiTables& t) {
  int top = t.m + 4;
  Series psi = lifted(t.psi, top);
  return make_htable(x2(top) * d(psi, z(1)) - x1(top) * d(psi, z(2)), t.m + 1).poly;
}

FundamentalCheck check_fundamental(const PhiPsiTables& t) {
  FundamentalCheck fc;
  Series f = fundamental_expression(t);
  fc.violations.assign(f.terms().begin(), f.terms().end());
  fc.holds = fc.violations.empty();
  return fc;
}

KTransform k_transform(const Series& table, int deg, int k) {
  KTransform kt;
  kt.k = k;
  for (int s = 0; s <= deg; ++s)
    for (int h = 0; s + h <= deg; ++h) {
      GaussianRational v;
      for (int t = 0; t <= deg - s - h; ++t) {
        int r = deg - t - s - h;
        long c = binom(t, k);
        if (c == 0) continue;
        v += GaussianRational((r % 2 ? -c : c)) * at(table, t, s, r, h);
      }
      if (!v.is_zero()) kt.values[{s, h}] = v;
    }
  return kt;
}

AuditReport recursion_audit(const HTable& H, const PhiPsiTables& tab) {
  const Series& h = H.poly;
  const Series& phi = tab.phi;
  const Series& psi = tab.psi;
  int m = H.m;
  AuditReport rep;
  AuditLine a1{"A1"}, a2{"A2"}, iden{"iden"};
  auto G = [](long v) { return GaussianRational(v); };

  for (int t = 0; t <= m; ++t)
    for (int s = 0; t + s <= m; ++s)
      for (int r = 0; t + s + r <= m; ++r) {
        int hh = m - t - s - r;
        GaussianRational rhs = G(hh + 1) * at(h, t, s, r - 1, hh + 1) + G(hh + 1) * at(h, t - 1, s, r, hh + 1) -
                               G(r + 1) * at(h, t, s - 1, r + 1, hh) - G(r + 1) * at(h, t, s, r + 1, hh - 1);
        tally(a1, at(phi, t, s, r, hh) == rhs);
      }

  Series fund = fundamental_expression(tab);
  for (int t = 0; t <= m + 1; ++t)
    for (int s = 0; t + s <= m + 1; ++s)
      for (int r = 0; t + s + r <= m + 1; ++r) {
        int hh = m + 1 - t - s - r;
        GaussianRational rhs =
            G(s + 1) * (at(phi, t, s + 1, r - 2, hh) + G(2) * at(phi, t - 1, s + 1, r - 1, hh) +
                        at(phi, t - 2, s + 1, r, hh)) -
            G(t + 1) * at(phi, t + 1, s, r - 1, hh - 1) - G(t) * at(phi, t, s, r, hh - 1) -
            G(t + 1) * at(phi, t + 1, s - 1, r - 1, hh) - G(t) * at(phi, t, s - 1, r, hh) +
            at(phi, t, s, r, hh - 1) + at(phi, t, s - 1, r, hh);
        tally(a2, at(psi, t, s, r, hh) == rhs);
        GaussianRational id = G(s + 1) * at(psi, t - 1, s + 1, r, hh) + G(s + 1) * at(psi, t, s + 1, r - 1, hh) -
                              G(t + 1) * at(psi, t + 1, s - 1, r, hh) - G(t + 1) * at(psi, t + 1, s, r, hh - 1);
        tally(iden, id == at(fund, t, s, r, hh));
      }
  rep.lines = {a1, a2, iden};
  return rep;
}

AuditReport identity_audit(const HTable& H) {
  int m = H.m;
  PhiPsiTables tab = phi_psi(H);
  AuditReport rep;
  if (!check_fundamental(tab).holds) {
    rep.skipped = true;
    rep.reason = "H does not satisfy the fundamental equation";
    return rep;
  }
  // K[k] for k in [-3, m + 3]; index with k + 3.
  auto transforms = [&](const Series& p, int deg) {
    std::vector<KTransform> v;
    for (int k = -3; k <= m + 3; ++k) v.push_back(k_transform(p, deg, k));
    return v;
  };
  auto KH = transforms(H.poly, m);
  auto KPhi = transforms(tab.phi, m);
  auto KPsi = transforms(tab.psi, m + 1);
  auto get = [](const std::vector<KTransform>& v, int k, int s, int h) {
    if (s < 0 || h < 0) return GaussianRational();
    auto it = v[k + 3].values.find({s, h});
    return it == v[k + 3].values.end() ? GaussianRational() : it->second;
  };
  auto G = [](long v) { return GaussianRational(v); };

  AuditLine b1{"B1"}, b2{"B2"}, b3{"B3"};
  for (int k = -1; k <= m + 2; ++k)
    for (int s = 0; s <= m + 1; ++s) {
      tally(b1, get(KPhi, k, s, 0) == get(KH, k - 1, s, 1) + G(m - s + 1 - k) * get(KH, k, s - 1, 0) -
                                          G(k + 1) * get(KH, k + 1, s - 1, 0));
      tally(b2, get(KPsi, k, s, 0) == G(s + 1) * get(KPhi, k - 2, s + 1, 0) - G(k - 1) * get(KPhi, k, s - 1, 0));
      tally(b3, G(s + 1) * get(KPsi, k - 1, s + 1, 0) == G(k + 1) * get(KPsi, k + 1, s - 1, 0));
    }
  rep.lines = {b1, b2, b3};
  if (m % 2 != 0) return rep;

  AuditLine c1{"C1"}, psi_odd{"C1.psi"}, phi_odd{"C1.phi"}, last{"lasteq"};
  for (int l = 0; 2 * l + 1 <= m + 2; ++l)
    for (int s = 0; s <= m + 1; ++s)
      tally(c1, G(s + 1) * get(KPsi, 2 * l - 1, s + 1, 0) == G(2 * l + 1) * get(KPsi, 2 * l + 1, s - 1, 0));
  for (int k = 0; 2 * k + 1 <= m + 2; ++k) tally(psi_odd, get(KPsi, 2 * k + 1, 0, 0).is_zero());
  for (int l = 1; 2 * l - 1 <= m + 2; ++l) tally(phi_odd, get(KPhi, 2 * l - 1, 1, 0).is_zero());
  for (int l = 1; 2 * l <= m + 2; ++l)
    tally(last, (get(KH, 2 * l - 2, 1, 1) + G(m + 1 - 2 * l) * get(KH, 2 * l - 1, 0, 0) - G(2 * l) * get(KH, 2 * l, 0, 0))
                    .is_zero());
  rep.lines.insert(rep.lines.end(), {c1, psi_odd, phi_odd, last});
  return rep;
}

ParityReport parity_audit(const HTable& H, bool require_preconditions) {
  if (H.m % 2 == 0) throw PreconditionError("parity audit requires odd m");
  ParityReport rep;
  rep.fundamental_ok = check_fundamental(phi_psi(H)).holds;
  rep.normalization_ok = normalization_violations(normalization_system(H.m), H.poly).empty();
  if (require_preconditions && !(rep.fundamental_ok && rep.normalization_ok))
    throw PreconditionError("parity audit requires H to satisfy the fundamental equation and the normalization");
  for (const auto& [e, c] : H.poly.terms())
    if ((e.s() + e.h()) % 2 != 0) rep.violations.emplace_back(e, c);
  return rep;
}

}  // namespace crf
