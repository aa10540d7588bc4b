// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lmlab/quadric.hpp"

namespace lmlab {

/// Chart of the blow-up of D_T at Z = 0 where z_{s,t} generates the
/// exceptional ideal; z_{i,j} = z_{s,t} bu_{i,j} with bu_{s,t} = 1.
struct BlowupChart {
  ChartPresentation chart;    // reduced: free variables z_s_t, bu_i_t (i != s), bu_s_j (j != t)
  ChartPresentation ambient;  // all bu_i_j, rank-one relations, bu_s_t - 1
  int s = 0, t = 0;
  std::string z_var;
  Polynomial row_sum, col_sum;  // in the reduced ring
  Polynomial equation;          // 4 pi + z^2 row_sum col_sum
};

inline BlowupChart build_DT_blowup_chart(const LatticeNormalForm& nf, int s, int t, bool check = true) {
  const int dl = nf.delta, m = nf.d - nf.delta;
  if (s < 1 || s > dl || t < 1 || t > m)
    throw LatticeError("pivot (" + std::to_string(s) + "," + std::to_string(t) + ") outside the " +
                       std::to_string(dl) + "x" + std::to_string(m) + " matrix Z");
  BlowupChart bc;
  bc.s = s;
  bc.t = t;
  bc.z_var = var2("z", s, t);
  std::string piv = "[" + std::to_string(s) + "," + std::to_string(t) + "]";

  std::vector<std::string> names{std::string(kBaseVariable), bc.z_var};
  for (int i = 1; i <= dl; ++i)
    if (i != s) names.push_back(var2("bu", i, t));
  for (int j = 1; j <= m; ++j)
    if (j != t) names.push_back(var2("bu", s, j));
  auto R = PolyRing::make(names);
  auto bu = [&](int i, int j) {
    return i == s && j == t ? Polynomial::constant(R, 1) : Polynomial::variable(R, var2("bu", i, j));
  };
  bc.row_sum = Polynomial(R);
  for (int i = 1; i <= dl; ++i) bc.row_sum += bu(i, t) * bu(dl + 1 - i, t);
  bc.col_sum = Polynomial(R);
  for (int j = 1; j <= m; ++j) bc.col_sum += bu(s, j) * bu(s, m + 1 - j);
  Polynomial z = Polynomial::variable(R, bc.z_var);
  bc.equation = Polynomial::variable(R, kBaseVariable) * Rational(4) + z * z * bc.row_sum * bc.col_sum;
  std::map<std::string, std::string> roles;
  for (const auto& n : names) roles[n] = n == kBaseVariable ? "base" : (n == bc.z_var ? "multiplier" : "coordinate");
  bc.chart = ChartPresentation("D_T~" + nf.label() + piv, Ideal(R, {bc.equation}),
                               "blow-up of D_T at the origin: 4 pi + z_st^2 (sum u_it u_(delta+1-i)t)"
                               "(sum u_sj u_s(d-delta+1-j)); the two sums are row_sum, col_sum",
                               roles);

  std::vector<std::string> an{std::string(kBaseVariable), bc.z_var};
  for (int i = 1; i <= dl; ++i)
    for (int j = 1; j <= m; ++j) an.push_back(var2("bu", i, j));
  auto A = PolyRing::make(an);
  auto b = [&](int i, int j) { return Polynomial::variable(A, var2("bu", i, j)); };
  std::vector<Polynomial> gens;
  for (int i = 1; i <= dl; ++i)
    for (int j = 1; j <= m; ++j) gens.push_back(b(i, j) - b(s, j) * b(i, t));
  gens.push_back(b(s, t) - Polynomial::constant(A, 1));
  Polynomial sum(A);
  for (int i = 1; i <= dl; ++i)
    for (int j = 1; j <= m; ++j) sum += b(i, m + 1 - j) * b(dl + 1 - i, j);
  Polynomial za = Polynomial::variable(A, bc.z_var);
  gens.push_back(Polynomial::variable(A, kBaseVariable) * Rational(4) + za * za * sum);
  bc.ambient = ChartPresentation("D_T~ambient" + nf.label() + piv, Ideal(A, gens),
                                 "blow-up chart V_st: (u_ij - u_sj u_it), u_st - 1 and the strict transform of "
                                 "sum z_(i,d-delta+1-j) z_(delta+1-i,j) + 4 pi");
  if (check) {
    std::vector<std::string> drop;
    for (int i = 1; i <= dl; ++i)
      for (int j = 1; j <= m; ++j)
        if ((i != s && j != t) || (i == s && j == t)) drop.push_back(var2("bu", i, j));
    if (!ideal_equal(eliminate(bc.ambient.ideal, drop), bc.chart.ideal))
      throw std::logic_error("ambient and reduced blow-up charts differ at " + nf.label() + piv);
  }
  return bc;
}

/// Chart U~_{s,t} of the resolution, s in Delta, t in DeltaC.
struct MChart {
  ChartPresentation full;     // Q[pi, lambda, x_1..x_d, y_1..y_d]
  ChartPresentation reduced;  // Q[pi, lambda, x_Delta, y_DeltaC]
  int s = 0, t = 0;
  std::string lambda = "lambda";
  Polynomial Q1, Q2;  // Q1(y_DeltaC), Q2(x_Delta), in the full ring
};

inline MChart build_M_chart(const LatticeNormalForm& nf, int s, int t, bool check = true) {
  if (!nf.in_delta(s)) throw LatticeError("s = " + std::to_string(s) + " is not in Delta");
  if (t < 1 || t > nf.d || nf.in_delta(t)) throw LatticeError("t = " + std::to_string(t) + " is not in DeltaC");
  const int d = nf.d;
  MChart mc;
  mc.s = s;
  mc.t = t;
  std::string piv = "[" + std::to_string(s) + "," + std::to_string(t) + "]";

  std::vector<std::string> fn{std::string(kBaseVariable), mc.lambda};
  for (int i = 1; i <= d; ++i) fn.push_back(var1("x", i));
  for (int i = 1; i <= d; ++i) fn.push_back(var1("y", i));
  auto F = PolyRing::make(fn);
  auto X = [&](int i) { return Polynomial::variable(F, var1("x", i)); };
  auto Y = [&](int i) { return Polynomial::variable(F, var1("y", i)); };
  Polynomial lam = Polynomial::variable(F, mc.lambda), one = Polynomial::constant(F, 1);
  mc.Q2 = half_form(nf.S2, nf.Delta, F, [](int k) { return var1("x", k); });
  mc.Q1 = half_form(nf.S1, nf.DeltaC, F, [](int k) { return var1("y", k); });
  Polynomial eq = lam * lam * mc.Q2 * mc.Q1 + Polynomial::variable(F, kBaseVariable);
  std::vector<Polynomial> gens{eq, X(s) - one, Y(t) - one};
  for (int i : nf.DeltaC) gens.push_back(X(i) + lam * mc.Q2 * Y(d + 1 - i));
  for (int j : nf.Delta) gens.push_back(Y(j) - lam * mc.Q1 * X(d + 1 - j));
  std::map<std::string, std::string> roles;
  for (const auto& n : fn) roles[n] = n == kBaseVariable ? "base" : (n == mc.lambda ? "multiplier" : "coordinate");
  mc.full = ChartPresentation("U~" + nf.label() + piv, Ideal(F, gens),
                              "affine chart with K_st: lambda^2 Q2(x2) Q1(y1) + pi, x_s - 1, y_t - 1, "
                              "(x_i + lambda Q2 y_(d+1-i)) i in DeltaC, (y_j - lambda Q1 x_(d+1-j)) j in Delta",
                              roles);

  std::vector<std::string> rn{std::string(kBaseVariable), mc.lambda};
  for (int i : nf.Delta) rn.push_back(var1("x", i));
  for (int j : nf.DeltaC) rn.push_back(var1("y", j));
  auto R = PolyRing::make(rn);
  std::vector<Polynomial> rg{eq.in_ring(R), (X(s) - one).in_ring(R), (Y(t) - one).in_ring(R)};
  std::map<std::string, std::string> rroles;
  for (const auto& n : rn) rroles[n] = roles[n];
  mc.reduced = ChartPresentation("U~red" + nf.label() + piv, Ideal(R, rg),
                                 "reduced affine chart: lambda^2 Q2(x2) Q1(y1) + pi, x_s - 1, y_t - 1", rroles);
  if (check) {
    std::vector<std::string> drop;
    for (int i : nf.DeltaC) drop.push_back(var1("x", i));
    for (int j : nf.Delta) drop.push_back(var1("y", j));
    if (!ideal_equal(eliminate(mc.full.ideal, drop), mc.reduced.ideal))
      throw std::logic_error("eliminating K_st does not give the reduced chart at " + nf.label() + piv);
  }
  return mc;
}

/// All admissible (s, t) with s in Delta, t in DeltaC.
inline std::vector<std::pair<int, int>> m_pivots(const LatticeNormalForm& nf) {
  std::vector<std::pair<int, int>> out;
  for (int s : nf.Delta)
    for (int t : nf.DeltaC) out.emplace_back(s, t);
  return out;
}

inline std::string pivot_label(int s, int t) { return std::to_string(s) + "," + std::to_string(t); }

/// Elimination equality of the affine chart and the covering property
/// (ideal + all x_i, i in Delta) = (1).
inline VerificationReport verify_affine_chart(const LatticeNormalForm& nf, int s, int t,
                                              std::optional<double> timeout_s = std::nullopt) {
  auto rep = run_check("affine-chart", nf.d, nf.delta, timeout_s, [&](VerificationReport& rep) {
    MChart mc;
    try {
      mc = build_M_chart(nf, s, t);
    } catch (const std::logic_error& e) {
      mc = build_M_chart(nf, s, t, false);
      std::vector<std::string> drop;
      for (int i : nf.DeltaC) drop.push_back(var1("x", i));
      for (int j : nf.Delta) drop.push_back(var1("y", j));
      Ideal el = eliminate(mc.full.ideal, drop);
      std::string witness;
      for (const auto& g : el.groebner())
        if (!contains(mc.reduced.ideal, g)) {
          witness = to_string(g);
          break;
        }
      if (witness.empty())
        for (const auto& g : mc.reduced.ideal.generators())
          if (!contains(el, g)) {
            witness = "missing " + to_string(g);
            break;
          }
      rep.require(false, e.what(), witness);
      return;
    }
    rep.note("eliminating x_DeltaC, y_Delta from the full chart gives the reduced chart");
    std::vector<Polynomial> xs;
    for (int i : nf.Delta) xs.push_back(Polynomial::variable(mc.full.ring, var1("x", i)));
    rep.require(mc.full.ideal.plus(xs).is_unit(), "chart does not avoid x_Delta = 0");
    Polynomial pi = Polynomial::variable(mc.reduced.ring, kBaseVariable);
    rep.require(contains(mc.reduced.ideal, quotient(mc.reduced.ideal, pi)), "pi is a zero divisor");
    int dim = krull_dim(mc.full.ideal);
    rep.require(dim == nf.d - 1, "dimension " + std::to_string(dim) + " != " + std::to_string(nf.d - 1));
  });
  rep.pivot = pivot_label(s, t);
  return rep;
}

namespace detail {

// D: reduced blow-up ring -> reduced M ring; z_pivot -> lambda, bu_{i,t'} -> x_Delta(i), bu_{s',j} -> y_DeltaC(j).
// With swap the roles of x and y are exchanged (into the full ring), as a negative control.
inline RingMap match_dictionary(const LatticeNormalForm& nf, const BlowupChart& bc, const RingPtr& target, bool swap) {
  RingMap D(bc.chart.ring, target);
  D.set(kBaseVariable, Polynomial::variable(target, kBaseVariable));
  D.set(bc.z_var, Polynomial::variable(target, "lambda"));
  for (int i = 1; i <= nf.delta; ++i)
    if (i != bc.s)
      D.set(var2("bu", i, bc.t), Polynomial::variable(target, var1(swap ? "y" : "x", nf.Delta[i - 1])));
  for (int j = 1; j <= nf.d - nf.delta; ++j)
    if (j != bc.t)
      D.set(var2("bu", bc.s, j), Polynomial::variable(target, var1(swap ? "x" : "y", nf.DeltaC[j - 1])));
  return D;
}

}  // namespace detail

/// Three-way match between the blow-up chart at pivot (pos(s), pos(t)) and
/// the affine chart U~_{s,t}.
inline VerificationReport chart_match(const LatticeNormalForm& nf, int s, int t, bool swap_roles = false,
                                      std::optional<double> timeout_s = std::nullopt) {
  auto rep = run_check("chart-match", nf.d, nf.delta, timeout_s, [&](VerificationReport& rep) {
    int sp = nf.pos_in_delta(s), tp = nf.pos_in_deltac(t);
    if (!sp || !tp) throw LatticeError("pivot " + pivot_label(s, t) + " not in Delta x DeltaC");
    auto bc = build_DT_blowup_chart(nf, sp, tp, false);
    auto mc = build_M_chart(nf, s, t, false);
    const auto& MR = mc.reduced.ring;
    rep.note("blow-up pivot (" + std::to_string(sp) + "," + std::to_string(tp) + ")");
    if (swap_roles) {
      auto D = detail::match_dictionary(nf, bc, mc.full.ring, true);
      Polynomial img = D(bc.equation);
      auto r = reduce(img, mc.full.ideal.groebner(), false);
      rep.require(r.normal_form.is_zero(), "swapped dictionary does not carry the chart equation",
                  to_string(r.normal_form));
      return;
    }
    auto D = detail::match_dictionary(nf, bc, MR, false);
    Polynomial meq = mc.reduced.ideal.generators()[0];
    // (i) D(4 pi + z^2 row col) = 4 (pi + lambda^2 Q2 Q1) modulo the pins
    Polynomial img = D(bc.equation);
    auto r = reduce(img - meq * Rational(4), mc.reduced.ideal.groebner(), false);
    rep.require(r.normal_form.is_zero(), "D(blow-up equation) != 4 * chart equation", to_string(r.normal_form));
    rep.require(contains(mc.reduced.ideal, img), "D(blow-up equation) not in the affine chart ideal");
    rep.units["D(equation)/equation"] = "4";
    // (ii) inverse dictionary
    RingMap E(MR, bc.chart.ring);
    E.set(kBaseVariable, Polynomial::variable(bc.chart.ring, kBaseVariable));
    E.set("lambda", Polynomial::variable(bc.chart.ring, bc.z_var));
    for (int i = 1; i <= nf.delta; ++i)
      E.set(var1("x", nf.Delta[i - 1]), i == sp ? Polynomial::constant(bc.chart.ring, 1)
                                                : Polynomial::variable(bc.chart.ring, var2("bu", i, tp)));
    for (int j = 1; j <= nf.d - nf.delta; ++j)
      E.set(var1("y", nf.DeltaC[j - 1]), j == tp ? Polynomial::constant(bc.chart.ring, 1)
                                                 : Polynomial::variable(bc.chart.ring, var2("bu", sp, j)));
    for (const auto& g : mc.reduced.ideal.generators()) {
      Polynomial e = E(g);
      rep.require(contains(bc.chart.ideal, e), "inverse dictionary misses " + to_string(g), to_string(e));
    }
    // (iii) both composites are the identity modulo the ideals
    for (const auto& v : bc.chart.ring->names()) {
      Polynomial p = Polynomial::variable(bc.chart.ring, v);
      rep.require(contains(bc.chart.ideal, E(D(p)) - p), "E(D(" + v + ")) != " + v);
    }
    for (const auto& v : MR->names()) {
      Polynomial p = Polynomial::variable(MR, v);
      rep.require(contains(mc.reduced.ideal, D(E(p)) - p), "D(E(" + v + ")) != " + v);
    }
    rep.certificates.push_back("z_" + std::to_string(sp) + "_" + std::to_string(tp) +
                               " -> lambda, bu_i_t -> x_Delta(i), bu_s_j -> y_DeltaC(j)");
  });
  rep.pivot = pivot_label(s, t);
  return rep;
}

/// full + (lambda) = (lambda, pi, x_DeltaC, y_Delta, x_s - 1, y_t - 1), and lambda is a nonzerodivisor.
inline VerificationReport exceptional_locus(const LatticeNormalForm& nf, int s, int t,
                                            std::optional<double> timeout_s = std::nullopt) {
  auto rep = run_check("exceptional", nf.d, nf.delta, timeout_s, [&](VerificationReport& rep) {
    auto mc = build_M_chart(nf, s, t, false);
    const auto& F = mc.full.ring;
    auto V = [&](std::string_view n) { return Polynomial::variable(F, n); };
    Polynomial lam = V("lambda"), one = Polynomial::constant(F, 1);
    std::vector<Polynomial> target{lam, V(kBaseVariable), V(var1("x", s)) - one, V(var1("y", t)) - one};
    for (int i : nf.DeltaC) target.push_back(V(var1("x", i)));
    for (int j : nf.Delta) target.push_back(V(var1("y", j)));
    Ideal exc = mc.full.ideal.plus({lam});
    Ideal lin(F, target);
    rep.require(ideal_equal(exc, lin), "exceptional ideal is not the expected linear ideal");
    std::string free;
    int nfree = 0;
    for (int i : nf.Delta)
      if (i != s) free += (nfree++ ? ", " : "") + var1("x", i);
    for (int j : nf.DeltaC)
      if (j != t) free += (nfree++ ? ", " : "") + var1("y", j);
    rep.require(nfree == (nf.delta - 1) + (nf.d - nf.delta - 1), "wrong number of free coordinates");
    rep.note("quotient is free in {" + free + "}: chart of P^" + std::to_string(nf.delta - 1) + " x P^" +
             std::to_string(nf.d - nf.delta - 1));
    rep.require(contains(mc.full.ideal, quotient(mc.full.ideal, lam)), "lambda is a zero divisor");
  });
  rep.pivot = pivot_label(s, t);
  return rep;
}

/// i(x) - u y and j(pi y) - v x in the full chart ideal with u = -Q2 lambda,
/// v = Q1 lambda; i(x)_k = (S x)_k and j(pi y)_k = ((pi S1 + S2) y)_k. Away
/// from case (2) these are the index flips k -> d+1-k, scaled by pi on N.
inline VerificationReport linking_multipliers(const LatticeNormalForm& nf, int s, int t,
                                              std::optional<double> timeout_s = std::nullopt) {
  auto rep = run_check("linking", nf.d, nf.delta, timeout_s, [&](VerificationReport& rep) {
    auto mc = build_M_chart(nf, s, t, false);
    const auto& F = mc.full.ring;
    const int d = nf.d;
    Polynomial pi = Polynomial::variable(F, kBaseVariable), lam = Polynomial::variable(F, "lambda");
    Polynomial u = -(mc.Q2 * lam), v = mc.Q1 * lam;
    const auto& gb = mc.full.ideal.groebner();
    int ok = 0;
    for (int k = 1; k <= d; ++k) {
      Polynomial ix(F), jy(F);
      for (int l = 1; l <= d; ++l) {
        Polynomial xl = Polynomial::variable(F, var1("x", l)), yl = Polynomial::variable(F, var1("y", l));
        if (nf.S1[k - 1][l - 1]) {
          ix += xl;
          jy += pi * yl;
        }
        if (nf.S2[k - 1][l - 1]) {
          ix += pi * xl;
          jy += yl;
        }
      }
      Polynomial a = normal_form(ix - u * Polynomial::variable(F, var1("y", k)), gb);
      Polynomial b = normal_form(jy - v * Polynomial::variable(F, var1("x", k)), gb);
      ok += rep.require(a.is_zero(), "i(x)_" + std::to_string(k) + " != u y_" + std::to_string(k), to_string(a));
      ok += rep.require(b.is_zero(), "j(pi y)_" + std::to_string(k) + " != v x_" + std::to_string(k), to_string(b));
    }
    rep.require(normal_form(u * v - pi, gb).is_zero(), "uv != pi");
    rep.note(std::to_string(ok) + "/" + std::to_string(2 * d) + " coordinate identities reduce to 0");
  });
  rep.pivot = pivot_label(s, t);
  return rep;
}

}  // namespace lmlab
