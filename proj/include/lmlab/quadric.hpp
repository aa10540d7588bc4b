// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lmlab/localmodel.hpp"

namespace lmlab {

inline std::string var1(const std::string& prefix, int i) { return prefix + "_" + std::to_string(i); }

/// Chart V_{i,j} of the linked quadric: x_i = 1 on M-coordinates, y_j = 1 on
/// N-coordinates, linking multipliers u, v.
struct LinkedChart {
  ChartPresentation chart;
  std::string u_var = "u", v_var = "v";
  int pinned_x = 0, pinned_y = 0;
  Polynomial Q1, Q2;
};

inline LinkedChart build_linked_chart_ideal(const LatticeNormalForm& nf, int i, int j) {
  if (nf.in_delta(i) || i < 1 || i > nf.d) throw LatticeError("x-pin " + std::to_string(i) + " not in DeltaC");
  if (!nf.in_delta(j)) throw LatticeError("y-pin " + std::to_string(j) + " not in Delta");
  std::vector<std::string> names{std::string(kBaseVariable), "u", "v"};
  for (int k : nf.DeltaC) names.push_back(var1("x", k));
  for (int k : nf.Delta) names.push_back(var1("y", k));
  auto R = PolyRing::make(names);
  LinkedChart lc;
  lc.pinned_x = i;
  lc.pinned_y = j;
  lc.Q1 = half_form(nf.S1, nf.DeltaC, R, [](int k) { return var1("x", k); });
  lc.Q2 = half_form(nf.S2, nf.Delta, R, [](int k) { return var1("y", k); });
  auto V = [&](std::string_view n) { return Polynomial::variable(R, n); };
  Polynomial one = Polynomial::constant(R, 1);
  std::vector<Polynomial> gens{V("u") * V("v") - V(kBaseVariable), V("u") * lc.Q1 + V("v") * lc.Q2,
                               V(var1("x", i)) - one, V(var1("y", j)) - one};
  std::map<std::string, std::string> roles;
  for (const auto& n : names)
    roles[n] = n == kBaseVariable ? "base" : (n == "u" || n == "v" ? "multiplier" : "coordinate");
  lc.chart = ChartPresentation("V" + nf.label() + "[x_" + std::to_string(i) + "=1,y_" + std::to_string(j) + "=1]",
                               Ideal(R, gens),
                               "linked quadric chart: uv = pi, u Q1(x) + v Q2(y) = 0 with Q2 = <y,y>_2/2 "
                               "(the displayed equation differs by the unit 2 when delta = 1)",
                               roles);
  return lc;
}

/// B = Spec Q[pi,u,v,w1,w2]/(uv - pi, u w1 + v w2); w1, w2 stand for S, T.
inline ChartPresentation build_basic_scheme() {
  auto R = PolyRing::make({std::string(kBaseVariable), "u", "v", "w1", "w2"});
  return ChartPresentation("B", Ideal(R, {"u*v - pi", "u*w1 + v*w2"}),
                           "basic scheme: uv - pi, uS + vT with S, T renamed w1, w2",
                           {{"pi", "base"}, {"u", "multiplier"}, {"v", "multiplier"}, {"w1", "coordinate"},
                            {"w2", "coordinate"}});
}

/// The morphism V_{i,j} -> B given by w1 -> Q1, w2 -> Q2.
inline RingMap basic_scheme_map(const LinkedChart& lc, const RingPtr& B) {
  RingMap f(B, lc.chart.ring);
  for (const char* v : {"pi", "u", "v"}) f.set(v, Polynomial::variable(lc.chart.ring, v));
  f.set("w1", lc.Q1);
  f.set("w2", lc.Q2);
  return f;
}

inline VerificationReport verify_fiber_decomposition(std::optional<double> timeout_s = std::nullopt) {
  return run_check("linked-fiber", 0, 0, timeout_s, [&](VerificationReport& rep) {
    auto R = PolyRing::make({"u", "v", "w1", "w2"});
    Ideal F(R, {"u*w1 + v*w2", "u*v"});
    Ideal rad(R, {"u*w1", "v*w2", "u*v"});
    // (i) (u w1)^2 = u w1 (u w1 + v w2) - w1 w2 (u v), and symmetrically for v w2
    auto P = [&](std::string_view s) { return parse_poly(s, R); };
    rep.require(P("(u*w1)^2") == P("u*w1") * P("u*w1 + v*w2") - P("w1*w2") * P("u*v"),
                "certificate for (u w1)^2 in F");
    rep.require(P("(v*w2)^2") == P("v*w2") * P("u*w1 + v*w2") - P("w1*w2") * P("u*v"),
                "certificate for (v w2)^2 in F");
    for (const auto& g : rad.generators()) rep.require(radical_member(g, F), to_string(g) + " not in rad(F)");
    rep.require(contains(rad, F), "F is not contained in (u w1, v w2, uv)");
    rep.certificates.push_back("(u*w1)^2 = u*w1*(u*w1 + v*w2) - w1*w2*(u*v)");
    // (ii) prime decomposition of the radical
    Ideal Z0(R, {"u", "v"}), Z1(R, {"w1", "v"}), Z2(R, {"w2", "u"});
    rep.require(ideal_equal(rad, intersect(intersect(Z0, Z1), Z2)),
                "(u w1, v w2, uv) != (u,v) cap (w1,v) cap (w2,u)");
    // (iii) primary decomposition: multiplicity 2 along (u, v)
    Ideal Q0(R, {"u^2", "u*v", "v^2", "u*w1 + v*w2"});
    rep.require(ideal_equal(F, intersect(intersect(Q0, Z1), Z2)),
                "F != (u^2, uv, v^2, u w1 + v w2) cap (w1,v) cap (w2,u)");
    rep.require(!contains(F, P("u")) && contains(Q0, P("u^2")) && !contains(Q0, P("u")),
                "primary component along (u,v) is not of length 2");
    rep.note("div(pi) = 2 Z0 + Z1 + Z2 on B");
  });
}

/// Blow-up charts of B along (w1, v): chart I (uv - pi) in Q[pi,u,v,x], chart II (w1 w2 y^2 + pi) in Q[pi,w1,w2,y].
struct BBlowup {
  ChartPresentation chartI, chartII;
  RingMap toI, toII;  // from B's ring
};

inline BBlowup build_B_blowup_charts() {
  auto B = build_basic_scheme();
  auto RI = PolyRing::make({std::string(kBaseVariable), "u", "v", "x"});
  auto RII = PolyRing::make({std::string(kBaseVariable), "w1", "w2", "y"});
  ChartPresentation I("B~I", Ideal(RI, {"u*v - pi"}), "blow-up of B, chart I: uv - pi, w1 = vx, w2 = -ux");
  ChartPresentation II("B~II", Ideal(RII, {"w1*w2*y^2 + pi"}), "blow-up of B, chart II: S T y^2 + pi, u = -y T, v = S y");
  RingMap f(B.ring, RI), g(B.ring, RII);
  for (const char* v : {"pi", "u", "v"}) f.set(v, Polynomial::variable(RI, v));
  f.set("w1", "v*x");
  f.set("w2", "-u*x");
  for (const char* v : {"pi", "w1", "w2"}) g.set(v, Polynomial::variable(RII, v));
  g.set("u", "-y*w2");
  g.set("v", "w1*y");
  return {I, II, f, g};
}

inline VerificationReport verify_B_blowup(std::optional<double> timeout_s = std::nullopt) {
  return run_check("b-blowup", 0, 0, timeout_s, [&](VerificationReport& rep) {
    auto B = build_basic_scheme();
    auto bl = build_B_blowup_charts();
    for (const auto& g : B.ideal.generators()) {
      rep.require(contains(bl.chartI.ideal, bl.toI(g)), "chart I does not kill " + to_string(g), to_string(bl.toI(g)));
      rep.require(contains(bl.chartII.ideal, bl.toII(g)), "chart II does not kill " + to_string(g),
                  to_string(bl.toII(g)));
    }
    rep.require(bl.toI(parse_poly("u*w1 + v*w2", B.ring)).is_zero(), "u(vx) + v(-ux) is not identically 0");
    // the centre (w1, v) becomes principal: (v) on chart I, (w1) on chart II
    Ideal cI = bl.chartI.ideal.plus({bl.toI(parse_poly("w1", B.ring)), bl.toI(parse_poly("v", B.ring))});
    rep.require(ideal_equal(cI, bl.chartI.ideal.plus({parse_poly("v", bl.chartI.ring)})),
                "(w1, v) is not (v) on chart I");
    Ideal cII = bl.chartII.ideal.plus({bl.toII(parse_poly("w1", B.ring)), bl.toII(parse_poly("v", B.ring))});
    rep.require(ideal_equal(cII, bl.chartII.ideal.plus({parse_poly("w1", bl.chartII.ring)})),
                "(w1, v) is not (w1) on chart II");

    // multiplicities of the special fiber
    auto RI = bl.chartI.ring, RII = bl.chartII.ring;
    rep.require(contains(bl.chartI.ideal, parse_poly("pi - u*v", RI)), "pi != uv on chart I");
    rep.require(contains(bl.chartII.ideal, parse_poly("pi + w1*w2*y^2", RII)), "pi != -w1 w2 y^2 on chart II");
    Polynomial pi = parse_poly("pi", RII);
    rep.require(contains(bl.chartII.ideal.plus({parse_poly("y^2", RII)}), pi), "pi not in (y^2) on chart II");
    rep.require(!contains(bl.chartII.ideal.plus({parse_poly("y^3", RII)}), pi), "pi in (y^3) on chart II");
    for (const ChartPresentation* cp : {&bl.chartI, &bl.chartII}) {
      rep.require(krull_dim(cp->ideal) == 3, cp->name + " has wrong dimension");
      rep.require(contains(cp->ideal, quotient(cp->ideal, Polynomial::variable(cp->ring, kBaseVariable))),
                  "pi is a zero divisor on " + cp->name);
    }
    rep.note("chart I: pi = u*v, branches (u), (v) of multiplicity 1");
    rep.note("chart II: pi = -w1*w2*y^2, multiplicities (1,1,2)");
  });
}

/// x -> l x, y -> m y, u -> l^-1 m u, v -> l m^-1 v scales u Q1 + v Q2 by l m;
/// checked modulo l*li - 1, m*mi - 1.
inline bool torus_shadow(const LinkedChart& lc) {
  auto R = lc.chart.ring->extended({"l", "li", "m", "mi"});
  RingMap t(lc.chart.ring, R);
  auto V = [&](std::string_view n) { return Polynomial::variable(R, n); };
  for (const auto& n : lc.chart.ring->names()) {
    Polynomial v = V(n);
    if (n[0] == 'x') v = V("l") * v;
    if (n[0] == 'y') v = V("m") * v;
    if (n == "u") v = V("li") * V("m") * v;
    if (n == "v") v = V("l") * V("mi") * v;
    t.set(n, v);
  }
  Polynomial eq = lc.Q1 * Polynomial::variable(lc.chart.ring, "u") +
                  lc.Q2 * Polynomial::variable(lc.chart.ring, "v");
  Polynomial diff = t(eq) - V("l") * V("m") * eq.in_ring(R);
  Ideal units(R, {V("l") * V("li") - Polynomial::constant(R, 1), V("m") * V("mi") - Polynomial::constant(R, 1)});
  return contains(units, diff);
}

/// All linked-quadric checks at one instance: B's fiber structure plus every chart V_{i,j}.
inline VerificationReport verify_linked_quadric(const LatticeNormalForm& nf,
                                                std::optional<double> timeout_s = std::nullopt) {
  return run_check("linked-fiber", nf.d, nf.delta, timeout_s, [&](VerificationReport& rep) {
    rep.absorb(verify_fiber_decomposition());
    auto B = build_basic_scheme();
    rep.require(krull_dim(B.ideal) == 3, "dim B != 3");
    std::size_t charts = 0;
    for (int i : nf.DeltaC)
      for (int j : nf.Delta) {
        auto lc = build_linked_chart_ideal(nf, i, j);
        auto f = basic_scheme_map(lc, B.ring);
        for (const auto& g : B.ideal.generators())
          rep.require(contains(lc.chart.ideal, f(g)), lc.chart.name + ": B-map misses " + to_string(g));
        Polynomial pi = Polynomial::variable(lc.chart.ring, kBaseVariable);
        rep.require(contains(lc.chart.ideal, quotient(lc.chart.ideal, pi)), lc.chart.name + ": pi is a zero divisor");
        int dim = krull_dim(lc.chart.ideal);
        rep.require(dim == nf.d - 1, lc.chart.name + ": dimension " + std::to_string(dim));
        rep.require(torus_shadow(lc), lc.chart.name + ": torus scaling identity fails");
        ++charts;
      }
    rep.note(std::to_string(charts) + " linked charts: flat, dimension " + std::to_string(nf.d - 1) +
             ", B-map and torus scaling verified");
    if (nf.delta == 1) rep.units["Q2(pinned)"] = "1/2";
  });
}

}  // namespace lmlab
