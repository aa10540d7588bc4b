// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "lmlab/chart.hpp"
#include "lmlab/lattice.hpp"
#include "lmlab/report.hpp"

namespace lmlab {

inline std::string var2(const std::string& prefix, int i, int j) {
  return prefix + "_" + std::to_string(i) + "_" + std::to_string(j);
}

/// Q[pi, x_i_j, y_i_j], 2d^2 + 1 variables.
inline RingPtr naive_ring(int d) {
  std::vector<std::string> names{std::string(kBaseVariable)};
  for (const char* p : {"x", "y"})
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) names.push_back(var2(p, i, j));
  return PolyRing::make(names);
}

/// Q[pi, z_i_j] with Z of shape delta x (d - delta).
inline RingPtr z_ring(const LatticeNormalForm& nf) {
  std::vector<std::string> names{std::string(kBaseVariable)};
  for (int i = 1; i <= nf.delta; ++i)
    for (int j = 1; j <= nf.d - nf.delta; ++j) names.push_back(var2("z", i, j));
  return PolyRing::make(names);
}

inline PolyMatrix z_matrix(const LatticeNormalForm& nf, const RingPtr& ring) {
  return PolyMatrix::generic(ring, "z", nf.delta, nf.d - nf.delta);
}

/// Block decomposition of X. Rows and columns split as top | middle | bottom;
/// in the mixed-parity case the middle block has size delta+1 and row and
/// column `erased` are dropped from it.
struct BlockLayout {
  bool same_parity = true;
  int top = 0, middle = 0, bottom = 0;
  int erased = 0;
  std::map<std::pair<int, int>, std::pair<int, int>> z_position;  // (i, j) of Z -> (row, col) of X

  std::string parity_case() const { return same_parity ? "I" : "II"; }
  /// Block name of the X entry at (row, col), e.g. "B1", "D4", "E".
  std::string block_of(int row, int col) const {
    auto part = [&](int k) { return k <= top ? 0 : (k <= top + middle ? 1 : 2); };
    int a = part(row), b = part(col);
    static const char* names[3][3] = {{"D1", "C1", "D2"}, {"B1", "A", "B2"}, {"D3", "C2", "D4"}};
    if (!same_parity && a == 1 && b == 1 && col == erased && row != erased) return "E";
    return names[a][b];
  }
};

inline BlockLayout block_layout(const LatticeNormalForm& nf) {
  BlockLayout b;
  b.same_parity = nf.same_parity();
  if (b.same_parity) {
    b.top = nf.n - nf.r;
    b.middle = nf.delta;
  } else {
    b.top = nf.n - nf.r_prime;
    b.middle = nf.delta + 1;
    b.erased = nf.n + 1;
  }
  b.bottom = nf.d - b.top - b.middle;
  // Z = [B1|B2] resp. [B1'|E'|B2']: rows of the middle block (minus the erased
  // one), columns outside the middle block plus the erased column
  for (int i = 1; i <= nf.delta; ++i)
    for (int j = 1; j <= nf.d - nf.delta; ++j) b.z_position[{i, j}] = {nf.Delta[i - 1], nf.DeltaC[j - 1]};
  return b;
}

/// T(Z) = 1/2 sum z_{i, d-delta+1-j} z_{delta+1-i, j}.
inline Polynomial trace_form(const LatticeNormalForm& nf, const RingPtr& ring) {
  const int dl = nf.delta, m = nf.d - nf.delta;
  Polynomial t(ring);
  for (int i = 1; i <= dl; ++i)
    for (int j = 1; j <= m; ++j)
      t += Polynomial::variable(ring, var2("z", i, m + 1 - j)) * Polynomial::variable(ring, var2("z", dl + 1 - i, j));
  return t * Rational(1, 2);
}

/// T through the blocks of X: Tr(B2 J B1^t J_delta) resp.
/// Tr((B2' J B1'^t + 1/2 E' E'^t) J_delta), with Z-positions read as z.
inline Polynomial trace_form_blocks(const LatticeNormalForm& nf, const RingPtr& ring) {
  BlockLayout L = block_layout(nf);
  std::map<std::pair<int, int>, std::string> at;
  for (const auto& [ij, rc] : L.z_position) at[rc] = var2("z", ij.first, ij.second);
  auto x = [&](int row, int col) {
    auto it = at.find({row, col});
    if (it == at.end()) throw std::logic_error("block entry outside Z");
    return Polynomial::variable(ring, it->second);
  };
  std::vector<int> rows;
  for (int k = L.top + 1; k <= L.top + L.middle; ++k)
    if (k != L.erased) rows.push_back(k);
  auto block = [&](int c0, int ncols) {
    PolyMatrix B(ring, rows.size(), ncols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < ncols; ++j) B(i, j) = x(rows[i], c0 + j);
    return B;
  };
  PolyMatrix B1 = block(1, L.top), B2 = block(L.top + L.middle + 1, L.bottom);
  PolyMatrix J = PolyMatrix::antidiagonal(ring, L.top), Jd = PolyMatrix::antidiagonal(ring, nf.delta);
  PolyMatrix inner = B2 * J * B1.transpose();
  if (!L.same_parity) {
    PolyMatrix E = block(L.erased, 1);
    inner = inner + Rational(1, 2) * (E * E.transpose());
  }
  return (inner * Jd).trace();
}

struct NaiveChart {
  ChartPresentation chart;
  std::size_t generator_count = 0;
  std::vector<std::string> families;  // family label per generator, aligned with `generators`
  std::vector<Polynomial> generators;  // as built, zero entries included
};

inline NaiveChart build_naive_chart_ideal(const LatticeNormalForm& nf) {
  auto R = naive_ring(nf.d);
  const int d = nf.d;
  PolyMatrix X = PolyMatrix::generic(R, "x", d, d), Y = PolyMatrix::generic(R, "y", d, d);
  PolyMatrix S1 = PolyMatrix::constant(R, nf.S1), S2 = PolyMatrix::constant(R, nf.S2);
  Polynomial pi = Polynomial::variable(R, kBaseVariable);
  PolyMatrix S = S1 + pi * S2;
  PolyMatrix Xt = X.transpose(), Yt = Y.transpose();
  PolyMatrix W = S2 * Y + pi * (S1 * Y);

  NaiveChart out;
  auto add = [&](const std::string& fam, const std::vector<Polynomial>& ps) {
    for (const auto& p : ps) {
      out.generators.push_back(p);
      out.families.push_back(fam);
    }
  };
  add("Y+X^t", (Y + Xt).entries());
  add("X^t*Y", (Xt * Y).entries());
  add("minors(X)", minors(X, 2));
  add("minors(Y)", minors(Y, 2));
  add("X^t*S1*X-2pi*S*X", (Xt * S1 * X - Rational(2) * (pi * (S * X))).entries());
  add("X^t*S2*X+2*S*X", (Xt * S2 * X + Rational(2) * (S * X)).entries());
  add("Y^t*S1*Y+2(S2*Y+pi*S1*Y)", (Yt * S1 * Y + Rational(2) * W).entries());
  add("Y^t*S2*Y-2pi(S2*Y+pi*S1*Y)", (Yt * S2 * Y - Rational(2) * (pi * W)).entries());
  out.generator_count = out.generators.size();
  std::map<std::string, std::string> roles{{std::string(kBaseVariable), "base"}};
  for (const auto& v : R->names())
    if (v != kBaseVariable) roles[v] = "matrix-entry";
  out.chart = ChartPresentation("U-naive" + nf.label(), Ideal(R, out.generators),
                                "naive chart ideal: (c1) Y+X^t, X^tY; (c2) 2x2 minors of X, Y; (c3) X^tS1X-2piSX, "
                                "X^tS2X+2SX; (c4) Y^tS1Y+2(S2Y+piS1Y), Y^tS2Y-2pi(S2Y+piS1Y)",
                                roles);
  return out;
}

inline std::map<std::string, std::string> z_roles(const RingPtr& R) {
  std::map<std::string, std::string> roles;
  for (const auto& v : R->names()) roles[v] = v == kBaseVariable ? "base" : "matrix-entry";
  return roles;
}

struct UIdeals {
  ChartPresentation U;              // (minors(Z), T + 2pi)
  ChartPresentation U_naive_small;  // (minors(Z), (T + 2pi) z_ij)
};

inline UIdeals build_U_ideals(const LatticeNormalForm& nf) {
  auto R = z_ring(nf);
  auto ms = minors(z_matrix(nf, R), 2);
  Polynomial tp = trace_form(nf, R) + Polynomial::variable(R, kBaseVariable) * Rational(2);
  std::vector<Polynomial> u = ms, small = ms;
  u.push_back(tp);
  for (int i = 1; i <= nf.delta; ++i)
    for (int j = 1; j <= nf.d - nf.delta; ++j) small.push_back(tp * Polynomial::variable(R, var2("z", i, j)));
  return {ChartPresentation("U" + nf.label(), Ideal(R, u), "chart U: (wedge^2 Z, T(Z)+2pi)", z_roles(R)),
          ChartPresentation("U-naive-small" + nf.label(), Ideal(R, small),
                            "reduced naive chart: (wedge^2 Z, (T(Z)+2pi) Z)", z_roles(R))};
}

/// The determinantal chart with sum z_{i,d-delta+1-j} z_{delta+1-i,j} = -4 pi.
/// Throws std::logic_error when it differs from the U ideal.
inline ChartPresentation build_DT_ideal(const LatticeNormalForm& nf, bool check = true) {
  auto R = z_ring(nf);
  auto gens = minors(z_matrix(nf, R), 2);
  gens.push_back(trace_form(nf, R) * Rational(2) + Polynomial::variable(R, kBaseVariable) * Rational(4));
  ChartPresentation dt("D_T" + nf.label(), Ideal(R, gens),
                       "determinantal chart: wedge^2 Z = 0, sum z_{i,d-delta+1-j} z_{delta+1-i,j} = -4pi", z_roles(R));
  if (check && !ideal_equal(dt.ideal, build_U_ideals(nf).U.ideal))
    throw std::logic_error("D_T ideal differs from the U ideal at " + nf.label());
  return dt;
}

/// The section psi: Q[pi, X, Y] -> Q[pi, Z]. Z-positions of X go to z;
/// the remaining middle-block entries are the products given by the
/// (B2 J B1^t + 1/2 E'E'^t) J_delta recipe, rows in M are
/// x_{m,j} = -1/2 sum_{k in N} z(k, sigma(m)) psi(x_{tau(k), j}), and Y = -X^t.
inline RingMap block_substitution(const LatticeNormalForm& nf) {
  auto src = naive_ring(nf.d);
  auto R = z_ring(nf);
  const int d = nf.d;
  auto z = [&](int row, int col) {  // row in Delta, col in DeltaC
    return Polynomial::variable(R, var2("z", nf.pos_in_delta(row), nf.pos_in_deltac(col)));
  };
  std::vector<std::vector<Polynomial>> X(d + 1, std::vector<Polynomial>(d + 1, Polynomial(R)));
  for (int j : nf.Delta)
    for (int a : nf.DeltaC) X[j][a] = z(j, a);
  for (int j : nf.Delta)
    for (int c : nf.Delta) {
      int tc = nf.partner(c);
      Polynomial v(R);
      for (int a : nf.DeltaC) {
        int sa = nf.partner(a);
        if (a < sa)
          v += z(j, sa) * z(tc, a);
        else if (a == sa)
          v += z(j, a) * z(tc, a) * Rational(1, 2);
      }
      X[j][c] = v;
    }
  for (int m : nf.DeltaC) {
    int sm = nf.partner(m);
    for (int j = 1; j <= d; ++j) {
      Polynomial v(R);
      for (int k : nf.Delta) v += z(k, sm) * X[nf.partner(k)][j];
      X[m][j] = v * Rational(-1, 2);
    }
  }
  RingMap psi(src, R);
  psi.set(kBaseVariable, Polynomial::variable(R, kBaseVariable));
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      psi.set(var2("x", i, j), X[i][j]);
      psi.set(var2("y", j, i), -X[i][j]);
    }
  return psi;
}

enum class Mode { sound, complete };

struct PresentationOptions {
  Mode mode = Mode::sound;
  std::uint64_t seed = 7;
  int samples = 20;
  std::vector<unsigned> degree_bounds{2, 3, 4};
};

/// Rank-one Z = a b^t with random rationals, pi := -T(Z)/2, as a point of Q[pi, Z].
inline std::vector<Rational> rank_one_point(const LatticeNormalForm& nf, const RingPtr& R, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  auto rnd = [&] {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
  };
  std::vector<Rational> a(nf.delta), b(nf.d - nf.delta);
  for (auto& x : a) x = rnd();
  for (auto& x : b) x = rnd();
  std::vector<Rational> pt(R->nvars());
  for (int i = 1; i <= nf.delta; ++i)
    for (int j = 1; j <= nf.d - nf.delta; ++j) pt[R->index(var2("z", i, j))] = a[i - 1] * b[j - 1];
  pt[R->index(kBaseVariable)] = -evaluate(trace_form(nf, R), pt) / 2;
  return pt;
}

namespace detail {

// v - psi(v) for every non-base variable of the naive ring, with psi(v)
// written back in the naive ring through the Z-positions of X.
inline std::vector<std::pair<std::string, Polynomial>> section_relations(const LatticeNormalForm& nf,
                                                                         const RingMap& psi) {
  auto src = psi.source();
  auto R = psi.target();
  RingMap back(R, src);
  back.set(kBaseVariable, Polynomial::variable(src, kBaseVariable));
  for (const auto& [ij, rc] : block_layout(nf).z_position)
    back.set(var2("z", ij.first, ij.second), Polynomial::variable(src, var2("x", rc.first, rc.second)));
  std::vector<std::pair<std::string, Polynomial>> out;
  for (const auto& v : src->names()) {
    if (v == kBaseVariable) continue;
    out.emplace_back(v, Polynomial::variable(src, v) - back(*psi.image(v)));
  }
  return out;
}

}  // namespace detail

/// Checks that psi carries the naive chart ideal into (wedge^2 Z, (T+2pi) Z);
/// in complete mode also certifies v - psi(v) in the naive ideal and the
/// contraction of the naive ideal to Q[pi, Z].
inline VerificationReport verify_presentation(const LatticeNormalForm& nf, const PresentationOptions& opt = {},
                                              std::optional<double> timeout_s = std::nullopt) {
  return run_check("za1", nf.d, nf.delta, timeout_s, [&](VerificationReport& rep) {
    rep.note(std::string("mode ") + (opt.mode == Mode::sound ? "sound" : "complete"));
    NaiveChart naive = build_naive_chart_ideal(nf);
    UIdeals U = build_U_ideals(nf);
    RingMap psi = block_substitution(nf);
    const auto& target = U.U_naive_small.ideal;
    const auto& gb = target.groebner();

    std::size_t killed = 0;
    std::vector<Polynomial> images;
    for (std::size_t k = 0; k < naive.generators.size(); ++k) {
      Polynomial img = psi(naive.generators[k]);
      Polynomial nf_k = normal_form(img, gb);
      if (nf_k.is_zero())
        ++killed;
      else
        rep.require(false, "generator " + std::to_string(k) + " (" + naive.families[k] + ") survives",
                    to_string(nf_k));
      images.push_back(std::move(img));
    }
    rep.note(std::to_string(killed) + "/" + std::to_string(naive.generator_count) + " generators reduce to 0");

    // c1 entries Y + X^t vanish before any reduction
    for (std::size_t k = 0; k < naive.generators.size(); ++k)
      if (naive.families[k] == "Y+X^t") rep.require(images[k].is_zero(), "psi(Y+X^t) is not identically 0");

    std::mt19937_64 rng(opt.seed);
    auto R = target.ring();
    for (int s = 0; s < opt.samples; ++s) {
      auto pt = rank_one_point(nf, R, rng);
      for (std::size_t k = 0; k < images.size(); ++k) {
        Rational val = evaluate(images[k], pt);
        if (val != 0) {
          rep.require(false, "rank-one sample " + std::to_string(s) + " gives nonzero value",
                      naive.families[k] + " -> " + val.get_str());
          break;
        }
      }
    }
    rep.note(std::to_string(opt.samples) + " rank-one samples evaluate to 0");
    if (opt.mode == Mode::sound || !rep.ok()) return;

    // surjectivity: v - psi(v) in the naive ideal, after removing Y linearly
    auto rel = detail::section_relations(nf, psi);
    std::set<std::string> ys;
    for (const auto& v : naive.chart.ring->names())
      if (v[0] == 'y') ys.insert(v);
    auto pre = linear_preeliminate(naive.chart.ideal, ys);
    RingMap to_small = RingMap::identity_on_shared(naive.chart.ring, pre.ideal.ring());
    for (const auto& [v, e] : pre.solved) to_small.set(v, e);
    rep.note("linear pre-elimination: " + std::to_string(naive.chart.ring->nvars()) + " -> " +
             std::to_string(pre.ideal.ring()->nvars()) + " variables, " + std::to_string(pre.ideal.size()) +
             " generators");
    std::vector<Polynomial> pending;
    std::vector<std::string> pending_names;
    for (const auto& [v, p] : rel) {
      Polynomial q = to_small(p);
      if (!q.is_zero()) {
        pending.push_back(q);
        pending_names.push_back(v);
      }
    }
    std::size_t trivial = rel.size() - pending.size();
    unsigned reached = 0;
    for (unsigned bound : opt.degree_bounds) {
      if (pending.empty()) break;
      reached = bound;
      auto tgb = buchberger(pre.ideal.generators(), pre.ideal.ring(), bound);
      std::vector<Polynomial> left;
      std::vector<std::string> left_names;
      for (std::size_t k = 0; k < pending.size(); ++k) {
        if (normal_form(pending[k], tgb.basis).is_zero()) continue;
        left.push_back(pending[k]);
        left_names.push_back(pending_names[k]);
      }
      rep.note("degree bound " + std::to_string(bound) + ": truncated basis of " + std::to_string(tgb.basis.size()) +
               " elements" + (tgb.partial ? " (partial)" : "") + ", " + std::to_string(pending.size() - left.size()) +
               " certificates");
      if (!tgb.partial && !left.empty()) {
        rep.require(false, std::to_string(left.size()) + " section relations are not in the naive ideal",
                    left_names.front() + " - psi(" + left_names.front() + ")");
        return;
      }
      pending = std::move(left);
      pending_names = std::move(left_names);
    }
    if (!pending.empty()) {
      rep.status = Status::uncertified;
      rep.note("degree bounds exhausted at " + std::to_string(reached) + " with " + std::to_string(pending.size()) +
               " relations uncertified (first: " + pending_names.front() + ")");
      return;
    }
    rep.certificates.push_back("v - psi(v) in naive ideal for all " + std::to_string(rel.size()) + " variables (" +
                               std::to_string(trivial) + " identically, the rest by truncated Groebner reduction)");

    // contraction: with the certified relations v - psi(v) adjoined, every
    // non-Z variable is eliminated linearly
    std::vector<Polynomial> gens;
    std::set<std::string> non_z;
    std::set<std::string> z_pos;
    for (const auto& [ij, rc] : block_layout(nf).z_position) z_pos.insert(var2("x", rc.first, rc.second));
    for (const auto& [v, p] : rel)
      if (!z_pos.count(v)) {
        gens.push_back(p);
        non_z.insert(v);
      }
    for (const auto& g : naive.chart.ideal.generators()) gens.push_back(g);
    auto contracted = linear_preeliminate(Ideal(naive.chart.ring, gens), non_z);
    const auto& CR = contracted.ideal.ring();
    rep.require(CR->nvars() == z_pos.size() + 1, "linear elimination left non-Z variables");
    RingMap to_z(CR, R);
    to_z.set(kBaseVariable, Polynomial::variable(R, kBaseVariable));
    for (const auto& [ij, rc] : block_layout(nf).z_position)
      to_z.set(var2("x", rc.first, rc.second), Polynomial::variable(R, var2("z", ij.first, ij.second)));
    std::vector<Polynomial> zgens;
    for (const auto& g : contracted.ideal.generators()) zgens.push_back(to_z(g));
    Ideal contraction(R, zgens);
    bool sub = contains(target, contraction);
    rep.require(sub, "contraction is not contained in (wedge^2 Z, (T+2pi) Z)");
    bool sup = contains(contraction, target);
    rep.require(sup, "(wedge^2 Z, (T+2pi) Z) is not contained in the contraction");
    rep.certificates.push_back("contraction to Q[pi,Z] equals (wedge^2 Z, (T+2pi) Z): " +
                               std::to_string(contraction.size()) + " generators");
  });
}

/// ((wedge^2 Z, (T+2pi) Z) : (T+2pi)) = (Z).
inline VerificationReport verify_annihilator(const LatticeNormalForm& nf, std::optional<double> timeout_s = std::nullopt) {
  return run_check("annihilator", nf.d, nf.delta, timeout_s, [&](VerificationReport& rep) {
    auto U = build_U_ideals(nf);
    auto R = U.U.ring;
    Polynomial tp = trace_form(nf, R) + Polynomial::variable(R, kBaseVariable) * Rational(2);
    Ideal q = quotient(U.U_naive_small.ideal, tp);
    std::vector<Polynomial> zs;
    for (const auto& v : R->names())
      if (v != kBaseVariable) zs.push_back(Polynomial::variable(R, v));
    rep.require(ideal_equal(q, Ideal(R, zs)), "annihilator of T+2pi differs from (Z)");
    rep.note("quotient basis has " + std::to_string(q.groebner().size()) + " elements");
  });
}

/// Flatness over the base via (I : pi) = I and absolute dimension rel_dim + 1.
inline VerificationReport flatness_and_dimension(const ChartPresentation& cp, int expected_rel_dim,
                                                 std::optional<double> timeout_s = std::nullopt, int d = 0,
                                                 int delta = 0) {
  return run_check("flatness-dims", d, delta, timeout_s, [&](VerificationReport& rep) {
    rep.note("chart " + cp.name);
    Polynomial pi = Polynomial::variable(cp.ring, kBaseVariable);
    Ideal q = quotient(cp.ideal, pi);
    rep.require(contains(cp.ideal, q), "pi is a zero divisor modulo " + cp.name);
    int dim = krull_dim(cp.ideal);
    rep.note("absolute dimension " + std::to_string(dim));
    rep.require(dim == expected_rel_dim + 1, "dimension " + std::to_string(dim) + " != " +
                                                 std::to_string(expected_rel_dim + 1));
  });
}

}  // namespace lmlab
