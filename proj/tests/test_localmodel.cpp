// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "lmlab/localmodel.hpp"

using namespace lmlab;

namespace {

const std::vector<std::pair<int, int>> kGrid{{5, 1}, {5, 2}, {6, 1}, {6, 2}, {6, 3}, {7, 2}, {7, 3}};

Polynomial Z(const RingPtr& r, std::string_view s) { return parse_poly(s, r); }

}  // namespace

TEST(NaiveChart, GeneratorCountAt51) {
  auto nc = build_naive_chart_ideal(normal_form(5, 1));
  EXPECT_EQ(nc.generator_count, 350u);
  EXPECT_EQ(nc.chart.ring->nvars(), 51u);
  std::map<std::string, int> per;
  for (const auto& f : nc.families) ++per[f];
  EXPECT_EQ(per["Y+X^t"], 25);
  EXPECT_EQ(per["minors(X)"], 100);
  EXPECT_EQ(per["X^t*S2*X+2*S*X"], 25);
}

TEST(NaiveChart, EntryOfC3At51) {
  auto nc = build_naive_chart_ideal(normal_form(5, 1));
  std::size_t k = 0;
  while (nc.families[k] != "X^t*S1*X-2pi*S*X") ++k;
  EXPECT_EQ(nc.generators[k], parse_poly("2*x_1_1*x_5_1 + 2*x_2_1*x_4_1 - 2*pi*x_5_1", nc.chart.ring));
}

TEST(NaiveChart, OriginIsOnEveryFiber) {
  auto nc = build_naive_chart_ideal(normal_form(6, 2));
  auto R = nc.chart.ring;
  for (int p : {0, 1, -3}) {
    std::vector<Rational> pt(R->nvars(), Rational(0));
    pt[R->index("pi")] = p;
    for (const auto& g : nc.generators) EXPECT_EQ(evaluate(g, pt), 0);
  }
}

TEST(TraceForm, Examples) {
  auto n51 = normal_form(5, 1);
  auto R = z_ring(n51);
  EXPECT_EQ(trace_form(n51, R), Z(R, "z_1_1*z_1_4 + z_1_2*z_1_3"));
  auto n62 = normal_form(6, 2);
  auto R2 = z_ring(n62);
  EXPECT_EQ(trace_form(n62, R2), Z(R2, "z_1_1*z_2_4 + z_1_2*z_2_3 + z_1_3*z_2_2 + z_1_4*z_2_1"));
}

TEST(TraceForm, BlockFormulaAgreesOnGrid) {
  for (auto [d, delta] : kGrid) {
    auto nf = normal_form(d, delta);
    auto R = z_ring(nf);
    EXPECT_EQ(trace_form(nf, R), trace_form_blocks(nf, R)) << nf.label();
  }
}

TEST(BlockLayout, Partition) {
  for (auto [d, delta] : kGrid) {
    auto nf = normal_form(d, delta);
    auto L = block_layout(nf);
    EXPECT_EQ(L.top + L.middle + L.bottom, d);
    EXPECT_EQ(L.top, L.bottom);
    std::set<std::pair<int, int>> seen;
    for (const auto& [ij, rc] : L.z_position) {
      EXPECT_TRUE(seen.insert(rc).second);
      auto b = L.block_of(rc.first, rc.second);
      EXPECT_TRUE(b == "B1" || b == "B2" || b == "E") << nf.label() << " " << b;
    }
    EXPECT_EQ(seen.size(), static_cast<std::size_t>(delta * (d - delta)));
  }
}

TEST(UIdeals, Examples) {
  auto u51 = build_U_ideals(normal_form(5, 1));
  EXPECT_EQ(u51.U.ideal.size(), 1u);
  EXPECT_EQ(u51.U.ideal.generators()[0], Z(u51.U.ring, "z_1_1*z_1_4 + z_1_2*z_1_3 + 2*pi"));
  auto u62 = build_U_ideals(normal_form(6, 2));
  EXPECT_EQ(u62.U.ideal.size(), 7u);
  auto R = u62.U_naive_small.ring;
  std::vector<Rational> pt(R->nvars(), Rational(0));
  pt[R->index("pi")] = 5;
  for (const auto& g : u62.U_naive_small.ideal.generators()) EXPECT_EQ(evaluate(g, pt), 0);
}

TEST(UIdeals, GridProperties) {
  for (auto [d, delta] : {std::pair{5, 1}, {5, 2}, {6, 2}}) {
    auto nf = normal_form(d, delta);
    auto u = build_U_ideals(nf);
    auto R = u.U.ring;
    EXPECT_TRUE(contains(u.U.ideal, u.U_naive_small.ideal));
    std::vector<Polynomial> zs;
    for (const auto& v : R->names())
      if (v != "pi") zs.push_back(Polynomial::variable(R, v));
    auto zpi = zs;
    zpi.push_back(Polynomial::variable(R, "pi"));
    EXPECT_TRUE(ideal_equal(u.U.ideal.plus(zs), Ideal(R, zpi))) << nf.label();
  }
}

TEST(DTIdeal, EqualsU) {
  for (auto [d, delta] : {std::pair{5, 1}, {6, 2}, {7, 3}}) {
    auto nf = normal_form(d, delta);
    EXPECT_NO_THROW(build_DT_ideal(nf)) << nf.label();
  }
  auto dt = build_DT_ideal(normal_form(5, 1), false);
  EXPECT_EQ(dt.ideal.generators()[0], Z(dt.ring, "2*z_1_1*z_1_4 + 2*z_1_2*z_1_3 + 4*pi"));
}

TEST(BlockSubstitution, ExamplesAt62) {
  auto nf = normal_form(6, 2);
  auto psi = block_substitution(nf);
  auto R = psi.target();
  EXPECT_EQ(*psi.image("x_3_1"), Z(R, "z_1_1"));
  EXPECT_EQ(*psi.image("x_3_3"), Z(R, "z_1_4*z_2_1 + z_1_3*z_2_2"));
  // D1 entry through relation (1): -1/2 (J B2^t J B1)_{11}
  EXPECT_EQ(*psi.image("x_1_1"), Z(R, "-(z_1_4*z_2_1 + z_2_4*z_1_1)/2"));
  EXPECT_EQ(*psi.image("y_1_3"), -*psi.image("x_3_1"));
}

TEST(BlockSubstitution, SectionOnZ) {
  for (auto [d, delta] : kGrid) {
    auto nf = normal_form(d, delta);
    auto psi = block_substitution(nf);
    for (const auto& [ij, rc] : block_layout(nf).z_position)
      EXPECT_EQ(*psi.image(var2("x", rc.first, rc.second)),
                Polynomial::variable(psi.target(), var2("z", ij.first, ij.second)));
  }
}

TEST(Presentation, SoundPasses) {
  for (auto [d, delta] : {std::pair{5, 1}, {5, 2}, {6, 2}, {6, 3}}) {
    auto rep = verify_presentation(normal_form(d, delta));
    EXPECT_EQ(rep.status, Status::pass) << d << "," << delta << " " << rep.residue;
  }
}

TEST(Presentation, SoundAt51KillsAll) {
  auto rep = verify_presentation(normal_form(5, 1));
  bool found = false;
  for (const auto& n : rep.notes) found |= n == "350/350 generators reduce to 0";
  EXPECT_TRUE(found);
}

TEST(Presentation, CompleteAt51) {
  PresentationOptions opt;
  opt.mode = Mode::complete;
  auto rep = verify_presentation(normal_form(5, 1), opt, 900);
  EXPECT_EQ(rep.status, Status::pass) << rep.residue;
  for (const auto& n : rep.notes) std::cout << "  " << n << "\n";
}

TEST(Annihilator, Passes) {
  EXPECT_TRUE(verify_annihilator(normal_form(5, 1)).ok());
  EXPECT_TRUE(verify_annihilator(normal_form(6, 2)).ok());
}

TEST(Annihilator, SingleVariableQuotientIsLarger) {
  auto u = build_U_ideals(normal_form(5, 1));
  auto R = u.U.ring;
  Ideal q = quotient(u.U_naive_small.ideal, Z(R, "z_1_1"));
  EXPECT_TRUE(contains(q, u.U_naive_small.ideal));
  EXPECT_FALSE(contains(u.U_naive_small.ideal, q));
}

TEST(Flatness, Examples) {
  auto u = build_U_ideals(normal_form(5, 1));
  EXPECT_TRUE(flatness_and_dimension(u.U, 3).ok());

  auto nf = normal_form(6, 2);
  auto R = z_ring(nf);
  ChartPresentation segre("segre", Ideal(R, minors(z_matrix(nf, R), 2)), "cone over the Segre embedding");
  EXPECT_EQ(krull_dim(segre.ideal), 6);
  EXPECT_TRUE(flatness_and_dimension(segre, 5).ok());

  ChartPresentation bad("bad", Ideal(R, {Z(R, "pi*z_1_1")}), "zero divisor");
  EXPECT_EQ(flatness_and_dimension(bad, 7).status, Status::fail);
}
