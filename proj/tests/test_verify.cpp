// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "lmlab/verify.hpp"

using namespace lmlab;

namespace {

const std::vector<std::pair<int, int>> kGrid{{5, 1}, {5, 2}, {6, 1}, {6, 2}, {6, 3}, {7, 2}, {7, 3}};

}  // namespace

TEST(SmoothOverBase, NodeWithPiIsSmooth) {
  auto R = PolyRing::make({"pi", "u", "v"});
  EXPECT_TRUE(smooth_over_base(Ideal(R, {"u*v - pi"}), 2).ok());
}

TEST(SmoothOverBase, SpecialFiberNodeIsSingular) {
  auto R = PolyRing::make({"u", "v"});
  auto rep = smooth_over_base(Ideal(R, {"u*v"}), 1);
  EXPECT_EQ(rep.status, Status::fail);
  EXPECT_FALSE(rep.residue.empty());
}

TEST(SmoothOverBase, WrongDimensionFails) {
  auto R = PolyRing::make({"pi", "u", "v"});
  EXPECT_EQ(smooth_over_base(Ideal(R, {"u*v - pi"}), 1).status, Status::fail);
}

TEST(SmoothOverBase, ReducedMChart51) {
  auto mc = build_M_chart(normal_form(5, 1), 3, 1);
  auto rep = smooth_over_base(mc.reduced.ideal, 4);
  EXPECT_TRUE(rep.ok()) << rep.residue;
}

TEST(SmoothOverModel, Example51UX) {
  auto nf = normal_form(5, 1);
  auto bc = build_DT_blowup_chart(nf, 1, 1);
  auto targets = blowup_model_targets(nf, bc);
  ASSERT_EQ(targets[0].kind, ModelKind::ux);
  EXPECT_EQ(targets[0].map.at("x"), parse_poly("-1/2*bu_1_4 - 1/2*bu_1_2*bu_1_3", bc.chart.ring));
  auto rep = smooth_over_model(bc.chart, targets[0], nf.d - 1 - 2);
  EXPECT_TRUE(rep.ok()) << rep.residue;
}

TEST(SmoothOverModel, Example62UXYEveryPivot) {
  auto nf = normal_form(6, 2);
  for (int s = 1; s <= 2; ++s)
    for (int t = 1; t <= 4; ++t) {
      auto bc = build_DT_blowup_chart(nf, s, t);
      auto targets = blowup_model_targets(nf, bc);
      ASSERT_EQ(targets.size(), 1u);
      auto rep = smooth_over_model(bc.chart, targets[0], 2);
      EXPECT_TRUE(rep.ok()) << s << "," << t << ": " << rep.residue;
    }
}

TEST(SmoothOverModel, YToZeroFails) {
  auto nf = normal_form(6, 2);
  auto bc = build_DT_blowup_chart(nf, 1, 1);
  auto target = blowup_model_targets(nf, bc)[0];
  target.map["y"] = Polynomial(bc.chart.ring);
  auto rep = smooth_over_model(bc.chart, target, 2);
  EXPECT_EQ(rep.status, Status::fail);
  EXPECT_EQ(rep.notes[1], "FAILED: model relation is not in the extended chart ideal");
}

TEST(SmoothOverModel, WrongRelativeDimensionFails) {
  auto nf = normal_form(6, 2);
  auto bc = build_DT_blowup_chart(nf, 1, 1);
  EXPECT_EQ(smooth_over_model(bc.chart, blowup_model_targets(nf, bc)[0], 3).status, Status::fail);
}

// At (5,2) the pivot row 1 pairs with itself; the verbatim map has a
// degenerate Jacobian there and localized maps are needed.
TEST(SmoothOverModel, MiddlePivotNeedsLocalizedMaps) {
  auto nf = normal_form(5, 2);
  auto bc = build_DT_blowup_chart(nf, 1, 2);
  auto targets = blowup_model_targets(nf, bc);
  ASSERT_GT(targets.size(), 1u);
  auto verbatim = smooth_over_model(bc.chart, targets[0], nf.d - 1 - targets[0].model_dim());
  EXPECT_EQ(verbatim.status, Status::fail);
  EXPECT_EQ(verbatim.notes.back(), "FAILED: relative Jacobian drops rank");
  auto rep = verify_blowup_smooth(nf, 1, 2);
  EXPECT_TRUE(rep.ok()) << rep.residue;
  EXPECT_FALSE(rep.certificates.empty());
}

TEST(SmoothOverModel, BlowupSmoothOnGrid) {
  for (auto [d, delta] : kGrid) {
    auto nf = normal_form(d, delta);
    for (int s = 1; s <= delta; ++s)
      for (int t = 1; t <= d - delta; ++t) {
        auto rep = verify_blowup_smooth(nf, s, t);
        EXPECT_TRUE(rep.ok()) << nf.label() << " " << s << "," << t << ": " << rep.residue;
      }
  }
}

// A chart smooth over the model, whose total space is smooth, is smooth absolutely.
TEST(SmoothOverModel, AgreesWithAbsoluteCriterion) {
  auto nf = normal_form(6, 2);
  auto bc = build_DT_blowup_chart(nf, 1, 1);
  EXPECT_TRUE(smooth_over_model(bc.chart, blowup_model_targets(nf, bc)[0], 2).ok());
  EXPECT_TRUE(smooth_over_base(bc.chart.ideal, static_cast<int>(bc.chart.ring->nvars()) - 1).ok());
}
