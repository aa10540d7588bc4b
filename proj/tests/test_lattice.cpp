// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "lmlab/lattice.hpp"

using namespace lmlab;

namespace {

const std::vector<std::pair<int, int>> kGrid{{5, 1}, {5, 2}, {6, 1}, {6, 2}, {6, 3}, {7, 2}, {7, 3}, {8, 4}, {9, 3}};

RingPtr x_ring(int d) {
  std::vector<std::string> names{"pi"};
  for (int i = 1; i <= d; ++i) names.push_back("x_" + std::to_string(i));
  return PolyRing::make(names);
}

}  // namespace

TEST(NormalForm, Case4At51) {
  auto nf = normal_form(5, 1);
  EXPECT_EQ(nf.case_tag, 4);
  EXPECT_EQ(nf.Delta, (std::vector<int>{3}));
  EXPECT_EQ(nf.DeltaC, (std::vector<int>{1, 2, 4, 5}));
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      bool anti = i + j == 6 && i != 3;
      EXPECT_EQ(nf.S1[i - 1][j - 1], anti ? 1 : 0) << i << "," << j;
      EXPECT_EQ(nf.S2[i - 1][j - 1], i == 3 && j == 3 ? 1 : 0);
    }
}

TEST(NormalForm, Case1At62) {
  auto nf = normal_form(6, 2);
  EXPECT_EQ(nf.case_tag, 1);
  EXPECT_EQ(nf.Delta, (std::vector<int>{3, 4}));
  EXPECT_EQ(nf.S2[2][3], 1);
  EXPECT_EQ(nf.S2[3][2], 1);
  int ones = 0;
  for (const auto& row : nf.S2)
    for (int v : row) ones += v;
  EXPECT_EQ(ones, 2);
}

TEST(NormalForm, Case2At63) {
  auto nf = normal_form(6, 3);
  EXPECT_EQ(nf.case_tag, 2);
  EXPECT_EQ(nf.Delta, (std::vector<int>{2, 3, 5}));
  EXPECT_EQ(nf.DeltaC, (std::vector<int>{1, 4, 6}));
  EXPECT_EQ(nf.S2[2][2], 1);
  EXPECT_EQ(nf.S1[3][3], 1);
  EXPECT_EQ(nf.S2[1][4], 1);
  EXPECT_EQ(nf.S1[0][5], 1);
}

TEST(NormalForm, RejectsOutOfRange) {
  EXPECT_THROW(normal_form(4, 1), LatticeError);
  EXPECT_THROW(normal_form(6, 0), LatticeError);
  try {
    normal_form(6, 4);
    FAIL();
  } catch (const LatticeError& e) {
    EXPECT_NE(std::string(e.what()).find("multiple"), std::string::npos);
  }
}

TEST(NormalForm, ParityTable) {
  for (auto [d, delta] : kGrid) {
    auto nf = normal_form(d, delta);
    int expect = d % 2 == 0 ? (delta % 2 == 0 ? 1 : 2) : (delta % 2 == 0 ? 3 : 4);
    EXPECT_EQ(nf.case_tag, expect) << nf.label();
  }
}

TEST(NormalForm, GridInvariants) {
  for (auto [d, delta] : kGrid) {
    auto nf = normal_form(d, delta);
    SCOPED_TRACE(nf.label());
    EXPECT_EQ(static_cast<int>(nf.Delta.size()), delta);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        EXPECT_EQ(nf.S1[i][j], nf.S1[j][i]);
        EXPECT_EQ(nf.S2[i][j], nf.S2[j][i]);
        EXPECT_FALSE(nf.S1[i][j] && nf.S2[i][j]);
        // supports: S2 lives on Delta x Delta, S1 on DeltaC x DeltaC
        if (nf.S2[i][j]) EXPECT_TRUE(nf.in_delta(i + 1) && nf.in_delta(j + 1));
        if (nf.S1[i][j]) EXPECT_TRUE(!nf.in_delta(i + 1) && !nf.in_delta(j + 1));
      }
    EXPECT_EQ(std::abs(block_determinant(nf.S1, nf.DeltaC)), 1);
    EXPECT_EQ(std::abs(block_determinant(nf.S2, nf.Delta)), 1);
    auto R = PolyRing::make({"pi"});
    Polynomial det = determinant(gram_matrix(nf, R));
    Polynomial pi = Polynomial::variable(R, "pi");
    EXPECT_TRUE(det == pi.pow(delta) || det == -pi.pow(delta)) << to_string(det);
  }
}

TEST(QuadForms, Examples) {
  {
    auto R = x_ring(5);
    auto q = quad_forms(normal_form(5, 1), R);
    EXPECT_EQ(q.Q2, parse_poly("x_3^2/2", R));
    EXPECT_EQ(q.Q1, parse_poly("x_1*x_5 + x_2*x_4", R));
  }
  {
    auto R = x_ring(6);
    auto q = quad_forms(normal_form(6, 2), R);
    EXPECT_EQ(q.Q2, parse_poly("x_3*x_4", R));
    EXPECT_EQ(q.Q1, parse_poly("x_1*x_6 + x_2*x_5", R));
  }
  EXPECT_THROW(quad_forms(normal_form(6, 2), x_ring(5)), RingError);
}

TEST(QuadForms, GramRecoversBlocks) {
  for (auto [d, delta] : kGrid) {
    auto nf = normal_form(d, delta);
    auto R = x_ring(d);
    auto q = quad_forms(nf, R);
    for (int a = 1; a <= d; ++a)
      for (int b = 1; b <= d; ++b) {
        auto va = "x_" + std::to_string(a), vb = "x_" + std::to_string(b);
        Polynomial h1 = q.Q1.derivative(R->index(va)).derivative(R->index(vb));
        Polynomial h2 = q.Q2.derivative(R->index(va)).derivative(R->index(vb));
        bool inC = !nf.in_delta(a) && !nf.in_delta(b), inD = nf.in_delta(a) && nf.in_delta(b);
        EXPECT_EQ(h1, Polynomial::constant(R, inC ? nf.S1[a - 1][b - 1] : 0));
        EXPECT_EQ(h2, Polynomial::constant(R, inD ? nf.S2[a - 1][b - 1] : 0));
      }
  }
}
