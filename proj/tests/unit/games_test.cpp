// Copyright 2026 The qpkkt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qpkkt/games.hpp"
#include "qpkkt/rng.hpp"

namespace qpkkt {
namespace {

using testing::Rationals;
using testing::RMat;
using testing::RVec;

Rational R(const char* s) { return ParseRational(s); }

BimatrixGame<Rational> Game(const RMat& a, const RMat& b) {
  return BimatrixGame<Rational>(Matrix<Rational>(a), Matrix<Rational>(b));
}

MixedProfile<Rational> Profile(const RVec& x, const RVec& y) {
  return MixedProfile<Rational>{x, y};
}

const RMat kIdentity2 = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
const RMat kSwap2 = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};

TEST(BimatrixGameTest, ValidatesEntriesAndShapes) {
  try {
    Game({{R("1.5")}}, {{R("0")}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOutOfRange);
  }
  EXPECT_THROW(Game({{R("-0.1")}}, {{R("0")}}), Error);
  EXPECT_THROW(Game({{R("0"), R("0")}}, {{R("0")}}), Error);
  const auto g = Game({{R("0"), R("1")}}, {{R("1"), R("0")}});
  EXPECT_EQ(g.rows(), 1u);
  EXPECT_EQ(g.cols(), 2u);
  EXPECT_THROW(ValidateProfile(g, Profile(Rationals({"1"}),
                                          Rationals({"0.5", "0.4"}))),
               Error);
  EXPECT_THROW(VerifyNash(g, Profile(Rationals({"1", "0"}),
                                     Rationals({"0.5", "0.5"})),
                          R("0")),
               Error);
}

TEST(ClassifyTest, Examples) {
  const auto c1 = Classify(Game(kIdentity2, kIdentity2));
  EXPECT_TRUE(c1.symmetric);
  EXPECT_TRUE(c1.common_payoff);
  EXPECT_TRUE(c1.imitation);

  const RMat a = {{R("0"), R("1")}, {R("0"), R("0")}};
  const auto c2 = Classify(Game(a, testing::Transpose(a)));
  EXPECT_TRUE(c2.symmetric);
  EXPECT_FALSE(c2.common_payoff);

  Rng rng(31);
  const auto c3 = Classify(Game(testing::RandomRationalMatrix(rng, 3, 3, 0, 1,
                                                              false),
                                Matrix<Rational>::Identity(3).ToRows()));
  EXPECT_TRUE(c3.imitation);
}

TEST(ClassifyTest, SymmetricClassSurvivesPlayerSwap) {
  Rng rng(32);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 4;
    RMat a = testing::RandomRationalMatrix(rng, n, n, 0, 1, t % 3 == 0, 4);
    RMat b;
    switch (t % 4) {
      case 0: b = a; break;
      case 1: b = testing::Transpose(a); break;
      case 2: b = Matrix<Rational>::Identity(n).ToRows(); break;
      default: b = testing::RandomRationalMatrix(rng, n, n, 0, 1, false, 4);
    }
    const auto g = Game(a, b);
    const auto c = Classify(g);
    const auto swapped = SwapPlayers(g);
    EXPECT_EQ(swapped.row_payoffs(), g.col_payoffs().Transposed());
    EXPECT_EQ(swapped.col_payoffs(), g.row_payoffs().Transposed());
    if (c.symmetric) {
      const auto s = Classify(swapped);
      EXPECT_EQ(s.symmetric, c.symmetric);
      EXPECT_EQ(s.common_payoff, c.common_payoff);
      EXPECT_EQ(s.imitation, c.imitation);
    }
  }
}

TEST(VerifyNashTest, Examples) {
  const auto g = Game(kIdentity2, kIdentity2);
  const RVec half = Rationals({"0.5", "0.5"});
  EXPECT_TRUE(VerifyNash(g, Profile(half, half), R("0")));
  EXPECT_FALSE(VerifyNash(g, Profile(Rationals({"1", "0"}),
                                     Rationals({"0", "1"})),
                          R("0")));
  const auto p = Profile(Rationals({"1", "0"}), Rationals({"0.6", "0.4"}));
  EXPECT_TRUE(VerifyNash(g, p, R("0.4")));
  // Column regret is exactly 0.4 here, so anything smaller rejects.
  EXPECT_FALSE(VerifyNash(g, p, R("0.39")));
  const auto gaps = ComputeGaps(g, p);
  EXPECT_EQ(gaps.row_regret, R("0"));
  EXPECT_EQ(gaps.col_regret, R("0.4"));
}

TEST(VerifyWsneTest, Examples) {
  const RVec half = Rationals({"0.5", "0.5"});
  EXPECT_TRUE(VerifyWsne(Game(kIdentity2, kIdentity2), Profile(half, half),
                         R("0")));
  const auto g = Game(kSwap2, kSwap2);
  const RVec first = Rationals({"1", "0"});
  const auto gaps = ComputeGaps(g, Profile(first, first));
  EXPECT_EQ(gaps.row_payoffs, Rationals({"0", "1"}));
  EXPECT_EQ(gaps.row_support_lag, R("1"));
  EXPECT_FALSE(VerifyWsne(g, Profile(first, first), R("0.5")));
  EXPECT_TRUE(VerifyWsne(g, Profile(first, first), R("1")));
}

TEST(VerifyWsneTest, GapsMatchDirectComputationAndImplyNash) {
  Rng rng(33);
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = 1 + t % 4;
    const std::size_t m = 1 + (t / 4) % 4;
    const auto a = testing::RandomRationalMatrix(rng, n, m, 0, 1, false, 10);
    const auto b = testing::RandomRationalMatrix(rng, n, m, 0, 1, false, 10);
    const auto x = testing::RandomSimplexPoint(rng, n, Rational(1));
    const auto y = testing::RandomSimplexPoint(rng, m, Rational(1));
    const auto g = Game(a, b);
    const auto p = Profile(x, y);
    const auto eps = rng.UniformRational(0, 1, 4);
    if (t < 500) {
      const auto ours = ComputeGaps(g, p);
      const auto direct = testing::DirectGaps(a, b, x, y);
      ASSERT_EQ(ours.row_regret, direct.row_regret);
      ASSERT_EQ(ours.col_regret, direct.col_regret);
      ASSERT_EQ(ours.row_support_lag, direct.row_lag);
      ASSERT_EQ(ours.col_support_lag, direct.col_lag);
    }
    if (VerifyWsne(g, p, eps)) ASSERT_TRUE(VerifyNash(g, p, eps));
  }
}

TEST(NashToWsneTest, Examples) {
  const auto coord = Game(kIdentity2, kIdentity2);
  const RVec half = Rationals({"0.5", "0.5"});
  const auto out = NashToWsne(coord, Profile(half, half), R("0.1"));
  EXPECT_EQ(out, Profile(half, half));
  EXPECT_TRUE(VerifyWsne(coord, out, R("0.1")));

  // An exact equilibrium of a 3x3 game passes through and is a 0-WSNE there.
  Rng rng(34);
  const auto a = testing::RandomRationalMatrix(rng, 3, 3, 0, 1, false);
  const auto b = testing::RandomRationalMatrix(rng, 3, 3, 0, 1, false);
  const auto eq = testing::BimatrixEquilibria(a, b);
  ASSERT_FALSE(eq.empty());
  const auto g = Game(a, b);
  const auto p = Profile(eq[0].first, eq[0].second);
  const auto same = NashToWsne(g, p, R("0.3"));
  EXPECT_EQ(same, p);
  EXPECT_TRUE(VerifyWsne(g, same, R("0")));
}

TEST(NashToWsneTest, RejectsBadInputs) {
  const auto g = Game(kIdentity2, kIdentity2);
  const auto bad = Profile(Rationals({"1", "0"}), Rationals({"0", "1"}));
  try {
    NashToWsne(g, bad, R("0.5"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kHypothesisFailed);
  }
  const RVec half = Rationals({"0.5", "0.5"});
  EXPECT_THROW(NashToWsne(g, Profile(half, half), R("1.5")), Error);
  EXPECT_THROW(NashToWsne(g, Profile(half, half), R("0")), Error);
}

TEST(NashToWsneTest, PerturbedEquilibriaOfRandomGames) {
  Rng rng(35);
  const Rational eps = R("0.2");
  int moved = 0;
  for (int t = 0; t < 50; ++t) {
    const bool symmetric = t % 2 == 0;
    const auto a = testing::RandomRationalMatrix(rng, 4, 4, 0, 1, false);
    const auto b = symmetric
                       ? testing::Transpose(a)
                       : testing::RandomRationalMatrix(rng, 4, 4, 0, 1, false);
    RVec x;
    RVec y;
    if (symmetric) {
      const auto eq = testing::SymmetricEquilibria(a);
      ASSERT_FALSE(eq.empty());
      x = y = eq[0];
    } else {
      const auto eq = testing::BimatrixEquilibria(a, b);
      ASSERT_FALSE(eq.empty());
      std::tie(x, y) = eq[0];
    }
    const auto [px, py] = testing::PerturbWithinRegret(
        rng, a, b, x, y, eps * eps / 8, symmetric);
    const auto g = Game(a, b);
    const auto p = Profile(px, py);
    ASSERT_TRUE(VerifyNash(g, p, Rational(eps * eps / 8)));
    const auto out = NashToWsne(g, p, eps);
    EXPECT_TRUE(VerifyWsne(g, out, eps));
    if (symmetric) EXPECT_TRUE(out.symmetric());
    moved += out != p;
  }
  EXPECT_GT(moved, 0);
}

TEST(ImitationTest, ForwardExamples) {
  const RMat a3 = {{R("1"), R("1"), R("0")},
                   {R("1"), R("1"), R("0")},
                   {R("0"), R("0"), R("0")}};
  const auto p = ImitationForward<Rational>(Matrix<Rational>(a3),
                                            Rationals({"1/2", "1/2", "0"}),
                                            R("0"));
  EXPECT_EQ(p.x, Rationals({"1/2", "1/2", "0"}));
  EXPECT_EQ(p.y, Rationals({"1/2", "1/2", "0"}));

  const auto single = ImitationForward<Rational>(
      Matrix<Rational>(kIdentity2), Rationals({"1", "0"}), R("0"));
  EXPECT_EQ(single.x, Rationals({"1", "0"}));

  // (0.7, 0.3, 0): rows 1 and 2 each earn 1 against it, row 3 earns 0.
  const auto skew = ImitationForward<Rational>(Matrix<Rational>(a3),
                                               Rationals({"0.7", "0.3", "0"}),
                                               R("0"));
  EXPECT_EQ(skew.x, Rationals({"1/2", "1/2", "0"}));
  const BimatrixGame<Rational> imitation(Matrix<Rational>(a3),
                                         Matrix<Rational>::Identity(3));
  EXPECT_TRUE(VerifyWsne(imitation, skew, R("0")));
}

TEST(ImitationTest, ForwardRejectsNonEquilibria) {
  try {
    ImitationForward<Rational>(Matrix<Rational>(kSwap2), Rationals({"1", "0"}),
                               R("0.5"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kHypothesisFailed);
  }
}

TEST(ImitationTest, BackwardExamplesAndGuard) {
  const RVec half = Rationals({"0.5", "0.5"});
  const auto y = ImitationBackward<Rational>(Matrix<Rational>(kIdentity2),
                                             Profile(half, half), R("0.1"));
  EXPECT_EQ(y, half);
  EXPECT_TRUE(VerifyWsne(Game(kIdentity2, kIdentity2), Profile(y, y), R("0.1")));
  try {
    ImitationBackward<Rational>(Matrix<Rational>(kIdentity2),
                                Profile(half, half), R("0.6"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOutOfRange);
  }
  EXPECT_THROW(ImitationBackward<Rational>(Matrix<Rational>(kIdentity2),
                                           Profile(half, half), R("0.5")),
               Error);
  // Not a WSNE of (A, I): x plays 1 while y plays 2.
  EXPECT_THROW(ImitationBackward<Rational>(
                   Matrix<Rational>(kIdentity2),
                   Profile(Rationals({"1", "0"}), Rationals({"0", "1"})),
                   R("0.1")),
               Error);
}

TEST(ImitationTest, RoundTripOnEnumeratedEquilibria) {
  Rng rng(36);
  const Rational eps = R("0.15");
  for (int t = 0; t < 100; ++t) {
    const auto a = testing::RandomRationalMatrix(rng, 5, 5, 0, 1, false);
    const auto eq = testing::SymmetricEquilibria(a);
    ASSERT_FALSE(eq.empty());
    const Matrix<Rational> am(a);
    const auto p = ImitationForward<Rational>(am, eq[0], eps);
    EXPECT_TRUE(VerifyWsne(BimatrixGame<Rational>(am, Matrix<Rational>::Identity(5)),
                           p, eps));
    const auto back = ImitationBackward<Rational>(am, p, eps);
    EXPECT_EQ(back, eq[0]);
    EXPECT_TRUE(VerifyWsne(Game(a, testing::Transpose(a)),
                           Profile(back, back), eps));
  }
}

TEST(GamesTest, FloatCarrierAgreesOnSimpleCases) {
  const BimatrixGame<double> g(Matrix<double>::Identity(2),
                               Matrix<double>::Identity(2));
  const MixedProfile<double> p{{0.5, 0.5}, {0.5, 0.5}};
  EXPECT_TRUE(VerifyWsne(g, p, 0.0));
  EXPECT_TRUE(VerifyNash(g, p, 0.0));
  const MixedProfile<double> q{{1.0, 0.0}, {0.0, 1.0}};
  EXPECT_FALSE(VerifyNash(g, q, 0.5));
}

}  // namespace
}  // namespace qpkkt
