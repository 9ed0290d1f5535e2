// Copyright 2026 The opgrowth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <random>

#include "opgrowth/spin_algebra.hpp"
#include "support/oracles.hpp"

namespace opgrowth {
namespace {

double max_abs(const DenseMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

TEST(SiteOperator, LeftmostFactorConvention) {
  const auto z = site_operator(2, 1, Pauli::Z);
  DenseMatrix expected = DenseMatrix::Zero(4, 4);
  expected.diagonal() << 1, 1, -1, -1;
  EXPECT_EQ(z.matrix(), expected);
}

TEST(SiteOperator, RaisingHasSingleUpperRightEntry) {
  const auto p = site_operator(1, 1, Pauli::Plus);
  DenseMatrix expected = DenseMatrix::Zero(2, 2);
  expected(0, 1) = 1;
  EXPECT_EQ(p.matrix(), expected);
}

TEST(SiteOperator, MatchesBruteForceKronecker) {
  EXPECT_EQ(site_operator(3, 2, Pauli::X).matrix(), oracle::site(3, 2, 'x'));
  for (int n = 1; n <= 4; ++n) {
    for (int s = 1; s <= n; ++s) {
      for (auto [p, c] : {std::pair{Pauli::X, 'x'}, {Pauli::Y, 'y'}, {Pauli::Z, 'z'},
                          {Pauli::Plus, '+'}, {Pauli::Minus, '-'}}) {
        EXPECT_EQ(site_operator(n, s, p).matrix(), oracle::site(n, s, c))
            << "n=" << n << " site=" << s << " pauli=" << c;
      }
    }
  }
}

TEST(SiteOperator, LadderOperatorsFromXY) {
  for (int s = 1; s <= 3; ++s) {
    const DenseMatrix x = site_operator(3, s, Pauli::X).matrix();
    const DenseMatrix y = site_operator(3, s, Pauli::Y).matrix();
    EXPECT_LT(max_abs(site_operator(3, s, Pauli::Plus).matrix() - 0.5 * (x + kI * y)), 1e-15);
    EXPECT_LT(max_abs(site_operator(3, s, Pauli::Minus).matrix() - 0.5 * (x - kI * y)), 1e-15);
  }
}

TEST(SiteOperator, PauliAlgebraOnEverySite) {
  for (int n = 1; n <= 3; ++n) {
    for (int s = 1; s <= n; ++s) {
      const DenseMatrix x = site_operator(n, s, Pauli::X).matrix();
      const DenseMatrix y = site_operator(n, s, Pauli::Y).matrix();
      const DenseMatrix z = site_operator(n, s, Pauli::Z).matrix();
      EXPECT_LT(max_abs(z * x - x * z - 2.0 * kI * y), 1e-14);
      EXPECT_LT(max_abs(x * x - DenseMatrix::Identity(x.rows(), x.cols())), 1e-14);
      for (int t = 1; t <= n; ++t) {
        if (t == s) continue;
        for (Pauli q : {Pauli::X, Pauli::Y, Pauli::Z}) {
          const DenseMatrix other = site_operator(n, t, q).matrix();
          EXPECT_LT(max_abs(x * other - other * x), 1e-14);
          EXPECT_LT(max_abs(z * other - other * z), 1e-14);
        }
      }
    }
  }
}

TEST(SiteOperator, RejectsSiteOutOfRange) {
  EXPECT_THROW(site_operator(3, 0, Pauli::X), RangeError);
  EXPECT_THROW(site_operator(3, 4, Pauli::X), RangeError);
}

TEST(SpinOperator, RejectsWrongShape) {
  EXPECT_THROW(SpinOperator(2, DenseMatrix::Zero(3, 3)), ShapeError);
  EXPECT_THROW(SpinOperator(1, DenseMatrix::Zero(2, 4)), ShapeError);
}

TEST(PauliLabels, ParseAndPrint) {
  EXPECT_EQ(parse_pauli("x"), Pauli::X);
  EXPECT_EQ(parse_pauli("Z"), Pauli::Z);
  EXPECT_EQ(parse_pauli("+"), Pauli::Plus);
  EXPECT_EQ(parse_pauli("minus"), Pauli::Minus);
  EXPECT_THROW(parse_pauli("w"), DomainError);
  for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z, Pauli::Plus, Pauli::Minus}) {
    EXPECT_EQ(parse_pauli(to_string(p)), p);
  }
  for (JumpMode m : {JumpMode::Full, JumpMode::BoundaryOnly, JumpMode::DephasingOnly, JumpMode::Closed}) {
    EXPECT_EQ(parse_jump_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_jump_mode("everything"), DomainError);
}

TEST(Tfim, SingleSiteHasNoBond) {
  const DenseMatrix expected = -2.0 * oracle::pauli('x') - 3.0 * oracle::pauli('z');
  EXPECT_LT(max_abs(build_tfim(1, 2, 3).matrix() - expected), 1e-15);
}

TEST(Tfim, PureBond) {
  DenseMatrix expected = DenseMatrix::Zero(4, 4);
  expected.diagonal() << -1, 1, 1, -1;
  EXPECT_EQ(build_tfim(2, 0, 0).matrix(), expected);
}

TEST(Tfim, TwoSiteSpectrumMatchesDenseOracle) {
  const auto h = build_tfim(2, -1.05, 0.5);
  EXPECT_TRUE(h.is_hermitian(1e-13));
  Eigen::SelfAdjointEigenSolver<DenseMatrix> got(h.matrix());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> ref(oracle::tfim(2, -1.05, 0.5));
  EXPECT_LT((got.eigenvalues() - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Tfim, MatchesBruteForceAndIsHermitian) {
  for (int n = 1; n <= 5; ++n) {
    for (auto [g, h] : {std::pair{-1.05, 0.5}, {-1.05, 0.0}, {0.3, -0.7}}) {
      const auto op = build_tfim(n, g, h);
      EXPECT_LT(max_abs(op.matrix() - oracle::tfim(n, g, h)), 1e-13) << "n=" << n;
      EXPECT_LT(op.hermiticity_defect(), 1e-13);
    }
  }
}

TEST(Tfim, RejectsEmptyChain) { EXPECT_THROW(build_tfim(0, 1, 1), RangeError); }

TEST(JumpOperators, FullModeCountsAndAmplitudes) {
  const auto jumps = build_jump_operators(6, 0.01, 0.1, JumpMode::Full);
  ASSERT_EQ(jumps.size(), 10u);
  const auto ref = oracle::jumps(6, 0.01, 0.1);
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    EXPECT_LT(max_abs(jumps[k].matrix() - ref[k]), 1e-15) << "jump " << k;
  }
  EXPECT_NEAR(max_abs(jumps[0].matrix()), 0.1, 1e-15);
  EXPECT_NEAR(max_abs(jumps[4].matrix()), std::sqrt(0.1), 1e-15);
}

TEST(JumpOperators, ClosedIsEmpty) {
  EXPECT_TRUE(build_jump_operators(4, 0, 0, JumpMode::Closed).empty());
  EXPECT_TRUE(build_jump_operators(4, 0.2, 0.3, JumpMode::Closed).empty());
}

TEST(JumpOperators, DephasingOnlyScalesBySqrtGamma) {
  const auto jumps = build_jump_operators(3, 0, 0.25, JumpMode::DephasingOnly);
  ASSERT_EQ(jumps.size(), 3u);
  for (int s = 1; s <= 3; ++s) {
    EXPECT_LT(max_abs(jumps[static_cast<std::size_t>(s - 1)].matrix() - 0.5 * oracle::site(3, s, 'z')),
              1e-15);
  }
}

TEST(JumpOperators, ModesSelectFamilies) {
  EXPECT_EQ(build_jump_operators(4, 0.1, 0.2, JumpMode::BoundaryOnly).size(), 4u);
  EXPECT_EQ(build_jump_operators(4, 0.1, 0.2, JumpMode::DephasingOnly).size(), 4u);
  EXPECT_EQ(build_jump_operators(4, 0.0, 0.2, JumpMode::Full).size(), 4u);
  EXPECT_EQ(build_jump_operators(4, 0.1, 0.0, JumpMode::Full).size(), 4u);
  EXPECT_TRUE(build_jump_operators(4, 0.0, 0.2, JumpMode::BoundaryOnly).empty());
}

TEST(JumpOperators, NegativeAmplitudeIsDomainError) {
  EXPECT_THROW(build_jump_operators(3, -0.1, 0.1, JumpMode::Full), DomainError);
  EXPECT_THROW(build_jump_operators(3, 0.1, -0.1, JumpMode::Full), DomainError);
  EXPECT_THROW(build_jump_operators(3, std::nan(""), 0.1, JumpMode::Full), DomainError);
}

TEST(JumpOperators, DampingPairsAreConjugates) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> amp(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 4;
    const auto jumps = build_jump_operators(n, amp(rng), amp(rng), JumpMode::Full);
    for (std::size_t k = 0; k + 1 < 4; k += 2) {
      EXPECT_LT(max_abs(jumps[k].adjoint().matrix() - jumps[k + 1].matrix()), 1e-15);
    }
  }
}

}  // namespace
}  // namespace opgrowth
