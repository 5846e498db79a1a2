#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "ptheta/real_zeros.hpp"

using namespace ptheta;

namespace {

std::vector<double> grid(double from, double to, int n) {
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(from + (to - from) * i / n);
  return g;
}

// First sign change of theta(q, .) going left from 0 on a log grid, refined
// by 50-digit bisection.
double oracle_first_zero(double q, double sign_x) {
  double prev = 0.0;
  for (int i = 0; i < 4000; ++i) {
    const double x = sign_x * std::pow(10.0, -1.0 + i * 1e-3);
    if (oracle::sign(q, x) < 0) return oracle::bisect_zero(q, std::min(prev, x), std::max(prev, x));
    prev = x;
  }
  return NAN;
}

}  // namespace

TEST(Brackets, InterlacingAtOneTenth) {
  const double q = 0.1;
  auto br = bracket_real_zeros_qpos(q, 3);
  ASSERT_EQ(br.size(), 3u);
  for (int i = 1; i <= 3; ++i) {
    const auto& b = br[i - 1];
    EXPECT_EQ(b.sign_lo * b.sign_hi, -1);
    const double x = refine_zero(q, b).x;
    const double scale = std::pow(q, -i);
    EXPECT_GT(x, -1.7882 * scale) << i;
    EXPECT_LT(x, -0.2118 * scale) << i;
  }
}

TEST(Brackets, LeadingZeroNearMinusOneOverQ) {
  const double q = 0.05;
  auto br = bracket_real_zeros_qpos(q, 1);
  ASSERT_EQ(br.size(), 1u);
  const double ref = oracle_first_zero(q, -1.0);
  EXPECT_LE(br[0].lo, ref);
  EXPECT_GE(br[0].hi, ref);
  EXPECT_NEAR(ref, -20.0, 1.5);
}

TEST(Brackets, SmallQWithinPowerBounds) {
  const double q = 1e-3;
  auto br = bracket_real_zeros_qpos(q, 1);
  const double x = refine_zero(q, br[0]).x;
  EXPECT_GT(x, -1 / (q * q));
  EXPECT_LT(x, -1.0);
}

TEST(Brackets, InterlacingPropertyForSmallQ) {
  for (double q : {0.01, 0.03, 0.06, 0.09, 0.108}) {
    auto br = bracket_real_zeros_qpos(q, 6);
    for (int i = 1; i <= 6; ++i) {
      const double x = refine_zero(q, br[i - 1]).x;
      const double scale = std::pow(q, -i);
      EXPECT_GT(x, -1.7882 * scale) << q << ' ' << i;
      EXPECT_LT(x, -0.2118 * scale) << q << ' ' << i;
    }
  }
}

TEST(Brackets, CoalescenceOrComplexPairIsReported) {
  // Past the first spectral value (0.3092493386...) the first pair is complex;
  // within 1e-12 of it the cell extremum is at rounding level.
  EXPECT_THROW(bracket_real_zeros_qpos(0.3093, 2), Error);
  EXPECT_THROW(bracket_real_zeros_qpos(0.309249338602, 2), CoalescenceSuspected);
}

TEST(Refine, NearCoalescence) {
  const double q = 0.3092;
  auto br = bracket_real_zeros_qpos(q, 2);
  auto z = refine_zero(q, br[0]);
  EXPECT_NEAR(z.x, -7.503, 0.2);
  EXPECT_LE(z.residual, 1e-13 * std::max(1.0, theta(q, z.x).magnitude));
}

TEST(Refine, MatchesHighPrecisionBisection) {
  const double q = 0.1;
  auto br = bracket_real_zeros_qpos(q, 1);
  const double x = refine_zero(q, br[0]).x;
  const double ref = oracle::bisect_zero(q, br[0].lo, br[0].hi);
  EXPECT_NEAR(x, ref, 1e-12 * std::abs(ref));
}

TEST(Refine, DegenerateBracket) {
  const double q = 0.1;
  const double x = refine_zero(q, bracket_real_zeros_qpos(q, 1)[0]).x;
  EXPECT_EQ(refine_zero(q, Bracket{x, x, 0, 0}).x, x);
}

TEST(Refine, RejectsBadBracket) {
  EXPECT_THROW(refine_zero(0.1, Bracket{-2.0, -3.0, 1, -1}), DomainError);
  EXPECT_THROW(refine_zero(0.1, Bracket{-3.0, -2.0, 1, 1}), DomainError);
}

TEST(RealZeros, AllNegativeForPositiveQ) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dq(0.01, 0.3);
  for (int i = 0; i < 50; ++i) {
    const double q = dq(rng);
    for (const auto& b : bracket_real_zeros_qpos(q, 4)) EXPECT_LT(refine_zero(q, b).x, 0.0);
  }
}

TEST(QNeg, FirstPositiveZeroNearMinusOneOverQ) {
  const double q = -0.2;
  auto z = zeros_qneg(q, 2);
  ASSERT_GE(z.positives.size(), 1u);
  const double eta1 = z.positives[0];
  EXPECT_NEAR(eta1, oracle_first_zero(q, 1.0), 1e-12 * eta1);
  EXPECT_LT(std::abs(eta1 * q + 1), 0.3);
}

TEST(QNeg, FirstPositiveZeroTendsToOne) {
  auto z = zeros_qneg(-0.99, 1);
  ASSERT_GE(z.positives.size(), 1u);
  EXPECT_GT(z.positives[0], 1.0);
  EXPECT_LT(z.positives[0], 1.1);
}

TEST(QNeg, NoZeroInUnitInterval) {
  const double q = -0.5;
  auto z = zeros_qneg(q, 1);
  for (double x : z.negatives) EXPECT_GT(std::abs(x), 1.0);
  for (double x : z.positives) EXPECT_GT(std::abs(x), 1.0);
  for (int i = 0; i <= 200; ++i) EXPECT_EQ(oracle::sign(q, -1.0 + i / 100.0), 1);
}

TEST(QNeg, Ordering) {
  EXPECT_TRUE(ordering_check_qneg(-0.3, 3));
  EXPECT_TRUE(ordering_check_qneg(-0.1, 4));
  EXPECT_TRUE(ordering_check_qneg(-0.72, 2));
}

TEST(QNeg, Domain) {
  EXPECT_THROW(zeros_qneg(0.5, 1), DomainError);
  EXPECT_THROW(zeros_qneg(-0.5, 0), DomainError);
}

TEST(Trace, TurningPointOfFirstCurve) {
  auto c = trace_curve(Regime::q_pos, 1, grid(0.01, 0.3093, 60));
  ASSERT_TRUE(c.turning_point);
  EXPECT_NEAR(c.turning_point->q, 0.309249, 1e-5);
  EXPECT_LE(c.max_x(), -6.095);
}

TEST(Trace, FirstNegativeCurveBound) {
  auto c = trace_curve(Regime::q_neg_negative_zeros, 1, grid(-0.01, -0.99, 98));
  ASSERT_TRUE(c.turning_point);
  EXPECT_LE(c.max_x(), -2.699);
}

TEST(Trace, Invariants) {
  for (int j = 1; j <= 3; ++j) {
    auto c = trace_curve(Regime::q_pos, j, grid(0.01, 0.9, 89));
    ASSERT_TRUE(c.turning_point);
    double prev_lower = 0.0, prev_upper = 2.0;
    for (const auto& s : c.samples) {
      auto t = theta(s.q, s.x);
      EXPECT_LE(std::abs(t.value), 1e-12 * std::max(1.0, t.magnitude)) << j << ' ' << s.q;
      EXPECT_LT(s.x, 0.0);
      if (s.branch == Branch::lower_branch) {
        EXPECT_GT(s.q, prev_lower);
        prev_lower = s.q;
      } else {
        EXPECT_LT(s.q, prev_upper);
        prev_upper = s.q;
      }
      EXPECT_LE(s.q, c.turning_point->q + 1e-12);
    }
  }
}

TEST(Trace, NegativeQCurves) {
  for (Regime r : {Regime::q_neg_negative_zeros, Regime::q_neg_positive_zeros})
    for (int nu = 1; nu <= 2; ++nu) {
      auto c = trace_curve(r, nu, grid(-0.01, -0.95, 94));
      ASSERT_TRUE(c.turning_point) << to_string(r) << ' ' << nu;
      EXPECT_GT(c.samples.size(), 20u);
      const double sign = r == Regime::q_neg_positive_zeros ? 1.0 : -1.0;
      for (const auto& s : c.samples) {
        auto t = theta(s.q, s.x);
        EXPECT_LE(std::abs(t.value), 1e-12 * std::max(1.0, t.magnitude));
        EXPECT_GT(sign * s.x, 0.0);
      }
    }
}

TEST(Trace, BranchAsymptoticsAtSmallQ) {
  const double q = 1e-3;
  for (int j = 1; j <= 3; ++j) {
    auto c = trace_curve(Regime::q_pos, j, grid(q, 0.9, 90));
    const auto& lo = c.samples.front();
    const auto& hi = c.samples.back();
    ASSERT_EQ(lo.q, q);
    ASSERT_EQ(hi.q, q);
    EXPECT_LT(std::abs(lo.x * std::pow(q, 2 * j - 1) + 1), 0.05) << j;
    EXPECT_LT(std::abs(hi.x * std::pow(q, 2 * j) + 1), 0.05) << j;
  }
}

TEST(Trace, GridRefinementConsistency) {
  auto a = trace_curve(Regime::q_pos, 2, grid(0.01, 0.9, 89));
  auto b = trace_curve(Regime::q_pos, 2, grid(0.01, 0.9, 178));
  ASSERT_TRUE(a.turning_point && b.turning_point);
  EXPECT_LT(std::abs(a.turning_point->q - b.turning_point->q), 1e-7);
}

TEST(Trace, RejectsUnorderedGrid) {
  EXPECT_THROW(trace_curve(Regime::q_pos, 1, {0.2, 0.1}), DomainError);
  EXPECT_THROW(trace_curve(Regime::q_pos, 1, {}), DomainError);
}

TEST(SignPattern, BelowFirstSpectralValue) { EXPECT_TRUE(sign_pattern_check(0.2, 0)); }

TEST(SignPattern, BetweenFirstAndSecond) { EXPECT_TRUE(sign_pattern_check(0.4, 1)); }

TEST(SignPattern, TinyQ) {
  const double q = 1e-4;
  EXPECT_TRUE(sign_pattern_check(q, 0));
  const double xi1 = refine_zero(q, bracket_real_zeros_qpos(q, 1)[0]).x;
  for (int i = 1; i <= 100; ++i) EXPECT_GT(theta(q, xi1 * (1 - i / 100.0) + 1e-9 * i).value, 0.0);
}

TEST(SignPattern, WrongRegimeFails) { EXPECT_FALSE(sign_pattern_check(0.4, 0)); }

TEST(PowerCurve, OneAndAHalfMeetsFirstCurve) {
  auto r = root_on_power_curve(1.5);
  ASSERT_EQ(r.roots.size(), 1u);
  auto [qa, xa] = r.roots[0];
  auto t = theta(qa, xa);
  EXPECT_LE(std::abs(t.value), 1e-9);
  auto xi = rightmost_real_zeros(qa, 2);
  const double d = std::min(std::abs(xi[0] - xa), std::abs(xi[1] - xa));
  EXPECT_LT(d, 1e-9 * std::abs(xa));
}

TEST(PowerCurve, ThreeAndAHalfHasOneRoot) { EXPECT_EQ(root_on_power_curve(3.5).roots.size(), 1u); }

TEST(PowerCurve, TwoAndAHalfHasNone) {
  auto r = root_on_power_curve(2.5);
  EXPECT_TRUE(r.roots.empty());
  EXPECT_GT(r.min_g, 0.0);
}

TEST(PowerCurve, IntegerExponentHasNone) {
  auto r = root_on_power_curve(3.0);
  EXPECT_TRUE(r.roots.empty());
  // theta(q, -q^{-a}) = q^a phi_{a+1}(q) > 0
  EXPECT_GT(r.min_g, 0.0);
}

TEST(HalfPower, SlopePositive) {
  for (int s : {1, 2}) {
    auto c = halfpower_slope_check(s);
    EXPECT_TRUE(c.pass) << s;
    EXPECT_FALSE(c.q_roots.empty()) << s;
  }
}

TEST(Cells, Domain) {
  EXPECT_THROW(detail::cell_for(Regime::q_pos, 0, 0.5), DomainError);
  EXPECT_THROW(detail::cell_for(Regime::q_pos, 1, -0.5), DomainError);
  EXPECT_THROW(detail::cell_for(Regime::q_neg_positive_zeros, 1, 0.5), DomainError);
}
