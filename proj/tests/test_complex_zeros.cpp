#include <cmath>

#include <gtest/gtest.h>

#include "ptheta/complex_zeros.hpp"
#include "ptheta/spectrum.hpp"

using namespace ptheta;

namespace {

const std::vector<SpectralPoint>& qpos() {
  static const auto pts = spectrum_qpos(5);
  return pts;
}

std::vector<double> grid_after(double q0, double step, double q_end) {
  std::vector<double> g;
  for (int i = 1;; ++i) {
    const double q = q0 + step * i;
    if (q > q_end + 1e-12) break;
    g.push_back(q);
  }
  return g;
}

std::vector<double> y_grid() {
  std::vector<double> g;
  for (int i = 0; i < 1000; ++i) g.push_back(150.0 * i / 999);
  return g;
}

}  // namespace

TEST(Count, NoPairsBelowFirstSpectralValue) { EXPECT_EQ(count_zeros(0.2, {-5, 5, 1, 50}), 0); }

TEST(Count, OnePairAbove) { EXPECT_EQ(count_zeros(0.41, {-200, 20, 0.01, 140}), 1); }

TEST(Count, TwoPairs) { EXPECT_EQ(count_zeros(0.55, {-200, 20, 0.01, 140}), 2); }

TEST(Count, StableUnderRefinement) {
  CountOptions fine;
  fine.base_segments = 128;
  for (double q : {0.41, 0.55}) EXPECT_EQ(count_zeros(q, {-200, 20, 0.01, 140}), count_zeros(q, {-200, 20, 0.01, 140}, {}, fine));
}

TEST(Count, BoundaryThroughZeroIsRejected) {
  // The real zeros of theta(0.2, .) sit on the lower edge.
  EXPECT_THROW(count_zeros(0.2, {-100, 0, 0.0, 1}), BoundaryTooClose);
}

TEST(Count, EmptyRegionIsRejected) { EXPECT_THROW(count_zeros(0.2, {1, 1, 0, 1}), DomainError); }

TEST(PairCount, Examples) {
  EXPECT_EQ(pair_count(0.3), 0);
  EXPECT_EQ(pair_count(0.41), 1);
  EXPECT_EQ(pair_count(-0.5), 0);
}

TEST(PairCount, StepsAcrossSpectralValues) {
  for (int j = 1; j <= 4; ++j) {
    const double q = qpos()[j - 1].q_star;
    EXPECT_EQ(pair_count(q - 2e-3), j - 1) << j;
    EXPECT_EQ(pair_count(q + 2e-3), j) << j;
  }
}

TEST(PairCount, NegativeSide) {
  EXPECT_EQ(pair_count(-0.75), 1);
  EXPECT_EQ(pair_count(-0.8), 2);
}

TEST(Track, FirstPairCrossesWhereInterlacingSays) {
  const auto& p = qpos()[0];
  auto tr = track_pair(1, grid_after(p.q_star, 0.005, 0.95), {}, &p);
  ASSERT_TRUE(tr.crossing_q);
  EXPECT_GT(*tr.crossing_q, p.q_star);
  EXPECT_LT(*tr.crossing_q, 1.0);
  auto ic = crossing_via_interlacing(1, {}, p.q_star);
  EXPECT_NEAR(*tr.crossing_q, ic.q_dagger, 1e-6);
  EXPECT_TRUE(tr.post_crossing_contained);
}

TEST(Track, BornLeftOfAxisAndBounded) {
  for (int j = 1; j <= 2; ++j) {
    const auto& p = qpos()[j - 1];
    auto tr = track_pair(j, grid_after(p.q_star, 0.005, 0.95), {}, &p);
    ASSERT_FALSE(tr.x_samples.empty());
    EXPECT_LT(tr.x_samples.front().real(), 0.0) << j;
    EXPECT_EQ(tr.birth_q, p.q_star);
    for (std::size_t i = 0; i < tr.x_samples.size(); ++i) {
      const auto x = tr.x_samples[i];
      EXPECT_GT(x.imag(), 0.0);
      EXPECT_LT(std::abs(x.imag()), 132.0);
      auto t = theta(tr.q_samples[i], x);
      EXPECT_LE(std::abs(t.value), 1e-10 * std::max(1.0, t.magnitude));
    }
  }
}

TEST(Track, MethodsAgreeForSecondAndThird) {
  for (int j = 2; j <= 3; ++j) {
    const auto& p = qpos()[j - 1];
    auto tr = track_pair(j, grid_after(p.q_star, 0.005, 0.95), {}, &p);
    ASSERT_TRUE(tr.crossing_q) << j;
    EXPECT_NEAR(*tr.crossing_q, crossing_via_interlacing(j, {}, p.q_star).q_dagger, 1e-6) << j;
    EXPECT_TRUE(tr.post_crossing_contained) << j;
  }
}

TEST(Interlacing, FirstCrossing) {
  const double qt = qpos()[0].q_star;
  auto c = crossing_via_interlacing(1, {}, qt);
  EXPECT_GT(c.q_dagger, 0.0);
  EXPECT_LT(c.q_dagger, std::pow(qt, 0.25));
  EXPECT_LE(c.residual, 1e-9);
  EXPECT_NEAR(c.q_dagger, 0.726471982821, 1e-9);
}

TEST(Interlacing, SecondCrossing) {
  const double qt = qpos()[1].q_star;
  auto c = crossing_via_interlacing(2, {}, qt);
  EXPECT_LT(c.q_dagger, std::pow(qt, 0.25));
  EXPECT_LE(c.residual, 1e-9 * std::max(1.0, c.residual_scale));
  EXPECT_NEAR(c.q_dagger, 0.841317729851, 1e-9);
}

TEST(Interlacing, OrderingJustAboveCrossing) {
  auto c = crossing_via_interlacing(1, {}, qpos()[0].q_star);
  const double q = c.q_dagger + 1e-3;
  auto y = detail::ysharp_pair(q, 1, {});
  ASSERT_TRUE(y);
  EXPECT_LT(y->first, y->second);
  EXPECT_LT(y->second, y->first / q);
}

TEST(NoCrossing, NegativeQ) {
  const auto g = y_grid();
  EXPECT_TRUE(no_crossing_qneg(-0.9, g));
  EXPECT_TRUE(no_crossing_qneg(-0.1, g));
  EXPECT_TRUE(no_crossing_qneg(-0.727133, g));
  EXPECT_THROW(no_crossing_qneg(0.5, g), DomainError);
}

TEST(Containment, OnePairAtPointFourOne) {
  auto r = containment_audit(0.41);
  EXPECT_EQ(r.zeros.size(), 1u);
  EXPECT_EQ(r.violations, 0);
  EXPECT_TRUE(r.conjugate_symmetric);
}

TEST(Containment, StripForNegativeQ) {
  auto r = containment_audit(-0.85);
  EXPECT_EQ(r.zeros.size(), 3u);
  EXPECT_EQ(r.violations, 0);
  EXPECT_LT(r.max_abs_im, 132.0);
  EXPECT_GT(r.min_abs_re, 0.0);
  for (auto z : r.zeros) {
    auto t = theta(-0.85, std::conj(z));
    EXPECT_LE(std::abs(t.value), 1e-10 * std::max(1.0, t.magnitude));
  }
}

TEST(Containment, NoneForSmallQ) {
  auto r = containment_audit(0.05);
  EXPECT_TRUE(r.zeros.empty());
  EXPECT_EQ(r.violations, 0);
}
