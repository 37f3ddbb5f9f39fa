#include "hellinger_bandits/bounds.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "hellinger_bandits/error.hpp"

namespace hb {
namespace {

// Reference values from an mpmath evaluation at 60 digits.
TEST(PullBound, FrozenValues) {
  const auto c = bound_constants(Family::Bernoulli, 0.1, 0.05, 0.26, 0.1);
  EXPECT_NEAR(c.c1, 61.678059400455301, 1e-9);
  EXPECT_NEAR(c.c2, 0.00216573059972446, 1e-15);
  EXPECT_NEAR(c.hellinger_sq, 0.00462722143599878, 1e-16);
  EXPECT_NEAR(expected_pulls_bound(Family::Bernoulli, 0.1, 0.05, 0.26, 0.1, 1),
              170.23503818143384, 1e-8);
  EXPECT_NEAR(expected_pulls_bound(Family::Bernoulli, 0.1, 0.05, 0.26, 0.1, 10000),
              907.83898394118651, 1e-8);
}

TEST(PullBound, TermsAtHorizonOne) {
  const auto b = expected_pulls_bound_terms(Family::Bernoulli, 0.1, 0.05, 0.26, 0.1, 1);
  EXPECT_EQ(b.leading, 0.0);
  EXPECT_EQ(b.p_series, 1.0);
  EXPECT_DOUBLE_EQ(b.transient, b.constants.c1);
  EXPECT_DOUBLE_EQ(b.tail, 1.0 / std::expm1(2.0 * b.constants.hellinger_sq));
  EXPECT_DOUBLE_EQ(b.total, b.leading + b.transient + b.p_series + b.tail);
}

TEST(PullBound, MonotoneInHorizon) {
  for (Family f : {Family::Bernoulli, Family::Poisson}) {
    double prev = 0.0;
    for (std::uint64_t t = 1; t <= 100'000'000; t *= 3) {
      const double b = expected_pulls_bound(f, 0.1, 0.05, 0.26, 0.5, t);
      EXPECT_GE(b, prev) << t;
      prev = b;
    }
  }
}

TEST(PullBound, Errors) {
  EXPECT_THROW(expected_pulls_bound(Family::Bernoulli, 0.1, 0.1, 0.26, 0.1, 10), InputError);
  EXPECT_THROW(expected_pulls_bound(Family::Bernoulli, 0.05, 0.1, 0.26, 0.1, 10), InputError);
  EXPECT_THROW(expected_pulls_bound(Family::Bernoulli, 0.1, 0.05, 0.25, 0.1, 10), InputError);
  EXPECT_THROW(expected_pulls_bound(Family::Bernoulli, 0.1, 0.05, 0.26, 0.0, 10), InputError);
  EXPECT_THROW(expected_pulls_bound(Family::Bernoulli, 0.1, 0.05, 0.26, 0.1, 0), InputError);
  EXPECT_THROW(expected_pulls_bound(Family::Bernoulli, 1.1, 0.05, 0.26, 0.1, 10), InputError);
}

TEST(PullBound, AlternateForm) {
  const auto b = expected_pulls_bound_terms(Family::Bernoulli, 0.1, 0.05, 0.26, 0.1, 10000,
                                            TransientForm::Alternate);
  const auto& k = b.constants;
  const double expected =
      1.0 / (k.c2 * k.hellinger_sq) / std::pow(1e4, 2.0 * k.c1 * k.c2 * k.hellinger_sq);
  EXPECT_NEAR(b.transient, expected, 1e-9 * expected);
}

TEST(PSeries, HarmonicBracket) {
  // sum_{t<=T} 1/t lies within [log T, 1 + log T].
  for (std::uint64_t t : {10ull, 1000ull, 1'000'000ull, 50'000'000ull}) {
    const auto s = p_series(1.0, t);
    const double lt = std::log(static_cast<double>(t));
    EXPECT_GE(s.value, lt);
    EXPECT_LE(s.value, 1.0 + lt);
    EXPECT_NEAR(s.value, lt + std::numbers::egamma, 1.0 / static_cast<double>(t));
  }
}

TEST(PSeries, ConvergentExponent) {
  // c = 0.75: sum t^{-1.5} -> zeta(1.5).
  const double zeta = 2.6123753486854883;
  const auto s = p_series(1.5, 1'000'000'000ull);
  EXPECT_LE(s.lower, s.value);
  EXPECT_LE(s.value, s.upper);
  EXPECT_NEAR(s.value, zeta, 1e-4);
}

TEST(PSeries, TailBracketHoldsExactSum) {
  const std::uint64_t t = 2'000'000;
  for (double e : {0.52, 1.0}) {
    long double exact = 0.0L;
    for (std::uint64_t i = t; i >= 1; --i) exact += std::pow(static_cast<long double>(i), -e);
    const auto s = p_series(e, t);
    EXPECT_LE(s.lower, static_cast<double>(exact) + 1e-9);
    EXPECT_GE(s.upper, static_cast<double>(exact) - 1e-9);
    EXPECT_NEAR(s.value, static_cast<double>(exact), 1e-6 * static_cast<double>(exact));
  }
  const auto exact_small = p_series(0.52, 1000);
  EXPECT_EQ(exact_small.lower, exact_small.value);
  EXPECT_EQ(exact_small.upper, exact_small.value);
}

TEST(RegretBounds, AllOptimalArmsGiveZero) {
  const BanditInstance inst{Family::Bernoulli, {0.2, 0.2}};
  EXPECT_EQ(regret_upper_bound(inst, 0.26, 0.1, 1000), 0.0);
  EXPECT_EQ(regret_upper_bound_best(inst, 0.26, 1000), 0.0);
  EXPECT_EQ(regret_lower_bound(inst, 1000).value, 0.0);
}

TEST(RegretBounds, SingleSuboptimalArm) {
  const BanditInstance inst{Family::Bernoulli, {0.05, 0.1}};
  EXPECT_DOUBLE_EQ(regret_upper_bound(inst, 0.26, 0.1, 10000),
                   0.05 * expected_pulls_bound(Family::Bernoulli, 0.1, 0.05, 0.26, 0.1, 10000));
  EXPECT_NEAR(regret_lower_bound(inst, std::numbers::e).value, 2.992846884274845, 1e-12);
  EXPECT_THROW(regret_lower_bound(inst, 1.5), InputError);
}

TEST(RegretBounds, LowerBelowUpper) {
  for (const auto& inst : {bernoulli_reference_instance(), poisson_reference_instance()}) {
    EXPECT_LE(regret_lower_bound(inst, 1e6).value, regret_upper_bound_best(inst, 0.26, 1'000'000));
  }
}

TEST(RegretBounds, OneArmAndInfiniteKl) {
  const BanditInstance one{Family::Bernoulli, {0.3}};
  EXPECT_EQ(regret_lower_bound(one, 100).value, 0.0);
  // KL(0.5, 1) is infinite: that arm is skipped.
  const BanditInstance inf{Family::Bernoulli, {0.5, 1.0, 0.9}};
  const auto lb = regret_lower_bound(inf, 100);
  EXPECT_EQ(lb.skipped_arms, (std::vector<std::size_t>{0, 2}));
}

TEST(BestEpsilon, MinimisesOverGrid) {
  const auto grid = epsilon_grid();
  ASSERT_EQ(grid.size(), 100u);
  EXPECT_NEAR(grid.front(), 1e-3, 1e-18);
  EXPECT_NEAR(grid.back(), 10.0, 1e-12);
  const auto best = best_epsilon(Family::Bernoulli, 0.1, 0.05, 0.26, 10000);
  for (double e : grid) {
    EXPECT_LE(best.bound, expected_pulls_bound(Family::Bernoulli, 0.1, 0.05, 0.26, e, 10000));
  }
  EXPECT_DOUBLE_EQ(best.bound,
                   expected_pulls_bound(Family::Bernoulli, 0.1, 0.05, 0.26, best.epsilon, 10000));
  const auto fine = best_epsilon(Family::Bernoulli, 0.1, 0.05, 0.26, 10000, 1000);
  EXPECT_LE(fine.bound, best.bound);
  EXPECT_LT((best.bound - fine.bound) / best.bound, 0.01);
}

}  // namespace
}  // namespace hb
