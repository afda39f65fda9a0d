#include <gtest/gtest.h>

#include <cmath>

#include "detksat/bounds.hpp"
#include "detksat/formula.hpp"

using namespace detksat;

TEST(Bounds, C3) {
  EXPECT_NEAR(static_cast<double>(c3_exponent()), 0.258158858695, 1e-11);
  EXPECT_NEAR(static_cast<double>(round_up(c3(), 5)), 1.32793, 1e-12);
}

TEST(Bounds, C3IsSingleClauseBalance) {
  const long double nu =
      std::log2(4.0L / 3.0L) / (std::log2(3.0L) + 3 * std::log2(4.0L / 3.0L) + std::log2(3.0L / 7.0L));
  EXPECT_NEAR(static_cast<double>(std::pow(3.0L, nu)), static_cast<double>(c3()), 1e-15);
}

TEST(Bounds, TableColumn) {
  const auto rows = ck_recurrence(6);
  ASSERT_EQ(rows.size(), 4u);
  const double expected[] = {1.32793, 1.49857, 1.59946, 1.66646};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(rows[i].k, i + 3);
    EXPECT_NEAR(static_cast<double>(round_up(rows[i].c, 5)), expected[i], 1e-12);
  }
  EXPECT_NEAR(static_cast<double>(rows[1].nu), 0.076827298544, 1e-11);
}

TEST(Bounds, Balance) {
  for (unsigned k = 3; k <= kMaxBoundK; ++k) EXPECT_LE(balance_check(k).relative_error, 1e-10L) << k;
  EXPECT_NEAR(static_cast<double>(std::log2(balance_check(4).branching_side)), 0.583585609, 1e-9);
}

TEST(Bounds, Degeneration) {
  const DegenerationReport d = degeneration_check();
  EXPECT_NEAR(static_cast<double>(d.positive_base), 1.3280512972, 1e-9);
  EXPECT_NEAR(static_cast<double>(d.two_negative_base), 1.3281534830, 1e-9);
  EXPECT_GE(d.positive_base, 1.328L);
  EXPECT_GE(d.two_negative_base, 1.328L);
  EXPECT_GT(d.positive_base, d.c3);
  EXPECT_GT(d.two_negative_base, d.c3);
}

TEST(Bounds, RoundUp) {
  EXPECT_NEAR(static_cast<double>(round_up(1.234561L, 5)), 1.23457, 1e-12);
  EXPECT_NEAR(static_cast<double>(round_up(1.5L, 5)), 1.5, 1e-12);
}

TEST(Bounds, Range) {
  EXPECT_THROW(ck_recurrence(2), PreconditionError);
  EXPECT_THROW(ck_recurrence(kMaxBoundK + 1), PreconditionError);
  EXPECT_THROW(ksat_nu(3, 1.3L), PreconditionError);
}
