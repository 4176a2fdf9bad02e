#include <gtest/gtest.h>

#include "support.hpp"

using tdelta::cplx;
using tdelta::LaurentSeries;

namespace {

LaurentSeries three_term() {
  LaurentSeries g(1);
  g.set(-1, 1.0);
  g.set(0, 1.0);
  g.set(1, 1.0);
  return g;
}

}  // namespace

TEST(Laurent, OutOfWindowReadsZero) {
  const auto g = three_term();
  EXPECT_EQ(g[5], cplx{});
  EXPECT_EQ(g[-2], cplx{});
  EXPECT_THROW(LaurentSeries(1).set(2, 1.0), std::out_of_range);
  EXPECT_THROW(LaurentSeries(-1), std::invalid_argument);
  EXPECT_THROW(LaurentSeries(1, {1.0, 2.0}), std::invalid_argument);
}

TEST(Laurent, EvaluationAndDerivative) {
  const auto g = three_term();
  const cplx z{0.3, 0.8};
  EXPECT_NEAR(std::abs(g(z) - (z + 1.0 + 1.0 / z)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.derivative(z) - (1.0 - 1.0 / (z * z))), 0.0, 1e-15);
  EXPECT_EQ(LaurentSeries::constant(2.5)(z), cplx(2.5));
}

TEST(Laurent, ShiftReverseResize) {
  const auto g = three_term();
  const auto s = g.shifted(2);
  EXPECT_EQ(s.K(), 3);
  EXPECT_EQ(s[3], cplx(1.0));
  EXPECT_EQ(s[1], cplx(1.0));
  EXPECT_EQ(s[-1], cplx{});

  LaurentSeries h(2);
  h.set(2, 3.0);
  h.set(-1, 4.0);
  const auto r = h.reversed();
  EXPECT_EQ(r[-2], cplx(3.0));
  EXPECT_EQ(r[1], cplx(4.0));
  EXPECT_EQ(h.resized(1)[2], cplx{});
  EXPECT_EQ(h.resized(4)[2], cplx(3.0));
}

TEST(Laurent, NormsAndArithmetic) {
  LaurentSeries g(20);
  for (int j = -20; j <= 20; ++j) g.set(j, std::pow(0.5, std::abs(j)));
  EXPECT_DOUBLE_EQ(g.max_abs(), 1.0);
  EXPECT_DOUBLE_EQ(g.tail_bound(), std::pow(0.5, 19));
  const auto d = g - g;
  EXPECT_DOUBLE_EQ(d.max_abs(), 0.0);
  const auto sum = g + three_term();
  EXPECT_EQ(sum[0], cplx(2.0));
  EXPECT_EQ((cplx{2.0} * g)[3], cplx(0.25));
}
