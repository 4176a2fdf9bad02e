#include <gtest/gtest.h>

#include <Eigen/QR>

#include "oracles/cofactor.hpp"
#include "oracles/contour.hpp"
#include "oracles/random_symbols.hpp"
#include "support.hpp"

using namespace tdelta;
using support::rel_err;

TEST(BuildMatrix, Examples) {
  const auto one = LaurentSeries::constant(1.0);
  const auto m1 = build_matrix({1, one, std::nullopt});
  EXPECT_EQ(m1.rows(), 1);
  EXPECT_EQ(m1(0, 0), cplx(1.0));

  const auto m2 = build_matrix({2, one.resized(1), DeltaTerm{kPi, 0.1, 1.0}});
  EXPECT_NEAR(std::abs(m2(0, 0) - 1.1), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m2(1, 1) - 1.1), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m2(0, 1) + 0.1), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m2(1, 0) + 0.1), 0.0, 1e-15);
}

TEST(BuildMatrix, EntriesMatchQuadrature) {
  const auto sym = magnetization_family(0.5, 0);
  const auto f = coefficients_of(sym, 8);
  const auto T = build_matrix({3, f, std::nullopt});
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      EXPECT_NEAR(std::abs(T(j, k) - oracle::laurent_coefficient(sym.eval, j - k)), 0.0, 1e-12);
}

TEST(BuildMatrix, DeltaEntries) {
  const auto f = support::magnetization_series(0.5, 1, 16);
  const cplx zn{0.1, -0.2};
  const double theta0 = 0.8;
  const cplx fe = magnetization_family(0.5, 1)(std::polar(1.0, theta0));
  const auto T = build_matrix({5, f, DeltaTerm{theta0, zn, fe}});
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k)
      EXPECT_NEAR(std::abs(T(j, k) - (f[j - k] + zn * fe * std::polar(1.0, -(j - k) * theta0))), 0.0, 1e-15);
}

TEST(BuildMatrix, RangeAndArguments) {
  EXPECT_THROW(build_matrix({5, LaurentSeries(2), std::nullopt}), CoefficientRangeExceeded);
  EXPECT_THROW(build_matrix({0, LaurentSeries(2), std::nullopt}), std::invalid_argument);
}

TEST(DetExact, IdentityAndRankOne) {
  EXPECT_NEAR(std::abs(det_exact(Eigen::MatrixXcd::Identity(10, 10)).value - 1.0), 0.0, 1e-15);
  const auto one = LaurentSeries::constant(1.0).resized(40);
  for (const cplx zn : {cplx{0.1}, cplx{-0.3, 0.2}})
    for (double theta0 : {0.0, 1.3, 4.0})
      for (int n : {1, 7, 40}) {
        const auto d = det_exact(build_matrix({n, one, DeltaTerm{theta0, zn, 1.0}}));
        EXPECT_LE(rel_err(d.value, 1.0 + zn * static_cast<double>(n)), 1e-12);
      }
}

TEST(DetExact, ConstantSymbolRankOne) {
  const cplx c{1.3, -0.4};
  const auto f = LaurentSeries::constant(c).resized(20);
  for (int n : {3, 9, 20}) {
    const cplx zn{0.05, 0.02};
    const auto d = det_exact(build_matrix({n, f, DeltaTerm{0.5, zn, c}}));
    EXPECT_LE(rel_err(d.value, std::pow(c, n) * (1.0 + zn * static_cast<double>(n))), 1e-12);
  }
}

TEST(DetExact, MatchesCofactorExpansion) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXcd A = Eigen::MatrixXcd::Random(4, 4);
    const auto d = det_exact(A);
    EXPECT_LE(rel_err(d.value, oracle::cofactor_det(A)), 1e-12);
    EXPECT_LE(rel_err(std::polar(std::exp(d.log_modulus), d.phase), d.value), 1e-12);
    EXPECT_GT(d.phase, -kPi);
    EXPECT_LE(d.phase, kPi);
  }
}

TEST(DetExact, SingularAndLarge) {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Ones(3, 3);
  const auto d = det_exact(A);
  EXPECT_TRUE(d.is_zero());
  EXPECT_EQ(d.value, cplx{});
  EXPECT_EQ(d.log_modulus, -std::numeric_limits<double>::infinity());
  EXPECT_THROW(det_exact(Eigen::MatrixXcd::Identity(513, 513)), std::invalid_argument);
  EXPECT_THROW(det_exact(Eigen::MatrixXcd::Identity(2, 3)), std::invalid_argument);
}

TEST(DetExact, LogFormSurvivesUnderflow) {
  const Eigen::MatrixXcd A = 1e-3 * Eigen::MatrixXcd::Identity(400, 400);
  const auto d = det_exact(A);
  EXPECT_NEAR(d.log_modulus, 400 * std::log(1e-3), 1e-9);
  EXPECT_EQ(d.value, cplx{});
  EXPECT_FALSE(d.is_zero());
}

TEST(Resolvent, TrivialSymbol) {
  const auto one = LaurentSeries::constant(1.0).resized(12);
  const double theta0 = 0.7;
  const auto sol = solve_resolvent(one, 12, theta0);
  for (int j = 0; j < 12; ++j) EXPECT_NEAR(std::abs(sol.x(j) - std::polar(1.0, -j * theta0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(sol.X_at(std::polar(1.0, theta0)) - 12.0), 0.0, 1e-13);
}

TEST(Resolvent, CramerRule) {
  for (int n = 2; n <= 8; ++n) {
    const auto f = support::magnetization_series(0.5, n % 2, 16);
    const double theta0 = n == 6 ? 0.0 : 0.3 * n;
    const auto sol = solve_resolvent(f, n, theta0);
    const auto T = build_matrix({n, f, std::nullopt});
    const auto x = oracle::cramer_solve(T, geometric_rhs(n, theta0));
    for (int j = 0; j < n; ++j) EXPECT_NEAR(std::abs(sol.x(j) - x(j)), 0.0, 1e-10) << n;
    EXPECT_LE((T * sol.x - sol.y).norm(), 1e-9 * sol.x.norm());
  }
}

TEST(Resolvent, SingularMatrix) {
  LaurentSeries tri(1);
  tri.set(-1, 1.0);
  tri.set(0, 1.0);
  tri.set(1, 1.0);
  EXPECT_THROW(solve_resolvent(tri, 2, 0.0), SingularMatrix);
  EXPECT_NO_THROW(solve_resolvent(tri.resized(2), 3, 0.0));
  EXPECT_THROW(solve_linear_problem(tri, 3, Eigen::VectorXcd::Ones(2)), std::invalid_argument);
}

// Refinement from a QR start converges to the LU solution.
TEST(Resolvent, IndependentSolvesAgree) {
  const auto f = support::correlation_series(0.5, 2, 64);
  for (int n : {10, 25, 40}) {
    const auto sol = solve_resolvent(f, n, 0.6);
    const auto T = build_matrix({n, f, std::nullopt});
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(T);
    Eigen::VectorXcd x = qr.solve(sol.y);
    for (int it = 0; it < 3; ++it) x += qr.solve(sol.y - T * x);
    EXPECT_LE((x - sol.x).norm(), 1e-10 * sol.x.norm());
  }
}

TEST(DeltaViaResolvent, Examples) {
  const auto f = support::magnetization_series(0.5, 0, 64);
  EXPECT_LE(rel_err(det_delta_via_resolvent(f, 0.0, 0.0, 10).value, toeplitz_det(f, 10).value), 1e-15);
  const auto one = LaurentSeries::constant(1.0).resized(20);
  EXPECT_LE(rel_err(det_delta_via_resolvent(one, 2.0, cplx{0.1, 0.3}, 20).value, 1.0 + cplx{0.1, 0.3} * 20.0),
            1e-12);
  const cplx zn = -2.0 / 21.0;
  const auto exact = support::delta_det(f, 10, 0.0, zn, 1.0);
  EXPECT_LE(rel_err(det_delta_via_resolvent(f, 0.0, zn, 10).value, exact.value), 1e-10);
}

TEST(DeltaViaResolvent, OracleEquivalenceAcrossSymbols) {
  std::mt19937_64 rng(31);
  struct Case {
    AnnularSymbol s;
    double theta0;
    cplx zn;
  };
  std::vector<Case> cases{
      {magnetization_family(0.5, 0), 0.0, -2.0 / 21},
      {magnetization_family(0.5, 1), kPi / 3, 0.1},
      {correlation_family(0.5, 0), kPi / 5, -1.0 / 21},
      {correlation_family(0.5, 2), 0.0, -1.0 / 41},
      {magnetization_family(0.5, -1), 2.0, {0.05, -0.1}},
      {oracle::random_exp_symbol(rng).symbol(0), 4.5, {-0.2, 0.1}},
  };
  for (const auto& c : cases) {
    const auto f = coefficients_of(c.s, 64);
    const cplx fe = c.s(std::polar(1.0, c.theta0));
    for (int n = 2; n <= 40; ++n) {
      const auto exact = support::delta_det(f, n, c.theta0, c.zn, fe);
      const auto via = det_delta_via_resolvent(f, c.theta0, c.zn, n, fe);
      EXPECT_LE(rel_err(via.value, exact.value), 1e-8) << "nu=" << c.s.nu << " n=" << n;
    }
  }
}

TEST(ResidualUV, TrivialSymbol) {
  const auto one = LaurentSeries::constant(1.0).resized(8);
  const auto sol = solve_resolvent(one, 8, 0.3);
  const auto [U, V] = residual_uv(one, sol, 8);
  EXPECT_LE(U.max_abs(), 1e-15);
  EXPECT_LE(V.max_abs(), 1e-15);
}

TEST(ResidualUV, FunctionalIdentity) {
  struct Case {
    LaurentSeries f;
    double theta0;
  };
  std::vector<Case> cases{{support::magnetization_series(0.5, 0, 64), 0.0},
                          {support::correlation_series(0.5, 0, 64), kPi / 5},
                          {support::magnetization_series(0.4, 1, 64), 1.0}};
  for (const auto& c : cases) {
    const int n = 8;
    const auto sol = solve_resolvent(c.f, n, c.theta0);
    const auto [U, V] = residual_uv(c.f, sol, n);
    for (int j = 1; j <= U.K(); ++j) EXPECT_EQ(U[-j], cplx{});
    for (int j = 0; j <= V.K(); ++j) EXPECT_EQ(V[j], cplx{});
    for (const auto z : support::random_unit_points(64, 3)) {
      cplx Y{};
      for (int j = 0; j < n; ++j) Y += sol.y(j) * std::pow(z, j);
      const cplx lhs = c.f(z) * sol.X_at(z);
      const cplx rhs = Y + U(z) * std::pow(z, n) + V(z);
      EXPECT_LE(std::abs(lhs - rhs), 1e-10);
    }
  }
  EXPECT_THROW(residual_uv(LaurentSeries(2), solve_resolvent(LaurentSeries::constant(1.0).resized(4), 4, 0.0), 4),
               CoefficientRangeExceeded);
}

TEST(DetValue, Arithmetic) {
  const auto a = DetValue::from_value({0.0, 2.0});
  EXPECT_NEAR(a.log_modulus, std::log(2.0), 1e-15);
  EXPECT_NEAR(a.phase, kPi / 2, 1e-15);
  const auto b = a * cplx{0.0, 2.0};
  EXPECT_NEAR(std::abs(b.value + 4.0), 0.0, 1e-14);
  EXPECT_NEAR(b.phase, kPi, 1e-14);
  EXPECT_TRUE((a * cplx{}).is_zero());
  EXPECT_NEAR(DetValue::wrap_phase(-kPi), kPi, 1e-15);
}
