#ifndef TDELTA_TOEPLITZ_HPP
#define TDELTA_TOEPLITZ_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "tdelta/errors.hpp"
#include "tdelta/laurent.hpp"

namespace tdelta {

/// Rank-one part z_n f(e^{i theta0}) e^{-i (j-k) theta0} added to every entry.
struct DeltaTerm {
  double theta0 = 0.0;
  cplx weight{};        // z_n
  cplx symbol_value{};  // f(e^{i theta0})
};

struct ToeplitzInstance {
  int n = 0;
  LaurentSeries coeffs;  // f_j
  std::optional<DeltaTerm> delta;
};

/// Determinant carried as log-modulus and phase so tiny or huge values survive.
struct DetValue {
  cplx value{};
  double log_modulus = -std::numeric_limits<double>::infinity();
  double phase = 0.0;  // in (-pi, pi]

  static double wrap_phase(double p) {
    p = std::remainder(p, 2.0 * kPi);
    if (p <= -kPi) p += 2.0 * kPi;
    return p;
  }

  static DetValue zero() { return {}; }

  static DetValue from_log(double log_modulus, double phase) {
    if (log_modulus == -std::numeric_limits<double>::infinity()) return zero();
    const double ph = wrap_phase(phase);
    return {std::polar(std::exp(log_modulus), ph), log_modulus, ph};
  }

  static DetValue from_value(cplx v) {
    if (v == cplx{}) return zero();
    return from_log(std::log(std::abs(v)), std::arg(v));
  }

  bool is_zero() const noexcept {
    return log_modulus == -std::numeric_limits<double>::infinity();
  }

  friend DetValue operator*(const DetValue& a, const DetValue& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_log(a.log_modulus + b.log_modulus, a.phase + b.phase);
  }

  friend DetValue operator*(const DetValue& a, cplx s) { return a * from_value(s); }
};

/// Dense (n x n) matrix with entries f_{j-k} plus the optional rank-one delta part.
inline Eigen::MatrixXcd build_matrix(const ToeplitzInstance& inst) {
  const int n = inst.n;
  if (n < 1) throw std::invalid_argument("build_matrix: n must be >= 1");
  if (inst.coeffs.K() < n - 1)
    throw CoefficientRangeExceeded("need coefficients up to |j| = " + std::to_string(n - 1) +
                                   ", have K = " + std::to_string(inst.coeffs.K()));
  Eigen::MatrixXcd T(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) T(j, k) = inst.coeffs[j - k];
  if (inst.delta) {
    const auto& d = *inst.delta;
    Eigen::VectorXcd left(n), right(n);
    for (int j = 0; j < n; ++j) {
      left(j) = std::polar(1.0, -j * d.theta0);
      right(j) = std::polar(1.0, j * d.theta0);
    }
    T += (d.weight * d.symbol_value) * left * right.transpose();
  }
  return T;
}

/// LU with partial pivoting; an exactly singular matrix yields DetValue::zero().
inline DetValue det_exact(const Eigen::MatrixXcd& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("det_exact: matrix is not square");
  if (A.rows() > 512) throw std::invalid_argument("det_exact: n > 512 not supported");
  if (A.rows() == 0) return DetValue::from_value(1.0);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const auto& LU = lu.matrixLU();
  double log_mod = 0.0;
  double phase = lu.permutationP().determinant() < 0 ? kPi : 0.0;
  for (Eigen::Index i = 0; i < LU.rows(); ++i) {
    const cplx u = LU(i, i);
    if (u == cplx{}) return DetValue::zero();
    log_mod += std::log(std::abs(u));
    phase += std::arg(u);
  }
  return DetValue::from_log(log_mod, phase);
}

/// D_n(f) for the plain Toeplitz matrix.
inline DetValue toeplitz_det(const LaurentSeries& f, int n) {
  return det_exact(build_matrix({n, f, std::nullopt}));
}

/// Solution x_j, j = 0..n-1, of sum_k f_{j-k} x_k = y_j.
struct ResolventSolution {
  Eigen::VectorXcd x;
  Eigen::VectorXcd y;

  /// X(z) = sum_j x_j z^j.
  cplx X_at(cplx z) const {
    cplx acc{};
    for (Eigen::Index j = x.size() - 1; j >= 0; --j) acc = acc * z + x(j);
    return acc;
  }
};

/// Solves the Toeplitz system for an arbitrary right-hand side.
///
/// Raises SingularMatrix when a pivot falls below 1e-13 times the norm of
/// its (permuted) row.
inline ResolventSolution solve_linear_problem(const LaurentSeries& f, int n,
                                              const Eigen::VectorXcd& y) {
  if (y.size() != n) throw std::invalid_argument("solve_linear_problem: rhs size mismatch");
  const Eigen::MatrixXcd T = build_matrix({n, f, std::nullopt});
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(T);
  const Eigen::MatrixXcd PT = lu.permutationP() * T;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(lu.matrixLU()(i, i)) < 1e-13 * PT.row(i).norm())
      throw SingularMatrix("D_n(f) vanishes within pivot tolerance at n = " + std::to_string(n));
  }
  return {lu.solve(y), y};
}

/// Right-hand side y_j = e^{-i theta0 j}.
inline Eigen::VectorXcd geometric_rhs(int n, double theta0) {
  Eigen::VectorXcd y(n);
  for (int j = 0; j < n; ++j) y(j) = std::polar(1.0, -j * theta0);
  return y;
}

inline ResolventSolution solve_resolvent(const LaurentSeries& f, int n, double theta0) {
  return solve_linear_problem(f, n, geometric_rhs(n, theta0));
}

/// D~_n = D_n(f) (1 + z_n f(e^{i theta0}) X(e^{i theta0})).
///
/// symbol_value defaults to the series evaluated at e^{i theta0}.
inline DetValue det_delta_via_resolvent(const LaurentSeries& f, double theta0, cplx z_n, int n,
                                        std::optional<cplx> symbol_value = std::nullopt) {
  const DetValue D = toeplitz_det(f, n);
  if (z_n == cplx{}) return D;
  const cplx e = std::polar(1.0, theta0);
  const cplx fv = symbol_value ? *symbol_value : f(e);
  const auto sol = solve_resolvent(f, n, theta0);
  return D * (1.0 + z_n * fv * sol.X_at(e));
}

/// Coefficient series U (indices >= 0) and V (indices <= -1) completing
/// f X = Y + U z^n + V.
inline std::pair<LaurentSeries, LaurentSeries> residual_uv(const LaurentSeries& f,
                                                           const ResolventSolution& sol, int n) {
  if (f.K() < n - 1)
    throw CoefficientRangeExceeded("residual_uv needs K >= n - 1");
  if (sol.x.size() != n) throw std::invalid_argument("residual_uv: solution size mismatch");
  const int K = f.K();
  LaurentSeries U(K), V(K);
  for (int j = 0; j <= K; ++j) {
    cplx u{}, v{};
    for (int k = 0; k < n; ++k) {
      u += f[j - k + n] * sol.x(k);
      if (j >= 1) v += f[-j - k] * sol.x(k);
    }
    U.set(j, u);
    if (j >= 1) V.set(-j, v);
  }
  return {U, V};
}

}  // namespace tdelta

#endif  // TDELTA_TOEPLITZ_HPP
