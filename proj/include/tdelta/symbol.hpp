#ifndef TDELTA_SYMBOL_HPP
#define TDELTA_SYMBOL_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tdelta/detail/grid.hpp"
#include "tdelta/errors.hpp"
#include "tdelta/laurent.hpp"

namespace tdelta {

using SymbolFn = std::function<cplx(cplx)>;

struct SamplingOptions {
  double tail_tolerance = 1e-13;        // relative to max |g_j|
  double quadrature_tolerance = 1e-10;  // relative to max |g| on the grid
  int max_K = 1 << 14;
};

/// Laurent coefficients of an analytic function on the unit circle.
///
/// Uses the M-point trapezoid rule, M the smallest power of two >= max(8K, 256).
/// K is doubled until the outer 10% of the window is below the tail tolerance
/// and the truncated series reproduces the function at off-grid points.
template <class F>
LaurentSeries sample_coefficients(F&& g, int K, const SamplingOptions& opts = {}) {
  if (K < 1) throw std::invalid_argument("sample_coefficients: K must be >= 1");
  for (;;) {
    const int M = detail::grid_size_for(K);
    const auto grid = detail::unit_circle_grid(M);
    std::vector<cplx> samples(grid.size());
    double scale = 0.0;
    for (std::size_t m = 0; m < grid.size(); ++m) {
      samples[m] = g(grid[m]);
      if (!std::isfinite(samples[m].real()) || !std::isfinite(samples[m].imag()))
        throw EvaluationError("symbol is not finite at theta = " +
                              std::to_string(detail::grid_angle(static_cast<int>(m), M)));
      scale = std::max(scale, std::abs(samples[m]));
    }
    LaurentSeries series = detail::series_from_samples(samples, K);
    const double peak = series.max_abs();
    bool resolved = peak == 0.0 || series.tail_bound() <= opts.tail_tolerance * peak;
    if (resolved) {
      // Off-grid reproduction check at quasi-random angles.
      constexpr double golden = 0.6180339887498949;
      for (int k = 1; k <= 16 && resolved; ++k) {
        const double theta = 2.0 * kPi * std::fmod(k * golden, 1.0);
        const cplx z = std::polar(1.0, theta);
        const cplx exact = g(z);
        if (std::abs(series(z) - exact) > opts.quadrature_tolerance * std::max(scale, 1e-300))
          resolved = false;
      }
    }
    if (resolved) return series;
    if (2 * K > opts.max_K)
      throw UnresolvedSeries("Laurent tail not resolved at K = " + std::to_string(K));
    K *= 2;
  }
}

/// Winding number of f around the origin along the unit circle.
///
/// Adds the principal arguments of consecutive sample ratios. Every step
/// must stay below pi/2 in phase, otherwise the grid is too coarse to
/// follow the curve and NonIntegerWinding is raised.
template <class F>
int winding_number(F&& f, int M = 1024) {
  if (M < 8) throw std::invalid_argument("winding_number: grid too small");
  const auto grid = detail::unit_circle_grid(M);
  std::vector<cplx> v(grid.size());
  double peak = 0.0;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    v[m] = f(grid[m]);
    if (!std::isfinite(v[m].real()) || !std::isfinite(v[m].imag()))
      throw EvaluationError("symbol is not finite on the unit circle");
    peak = std::max(peak, std::abs(v[m]));
  }
  double total = 0.0;
  for (std::size_t m = 0; m < v.size(); ++m) {
    const cplx cur = v[m];
    const cplx next = v[(m + 1) % v.size()];
    if (std::abs(cur) <= 1e-14 * peak || peak == 0.0)
      throw ZeroOnCircle("symbol vanishes at theta = " +
                         std::to_string(detail::grid_angle(static_cast<int>(m), M)));
    const double step = std::arg(next / cur);
    if (std::abs(step) > kPi / 2)
      throw NonIntegerWinding("phase step exceeds pi/2; refine the grid");
    total += step;
  }
  const double turns = total / (2.0 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 0.1)
    throw NonIntegerWinding("winding " + std::to_string(turns) + " is not an integer");
  return static_cast<int>(rounded);
}

/// Symbol f(z) = a(z) z^nu analytic and non-zero on rho_minus < |z| < rho_plus.
struct AnnularSymbol {
  SymbolFn eval;
  int nu = 0;
  double rho_minus = 0.0;
  double rho_plus = std::numeric_limits<double>::infinity();

  cplx operator()(cplx z) const { return eval(z); }

  /// a(z) = f(z) z^{-nu}.
  SymbolFn zero_winding_part() const {
    return [f = eval, nu = nu](cplx z) { return f(z) * std::pow(z, -nu); };
  }
};

/// Builds an AnnularSymbol and checks the declared winding against a measurement.
inline AnnularSymbol make_symbol(SymbolFn f, int nu, double rho_minus, double rho_plus) {
  if (!(rho_minus < 1.0 && 1.0 < rho_plus))
    throw std::invalid_argument("analyticity radii must satisfy rho_minus < 1 < rho_plus");
  const int measured = winding_number(f);
  if (measured != nu)
    throw std::invalid_argument("declared winding " + std::to_string(nu) + " but measured " +
                                std::to_string(measured));
  return AnnularSymbol{std::move(f), nu, rho_minus, rho_plus};
}

inline double wrap_angle(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  if (t >= 2.0 * kPi) t = 0.0;
  return t;
}

using WeightRule = std::function<cplx(int)>;

/// f(e^{i theta}) [1 + 2 pi z_n delta(theta - theta0)].
struct DeltaSymbol {
  AnnularSymbol base;
  double theta0 = 0.0;
  WeightRule weight;

  cplx weight_at(int n) const { return weight(n); }
  cplx value_at_delta() const { return base(std::polar(1.0, theta0)); }
};

inline DeltaSymbol make_delta_symbol(AnnularSymbol base, double theta0, WeightRule weight) {
  if (!(theta0 >= 0.0 && theta0 < 2.0 * kPi))
    throw std::invalid_argument("theta0 must lie in [0, 2pi)");
  return DeltaSymbol{std::move(base), theta0, std::move(weight)};
}

inline WeightRule constant_weight(cplx z) {
  return [z](int) { return z; };
}

struct DecayRates {
  double minus = 0.0;  // |g_{-j}| ~ minus^j
  double plus = 0.0;   // |g_j| ~ plus^j
  bool minus_resolved = false;
  bool plus_resolved = false;
};

/// Geometric decay rates of both tails.
///
/// Least squares of log|g_{+-j}| on (1, j, log j), so algebraic prefactors
/// such as j^{-3/2} near a branch point do not bias the rate. Only
/// coefficients above 1e-12 max|g| enter the fit. A side with fewer than
/// five such coefficients reports rate 0 and resolved = false.
inline DecayRates decay_rate(const LaurentSeries& series) {
  const double floor = 1e-12 * series.max_abs();
  auto fit = [&](int sign, double& rate, bool& ok) {
    std::vector<int> js;
    std::vector<double> logs;
    for (int j = 1; j <= series.K(); ++j) {
      const double mag = std::abs(series[sign * j]);
      if (mag > floor && mag > 0.0) {
        js.push_back(j);
        logs.push_back(std::log(mag));
      }
    }
    if (js.size() < 5) {
      rate = 0.0;
      ok = false;
      return;
    }
    const auto m = static_cast<Eigen::Index>(js.size());
    Eigen::MatrixXd A(m, 3);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double j = js[static_cast<std::size_t>(i)];
      A(i, 0) = 1.0;
      A(i, 1) = j;
      A(i, 2) = std::log(j);
      y(i) = logs[static_cast<std::size_t>(i)];
    }
    const Eigen::Vector3d beta = A.colPivHouseholderQr().solve(y);
    rate = std::exp(beta(1));
    ok = true;
  };
  DecayRates r;
  fit(-1, r.minus, r.minus_resolved);
  fit(+1, r.plus, r.plus_resolved);
  return r;
}

}  // namespace tdelta

#endif  // TDELTA_SYMBOL_HPP
