#ifndef TDELTA_WIENER_HOPF_HPP
#define TDELTA_WIENER_HOPF_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "tdelta/detail/grid.hpp"
#include "tdelta/errors.hpp"
#include "tdelta/laurent.hpp"

namespace tdelta {

/// Factors of a zero-winding symbol a = a_- a_+.
///
/// a_+ = exp(sum_{k>=0} (log a)_k z^k) carries the index-0 term, so the
/// normalization is (a_-)_0 = 1. b = a_- / a_+ and c = a_+ / a_-.
struct WienerHopfData {
  LaurentSeries log_a;
  LaurentSeries a_plus;
  LaurentSeries a_minus;
  LaurentSeries b;
  LaurentSeries c;
  LaurentSeries a_plus_inv;
  LaurentSeries a_minus_inv;
};

/// [g]_-: indices j <= -1.
inline LaurentSeries component_minus(const LaurentSeries& g) {
  LaurentSeries out(g.K());
  for (int j = -g.K(); j <= -1; ++j) out.set(j, g[j]);
  return out;
}

/// [g]_+: indices j >= 0.
inline LaurentSeries component_plus(const LaurentSeries& g) {
  LaurentSeries out(g.K());
  for (int j = 0; j <= g.K(); ++j) out.set(j, g[j]);
  return out;
}

namespace detail {

inline cplx second_derivative(const LaurentSeries& g, cplx z) {
  cplx acc{};
  for (int j = -g.K(); j <= g.K(); ++j) {
    if (j == 0 || j == 1) continue;
    acc += static_cast<double>(j) * (j - 1) * g[j] * std::pow(z, j - 2);
  }
  return acc;
}

inline std::vector<cplx> exp_of(const std::vector<cplx>& v, double sign) {
  std::vector<cplx> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [sign](cplx x) { return std::exp(sign * x); });
  return out;
}

// Difference quotient (h(z) - h(e)) / (z - e) sampled on the grid, where h is
// a component of g. Within 1e-6 of e the first-order Taylor value is used.
inline LaurentSeries difference_quotient(const LaurentSeries& h, double theta0) {
  const int K = h.K();
  const int M = grid_size_for(K);
  const auto grid = unit_circle_grid(M);
  const auto vals = samples_from_series(h, M);
  const cplx e = std::polar(1.0, theta0);
  const cplx h_e = h(e);
  const cplx dh_e = h.derivative(e);
  const cplx d2h_e = second_derivative(h, e);
  std::vector<cplx> q(vals.size());
  for (std::size_t m = 0; m < vals.size(); ++m) {
    const cplx d = grid[m] - e;
    q[m] = std::abs(d) < 1e-6 ? dh_e + 0.5 * d2h_e * d : (vals[m] - h_e) / d;
  }
  return series_from_samples(q, K);
}

}  // namespace detail

/// [g / (z - e^{i theta0})]_-^{(<)} = ([g]_-(z) - [g]_-(e^{i theta0})) / (z - e^{i theta0}).
inline LaurentSeries singular_minus(const LaurentSeries& g, double theta0) {
  return detail::difference_quotient(component_minus(g), theta0);
}

/// [g / (z - e^{i theta0})]_+^{(>)} = ([g]_+(z) - [g]_+(e^{i theta0})) / (z - e^{i theta0}).
inline LaurentSeries singular_plus(const LaurentSeries& g, double theta0) {
  return detail::difference_quotient(component_plus(g), theta0);
}

/// Wiener-Hopf factorization of a zero-winding symbol given by its series.
///
/// log a is built on the grid by sequential phase unwrapping; the window of
/// every output series is max(a.K(), K_min).
inline WienerHopfData factorize(const LaurentSeries& a, int K_min = 0) {
  const int K = std::max(a.K(), K_min);
  const int M = detail::grid_size_for(K);
  const auto vals = detail::samples_from_series(a, M);

  double peak = 0.0;
  for (const auto& v : vals) peak = std::max(peak, std::abs(v));
  std::vector<cplx> log_vals(vals.size());
  double phase = 0.0;
  for (std::size_t m = 0; m < vals.size(); ++m) {
    if (peak == 0.0 || std::abs(vals[m]) <= 1e-14 * peak)
      throw ZeroOnCircle("symbol vanishes at grid point " + std::to_string(m));
    if (m == 0) {
      phase = std::arg(vals[0]);
    } else {
      const double step = std::arg(vals[m] / vals[m - 1]);
      if (std::abs(step) >= 0.9 * kPi)
        throw NonIntegerWinding("phase step too large for unwrapping; refine the grid");
      phase += step;
    }
    log_vals[m] = {std::log(std::abs(vals[m])), phase};
  }
  const double closing = phase + std::arg(vals.front() / vals.back());
  if (std::abs(closing - std::arg(vals.front())) > kPi)
    throw NonzeroWinding("log a does not close around the unit circle");

  WienerHopfData wh;
  wh.log_a = detail::series_from_samples(log_vals, K);
  if (wh.log_a.tail_bound() > 1e-12 * std::max(1.0, wh.log_a.max_abs()))
    throw UnresolvedSeries("log a not resolved at K = " + std::to_string(K));

  const auto plus_vals = detail::samples_from_series(component_plus(wh.log_a), M);
  const auto minus_vals = detail::samples_from_series(component_minus(wh.log_a), M);
  std::vector<cplx> diff(plus_vals.size());
  for (std::size_t m = 0; m < diff.size(); ++m) diff[m] = plus_vals[m] - minus_vals[m];

  wh.a_plus = detail::series_from_samples(detail::exp_of(plus_vals, 1.0), K);
  wh.a_minus = detail::series_from_samples(detail::exp_of(minus_vals, 1.0), K);
  wh.a_plus_inv = detail::series_from_samples(detail::exp_of(plus_vals, -1.0), K);
  wh.a_minus_inv = detail::series_from_samples(detail::exp_of(minus_vals, -1.0), K);
  wh.c = detail::series_from_samples(detail::exp_of(diff, 1.0), K);
  wh.b = detail::series_from_samples(detail::exp_of(diff, -1.0), K);
  return wh;
}

/// i d/dtheta log b(e^{i theta}) at theta0, from (log b)_k = (log a_-)_k - (log a_+)_k.
inline cplx log_derivative_b(const WienerHopfData& wh, double theta0) {
  cplx acc{};
  for (int k = 1; k <= wh.log_a.K(); ++k) {
    acc += static_cast<double>(k) * wh.log_a[k] * std::polar(1.0, k * theta0);
    acc += static_cast<double>(k) * wh.log_a[-k] * std::polar(1.0, -k * theta0);
  }
  return acc;
}

}  // namespace tdelta

#endif  // TDELTA_WIENER_HOPF_HPP
