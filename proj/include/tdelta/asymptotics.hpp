#ifndef TDELTA_ASYMPTOTICS_HPP
#define TDELTA_ASYMPTOTICS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdelta/errors.hpp"
#include "tdelta/laurent.hpp"
#include "tdelta/symbol.hpp"
#include "tdelta/toeplitz.hpp"
#include "tdelta/wiener_hopf.hpp"

namespace tdelta {

struct AsymptoticResult {
  cplx value{};
  double log_modulus = -std::numeric_limits<double>::infinity();
  double phase = 0.0;
  double error_order = 0.0;  // predicted geometric rate of the correction
  std::map<std::string, double> diagnostics;
  std::vector<std::string> warnings;

  bool flagged() const noexcept { return !warnings.empty(); }

  void set_log(cplx log_value) {
    log_modulus = log_value.real();
    phase = DetValue::wrap_phase(log_value.imag());
    value = std::exp(log_value);
  }
};

/// Delta_{nu,n} and the column-replaced Delta~_{nu,n}(l), l = 1..|nu|.
struct BandDeterminants {
  int nu = 0;
  cplx delta{};
  std::vector<cplx> delta_tilde;  // index l - 1
  std::vector<cplx> d_coeffs;     // d_j for j = -(|nu|-1) .. |nu|-1
  bool underflow = false;         // |Delta| or every |d_j| below 1e-300
  bool below_resolution = false;  // |d_j| at the quadrature noise floor
  double noise_estimate = 0.0;    // relative error of Delta from coefficient rounding

  cplx d(int j) const {
    const int m = std::abs(nu);
    return d_coeffs.at(static_cast<std::size_t>(j + m - 1));
  }
};

struct AsymptoticOptions {
  std::optional<double> rho;  // overrides the decay-rate default
};

/// Default rho for error models and condition checks: fitted decay rate of
/// log a plus 0.02, kept inside (0, 1).
inline double default_rho(const WienerHopfData& wh) {
  const auto r = decay_rate(wh.log_a);
  return std::clamp(std::max(r.minus, r.plus) + 0.02, 0.02, 0.99);
}

inline double resolve_rho(const WienerHopfData& wh, const AsymptoticOptions& opts) {
  const double rho = opts.rho ? *opts.rho : default_rho(wh);
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
  return rho;
}

/// Strong Szego approximation exp[n (log a)_0 + sum_k k (log a)_k (log a)_{-k}].
inline AsymptoticResult szego(const WienerHopfData& wh, int n, const AsymptoticOptions& opts = {}) {
  cplx log_value = static_cast<double>(n) * wh.log_a[0];
  for (int k = 1; k <= wh.log_a.K(); ++k)
    log_value += static_cast<double>(k) * wh.log_a[k] * wh.log_a[-k];
  AsymptoticResult r;
  r.set_log(log_value);
  const double rho = resolve_rho(wh, opts);
  r.error_order = rho * rho;
  r.diagnostics["rho"] = rho;
  r.diagnostics["log_a_tail_bound"] = wh.log_a.tail_bound();
  return r;
}

inline BandDeterminants band_determinants(const WienerHopfData& wh, int nu, int n, double theta0) {
  if (nu == 0) throw std::invalid_argument("band_determinants: nu must be non-zero");
  const int m = std::abs(nu);
  const LaurentSeries& src = nu < 0 ? wh.b : wh.c;
  if (n + m - 1 > src.K())
    throw CoefficientRangeExceeded("band determinant needs index " + std::to_string(n + m - 1) +
                                   ", have K = " + std::to_string(src.K()));
  BandDeterminants out;
  out.nu = nu;
  out.d_coeffs.resize(static_cast<std::size_t>(2 * m - 1));
  double dmax = 0.0;
  for (int j = -(m - 1); j <= m - 1; ++j) {
    const cplx v = nu < 0 ? src[n + j] : src[-n - j];
    out.d_coeffs[static_cast<std::size_t>(j + m - 1)] = v;
    dmax = std::max(dmax, std::abs(v));
  }
  Eigen::MatrixXcd D(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) D(j, k) = out.d(j - k);
  out.delta = m == 1 ? D(0, 0) : D.determinant();

  const double sign = nu < 0 ? -1.0 : 1.0;
  for (int l = 0; l < m; ++l) {
    Eigen::MatrixXcd Dl = D;
    for (int j = 0; j < m; ++j) Dl(j, l) = std::polar(1.0, sign * j * theta0);
    out.delta_tilde.push_back(m == 1 ? Dl(0, 0) : Dl.determinant());
  }
  out.underflow = dmax < 1e-300 || std::abs(out.delta) < 1e-300;
  out.below_resolution = dmax < 1e-14 * src.max_abs();
  // First-order perturbation of an m x m determinant by entry errors of size
  // eps * max|c|, with cofactors bounded by (m - 1)! dmax^{m-1}.
  double cofactor = 1.0;
  for (int k = 1; k < m; ++k) cofactor *= k * dmax;
  const double entry_noise = std::numeric_limits<double>::epsilon() * src.max_abs();
  out.noise_estimate = out.underflow ? std::numeric_limits<double>::infinity()
                                     : m * m * entry_noise * cofactor / std::abs(out.delta);
  return out;
}

/// D_n(f) ~ (-1)^{n nu} D_{n+|nu|}(a) Delta_{nu,n} for f = a z^nu.
///
/// For nu > 0 the c-based band determinant scales like exp(nu (log a)_0)
/// while D_n(f) does not, so the product carries exp(-2 nu (log a)_0).
/// This factor is 1 whenever (log a)_0 = 0.
inline AsymptoticResult fh_nonzero(const WienerHopfData& wh, int nu, int n,
                                   const AsymptoticOptions& opts = {}) {
  const int m = std::abs(nu);
  const auto band = band_determinants(wh, nu, n, 0.0);
  const auto sz = szego(wh, n + m, opts);
  AsymptoticResult r;
  const double rho = resolve_rho(wh, opts);
  r.error_order = std::pow(rho, m + 3);
  r.diagnostics["rho"] = rho;
  r.diagnostics["delta_abs"] = std::abs(band.delta);
  r.diagnostics["delta_noise"] = band.noise_estimate;
  if (band.underflow) r.warnings.push_back("band determinant underflow");
  if (!band.underflow && band.noise_estimate > 1e-2)
    r.warnings.push_back("band determinant dominated by coefficient rounding");
  if (band.below_resolution) r.warnings.push_back("band coefficients below quadrature resolution");
  if (band.delta == cplx{}) {
    r.value = {};
    return r;
  }
  cplx log_value{sz.log_modulus, sz.phase};
  log_value += std::log(band.delta);
  if ((static_cast<long long>(n) * nu) % 2 != 0) log_value += cplx{0.0, kPi};
  if (nu > 0) log_value -= 2.0 * nu * wh.log_a[0];
  r.set_log(log_value);
  return r;
}

/// Zero winding: D~_n = D_n(a) {1 + z_n [n + i d/dtheta log b(e^{i theta0})]}.
inline AsymptoticResult theorem1(const WienerHopfData& wh, double theta0, cplx z_n, int n,
                                 const AsymptoticOptions& opts = {}) {
  auto r = szego(wh, n, opts);
  const cplx dlogb = log_derivative_b(wh, theta0);
  const cplx factor = 1.0 + z_n * (static_cast<double>(n) + dlogb);
  r.diagnostics["log_derivative_b_re"] = dlogb.real();
  r.diagnostics["log_derivative_b_im"] = dlogb.imag();
  if (factor == cplx{}) {
    r.value = {};
    r.log_modulus = -std::numeric_limits<double>::infinity();
    r.phase = 0.0;
  } else {
    r.set_log(cplx{r.log_modulus, r.phase} + std::log(factor));
  }
  r.error_order = r.diagnostics["rho"];
  return r;
}

/// max_j |Delta~(j) / Delta| rho^{2n}; must tend to zero along an n-sweep.
inline double condition_ratio(const WienerHopfData& wh, int nu, int n, double theta0, double rho) {
  const auto band = band_determinants(wh, nu, n, theta0);
  if (band.delta == cplx{} || band.underflow)
    throw ZeroBandDeterminant("Delta_{nu,n} vanishes at n = " + std::to_string(n));
  double worst = 0.0;
  for (const auto& dt : band.delta_tilde) worst = std::max(worst, std::abs(dt / band.delta));
  return worst * std::pow(rho, 2.0 * n);
}

/// Non-zero winding:
/// D~_n = D_n(f) {1 + z_n [-c(e) e^{i theta0 (n+1)} sum_j Delta~(j)/Delta e^{-i theta0 j} + n]}
/// for nu > 0, and the b-based mirror with conjugated phases for nu < 0.
/// The unquantified O(1) term in the bracket is not modelled.
inline AsymptoticResult theorem2(const WienerHopfData& wh, int nu, double theta0, cplx z_n, int n,
                                 const AsymptoticOptions& opts = {}) {
  if (nu == 0) throw std::invalid_argument("theorem2: nu must be non-zero");
  const auto band = band_determinants(wh, nu, n, theta0);
  if (band.delta == cplx{} || band.underflow)
    throw ZeroBandDeterminant("Delta_{nu,n} vanishes at n = " + std::to_string(n));
  auto r = fh_nonzero(wh, nu, n, opts);
  const double rho = resolve_rho(wh, opts);
  const cplx e = std::polar(1.0, theta0);
  const int m = std::abs(nu);
  const double s = nu > 0 ? 1.0 : -1.0;
  cplx sum{};
  for (int j = 1; j <= m; ++j)
    sum += band.delta_tilde[static_cast<std::size_t>(j - 1)] / band.delta *
           std::polar(1.0, -s * j * theta0);
  const cplx edge = nu > 0 ? wh.c(e) : wh.b(e);
  const cplx bracket = -edge * std::polar(1.0, s * (n + 1) * theta0) * sum + static_cast<double>(n);
  const cplx factor = 1.0 + z_n * bracket;
  if (factor == cplx{}) {
    r.value = {};
    r.log_modulus = -std::numeric_limits<double>::infinity();
  } else {
    r.set_log(cplx{r.log_modulus, r.phase} + std::log(factor));
  }
  const double ratio = condition_ratio(wh, nu, n, theta0, rho);
  r.error_order = rho;
  r.diagnostics["condition_ratio"] = ratio;
  r.diagnostics["rho"] = rho;
  const double rate = std::max(0.0, rho - 0.01);
  r.diagnostics["sigma"] = std::max(std::pow(rate / rho, 2.0), rho);
  if (ratio >= 1.0) r.warnings.push_back("condition ratio >= 1");
  return r;
}

/// [c z^p]_+ evaluated at z: sum_{j>=0} c_{j-p} z^j.
inline cplx shifted_plus_component(const LaurentSeries& c, int p, cplx z) {
  cplx acc{};
  for (int j = c.K() + p; j >= 0; --j) acc = acc * z + c[j - p];
  return acc;
}

/// Closed-form asymptotic Wiener-Hopf solution X_1^{(n)}(z), nu >= 0, |z| = 1.
///
/// Within 1e-6 of e^{i theta0} the continuity (derivative) value is returned.
inline cplx wh_solution_X1(const WienerHopfData& wh, int nu, double theta0, int n, cplx z) {
  if (nu < 0) throw std::invalid_argument("wh_solution_X1: nu must be >= 0");
  const cplx e = std::polar(1.0, theta0);
  const int m = n + nu;
  const cplx ap_inv_e = wh.a_plus_inv(e);
  const cplx am_inv_e = wh.a_minus_inv(e);
  const cplx c_e = wh.c(e);

  std::vector<cplx> u;
  if (nu > 0) {
    const auto band = band_determinants(wh, nu, n, theta0);
    if (band.delta == cplx{} || band.underflow)
      throw ZeroBandDeterminant("Delta_{nu,n} vanishes at n = " + std::to_string(n));
    for (int k = 1; k <= nu; ++k)
      u.push_back(-am_inv_e * std::polar(1.0, -(nu - 1) * theta0) *
                  band.delta_tilde[static_cast<std::size_t>(k - 1)] / band.delta);
  }

  const bool at_delta = std::abs(z - e) < 1e-6;
  const cplx w = at_delta ? e : z;
  cplx t3{};
  for (int k = 1; k <= nu; ++k)
    t3 += u[static_cast<std::size_t>(k - 1)] * shifted_plus_component(wh.c, m - k, w);
  t3 *= wh.a_plus_inv(w);

  cplx t1{}, t2{};
  if (at_delta) {
    const cplx dcz = wh.c.derivative(e) * std::pow(e, m) + static_cast<double>(m) * c_e * std::pow(e, m - 1);
    t1 = std::polar(1.0, -(m - 1) * theta0) * ap_inv_e * ap_inv_e * dcz;
    cplx s{};
    for (int k = 0; k < nu; ++k)
      s += wh.a_plus_inv[k] * static_cast<double>(k - nu) * std::polar(1.0, (k - nu - 1) * theta0);
    t2 = std::polar(1.0, (nu + 1) * theta0) * am_inv_e * s;
  } else {
    const cplx dz = z - e;
    t1 = std::polar(1.0, -(m - 1) * theta0) * wh.a_plus_inv(z) * ap_inv_e *
         (wh.c(z) * std::pow(z, m) - c_e * std::pow(e, m)) / dz;
    cplx s{};
    for (int k = 0; k < nu; ++k)
      s += wh.a_plus_inv[k] * (std::pow(z, k - nu) - std::polar(1.0, (k - nu) * theta0)) / dz;
    t2 = std::polar(1.0, -(n - 1) * theta0) * wh.a_minus_inv(z) * std::pow(z, m) * s;
  }
  return (t1 + t2 + t3) * std::pow(w, -nu);
}

}  // namespace tdelta

#endif  // TDELTA_ASYMPTOTICS_HPP
