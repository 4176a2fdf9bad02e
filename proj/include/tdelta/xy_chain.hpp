#ifndef TDELTA_XY_CHAIN_HPP
#define TDELTA_XY_CHAIN_HPP

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdelta/errors.hpp"
#include "tdelta/families.hpp"
#include "tdelta/laurent.hpp"
#include "tdelta/symbol.hpp"
#include "tdelta/toeplitz.hpp"

namespace tdelta::xy {

enum class Axis { x, y };

inline Axis parse_axis(const std::string& s) {
  if (s == "x") return Axis::x;
  if (s == "y") return Axis::y;
  throw std::invalid_argument("alpha must be x or y, got '" + s + "'");
}

inline const char* to_string(Axis a) { return a == Axis::x ? "x" : "y"; }

/// Frustrated chain: odd length N, anisotropy lambda, momentum q in {2 pi j / N}.
struct ChainParams {
  double lambda = 0.5;
  int N = 21;
  double q = 0.0;
  Axis alpha = Axis::x;

  void validate() const {
    check_lambda(lambda);
    if (N < 3 || N % 2 == 0) throw std::invalid_argument("N must be an odd integer >= 3");
    const double j = wrap_angle(q) * N / (2.0 * kPi);
    const double r = std::round(j);
    if (std::abs(j - r) > 1e-9 && std::abs(j - N) > 1e-9)
      throw std::invalid_argument("q must be a multiple of 2 pi / N");
  }

  int half() const { return (N - 1) / 2; }
};

enum class CoefficientMode { discrete, integral };

inline DeltaSymbol correlation_symbol(const ChainParams& p) {
  p.validate();
  const int nu = p.alpha == Axis::x ? 0 : 2;
  return make_delta_symbol(correlation_family(p.lambda, nu), wrap_angle(p.q),
                           constant_weight(-1.0 / p.N));
}

/// Weight z_n = -2/N, so that f~_j = f_j - 2/N given f(1) = 1.
inline DeltaSymbol magnetization_symbol(const ChainParams& p) {
  p.validate();
  const int nu = p.alpha == Axis::x ? 0 : 1;
  return make_delta_symbol(magnetization_family(p.lambda, nu), 0.0, constant_weight(-2.0 / p.N));
}

/// f_j = (1/N) sum_{theta in Gamma^-} f(e^{i theta}) e^{-i j theta}, |j| <= K.
inline LaurentSeries momentum_sum_coefficients(const SymbolFn& f, int N, int K) {
  std::vector<cplx> samples(static_cast<std::size_t>(N));
  for (int m = 0; m < N; ++m) samples[static_cast<std::size_t>(m)] = f(std::polar(1.0, 2.0 * kPi * m / N));
  LaurentSeries out(K);
  for (int j = -K; j <= K; ++j) {
    cplx acc{};
    for (int m = 0; m < N; ++m)
      acc += samples[static_cast<std::size_t>(m)] *
             std::polar(1.0, -2.0 * kPi * static_cast<double>((static_cast<long long>(j) * m) % N) / N);
    out.set(j, acc / static_cast<double>(N));
  }
  return out;
}

namespace detail {

inline double real_checked(cplx v, const char* what) {
  if (!(std::abs(v.imag()) < 1e-9))
    throw NumericError(std::string(what) + ": imaginary residue " + std::to_string(v.imag()));
  return v.real();
}

inline LaurentSeries chain_coefficients(const DeltaSymbol& s, int N, int K, CoefficientMode mode) {
  return mode == CoefficientMode::discrete ? momentum_sum_coefficients(s.base.eval, N, K)
                                           : coefficients_of(s.base, K);
}

inline DetValue delta_det(const DeltaSymbol& s, const LaurentSeries& f, int n) {
  return det_exact(build_matrix({n, f, DeltaTerm{s.theta0, s.weight_at(n), s.value_at_delta()}}));
}

}  // namespace detail

/// (-1)^n [(D~_n + conj D~_n) - D_n].
inline double correlation_exact(const ChainParams& p, int n,
                                CoefficientMode mode = CoefficientMode::discrete) {
  p.validate();
  if (n < 1 || 2 * n >= p.N)
    throw std::invalid_argument("n must satisfy 1 <= n < N/2");
  const auto s = correlation_symbol(p);
  const auto f = detail::chain_coefficients(s, p.N, n + 2, mode);
  const cplx Dt = detail::delta_det(s, f, n).value;
  const cplx D = toeplitz_det(f, n).value;
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return detail::real_checked(sign * ((Dt + std::conj(Dt)) - D), "correlation_exact");
}

/// Large-n closed forms, branching on the parity of n.
inline double correlation_asymptotic(const ChainParams& p, int n) {
  p.validate();
  if (n < 2) throw std::invalid_argument("correlation_asymptotic: n must be >= 2");
  const double l = p.lambda;
  const double N = p.N;
  const double nn = n;
  const bool even = n % 2 == 0;
  if (p.alpha == Axis::x) {
    const double g = l / (1.0 - l * l);
    const double tail = g * g * std::pow(l, nn) / (kPi * nn * nn);
    const double inner = even ? 1.0 + 4.0 * tail : 1.0 + 2.0 * (1.0 + l * l) / l * tail;
    const double value = std::sqrt(1.0 - l * l) * inner * (1.0 - 2.0 * nn / N);
    return even ? value : -value;
  }
  const double q = p.q;
  const double first = 2.0 / (1.0 - l) * std::pow(l, nn) / (kPi * nn);
  const double denom = std::sqrt(1.0 + l * l - 2.0 * l * std::cos(2.0 * q));
  const double scale = std::pow(l, nn / 2.0) / (N * std::sqrt(kPi * nn));
  const double osc = even ? std::pow(2.0, 2.5) * std::cos(nn * q)
                          : std::pow(2.0, 1.5) * (std::cos((nn + 1.0) * q) / std::sqrt(l) +
                                                  std::sqrt(l) * std::cos((nn - 1.0) * q));
  return first + osc / denom * scale;
}

/// (-1)^n D~_n at n = (N-1)/2.
inline double magnetization_exact(const ChainParams& p,
                                  CoefficientMode mode = CoefficientMode::integral) {
  p.validate();
  const int n = p.half();
  const auto s = magnetization_symbol(p);
  const auto f = detail::chain_coefficients(s, p.N, n + 1, mode);
  const cplx Dt = detail::delta_det(s, f, n).value;
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return detail::real_checked(sign * Dt, "magnetization_exact");
}

inline double magnetization_asymptotic(const ChainParams& p) {
  p.validate();
  const double l = p.lambda;
  const double N = p.N;
  if (p.alpha == Axis::x) {
    const double sign = p.half() % 2 == 0 ? 1.0 : -1.0;
    return sign / N * std::pow(1.0 - l * l, 0.25);
  }
  return 2.0 / N * std::pow(1.0 + l, 0.25) / std::pow(1.0 - l, 0.75);
}

enum class Family { correlation, magnetization };

inline Family parse_family(const std::string& s) {
  if (s == "correlation") return Family::correlation;
  if (s == "magnetization") return Family::magnetization;
  throw std::invalid_argument("family must be correlation or magnetization, got '" + s + "'");
}

struct CCoefficient {
  double quadrature = 0.0;
  double asymptotic = 0.0;
};

/// c_{-n} = (1/2 pi i) \oint c(w) w^{n-1} dw by the trapezoid rule, with the
/// large-n approximation alongside.
inline CCoefficient c_coefficient(double lambda, int n, Family family, int points = 4096) {
  check_lambda(lambda);
  if (n < 1) throw std::invalid_argument("c_coefficient: n must be >= 1");
  const int p = family == Family::correlation ? 2 : 1;
  cplx acc{};
  for (int m = 0; m < points; ++m) {
    const double t = 2.0 * kPi * m / points;
    const cplx w = std::polar(1.0, t);
    const cplx wp = std::pow(w, p);
    const cplx c = 1.0 / std::sqrt((1.0 - lambda * wp) * (1.0 - lambda / wp));
    acc += c * std::polar(1.0, static_cast<double>((static_cast<long long>(n) * m) % points) * 2.0 * kPi / points);
  }
  CCoefficient out;
  out.quadrature = acc.real() / points;
  const double nn = n;
  if (family == Family::correlation) {
    out.asymptotic = n % 2 == 0 ? std::sqrt(2.0) / std::sqrt(1.0 - lambda * lambda) *
                                      std::pow(lambda, nn / 2.0) / std::sqrt(kPi * nn)
                                : 0.0;
  } else {
    out.asymptotic = std::pow(lambda, nn) / std::sqrt(kPi * nn);
  }
  return out;
}

}  // namespace tdelta::xy

#endif  // TDELTA_XY_CHAIN_HPP
