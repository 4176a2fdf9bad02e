#ifndef TDELTA_FAMILIES_HPP
#define TDELTA_FAMILIES_HPP

#include <cmath>
#include <algorithm>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "tdelta/laurent.hpp"
#include "tdelta/symbol.hpp"

namespace tdelta {

inline AnnularSymbol constant_symbol(cplx value) {
  if (value == cplx{}) throw std::invalid_argument("constant symbol must be non-zero");
  return AnnularSymbol{[value](cplx) { return value; }, 0, 0.0,
                       std::numeric_limits<double>::infinity()};
}

inline void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("lambda must lie in (0, 1), got " + std::to_string(lambda));
}

/// sqrt((1 - lambda/z) / (1 - lambda z)) z^nu.
inline AnnularSymbol magnetization_family(double lambda, int nu) {
  check_lambda(lambda);
  auto f = [lambda, nu](cplx z) {
    return std::sqrt(1.0 - lambda / z) / std::sqrt(1.0 - lambda * z) * std::pow(z, nu);
  };
  return AnnularSymbol{f, nu, lambda, 1.0 / lambda};
}

/// sqrt((1 - lambda z^-2) / (1 - lambda z^2)) z^nu.
inline AnnularSymbol correlation_family(double lambda, int nu) {
  check_lambda(lambda);
  auto f = [lambda, nu](cplx z) {
    const cplx z2 = z * z;
    return std::sqrt(1.0 - lambda / z2) / std::sqrt(1.0 - lambda * z2) * std::pow(z, nu);
  };
  const double r = std::sqrt(lambda);
  return AnnularSymbol{f, nu, r, 1.0 / r};
}

/// Laurent coefficients of a symbol on a window of at least K_min.
inline LaurentSeries coefficients_of(const AnnularSymbol& s, int K_min,
                                     const SamplingOptions& opts = {}) {
  return sample_coefficients(s.eval, std::max(K_min, 8), opts);
}

}  // namespace tdelta

#endif  // TDELTA_FAMILIES_HPP
