#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "tdelta/tdelta.hpp"

namespace support {

using tdelta::cplx;

inline double rel_err(cplx a, cplx b) {
  const double s = std::abs(b);
  return s == 0.0 ? std::abs(a) : std::abs(a - b) / s;
}

inline std::vector<cplx> random_unit_points(int count, unsigned seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * tdelta::kPi);
  std::vector<cplx> out;
  for (int i = 0; i < count; ++i) out.push_back(std::polar(1.0, u(rng)));
  return out;
}

inline tdelta::LaurentSeries magnetization_series(double lambda, int nu = 0, int K = 96) {
  return tdelta::coefficients_of(tdelta::magnetization_family(lambda, nu), K);
}

inline tdelta::LaurentSeries correlation_series(double lambda, int nu = 0, int K = 96) {
  return tdelta::coefficients_of(tdelta::correlation_family(lambda, nu), K);
}

inline tdelta::WienerHopfData magnetization_wh(double lambda, int K = 96) {
  return tdelta::factorize(magnetization_series(lambda, 0, K), K);
}

inline tdelta::WienerHopfData correlation_wh(double lambda, int K = 96) {
  return tdelta::factorize(correlation_series(lambda, 0, K), K);
}

// Least-squares slope of log(y) against x.
inline double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ly = std::log(y[i]);
    sx += x[i];
    sy += ly;
    sxx += x[i] * x[i];
    sxy += x[i] * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline tdelta::DetValue delta_det(const tdelta::LaurentSeries& f, int n, double theta0, cplx zn,
                                  cplx fe) {
  return tdelta::det_exact(tdelta::build_matrix({n, f, tdelta::DeltaTerm{theta0, zn, fe}}));
}

}  // namespace support
