#ifndef TDELTA_DETAIL_GRID_HPP
#define TDELTA_DETAIL_GRID_HPP

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "tdelta/laurent.hpp"

// Equispaced unit-circle sampling. Samples are taken at z_m = exp(2 pi i m / M)
// and the trapezoid rule for g_j is the scaled forward DFT.
namespace tdelta::detail {

inline int grid_size_for(int K) {
  int M = 256;
  while (M < 8 * K) M *= 2;
  return M;
}

inline std::vector<cplx> unit_circle_grid(int M) {
  std::vector<cplx> z(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) z[static_cast<std::size_t>(m)] = std::polar(1.0, 2.0 * kPi * m / M);
  return z;
}

inline double grid_angle(int m, int M) { return 2.0 * kPi * m / M; }

/// Trapezoid-rule coefficients g_j, |j| <= K, of the sampled function.
inline LaurentSeries series_from_samples(const std::vector<cplx>& samples, int K) {
  const int M = static_cast<int>(samples.size());
  Eigen::FFT<double> fft;
  std::vector<cplx> spec;
  fft.fwd(spec, samples);
  LaurentSeries out(K);
  for (int j = -K; j <= K; ++j) {
    const int idx = ((j % M) + M) % M;
    out.set(j, spec[static_cast<std::size_t>(idx)] / static_cast<double>(M));
  }
  return out;
}

/// Values of the series on the M-point grid.
inline std::vector<cplx> samples_from_series(const LaurentSeries& g, int M) {
  std::vector<cplx> spec(static_cast<std::size_t>(M));
  for (int j = -g.K(); j <= g.K(); ++j) spec[static_cast<std::size_t>(((j % M) + M) % M)] += g[j];
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<cplx> vals;
  fft.inv(vals, spec);
  return vals;
}

}  // namespace tdelta::detail

#endif  // TDELTA_DETAIL_GRID_HPP
