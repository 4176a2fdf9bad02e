#ifndef TDELTA_LAURENT_HPP
#define TDELTA_LAURENT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tdelta {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Finite window g_j, j in [-K, K], of a Laurent series sum_j g_j z^j.
///
/// Indices outside the window read as zero, so component filters and
/// products of shifted series can index freely.
class LaurentSeries {
 public:
  LaurentSeries() : LaurentSeries(0) {}

  explicit LaurentSeries(int K) : K_(checked(K)), c_(static_cast<std::size_t>(2 * K + 1)) {}

  LaurentSeries(int K, std::vector<cplx> coeffs) : K_(K), c_(std::move(coeffs)) {
    if (K < 0 || c_.size() != static_cast<std::size_t>(2 * K + 1))
      throw std::invalid_argument("LaurentSeries: expected 2K+1 coefficients");
  }

  static LaurentSeries constant(cplx v) {
    LaurentSeries s(0);
    s.c_[0] = v;
    return s;
  }

  int K() const noexcept { return K_; }

  cplx operator[](int j) const noexcept {
    return (j < -K_ || j > K_) ? cplx{} : c_[static_cast<std::size_t>(j + K_)];
  }

  void set(int j, cplx v) {
    if (j < -K_ || j > K_)
      throw std::out_of_range("LaurentSeries::set index " + std::to_string(j));
    c_[static_cast<std::size_t>(j + K_)] = v;
  }

  /// Coefficients ordered from index -K to K.
  std::span<const cplx> coefficients() const noexcept { return c_; }

  cplx operator()(cplx z) const {
    if (z == cplx{}) {
      for (int j = 1; j <= K_; ++j)
        if ((*this)[-j] != cplx{}) return {std::numeric_limits<double>::infinity(), 0.0};
      return (*this)[0];
    }
    cplx pos{};
    for (int j = K_; j >= 0; --j) pos = pos * z + (*this)[j];
    if (K_ == 0) return pos;
    const cplx w = 1.0 / z;
    cplx neg{};
    for (int j = K_; j >= 1; --j) neg = neg * w + (*this)[-j];
    return pos + neg * w;
  }

  /// d/dz of the series at z.
  cplx derivative(cplx z) const {
    cplx acc{};
    for (int j = -K_; j <= K_; ++j) {
      if (j == 0) continue;
      acc += static_cast<double>(j) * (*this)[j] * std::pow(z, j - 1);
    }
    return acc;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  /// max |g_j| over the outermost 10% of indices on each side.
  double tail_bound() const noexcept {
    if (K_ == 0) return 0.0;
    const int width = std::max(1, (K_ + 9) / 10);
    double m = 0.0;
    for (int j = K_ - width + 1; j <= K_; ++j)
      m = std::max({m, std::abs((*this)[j]), std::abs((*this)[-j])});
    return m;
  }

  /// Same coefficients in a window of half-width K (zero padded or cut).
  LaurentSeries resized(int K) const {
    LaurentSeries out(K);
    for (int j = -std::min(K, K_); j <= std::min(K, K_); ++j) out.set(j, (*this)[j]);
    return out;
  }

  /// Series of z^nu g(z); the window grows by |nu| so nothing is lost.
  LaurentSeries shifted(int nu) const {
    LaurentSeries out(K_ + std::abs(nu));
    for (int j = -K_; j <= K_; ++j) out.set(j + nu, (*this)[j]);
    return out;
  }

  /// Series of g(1/z).
  LaurentSeries reversed() const {
    LaurentSeries out(K_);
    for (int j = -K_; j <= K_; ++j) out.set(-j, (*this)[j]);
    return out;
  }

  LaurentSeries& operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend LaurentSeries operator*(cplx s, LaurentSeries g) { return g *= s; }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    const int K = std::max(a.K_, b.K_);
    LaurentSeries out(K);
    for (int j = -K; j <= K; ++j) out.set(j, a[j] + b[j]);
    return out;
  }

  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    return a + cplx{-1.0} * b;
  }

 private:
  static int checked(int K) {
    if (K < 0) throw std::invalid_argument("LaurentSeries: negative truncation index");
    return K;
  }

  int K_;
  std::vector<cplx> c_;
};

}  // namespace tdelta

#endif  // TDELTA_LAURENT_HPP
