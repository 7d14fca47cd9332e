#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "tetra/numkit.hpp"

namespace tetra::rng {

using Engine = std::mt19937_64;

// Distributions are hand-rolled on top of raw engine draws: std::*_distribution
// is implementation-defined, and generator outputs must be reproducible
// byte-for-byte for a fixed seed.

/// Uniform in [0, 1).
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform in [lo, hi).
inline double uniform(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

/// Standard real normal via Box-Muller.
inline double gaussian(Engine& eng) {
  double u = uniform01(eng);
  while (u == 0.0) u = uniform01(eng);
  const double v = uniform01(eng);
  return std::sqrt(-2.0 * std::log(u)) *
         std::cos(2.0 * std::numbers::pi * v);
}

/// Complex normal: independent N(0, 1/2) parts so E|z|^2 = 1.
inline Complex complex_gaussian(Engine& eng) {
  const double s = std::numbers::sqrt2;
  return {gaussian(eng) / s, gaussian(eng) / s};
}

/// Uniform on the unit circle.
inline Complex unimodular(Engine& eng) {
  const double t = 2.0 * std::numbers::pi * uniform01(eng);
  return {std::cos(t), std::sin(t)};
}

/// Uniform on the closed unit disc (area measure).
inline Complex unit_disc(Engine& eng) {
  const double r = std::sqrt(uniform01(eng));
  return r * unimodular(eng);
}

inline CMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Engine& eng) {
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = complex_gaussian(eng);
  return m;
}

/// Haar-distributed unitary: QR of a Gaussian matrix with the phase of the
/// R diagonal absorbed into Q.
inline CMatrix haar_unitary(Eigen::Index d, Engine& eng) {
  if (d == 0) return CMatrix(0, 0);
  const CMatrix g = gaussian_matrix(d, d, eng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double a = std::abs(rjj);
    q.col(j) *= (a > 0) ? rjj / a : Complex(1, 0);
  }
  return q;
}

}  // namespace tetra::rng
