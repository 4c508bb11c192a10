#pragma once

#include <cstdint>
#include <random>

#include "ipc/qmat.hpp"

namespace ipc {

/// Independent stream seed for the `index`-th task under `seed` (SplitMix64 finalizer).
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Matrix of i.i.d. standard complex normals (real and imaginary parts of variance ½).
inline Matrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = {re, im};
    }
  return g;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of diag(R) divided out.
inline Matrix haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  const Matrix g = complex_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const std::complex<double> rk = r(k, k);
    const double a = std::abs(rk);
    q.col(k) *= (a > 0.0) ? rk / a : std::complex<double>(1.0);
  }
  return q;
}

/// Dirichlet(1, ..., 1) weights.
inline std::vector<double> dirichlet_weights(std::size_t k, std::mt19937_64& rng) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& x : w) total += (x = ex(rng));
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace ipc
