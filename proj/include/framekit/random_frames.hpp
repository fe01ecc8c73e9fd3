#pragma once

// Deterministic random Parseval frames: any n orthonormal rows of an
// N x N orthogonal matrix form one.

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "framekit/errors.hpp"
#include "framekit/frame_matrix.hpp"

namespace framekit {

/// Parseval frame of N vectors in R^n: orthonormalize the columns of an
/// N x N Gaussian matrix and keep the first n coordinates of each column
/// (the top n rows of the orthogonal factor). Deterministic per seed.
inline FrameMatrix random_parseval(int n, int N, std::uint64_t seed) {
  if (n < 1 || N < n) {
    throw InvalidShape("random_parseval requires N >= n >= 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(N, N);
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) g(i, j) = gauss(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::MatrixXd q = qr.householderQ();
  return FrameMatrix(q.topRows(n));
}

}  // namespace framekit
