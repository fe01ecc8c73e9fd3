#pragma once

// Deterministic generators shared by the property tests.

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <random>

#include "framekit/framekit.hpp"

namespace testutil {

inline Eigen::VectorXd random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(n);
  do {
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

/// Seed with uniform random direction and norm uniform in (0, max_norm).
inline framekit::SeedVector random_seed(int n, double max_norm, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double norm = max_norm * std::max(unif(rng), 1e-9);
  return framekit::SeedVector(Eigen::VectorXd(random_unit_vector(n, rng) * norm));
}

/// Haar-ish orthogonal matrix: QR of a Gaussian matrix with the diagonal of R
/// made positive.
inline Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = gauss(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

inline Eigen::VectorXd random_signs(int count, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  Eigen::VectorXd s(count);
  for (int j = 0; j < count; ++j) s[j] = coin(rng) == 0 ? 1.0 : -1.0;
  return s;
}

/// Gaussian directions normalized to unit columns.
inline framekit::FrameMatrix random_unit_frame(int n, int N, std::mt19937_64& rng) {
  Eigen::MatrixXd cols(n, N);
  for (int j = 0; j < N; ++j) cols.col(j) = random_unit_vector(n, rng);
  return framekit::FrameMatrix(std::move(cols));
}

/// Random Parseval frame without any nearly-degenerate column, so that
/// column normalization is well posed.
inline framekit::FrameMatrix random_parseval_no_tiny_columns(int n, int N,
                                                             std::uint64_t& seed_state,
                                                             double min_norm = 1e-3) {
  for (;;) {
    framekit::FrameMatrix frame = framekit::random_parseval(n, N, seed_state++);
    if (frame.column_norms().minCoeff() >= min_norm && frame.nontrivial()) return frame;
  }
}

// Golden planar frames: the classic equal-norm tight 3-frame and the
// representative whose angles to v_1 are pi/3 and 2*pi/3.
inline framekit::FrameMatrix mercedes_benz() {
  const double s = std::sqrt(3.0) / 2.0;
  return framekit::FrameMatrix::from_columns({{1.0, 0.0}, {-0.5, s}, {-0.5, -s}});
}

inline framekit::FrameMatrix mercedes_benz_pi3() {
  const double s = std::sqrt(3.0) / 2.0;
  return framekit::FrameMatrix::from_columns({{1.0, 0.0}, {0.5, s}, {-0.5, s}});
}

inline framekit::FrameMatrix scaled_mercedes_benz() {
  return framekit::scale_columns(mercedes_benz(),
                                 Eigen::VectorXd::Constant(3, std::sqrt(2.0 / 3.0)));
}

inline framekit::FrameMatrix basis_plus_diagonal() {
  const double r = 1.0 / std::sqrt(2.0);
  return framekit::FrameMatrix::from_columns({{1.0, 0.0}, {0.0, 1.0}, {r, r}});
}

}  // namespace testutil
