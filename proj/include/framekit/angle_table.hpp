#pragma once

// Pairwise angles between frame vectors and their cached cosines.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "framekit/errors.hpp"
#include "framekit/frame_matrix.hpp"

namespace framekit {

/// Symmetric table of pairwise angles theta_ij in radians (zero diagonal)
/// with cached cosines (unit diagonal).
struct AngleTable {
  Eigen::MatrixXd theta;
  Eigen::MatrixXd cosines;

  int count() const { return static_cast<int>(theta.rows()); }
};

/// Angles via the clamped arccos of normalized inner products.
/// Roundoff can push |<u,v>|/(|u||v|) past 1 by ~1e-16, hence the clamp.
inline AngleTable gram_and_angles(const FrameMatrix& frame) {
  const int N = frame.count();
  const Eigen::VectorXd norms = frame.column_norms();
  for (int j = 0; j < N; ++j) {
    if (norms[j] <= kZeroColumnTol) throw ZeroColumn(j);
  }

  AngleTable table;
  table.theta = Eigen::MatrixXd::Zero(N, N);
  table.cosines = Eigen::MatrixXd::Identity(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      const double raw = frame.columns().col(i).dot(frame.columns().col(j)) / (norms[i] * norms[j]);
      const double c = std::clamp(raw, -1.0, 1.0);
      const double t = std::acos(c);
      table.cosines(i, j) = table.cosines(j, i) = c;
      table.theta(i, j) = table.theta(j, i) = t;
    }
  }
  return table;
}

}  // namespace framekit
