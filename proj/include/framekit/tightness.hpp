#pragma once

// Frame operator, frame bounds, and the tight/Parseval verdicts.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "framekit/frame_matrix.hpp"

namespace framekit {

/// Frame bounds A <= B (the extreme eigenvalues of the frame operator)
/// and the derived verdicts at a given tolerance.
struct TightnessReport {
  double lower_bound = 0.0;  // A
  double upper_bound = 0.0;  // B
  bool is_tight = false;     // |A - B| <= tol
  bool is_parseval = false;  // tight and |A - 1| <= tol
  double residual = 0.0;     // ||S - A*I||_F
  double trace_residual = 0.0;  // |sum ||v_j||^2 - n*A|
};

/// S = sum_j v_j v_j^T. Equals the identity exactly when the rows of
/// (v_1 ... v_N) are orthonormal, i.e. when the frame is Parseval.
inline Eigen::MatrixXd frame_operator(const FrameMatrix& frame) {
  return frame.columns() * frame.columns().transpose();
}

inline TightnessReport verify(const FrameMatrix& frame, double tol = kDefaultTol) {
  if (!(tol > 0.0)) throw std::invalid_argument("verify: tol must be positive");
  const int n = frame.dim();
  const Eigen::MatrixXd s = frame_operator(frame);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s, Eigen::EigenvaluesOnly);
  TightnessReport report;
  report.lower_bound = eig.eigenvalues().minCoeff();
  report.upper_bound = eig.eigenvalues().maxCoeff();
  report.is_tight = std::abs(report.upper_bound - report.lower_bound) <= tol;
  report.is_parseval = report.is_tight && std::abs(report.lower_bound - 1.0) <= tol;
  report.residual =
      (s - report.lower_bound * Eigen::MatrixXd::Identity(n, n)).norm();
  report.trace_residual = std::abs(s.trace() - n * report.lower_bound);
  return report;
}

}  // namespace framekit
