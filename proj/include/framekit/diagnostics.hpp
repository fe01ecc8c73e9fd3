#pragma once

// Identity audit for Parseval/tight frames: cosine/sine/double-angle sums,
// the planar tightness test, minor determinants, the orthonormality
// characterization at N = n, and an aggregating report with skip semantics.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "framekit/angle_table.hpp"
#include "framekit/errors.hpp"
#include "framekit/frame_matrix.hpp"
#include "framekit/tightness.hpp"

namespace framekit {

struct IdentityResiduals {
  double cos_residual = 0.0;   // max_i |sum_j l_j^2 cos^2(t_ij) - 1|
  double sin_residual = 0.0;   // max_i |sum_j l_j^2 sin^2(t_ij) - (n-1)|
  double cos2_residual = 0.0;  // max_i |sum_j l_j^2 cos(2 t_ij) - (2-n)|
};

namespace detail {

// Full sums over j = 1..N including j = i (cos t_ii = 1 contributes l_i^2).
inline IdentityResiduals identity_residuals(const FrameMatrix& frame,
                                            const AngleTable& angles) {
  const int n = frame.dim();
  const int N = frame.count();
  const Eigen::VectorXd norms = frame.column_norms();
  IdentityResiduals out;
  for (int i = 0; i < N; ++i) {
    double cos_sum = 0.0;
    double sin_sum = 0.0;
    double cos2_sum = 0.0;
    for (int j = 0; j < N; ++j) {
      const double l2 = norms[j] * norms[j];
      const double c2 = angles.cosines(i, j) * angles.cosines(i, j);
      cos_sum += l2 * c2;
      sin_sum += l2 * (1.0 - c2);
      cos2_sum += l2 * (2.0 * c2 - 1.0);
    }
    out.cos_residual = std::max(out.cos_residual, std::abs(cos_sum - 1.0));
    out.sin_residual = std::max(out.sin_residual, std::abs(sin_sum - (n - 1.0)));
    out.cos2_residual = std::max(out.cos2_residual, std::abs(cos2_sum - (2.0 - n)));
  }
  return out;
}

}  // namespace detail

/// Necessary identities of a Parseval frame (verified at 1e-8 first).
inline IdentityResiduals necessary_identities(const FrameMatrix& frame) {
  if (!verify(frame, 1e-8).is_parseval) {
    throw NotParseval("necessary_identities requires a Parseval frame");
  }
  return detail::identity_residuals(frame, gram_and_angles(frame));
}

/// |sum_j l_j^2 e^{2 i theta_j}| with theta_j the signed planar angle from
/// the reference vector; zero iff the frame is tight. Uses the algebraic
/// double angle (cos 2t, sin 2t) = ((d^2 - x^2), 2dx) / (|u||v|)^2 built from
/// the dot and cross products, so sign flips of any vector cancel.
inline double planar_tightness(const FrameMatrix& frame, int ref_index = 0) {
  if (frame.dim() != 2) throw WrongDimension("planar_tightness requires n = 2");
  const int N = frame.count();
  if (ref_index < 0 || ref_index >= N) throw InvalidShape("reference index out of range");
  const Eigen::VectorXd norms = frame.column_norms();
  for (int j = 0; j < N; ++j) {
    if (norms[j] <= kZeroColumnTol) throw ZeroColumn(j);
  }
  const Eigen::Vector2d ref = frame.columns().col(ref_index);
  const double ref_sq = ref.squaredNorm();
  double real = 0.0;
  double imag = 0.0;
  for (int j = 0; j < N; ++j) {
    const Eigen::Vector2d v = frame.columns().col(j);
    const double d = ref.dot(v);
    const double x = ref[0] * v[1] - ref[1] * v[0];
    real += (d * d - x * x) / ref_sq;
    imag += 2.0 * d * x / ref_sq;
  }
  return std::hypot(real, imag);
}

/// max_j | |det(frame with column j removed)| - sqrt(1 - l_j^2) | for a
/// Parseval frame with N = n+1.
inline double minor_determinants(const FrameMatrix& frame) {
  const int n = frame.dim();
  const int N = frame.count();
  if (N != n + 1) throw WrongCount("minor_determinants requires N = n + 1");
  if (!verify(frame, 1e-8).is_parseval) {
    throw NotParseval("minor_determinants requires a Parseval frame");
  }
  const Eigen::VectorXd norms = frame.column_norms();
  double worst = 0.0;
  Eigen::MatrixXd sub(n, n);
  for (int j = 0; j < N; ++j) {
    if (j > 0) sub.leftCols(j) = frame.columns().leftCols(j);
    if (j < N - 1) sub.rightCols(n - j) = frame.columns().rightCols(N - 1 - j);
    const double abs_det = Eigen::HouseholderQR<Eigen::MatrixXd>(sub).absDeterminant();
    const double expected = std::sqrt(std::max(1.0 - norms[j] * norms[j], 0.0));
    worst = std::max(worst, std::abs(abs_det - expected));
  }
  return worst;
}

struct OrthonormalityCheck {
  bool is_parseval = false;
  bool gram_is_identity = false;
  bool consistent() const { return is_parseval == gram_is_identity; }
};

/// At N = n, Parseval and orthonormal are the same thing; the agreement of
/// the two predicates is the tested content.
inline OrthonormalityCheck orthonormality_characterization(const FrameMatrix& frame,
                                                           double tol = kDefaultTol) {
  if (frame.count() != frame.dim()) {
    throw WrongCount("orthonormality characterization requires N = n");
  }
  OrthonormalityCheck check;
  check.is_parseval = verify(frame, tol).is_parseval;
  const int n = frame.dim();
  check.gram_is_identity =
      (frame.gram() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
  return check;
}

enum class CheckStatus { Passed, Failed, Skipped };

struct DiagnosticCheck {
  std::string name;
  double max_residual = 0.0;
  CheckStatus status = CheckStatus::Skipped;
  std::string note;
};

struct DiagnosticsReport {
  int n = 0;
  int N = 0;
  TightnessReport tightness;
  std::vector<DiagnosticCheck> checks;

  bool all_passed() const {
    for (const auto& check : checks) {
      if (check.status == CheckStatus::Failed) return false;
    }
    return true;
  }
};

/// Runs every check applicable to the frame's shape and Parseval status;
/// inapplicable checks are recorded as skipped, never as failed.
inline DiagnosticsReport audit(const FrameMatrix& frame, double tol = kDefaultTol) {
  const int n = frame.dim();
  const int N = frame.count();
  DiagnosticsReport report;
  report.n = n;
  report.N = N;
  report.tightness = verify(frame, tol);
  const bool parseval = report.tightness.is_parseval;

  const Eigen::VectorXd norms = frame.column_norms();
  bool has_zero_column = false;
  for (int j = 0; j < N; ++j) has_zero_column |= norms[j] <= kZeroColumnTol;

  const auto add = [&report](std::string name, double residual, bool pass) {
    report.checks.push_back({std::move(name), residual,
                             pass ? CheckStatus::Passed : CheckStatus::Failed, {}});
  };
  const auto skip = [&report](std::string name, std::string note) {
    report.checks.push_back({std::move(name), 0.0, CheckStatus::Skipped, std::move(note)});
  };

  if (parseval) {
    const double trace_dev = std::abs(norms.squaredNorm() - n);
    add("trace_sum", trace_dev, trace_dev <= N * tol);
  } else {
    skip("trace_sum", "frame is not Parseval");
  }

  if (parseval && !has_zero_column) {
    const IdentityResiduals ids = detail::identity_residuals(frame, gram_and_angles(frame));
    add("cos_sq_sum", ids.cos_residual, ids.cos_residual <= tol);
    add("sin_sq_sum", ids.sin_residual, ids.sin_residual <= tol);
    add("cos_double_sum", ids.cos2_residual, ids.cos2_residual <= tol);
  } else {
    const char* why = parseval ? "frame contains a zero vector" : "frame is not Parseval";
    skip("cos_sq_sum", why);
    skip("sin_sq_sum", why);
    skip("cos_double_sum", why);
  }

  if (n == 2 && !has_zero_column) {
    const double residual = planar_tightness(frame);
    add("planar_tightness", residual, residual <= tol);
  } else {
    skip("planar_tightness", n == 2 ? "frame contains a zero vector" : "n is not 2");
  }

  if (parseval && N == n + 1) {
    const double residual = minor_determinants(frame);
    add("minor_determinants", residual, residual <= tol);
  } else {
    skip("minor_determinants", parseval ? "N is not n+1" : "frame is not Parseval");
  }

  if (N == n) {
    const OrthonormalityCheck check = orthonormality_characterization(frame, tol);
    add("orthonormal_iff_parseval", check.consistent() ? 0.0 : 1.0, check.consistent());
  } else {
    skip("orthonormal_iff_parseval", "N is not n");
  }

  // Only the provable range facts: every length squared at most 1, and at
  // most one at or below 1/2. (A strict positive lower bound on the lengths
  // does not hold in general.)
  if (parseval && N == n + 1 && !has_zero_column && frame.nontrivial()) {
    const Eigen::VectorXd sq = norms.cwiseProduct(norms);
    int exceptions = 0;
    for (int j = 0; j < N; ++j) {
      if (sq[j] <= 0.5 + tol) ++exceptions;
    }
    const bool pass = sq.maxCoeff() <= 1.0 + tol && exceptions <= 1;
    add("length_exception_bound", pass ? 0.0 : 1.0, pass);
  } else {
    skip("length_exception_bound",
         parseval ? "requires a nontrivial (n+1)-frame" : "frame is not Parseval");
  }

  return report;
}

}  // namespace framekit
