#pragma once

// Canonical triangular form under the frame equivalence (orthogonal change
// of coordinates plus per-vector sign flips), and the equivalence test.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "framekit/errors.hpp"
#include "framekit/frame_matrix.hpp"

namespace framekit {

/// Frame whose first n columns are right triangular with nonnegative
/// diagonal, together with the orthogonal map that produced it:
/// rotation * original * diag(signs) == frame.
struct CanonicalForm {
  FrameMatrix frame;
  Eigen::MatrixXd rotation;
  Eigen::VectorXd signs;
};

/// Orthogonal reduction of the first n columns to triangular form.
/// Sign convention: diagonal entries made nonnegative by row flips absorbed
/// into the rotation (zero diagonal keeps +1), so `signs` is always all +1.
/// A canonical input reproduces itself with the identity rotation.
inline CanonicalForm canonicalize(const FrameMatrix& frame) {
  const int n = frame.dim();
  const int N = frame.count();
  if (N < n) throw InvalidShape("canonicalize requires at least n columns");

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame.columns().leftCols(n));
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd t = q.transpose() * frame.columns();

  double abs_det = 1.0;
  for (int j = 0; j < n; ++j) abs_det *= std::abs(t(j, j));
  if (abs_det <= 1e-12) {
    throw SingularBasis("first n columns are (numerically) dependent");
  }

  Eigen::VectorXd flips(n);
  for (int i = 0; i < n; ++i) flips[i] = t(i, i) < 0.0 ? -1.0 : 1.0;
  t = flips.asDiagonal() * t;
  // The sub-diagonal of the triangular block is exact zero by definition;
  // drop the O(eps) QR residue so canonicalization is exactly idempotent.
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) t(i, j) = 0.0;
  }

  return CanonicalForm{FrameMatrix(std::move(t)),
                       Eigen::MatrixXd(flips.asDiagonal() * q.transpose()),
                       Eigen::VectorXd::Ones(N)};
}

/// Equivalence test: true iff some per-column sign pattern sigma makes the
/// Gram matrices agree, Gram(f2) = diag(sigma) Gram(f1) diag(sigma), which
/// for frames in the same dimension holds iff f2 = U f1 diag(sigma) with U
/// orthogonal. Entrywise |Gram| agreement is the fast necessary filter.
inline bool equivalent(const FrameMatrix& f1, const FrameMatrix& f2, double tol = kDefaultTol) {
  if (f1.dim() != f2.dim() || f1.count() != f2.count()) {
    throw ShapeMismatch("equivalent requires frames of identical shape");
  }
  const int N = f1.count();
  const Eigen::MatrixXd g1 = f1.gram();
  const Eigen::MatrixXd g2 = f2.gram();

  if ((g1.cwiseAbs() - g2.cwiseAbs()).cwiseAbs().maxCoeff() > tol) return false;

  // Propagate signs across entries that are decisively nonzero; entries at
  // or below tol are sign-free and already covered by the |Gram| filter.
  std::vector<double> sigma(N, 0.0);
  std::vector<int> queue;
  queue.reserve(N);
  for (int root = 0; root < N; ++root) {
    if (sigma[root] != 0.0) continue;
    sigma[root] = 1.0;
    queue.clear();
    queue.push_back(root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      for (int v = 0; v < N; ++v) {
        if (sigma[v] != 0.0 || std::abs(g1(u, v)) <= tol) continue;
        const double s1 = g1(u, v) < 0.0 ? -1.0 : 1.0;
        const double s2 = g2(u, v) < 0.0 ? -1.0 : 1.0;
        sigma[v] = sigma[u] * s1 * s2;
        queue.push_back(v);
      }
    }
  }

  double residual = 0.0;
  for (int i = 0; i < N; ++i) {
    for (int j = i; j < N; ++j) {
      if (std::abs(g1(i, j)) > tol) {
        residual = std::max(residual, std::abs(sigma[i] * sigma[j] * g1(i, j) - g2(i, j)));
      }
    }
  }
  return residual <= tol;
}

}  // namespace framekit
