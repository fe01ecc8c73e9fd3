#pragma once

// Core value types: a frame as the n x N matrix of its column vectors, and
// the seed vector completed to a triangular Parseval frame.

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

#include "framekit/errors.hpp"

namespace framekit {

/// Default tolerance for boolean verdicts.
inline constexpr double kDefaultTol = 1e-9;
/// A column with norm at or below this is treated as zero.
inline constexpr double kZeroColumnTol = 1e-14;
/// Two unit directions with 1 - |cos| at or below this are treated as parallel.
inline constexpr double kParallelTol = 1e-12;
/// Strictness margin on ||w|| < 1 for the triangular construction.
inline constexpr double kSeedMargin = 1e-12;

/// N vectors in R^n, stored as the columns of an n x N matrix.
///
/// Immutable after construction; all entries must be finite. Frame-ness
/// (N >= n, spanning) is not required here -- operations that need it check.
class FrameMatrix {
 public:
  explicit FrameMatrix(Eigen::MatrixXd columns) : columns_(std::move(columns)) {
    if (columns_.rows() < 1 || columns_.cols() < 1) {
      throw InvalidShape("frame must have at least one row and one column");
    }
    if (!columns_.allFinite()) {
      throw InvalidShape("frame entries must be finite");
    }
  }

  static FrameMatrix from_columns(const std::vector<std::vector<double>>& cols) {
    if (cols.empty() || cols.front().empty()) {
      throw InvalidShape("frame must have at least one row and one column");
    }
    const int n = static_cast<int>(cols.front().size());
    const int N = static_cast<int>(cols.size());
    Eigen::MatrixXd m(n, N);
    for (int j = 0; j < N; ++j) {
      if (static_cast<int>(cols[j].size()) != n) {
        throw InvalidShape("all columns must have the same length");
      }
      for (int i = 0; i < n; ++i) m(i, j) = cols[j][i];
    }
    return FrameMatrix(std::move(m));
  }

  int dim() const { return static_cast<int>(columns_.rows()); }    // n
  int count() const { return static_cast<int>(columns_.cols()); }  // N

  const Eigen::MatrixXd& columns() const { return columns_; }
  Eigen::VectorXd column(int j) const { return columns_.col(j); }
  double column_norm(int j) const { return columns_.col(j).norm(); }

  Eigen::VectorXd column_norms() const {
    Eigen::VectorXd norms(count());
    for (int j = 0; j < count(); ++j) norms[j] = columns_.col(j).norm();
    return norms;
  }

  /// Gram matrix F^T F (N x N).
  Eigen::MatrixXd gram() const { return columns_.transpose() * columns_; }

  /// True when no column is zero and no two columns are parallel.
  bool nontrivial(double parallel_tol = kParallelTol) const {
    const int N = count();
    const Eigen::VectorXd norms = column_norms();
    for (int j = 0; j < N; ++j) {
      if (norms[j] <= kZeroColumnTol) return false;
    }
    for (int i = 0; i < N; ++i) {
      for (int j = i + 1; j < N; ++j) {
        const double c = std::abs(columns_.col(i).dot(columns_.col(j))) / (norms[i] * norms[j]);
        if (1.0 - c <= parallel_tol) return false;
      }
    }
    return true;
  }

 private:
  Eigen::MatrixXd columns_;
};

/// The vector w = (alpha_1, ..., alpha_n) to be completed to a Parseval frame.
/// The norm is cached at construction. Any finite vector is representable;
/// the construction itself requires ||w|| < 1 and rejects longer seeds.
class SeedVector {
 public:
  explicit SeedVector(Eigen::VectorXd entries)
      : entries_(std::move(entries)), norm_(entries_.norm()) {
    if (entries_.size() < 1) throw InvalidShape("seed must have at least one entry");
    if (!entries_.allFinite()) throw InvalidShape("seed entries must be finite");
  }

  explicit SeedVector(const std::vector<double>& entries)
      : SeedVector(Eigen::Map<const Eigen::VectorXd>(entries.data(),
                                                     static_cast<Eigen::Index>(entries.size()))) {}

  int dim() const { return static_cast<int>(entries_.size()); }
  const Eigen::VectorXd& entries() const { return entries_; }
  double operator[](int i) const { return entries_[i]; }
  double norm() const { return norm_; }

 private:
  Eigen::VectorXd entries_;
  double norm_;
};

/// Columns scaled by per-column factors: v_j -> weights[j] * v_j.
inline FrameMatrix scale_columns(const FrameMatrix& frame, const Eigen::VectorXd& weights) {
  if (weights.size() != frame.count()) {
    throw ShapeMismatch("one scale factor per column required");
  }
  return FrameMatrix(frame.columns() * weights.asDiagonal());
}

/// Frame with unit columns plus the original column norms.
inline std::pair<FrameMatrix, Eigen::VectorXd> normalize_columns(const FrameMatrix& frame) {
  const Eigen::VectorXd norms = frame.column_norms();
  for (int j = 0; j < frame.count(); ++j) {
    if (norms[j] <= kZeroColumnTol) throw ZeroColumn(j);
  }
  return {FrameMatrix(frame.columns() * norms.cwiseInverse().asDiagonal()), norms};
}

}  // namespace framekit
