#pragma once

// The triangular construction: completing a seed vector w with ||w|| < 1 to
// the unique triangular Parseval (n+1)-frame {v_1, ..., v_n, w}, with the
// intermediate quantities of every lift recorded for auditing.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <utility>
#include <vector>

#include "framekit/errors.hpp"
#include "framekit/frame_matrix.hpp"

namespace framekit {

/// One lift of the induction, from dimension m-1 to m.
struct TraceLevel {
  int dim;            // m
  Eigen::VectorXd y;  // unit orthocomplement of the previous level's rows, in R^m
  double lambda;      // scalar with lambda * y_last = leading seed entry; |lambda| < 1
  double x1;          // new top-left entry sqrt(1 - lambda^2)
  double diag;        // the diagonal entry a_{j,j} this level produced
};

struct ConstructionTrace {
  std::vector<TraceLevel> levels;  // dimensions 2..n, in order
};

struct TriangularParsevalFrame {
  FrameMatrix frame;  // n x (n+1), columns (v_1 ... v_n w)
  SeedVector seed;
  ConstructionTrace trace;

  Eigen::VectorXd diagonal() const {
    const int n = frame.dim();
    Eigen::VectorXd d(n);
    for (int j = 0; j < n; ++j) d[j] = frame.columns()(j, j);
    return d;
  }
};

namespace detail {

inline void require_seed_strictly_short(const SeedVector& w) {
  if (w.norm() >= 1.0 - kSeedMargin) {
    throw SeedTooLong("construction requires ||w|| < 1 - 1e-12");
  }
}

// Closed forms of the planar base case for seed (a1, a2):
//   a22 = sqrt(1 - a2^2),  a12 = -a1*a2 / a22,  a11 = sqrt(1 - a1^2 - a2^2) / a22.
struct Base2 {
  double a11, a12, a22;
};

inline Base2 base2_closed_forms(double a1, double a2) {
  const double a22 = std::sqrt(1.0 - a2 * a2);
  const double a12 = -(a1 * a2) / a22;
  const double a11 = std::sqrt(std::max(1.0 - a1 * a1 - a2 * a2, 0.0)) / a22;
  return {a11, a12, a22};
}

// The base level viewed as a lift from the trivial 1 x 2 frame, so its trace
// record carries the same (y, lambda, x1) structure as the later lifts.
inline TraceLevel base2_trace(double a1, double a2, const Base2& b) {
  Eigen::VectorXd y(2);
  y << a2, -b.a22;
  return TraceLevel{2, std::move(y), -a1 / b.a22, b.a11, b.a11};
}

inline void check_trapezoid(const Eigen::MatrixXd& m) {
  if (m.rows() < 1 || m.cols() != m.rows() + 1) {
    throw InvalidShape("orthocomplement requires an (n-1) x n matrix");
  }
  const Eigen::Index r = m.rows();
  const double dev =
      (m * m.transpose() - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw RowsNotOrthonormal("rows deviate from orthonormality by " + std::to_string(dev));
  }
}

}  // namespace detail

/// Generalized cross product of the rows of an (n-1) x n matrix by cofactor
/// expansion along a symbolic first row e_2 ... e_{n+1}:
/// y_c = (-1)^(c+1) det(m with column c removed). For m with orthonormal
/// rows, y is the unit vector spanning the orthocomplement of the row space;
/// for right-trapezoidal m its last coordinate is (-1)^(n+1) prod(diag).
inline Eigen::VectorXd orthocomplement_cofactor(const Eigen::MatrixXd& m) {
  detail::check_trapezoid(m);
  const int n = static_cast<int>(m.cols());
  const int r = n - 1;
  Eigen::VectorXd y(n);
  Eigen::MatrixXd minor(r, r);
  for (int c = 0; c < n; ++c) {
    if (c > 0) minor.leftCols(c) = m.leftCols(c);
    if (c < n - 1) minor.rightCols(r - c) = m.rightCols(n - 1 - c);
    const double det = minor.determinant();
    y[c] = (c % 2 == 0) ? det : -det;
  }
  return y;
}

/// Null-space route: the last column of the orthogonal factor of m^T spans
/// the orthocomplement; the sign is fixed so det([y; m]) > 0, matching the
/// cofactor orientation.
inline Eigen::VectorXd orthocomplement_nullspace(const Eigen::MatrixXd& m) {
  detail::check_trapezoid(m);
  const int n = static_cast<int>(m.cols());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m.transpose());
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd y = q.col(n - 1);
  Eigen::MatrixXd a(n, n);
  a.row(0) = y.transpose();
  a.bottomRows(n - 1) = m;
  if (a.determinant() < 0.0) y = -y;
  return y;
}

/// Cofactor route for n <= 8, null-space extraction beyond; the two routes
/// agree and cross-validate each other in the tests.
inline Eigen::VectorXd orthocomplement_vector(const Eigen::MatrixXd& m) {
  return m.cols() <= 8 ? orthocomplement_cofactor(m) : orthocomplement_nullspace(m);
}

/// Planar base case: the unique Parseval frame {v_1, v_2, w} in R^2 with
/// v_1 = (a11, 0), v_2 = (a12, a22), a11 > 0, a22 > 0.
inline TriangularParsevalFrame construct_base2(const SeedVector& w) {
  if (w.dim() != 2) throw InvalidShape("construct_base2 requires a seed in R^2");
  detail::require_seed_strictly_short(w);
  const double a1 = w[0];
  const double a2 = w[1];
  const auto base = detail::base2_closed_forms(a1, a2);
  Eigen::MatrixXd m(2, 3);
  m << base.a11, base.a12, a1,
      0.0, base.a22, a2;
  ConstructionTrace trace;
  trace.levels.push_back(detail::base2_trace(a1, a2, base));
  return TriangularParsevalFrame{FrameMatrix(std::move(m)), w, std::move(trace)};
}

/// The full construction, run iteratively from dimension 2 upward on the
/// trailing entries of w. Level m lifts the (m-1) x m matrix M to m x (m+1):
/// compute the unit orthocomplement y of M's rows, solve lambda * y_last =
/// alpha (the next seed entry from the right), and prepend the row
/// (sqrt(1-lambda^2), lambda*y) with alpha kept exact in the seed column.
/// Deterministic: the positive-diagonal convention makes the result unique
/// and re-running on the same seed is bit-identical.
inline TriangularParsevalFrame construct(const SeedVector& w) {
  const int n = w.dim();
  if (n < 2) throw InvalidShape("construct requires a seed in R^n with n >= 2");
  detail::require_seed_strictly_short(w);
  const Eigen::VectorXd& alpha = w.entries();

  const auto base = detail::base2_closed_forms(alpha[n - 2], alpha[n - 1]);
  Eigen::MatrixXd m(2, 3);
  m << base.a11, base.a12, alpha[n - 2],
      0.0, base.a22, alpha[n - 1];
  ConstructionTrace trace;
  trace.levels.push_back(detail::base2_trace(alpha[n - 2], alpha[n - 1], base));

  for (int dim = 3; dim <= n; ++dim) {
    const double lead = alpha[n - dim];
    Eigen::VectorXd y = orthocomplement_vector(m);
    const double lambda = lead / y[dim - 1];
    const double x1_sq = 1.0 - lambda * lambda;
    if (!(x1_sq > 0.0)) {
      throw FrameError("construction degenerated: |lambda| >= 1");  // unreachable for ||w|| < 1
    }
    const double x1 = std::sqrt(x1_sq);

    Eigen::MatrixXd next(dim, dim + 1);
    next(0, 0) = x1;
    for (int c = 1; c < dim; ++c) next(0, c) = lambda * y[c - 1];
    next(0, dim) = lead;
    next.block(1, 0, dim - 1, 1).setZero();
    next.block(1, 1, dim - 1, dim) = m;
    m.swap(next);
    trace.levels.push_back(TraceLevel{dim, std::move(y), lambda, x1, x1});
  }
  return TriangularParsevalFrame{FrameMatrix(std::move(m)), w, std::move(trace)};
}

/// Closed-form diagonal a_{j,j} = sqrt(1 - s_j) / sqrt(1 - s_{j+1}) with
/// s_j the trailing sum of squared seed entries from position j (s after the
/// last entry is 0, which also covers j = n). The product telescopes to
/// sqrt(1 - ||w||^2).
inline Eigen::VectorXd expected_diagonal(const SeedVector& w) {
  detail::require_seed_strictly_short(w);
  const int n = w.dim();
  Eigen::VectorXd d(n);
  double suffix = 0.0;
  for (int j = n - 1; j >= 0; --j) {
    const double after = suffix;
    suffix += w[j] * w[j];
    d[j] = std::sqrt(std::max(1.0 - suffix, 0.0)) / std::sqrt(1.0 - after);
  }
  return d;
}

/// Independent check of the uniqueness claim for n in {2, 3}: solve the
/// row-orthonormality equations bottom-up for every one of the 2^n diagonal
/// sign branches, plus `trials` random-start damped-Newton probes of the
/// same square system; true iff every solution found equals construct(w) up
/// to per-column signs (max entry deviation 1e-8).
inline bool uniqueness_check(const SeedVector& w, int trials = 16) {
  const int n = w.dim();
  if (n < 2 || n > 3) {
    throw UnsupportedDimension("uniqueness_check supports n in {2, 3} only");
  }
  detail::require_seed_strictly_short(w);
  const TriangularParsevalFrame ref = construct(w);
  const Eigen::MatrixXd& r = ref.frame.columns();
  const Eigen::VectorXd& alpha = w.entries();

  const auto matches_up_to_column_signs = [&](const Eigen::MatrixXd& a) {
    for (int j = 0; j < n; ++j) {
      const double plus = (a.col(j) - r.col(j)).cwiseAbs().maxCoeff();
      const double minus = (a.col(j) + r.col(j)).cwiseAbs().maxCoeff();
      if (std::min(plus, minus) > 1e-8) return false;
    }
    return true;
  };

  // Exhaustive sign enumeration. Row i (from the bottom) determines its
  // off-diagonal entries from the rows below, then its diagonal entry up to
  // sign from the unit-row equation.
  for (int mask = 0; mask < (1 << n); ++mask) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n + 1);
    a.col(n) = alpha;
    bool feasible = true;
    for (int i = n - 1; i >= 0 && feasible; --i) {
      for (int j = n - 1; j > i; --j) {
        double dot = alpha[i] * alpha[j];
        for (int k = j + 1; k < n; ++k) dot += a(i, k) * a(j, k);
        a(i, j) = -dot / a(j, j);
      }
      double rem = 1.0 - alpha[i] * alpha[i];
      for (int k = i + 1; k < n; ++k) rem -= a(i, k) * a(i, k);
      if (rem < -1e-10) {
        feasible = false;
        break;
      }
      const double sgn = ((mask >> i) & 1) ? -1.0 : 1.0;
      a(i, i) = sgn * std::sqrt(std::max(rem, 0.0));
    }
    if (!feasible) continue;
    const double dev =
        (a * a.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (dev > 1e-8) continue;  // branch is not an actual solution
    if (!matches_up_to_column_signs(a)) return false;
  }

  // Newton probes, deterministically seeded from the seed entries.
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  for (int i = 0; i < n; ++i) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &alpha[i], sizeof(bits));
    seed ^= bits + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) idx.emplace_back(i, j);
  }
  const int k = static_cast<int>(idx.size());

  const auto assemble = [&](const Eigen::VectorXd& x) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n + 1);
    a.col(n) = alpha;
    for (int t = 0; t < k; ++t) a(idx[t].first, idx[t].second) = x[t];
    return a;
  };
  const auto residual = [&](const Eigen::VectorXd& x) {
    const Eigen::MatrixXd a = assemble(x);
    Eigen::VectorXd f(k);
    int t = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j, ++t) {
        f[t] = a.row(i).dot(a.row(j)) - (i == j ? 1.0 : 0.0);
      }
    }
    return f;
  };

  for (int trial = 0; trial < trials; ++trial) {
    Eigen::VectorXd x(k);
    for (int t = 0; t < k; ++t) x[t] = gauss(rng);
    Eigen::VectorXd f = residual(x);
    bool converged = false;
    for (int iter = 0; iter < 80 && !converged; ++iter) {
      if (f.cwiseAbs().maxCoeff() <= 1e-12) {
        converged = true;
        break;
      }
      Eigen::MatrixXd jac(k, k);
      for (int t = 0; t < k; ++t) {
        const double h = 1e-7 * std::max(1.0, std::abs(x[t]));
        Eigen::VectorXd xp = x;
        xp[t] += h;
        jac.col(t) = (residual(xp) - f) / h;
      }
      const Eigen::VectorXd step = jac.colPivHouseholderQr().solve((-f).eval());
      double scale = 1.0;
      bool accepted = false;
      for (int attempt = 0; attempt < 25; ++attempt) {
        const Eigen::VectorXd xn = x + scale * step;
        const Eigen::VectorXd fn = residual(xn);
        if (fn.norm() < f.norm()) {
          x = xn;
          f = fn;
          accepted = true;
          break;
        }
        scale *= 0.5;
      }
      if (!accepted) break;
    }
    if (!converged && f.cwiseAbs().maxCoeff() <= 1e-12) converged = true;
    if (!converged) continue;
    if (!matches_up_to_column_signs(assemble(x))) return false;
  }
  return true;
}

}  // namespace framekit
