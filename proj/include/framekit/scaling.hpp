#pragma once

// Scalability of unit-norm (n+1)-frames: the pairwise cosine identity
// (1-l_i^2)(1-l_j^2) = l_i^2 l_j^2 cos^2(theta_ij), the closed-form weights
// it determines, the decision pipeline, and an independent nonnegative
// least-squares oracle.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "framekit/angle_table.hpp"
#include "framekit/errors.hpp"
#include "framekit/frame_matrix.hpp"
#include "framekit/tightness.hpp"

namespace framekit {

/// Positive scale factors l_1..l_N turning a unit-norm frame Parseval.
class ScalingWeights {
 public:
  explicit ScalingWeights(Eigen::VectorXd weights) : weights_(std::move(weights)) {
    if (weights_.size() < 1 || weights_.minCoeff() <= 0.0) {
      throw FrameError("scaling weights must be positive");
    }
  }

  int count() const { return static_cast<int>(weights_.size()); }
  const Eigen::VectorXd& values() const { return weights_; }
  double operator[](int j) const { return weights_[j]; }
  Eigen::VectorXd squares() const { return weights_.cwiseProduct(weights_); }

 private:
  Eigen::VectorXd weights_;
};

enum class ScalabilityFailure {
  None,
  ContainsOrthonormalPair,
  RatioInconsistent,
  IdentityViolated,
  WeightOutOfRange,
};

inline const char* to_string(ScalabilityFailure reason) {
  switch (reason) {
    case ScalabilityFailure::None: return "None";
    case ScalabilityFailure::ContainsOrthonormalPair: return "ContainsOrthonormalPair";
    case ScalabilityFailure::RatioInconsistent: return "RatioInconsistent";
    case ScalabilityFailure::IdentityViolated: return "IdentityViolated";
    case ScalabilityFailure::WeightOutOfRange: return "WeightOutOfRange";
  }
  return "?";
}

struct ScalabilityVerdict {
  bool scalable = false;
  std::optional<ScalingWeights> weights;
  double max_identity_residual = 0.0;  // max over pairs of the cosine identity residual
  double ratio_spread = 0.0;
  ScalabilityFailure reason = ScalabilityFailure::None;
};

/// l_i^2 = |cos t_kj| / (|cos t_kj| + |cos t_ki cos t_ji|) from the
/// lexicographically smallest pair (j, k) whose denominator exceeds 1e-14.
inline double closed_form_weight_squared(const AngleTable& angles, int i) {
  const int N = angles.count();
  if (i < 0 || i >= N) throw InvalidShape("weight index out of range");
  if (N < 3) throw WrongCount("closed-form weights need at least 3 vectors");
  for (int j = 0; j < N; ++j) {
    if (j == i) continue;
    for (int k = j + 1; k < N; ++k) {
      if (k == i) continue;
      const double num = std::abs(angles.cosines(k, j));
      const double den = num + std::abs(angles.cosines(k, i) * angles.cosines(j, i));
      if (den > 1e-14) return num / den;
    }
  }
  throw DegeneratePair("every pair has vanishing cosine denominator for index " +
                       std::to_string(i));
}

namespace detail {

inline double pair_identity_residual_impl(const Eigen::VectorXd& weights,
                                          const AngleTable& angles) {
  if (weights.size() != angles.count()) {
    throw ShapeMismatch("one weight per angle-table vector required");
  }
  const int N = angles.count();
  double worst = 0.0;
  for (int i = 0; i < N; ++i) {
    const double li2 = weights[i] * weights[i];
    for (int j = i + 1; j < N; ++j) {
      const double lj2 = weights[j] * weights[j];
      const double c = angles.cosines(i, j);
      worst = std::max(worst, std::abs((1.0 - li2) * (1.0 - lj2) - li2 * lj2 * c * c));
    }
  }
  return worst;
}

inline bool length_bounds_impl(const Eigen::VectorXd& squares, double tol) {
  const int N = static_cast<int>(squares.size());
  const int n = N - 1;
  if (squares.minCoeff() <= 1.0 / (n + 1)) return false;
  int exceptions = 0;
  for (int j = 0; j < N; ++j) {
    if (squares[j] <= 0.5 + tol) ++exceptions;
  }
  return exceptions <= 1;
}

}  // namespace detail

/// Max over pairs i < j of |(1-l_i^2)(1-l_j^2) - l_i^2 l_j^2 cos^2(theta_ij)|.
inline double pair_identity_residual(const ScalingWeights& weights, const AngleTable& angles) {
  return detail::pair_identity_residual_impl(weights.values(), angles);
}

struct RatioConsistencyReport {
  double max_spread = 0.0;             // max over i of (max - min) closed-form ratio
  std::vector<int> degenerate_indices; // indices with no admissible pair
};

/// The closed-form ratio must not depend on the chosen pair (j, k); returns
/// the worst spread over all indices. Pairs with vanishing denominator are
/// skipped; an index with no admissible pair contributes spread 0 and is
/// reported as degenerate.
inline RatioConsistencyReport ratio_consistency(const AngleTable& angles) {
  const int N = angles.count();
  RatioConsistencyReport report;
  for (int i = 0; i < N; ++i) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      for (int k = j + 1; k < N; ++k) {
        if (k == i) continue;
        const double num = std::abs(angles.cosines(k, j));
        const double den = num + std::abs(angles.cosines(k, i) * angles.cosines(j, i));
        if (den <= 1e-14) continue;
        const double ratio = num / den;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        found = true;
      }
    }
    if (!found) {
      report.degenerate_indices.push_back(i);
    } else {
      report.max_spread = std::max(report.max_spread, hi - lo);
    }
  }
  return report;
}

/// Corollary-style range check on claimed Parseval lengths: every l_j^2 must
/// exceed 1/(n+1) strictly and at most one may be <= 1/2 (the boundary value
/// counts toward the allowed exception via tol).
inline bool length_bounds_check(const ScalingWeights& weights, double tol = kDefaultTol) {
  return detail::length_bounds_impl(weights.squares(), tol);
}

/// Decision pipeline for a nontrivial unit-norm frame with N = n+1:
///  (a) candidate l_i^2 from the closed form for every i;
///  (b) a candidate at 1 forces v_i orthogonal to all others, otherwise the
///      frame contains an orthonormal pair and is not scalable;
///  (c) pair-independence of the closed-form ratio within tol;
///  (d) pairwise cosine identity within tol;
///  (e) range checks on the candidates (l^2 <= 1, at most one l^2 <= 1/2,
///      all positive);
///  (f) the scaled frame must verify Parseval at 10*tol.
inline ScalabilityVerdict decide_scalability(const FrameMatrix& frame,
                                             double tol = kDefaultTol) {
  const int n = frame.dim();
  const int N = frame.count();
  if (N != n + 1) throw WrongCount("decide_scalability requires N = n + 1");
  const Eigen::VectorXd norms = frame.column_norms();
  for (int j = 0; j < N; ++j) {
    if (std::abs(norms[j] - 1.0) > 1e-10) {
      throw NotUnitNorm("column " + std::to_string(j) + " is not unit norm");
    }
  }
  if (!frame.nontrivial()) throw TrivialFrame("frame has parallel or zero vectors");

  const AngleTable angles = gram_and_angles(frame);

  ScalabilityVerdict verdict;
  Eigen::VectorXd candidate(N);
  for (int i = 0; i < N; ++i) candidate[i] = closed_form_weight_squared(angles, i);

  const RatioConsistencyReport ratios = ratio_consistency(angles);
  verdict.ratio_spread = ratios.max_spread;
  const Eigen::VectorXd candidate_weights = candidate.cwiseMax(0.0).cwiseSqrt();
  verdict.max_identity_residual =
      detail::pair_identity_residual_impl(candidate_weights, angles);

  // (b) A weight of 1 is only consistent with v_i orthogonal to every other
  // vector. For a genuinely scalable frame the identity bounds the remaining
  // cosines by sqrt(tol * N), so anything larger is an orthonormal pair.
  const double ortho_cos_tol = std::sqrt(tol * N);
  for (int i = 0; i < N; ++i) {
    if (std::abs(candidate[i] - 1.0) > tol) continue;
    for (int j = 0; j < N; ++j) {
      if (j != i && std::abs(angles.cosines(i, j)) > ortho_cos_tol) {
        verdict.reason = ScalabilityFailure::ContainsOrthonormalPair;
        return verdict;
      }
    }
  }
  // (c)
  if (ratios.max_spread > tol) {
    verdict.reason = ScalabilityFailure::RatioInconsistent;
    return verdict;
  }
  // (d)
  if (verdict.max_identity_residual > tol) {
    verdict.reason = ScalabilityFailure::IdentityViolated;
    return verdict;
  }
  // (e) Only the provable parts: positivity, l^2 <= 1, and at most one
  // l^2 <= 1/2. The strict lower bound 1/(n+1) of length_bounds_check is not
  // an actual invariant of nontrivial Parseval (n+1)-frames and would reject
  // genuinely scalable inputs.
  int small = 0;
  for (int j = 0; j < N; ++j) {
    if (candidate[j] <= tol || candidate[j] > 1.0 + tol) {
      verdict.reason = ScalabilityFailure::WeightOutOfRange;
      return verdict;
    }
    if (candidate[j] <= 0.5 + tol) ++small;
  }
  if (small > 1) {
    verdict.reason = ScalabilityFailure::WeightOutOfRange;
    return verdict;
  }
  // (f)
  const FrameMatrix scaled = scale_columns(frame, candidate_weights);
  if (!verify(scaled, 10.0 * tol).is_parseval) {
    verdict.reason = ScalabilityFailure::IdentityViolated;
    return verdict;
  }

  verdict.scalable = true;
  verdict.weights = ScalingWeights(candidate_weights);
  return verdict;
}

/// Independent oracle: minimize ||sum_j c_j v_j v_j^T - I||_F over c >= 0 by
/// Lawson-Hanson active-set NNLS (deterministic, iteration cap 10^4,
/// tolerance 1e-12). Weights are returned only when the fit is essentially
/// exact AND strictly positive -- an exact fit with a zero coefficient means
/// a proper subfamily reproduces the identity, not that the frame is
/// scalable.
inline std::optional<ScalingWeights> oracle_scale(const FrameMatrix& frame) {
  const int n = frame.dim();
  const int N = frame.count();
  if (N != n + 1) throw WrongCount("oracle_scale requires N = n + 1");
  const Eigen::VectorXd norms = frame.column_norms();
  for (int j = 0; j < N; ++j) {
    if (std::abs(norms[j] - 1.0) > 1e-10) {
      throw NotUnitNorm("column " + std::to_string(j) + " is not unit norm");
    }
  }
  if (!frame.nontrivial()) throw TrivialFrame("frame has parallel or zero vectors");

  // Columns of the design matrix are the vectorized rank-one terms, so the
  // Euclidean residual equals the Frobenius objective.
  Eigen::MatrixXd design(n * n, N);
  for (int j = 0; j < N; ++j) {
    const Eigen::MatrixXd outer =
        frame.columns().col(j) * frame.columns().col(j).transpose();
    design.col(j) = Eigen::Map<const Eigen::VectorXd>(outer.data(), n * n);
  }
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(identity.data(), n * n);

  constexpr double kNnlsTol = 1e-12;
  constexpr int kIterationBudget = 10000;

  Eigen::VectorXd c = Eigen::VectorXd::Zero(N);
  std::vector<bool> passive(N, false);
  int iterations = 0;

  const auto solve_passive = [&](const std::vector<bool>& set) -> Eigen::VectorXd {
    std::vector<int> cols;
    for (int j = 0; j < N; ++j) {
      if (set[j]) cols.push_back(j);
    }
    if (cols.empty()) return Eigen::VectorXd::Zero(N);
    Eigen::MatrixXd sub(n * n, cols.size());
    for (std::size_t t = 0; t < cols.size(); ++t) sub.col(t) = design.col(cols[t]);
    const Eigen::VectorXd z = sub.colPivHouseholderQr().solve(target);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(N);
    for (std::size_t t = 0; t < cols.size(); ++t) full[cols[t]] = z[t];
    return full;
  };

  while (iterations++ < kIterationBudget) {
    const Eigen::VectorXd dual = design.transpose() * (target - design * c);
    int best = -1;
    double best_dual = kNnlsTol;
    for (int j = 0; j < N; ++j) {
      if (!passive[j] && dual[j] > best_dual) {
        best_dual = dual[j];
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;

    Eigen::VectorXd z = solve_passive(passive);
    while (iterations++ < kIterationBudget) {
      bool all_positive = true;
      for (int j = 0; j < N; ++j) {
        if (passive[j] && z[j] <= kNnlsTol) {
          all_positive = false;
          break;
        }
      }
      if (all_positive) break;
      // Step back to the interior boundary and drop the variables that hit 0.
      double step = 1.0;
      for (int j = 0; j < N; ++j) {
        if (passive[j] && z[j] <= kNnlsTol) {
          const double denom = c[j] - z[j];
          step = denom > 0.0 ? std::min(step, c[j] / denom) : 0.0;
        }
      }
      c += step * (z - c);
      for (int j = 0; j < N; ++j) {
        if (passive[j] && c[j] <= kNnlsTol) {
          passive[j] = false;
          c[j] = 0.0;
        }
      }
      z = solve_passive(passive);
    }
    c = z;
  }

  const double objective = (design * c - target).norm();
  if (objective > 1e-9) return std::nullopt;
  if (c.minCoeff() <= 1e-8) return std::nullopt;
  return ScalingWeights(c.cwiseSqrt());
}

}  // namespace framekit
