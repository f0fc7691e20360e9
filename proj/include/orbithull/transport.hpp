#pragma once

#include "orbithull/core.hpp"

namespace orbithull {

/// Nonnegative m x k matrix with prescribed row and column sums.
struct TransportPlan {
  RMatrix e;
  RVector row_marginals;
  RVector col_marginals;

  Eigen::Index rows() const { return e.rows(); }
  Eigen::Index cols() const { return e.cols(); }
  /// Largest deviation of a row or column sum from its marginal.
  double marginal_defect() const;
  /// Number of strictly positive entries.
  Eigen::Index support_size() const;
};

/// Northwest-corner interpolation: a nonnegative matrix with row sums `a` and
/// column sums `b`. Requires |sum a - sum b| <= 1e-10 * max(sum a, 1)
/// (BalanceError otherwise) and entries >= -1e-12 (DomainError otherwise;
/// smaller negatives are clamped to 0). When the totals differ within the
/// allowance, `b` is rescaled to sum to sum(a) and the rescaled marginals are
/// echoed in the plan.
TransportPlan riesz_interpolate(const RVector& a, const RVector& b);

}  // namespace orbithull
