#pragma once

#include <optional>
#include <vector>

#include "orbithull/core.hpp"
#include "orbithull/spectra.hpp"

namespace orbithull {

/// Positive unital map C(X) -> C(Y) on finite sets: (Psi f)(y) = sum_x S(y, x) f(x)
/// with each row of S a probability vector.
class DiscreteTransferMap {
 public:
  /// Throws ShapeError on size mismatch and InvariantError unless rows are
  /// probability vectors within 1e-12.
  DiscreteTransferMap(std::vector<Complex> x, std::vector<Complex> y, RMatrix s);

  const std::vector<Complex>& source_support() const { return x_; }
  const std::vector<Complex>& target_support() const { return y_; }
  const RMatrix& s() const { return s_; }
  /// Psi applied to values of f on X.
  CVector apply(const CVector& f) const;
  /// Pushback of a probability vector on Y to one on X.
  RVector pushback(const RVector& nu) const;

 private:
  std::vector<Complex> x_;
  std::vector<Complex> y_;
  RMatrix s_;
};

/// Exponent pairs (a, b) of the test monomials z^a conj(z)^b, 1 <= a + b <= degree.
std::vector<std::pair<int, int>> test_monomials(int degree);

struct TransferReport {
  bool feasible = false;
  double eps = 0.0;
  int degree = 0;
  /// Largest box defect of the identity-function transport (a).
  double transport_defect = 0.0;
  /// Largest box defect of the trace condition (b) over the test family.
  double trace_defect = 0.0;
  /// Optimal shared budget (condition 4 only).
  double budget = 0.0;
  std::optional<DiscreteTransferMap> map;
};

/// Kernel form: a row-stochastic S meeting (a) and (b) within eps.
/// Solved by minimizing the shared budget t; feasible iff t <= eps.
/// Throws ParameterError for degree < 1 or eps < 0.
TransferReport check_condition4(const DiscreteMeasure& mx, const DiscreteMeasure& my, double eps,
                                int degree);

/// Affine form: an affine map gamma between probability simplices,
/// gamma(delta_y) = column y of a column-stochastic G, with
/// sup_nu |int x d(gamma nu) - int y d nu| <= eps (checked on the Dirac
/// vertices) and the trace condition on gamma(my) versus mx. Solved as a
/// pure feasibility problem at fixed eps. The returned map holds G^T.
TransferReport check_condition5(const DiscreteMeasure& mx, const DiscreteMeasure& my, double eps,
                                int degree);

/// Sup over the simplex of |int x d(gamma nu) - int y d nu| in the box
/// metric, attained on Dirac measures.
double affine_sup_defect(const DiscreteTransferMap& map);

}  // namespace orbithull
