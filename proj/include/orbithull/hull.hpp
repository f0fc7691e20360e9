#pragma once

#include <optional>
#include <string>

#include "orbithull/core.hpp"
#include "orbithull/cpmaps.hpp"
#include "orbithull/majorization.hpp"
#include "orbithull/spectra.hpp"

namespace orbithull {

/// Verdict of x in the closed convex hull of the unitary orbit of y.
///
/// A member verdict carries a mixed-unitary witness with
/// ||x - witness(y)|| = achieved <= tol, re-measured by direct arithmetic.
/// A non-member verdict carries a separator c with
/// Re<c, lambda> - max_sigma Re<c, P_sigma mu> = gap > 0.
struct MembershipResult {
  bool member = false;
  double tol = 0.0;
  CVector lambda;                 // expanded eigenvalues of x
  CVector mu;                     // expanded eigenvalues of y
  double residual = 0.0;          // LP box residual min_D ||D mu - lambda||_box
  std::optional<DoublyStochastic> d;
  std::optional<MixedUnitaryChannel> witness;
  double achieved = 0.0;
  std::optional<CVector> separator;
  double gap = 0.0;
  std::string method;             // "permutation", "lp" or "separator"

  const char* verdict() const { return member ? "member" : "non_member"; }
};

/// Throws ShapeError on a size mismatch. With `exact` the LP runs over
/// rationals.
MembershipResult membership(const NormalMatrix& x, const NormalMatrix& y, double tol = 1e-7,
                            bool exact = false);

/// ||x - ch(y)|| by direct arithmetic.
double witness_error(const MixedUnitaryChannel& ch, const CMatrix& x, const CMatrix& y);

struct MutualReport {
  MembershipResult xy;  // x in hull of orbit of y
  MembershipResult yx;
  bool spectra_equal = false;
  bool measures_equal = false;
  /// Mutual membership holds exactly when the spectral measures agree.
  bool equivalence_holds = false;
};

MutualReport mutual_membership(const NormalMatrix& x, const NormalMatrix& y, double tol = 1e-7,
                               double grouping_tol = 1e-8);

struct DistanceBound {
  double lower = 0.0;         // LP box distance between the eigenvalue tuples
  double upper = 0.0;         // achieved error of the witness from the LP-optimal D
  double modulus_upper = 0.0; // sqrt(2) * lower
  DoublyStochastic d = DoublyStochastic::identity(1);
  CVector separator;
};

DistanceBound distance_bound(const NormalMatrix& x, const NormalMatrix& y);

}  // namespace orbithull
