#include "orbithull/hull.hpp"

#include <algorithm>
#include <cmath>

#include "orbithull/birkhoff.hpp"

namespace orbithull {

double witness_error(const MixedUnitaryChannel& ch, const CMatrix& x, const CMatrix& y) {
  return operator_norm(CMatrix(x - ch(y)));
}

namespace {

// A permutation sigma with |lambda_i - mu_sigma(i)| <= tol, if one exists.
std::optional<Permutation> matching_permutation(const CVector& lam, const CVector& mu, double tol) {
  const Eigen::Index n = lam.size();
  RMatrix close(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) close(i, j) = std::abs(lam(i) - mu(j)) <= tol ? 1.0 : 0.0;
  }
  return support_matching(close, 0.5);
}

}  // namespace

MembershipResult membership(const NormalMatrix& x, const NormalMatrix& y, double tol, bool exact) {
  if (x.dim() != y.dim()) throw ShapeError("membership: x and y differ in size");
  if (!(tol > 0.0)) throw ParameterError("membership: tol must be positive");
  const SpectralForm fx = spectral_decompose(x);
  const SpectralForm fy = spectral_decompose(y);
  MembershipResult r;
  r.tol = tol;
  r.lambda = fx.expanded();
  r.mu = fy.expanded();

  std::optional<DoublyStochastic> d;
  if (auto sigma = matching_permutation(r.lambda, r.mu, tol / 2.0)) {
    d = DoublyStochastic(permutation_matrix(*sigma));
    r.method = "permutation";
  } else {
    const auto cert = is_majorized(ComplexTuple(r.lambda), ComplexTuple(r.mu), tol, exact);
    r.residual = cert.residual;
    if (cert.feasible) {
      d = cert.witness;
      r.method = "lp";
    } else {
      r.separator = cert.separator;
      r.gap = cert.gap;
      r.method = "separator";
      return r;
    }
  }
  r.residual = box_norm(CVector(d->matrix().cast<Complex>() * r.mu - r.lambda));
  r.witness = channel_from_ds(*d, fy.frame, fx.frame);
  r.achieved = witness_error(*r.witness, x.matrix(), y.matrix());
  r.d = std::move(d);
  if (r.achieved <= tol) {
    r.member = true;
    return r;
  }
  // Box residual within tol but the modulus error is not: report the LP
  // separator instead of an unverifiable witness.
  const HullDistance hd = hull_distance(ComplexTuple(r.lambda), ComplexTuple(r.mu));
  r.member = false;
  r.witness.reset();
  r.d.reset();
  r.separator = hd.separator;
  r.gap = separation_gap(hd.separator, ComplexTuple(r.lambda), ComplexTuple(r.mu));
  r.method = "separator";
  return r;
}

MutualReport mutual_membership(const NormalMatrix& x, const NormalMatrix& y, double tol,
                               double grouping_tol) {
  if (x.dim() != y.dim()) throw ShapeError("mutual_membership: x and y differ in size");
  MutualReport r;
  r.xy = membership(x, y, tol);
  r.yx = membership(y, x, tol);
  const double scale = std::max({1.0, x.norm(), y.norm()});
  const double point_tol = grouping_tol * scale;
  const DiscreteMeasure mx = tracial_spectral_measure(x, point_tol);
  const DiscreteMeasure my = tracial_spectral_measure(y, point_tol);
  r.measures_equal = measures_equal(mx, my, point_tol);
  const auto same_points = [point_tol](const DiscreteMeasure& a, const DiscreteMeasure& b) {
    for (const Complex& p : a.support()) {
      const bool found = std::any_of(b.support().begin(), b.support().end(),
                                     [&](const Complex& q) { return std::abs(p - q) <= point_tol; });
      if (!found) return false;
    }
    return true;
  };
  r.spectra_equal = same_points(mx, my) && same_points(my, mx);
  r.equivalence_holds = (r.xy.member && r.yx.member) == r.measures_equal;
  return r;
}

DistanceBound distance_bound(const NormalMatrix& x, const NormalMatrix& y) {
  if (x.dim() != y.dim()) throw ShapeError("distance_bound: x and y differ in size");
  const SpectralForm fx = spectral_decompose(x);
  const SpectralForm fy = spectral_decompose(y);
  const HullDistance hd = hull_distance(ComplexTuple(fx.expanded()), ComplexTuple(fy.expanded()));
  DistanceBound out;
  out.lower = hd.box;
  out.modulus_upper = hd.modulus_upper;
  out.separator = hd.separator;
  out.d = DoublyStochastic(hd.optimal_d);
  const MixedUnitaryChannel ch = channel_from_ds(out.d, fy.frame, fx.frame);
  out.upper = witness_error(ch, x.matrix(), y.matrix());
  return out;
}

}  // namespace orbithull
