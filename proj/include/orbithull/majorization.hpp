#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbithull/core.hpp"
#include "orbithull/simplex.hpp"

namespace orbithull {

/// Ordered complex n-tuple, repetitions allowed, n >= 1.
class ComplexTuple {
 public:
  explicit ComplexTuple(CVector entries);
  ComplexTuple(std::initializer_list<Complex> entries);

  const CVector& entries() const { return entries_; }
  Eigen::Index size() const { return entries_.size(); }
  Complex operator[](Eigen::Index i) const { return entries_(i); }
  bool is_real(double tol = 0.0) const;

 private:
  CVector entries_;
};

/// Nonnegative square matrix with unit row and column sums
/// (entries >= -1e-12, sums within 1e-10).
class DoublyStochastic {
 public:
  explicit DoublyStochastic(RMatrix d);

  static DoublyStochastic identity(Eigen::Index n);
  static DoublyStochastic uniform(Eigen::Index n);

  const RMatrix& matrix() const { return d_; }
  Eigen::Index size() const { return d_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return d_(i, j); }

  /// Largest deviation of a row or column sum from 1.
  static double sum_defect(const RMatrix& d);
  static bool satisfies(const RMatrix& d, double entry_tol = 1e-12, double sum_tol = 1e-10);

 private:
  RMatrix d_;
};

/// Verdict of lambda < mu with a certificate in either direction.
///
/// The separator c satisfies Re<c, lambda> - max_sigma Re<c, P_sigma mu> = gap > 0,
/// with <c, z> = sum_i conj(c_i) z_i and (P_sigma mu)_i = mu_{sigma(i)}.
/// It is normalized so that ||Re c||_1 + ||Im c||_1 <= 1, hence gap lower-bounds
/// the box distance from lambda to the permutation hull.
struct MajorizationCertificate {
  bool feasible = false;
  std::optional<DoublyStochastic> witness;
  std::optional<CVector> separator;
  double gap = 0.0;
  /// Box residual: ||D mu - lambda||_box when feasible, the minimal such
  /// residual over the Birkhoff polytope otherwise.
  double residual = 0.0;
  double tol = 0.0;
  /// Rational witness entries when solved in exact mode.
  std::optional<std::vector<std::vector<std::string>>> exact_witness;
};

/// Decide lambda < mu up to `tol` in the box metric. With `exact` the LP is
/// solved over rationals (inputs converted exactly; intended for n <= 4).
MajorizationCertificate is_majorized(const ComplexTuple& lam, const ComplexTuple& mu, double tol,
                                     bool exact = false);

/// Brute-force check: lambda within `tol` (box metric) of the convex hull of
/// the n! permutations of mu. Throws SizeError for n > 8.
bool perm_hull_oracle(const ComplexTuple& lam, const ComplexTuple& mu, double tol);

/// Partial-sum test for real tuples.
bool real_majorization(const RVector& lam, const RVector& mu);
/// Throws DomainError unless both tuples are real.
bool real_majorization(const ComplexTuple& lam, const ComplexTuple& mu);

struct HullDistance {
  double box = 0.0;            // min over D of ||D mu - lambda||_box
  double modulus_lower = 0.0;  // max_i |.| distance is at least `box`
  double modulus_upper = 0.0;  // ... and at most sqrt(2) * box
  RMatrix optimal_d;
  CVector separator;           // LP dual certificate for the lower bound
};

HullDistance hull_distance(const ComplexTuple& lam, const ComplexTuple& mu);

/// Maximum-weight perfect assignment: returns sigma maximizing
/// sum_i w(i, sigma(i)) and its value.
struct Assignment {
  std::vector<int> sigma;
  double value = 0.0;
};
Assignment max_weight_assignment(const RMatrix& w);

/// Re<c, lambda> - max_sigma Re<c, P_sigma mu>.
double separation_gap(const CVector& c, const ComplexTuple& lam, const ComplexTuple& mu);

}  // namespace orbithull
