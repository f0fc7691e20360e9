#pragma once

#include <optional>
#include <vector>

#include "orbithull/core.hpp"

namespace orbithull {

struct NormalityReport {
  double defect = 0.0;     // ||M*M - MM*|| (operator norm)
  double tolerance = 0.0;
  bool pass = false;
};

/// Defect-based normality test. Throws ShapeError on non-square input.
NormalityReport check_normality(const CMatrix& m, double tol);

/// 1e-10 * ||M||^2, the construction tolerance for NormalMatrix.
double default_normality_tolerance(const CMatrix& m);

/// Square complex matrix whose normality defect was checked at construction.
class NormalMatrix {
 public:
  /// Throws PreconditionError when the defect exceeds `tol`
  /// (default_normality_tolerance when omitted).
  explicit NormalMatrix(CMatrix m, std::optional<double> tol = std::nullopt);

  static NormalMatrix diagonal(const CVector& values);

  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  double normality_defect() const { return defect_; }
  double norm() const { return norm_; }

 private:
  CMatrix m_;
  double defect_ = 0.0;
  double norm_ = 0.0;
};

/// Distinct eigenvalues with multiplicities and a unitary eigenframe. The
/// frame's columns are ordered group by group, so frame * diag(expanded()) *
/// frame^* reconstructs the matrix.
struct SpectralForm {
  CVector values;
  std::vector<int> multiplicities;
  CMatrix frame;

  Eigen::Index dim() const { return frame.rows(); }
  CVector expanded() const;
  CMatrix reconstruct() const;
  /// Index sets of the expanded tuple belonging to each value.
  std::vector<std::vector<int>> groups() const;
};

/// 1e-8 * ||M||.
double default_grouping_tolerance(const NormalMatrix& m);

/// Complex Schur factorization; the triangular factor is required to be
/// diagonal within 1e-8 * ||M||, otherwise PreconditionError.
SpectralForm spectral_decompose(const NormalMatrix& m,
                                std::optional<double> grouping_tol = std::nullopt);

/// Finite probability measure on the complex plane.
class DiscreteMeasure {
 public:
  /// Validates: equal lengths, nonnegative weights summing to 1 within 1e-12,
  /// pairwise distinct support points. Throws InvariantError.
  DiscreteMeasure(std::vector<Complex> support, std::vector<double> weights);

  const std::vector<Complex>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }

 private:
  std::vector<Complex> support_;
  std::vector<double> weights_;
};

/// Eigenvalue multiplicities over dim, on the distinct eigenvalues.
DiscreteMeasure tracial_spectral_measure(const NormalMatrix& m,
                                         std::optional<double> grouping_tol = std::nullopt);

/// Equality as weighted multisets: every atom of one matches an atom of the
/// other within `point_tol` with weights equal within `weight_tol`.
bool measures_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, double point_tol,
                    double weight_tol = 1e-12);

/// Groups entries of a tuple that lie within `tol` of each other (first
/// appearance order). Returns index sets.
std::vector<std::vector<int>> group_equal_values(const CVector& values, double tol);

}  // namespace orbithull
