#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace orbithull {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Error taxonomy. Every library failure is one of these; the CLI maps all of
// them to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ORBITHULL_ERROR(Name)        \
  class Name : public Error {        \
   public:                           \
    using Error::Error;              \
  };

ORBITHULL_ERROR(ShapeError)
ORBITHULL_ERROR(ParameterError)
ORBITHULL_ERROR(PreconditionError)
ORBITHULL_ERROR(DomainError)
ORBITHULL_ERROR(SizeError)
ORBITHULL_ERROR(BalanceError)
ORBITHULL_ERROR(DegeneracyError)
ORBITHULL_ERROR(InvariantError)

#undef ORBITHULL_ERROR

/// Spectral norm (largest singular value). Zero for empty matrices.
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::JacobiSVD<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(m);
  return svd.singularValues()(0);
}

/// Largest |entry| of a real or complex matrix.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

/// max_i max(|Re v_i|, |Im v_i|): the box metric used by the LPs.
double box_norm(const CVector& v);

/// ||U* U - I|| in operator norm.
double unitarity_defect(const CMatrix& u);

/// Block-diagonal direct sum a (+) b.
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

inline void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw ShapeError(std::string(what) + ": expected a square matrix, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace orbithull
