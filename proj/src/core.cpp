#include "orbithull/core.hpp"

#include <algorithm>
#include <cmath>

namespace orbithull {

double box_norm(const CVector& v) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    best = std::max({best, std::abs(v(i).real()), std::abs(v(i).imag())});
  }
  return best;
}

double unitarity_defect(const CMatrix& u) {
  require_square(u, "unitarity_defect");
  const auto n = u.rows();
  return operator_norm(u.adjoint() * u - CMatrix::Identity(n, n));
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace orbithull
