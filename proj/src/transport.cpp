#include "orbithull/transport.hpp"

#include <algorithm>
#include <cmath>

namespace orbithull {

double TransportPlan::marginal_defect() const {
  double rows = 0.0, cols = 0.0;
  if (e.rows() > 0) rows = (e.rowwise().sum() - row_marginals).cwiseAbs().maxCoeff();
  if (e.cols() > 0) cols = (e.colwise().sum().transpose() - col_marginals).cwiseAbs().maxCoeff();
  return std::max(rows, cols);
}

Eigen::Index TransportPlan::support_size() const { return (e.array() > 0.0).count(); }

namespace {

RVector clamp_marginal(const RVector& v, const char* name) {
  RVector out = v;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (!std::isfinite(out(i)) || out(i) < -1e-12) {
      throw DomainError(std::string("riesz_interpolate: negative entry in ") + name);
    }
    out(i) = std::max(0.0, out(i));
  }
  return out;
}

}  // namespace

TransportPlan riesz_interpolate(const RVector& a_in, const RVector& b_in) {
  const RVector a = clamp_marginal(a_in, "row marginals");
  RVector b = clamp_marginal(b_in, "column marginals");
  const double sa = a.sum();
  const double sb = b.sum();
  if (std::abs(sa - sb) > 1e-10 * std::max(sa, 1.0)) {
    throw BalanceError("riesz_interpolate: marginal totals differ (" + std::to_string(sa) +
                       " vs " + std::to_string(sb) + ")");
  }
  if (sb > 0.0 && sa != sb) b *= sa / sb;

  const Eigen::Index m = a.size();
  const Eigen::Index k = b.size();
  TransportPlan plan{RMatrix::Zero(m, k), a, b};
  RVector ra = a;
  RVector rb = b;
  Eigen::Index i = 0, j = 0;
  while (i < m && j < k) {
    const double x = std::min(ra(i), rb(j));
    plan.e(i, j) = x;
    if (ra(i) <= rb(j)) {
      rb(j) -= x;
      ra(i) = 0.0;
      ++i;
    } else {
      ra(i) -= x;
      rb(j) = 0.0;
      ++j;
    }
  }
  return plan;
}

}  // namespace orbithull
