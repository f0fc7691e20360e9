#include "orbithull/correction.hpp"

#include <algorithm>
#include <cmath>

#include "orbithull/majorization.hpp"
#include "orbithull/transport.hpp"

namespace orbithull {

CorrectionReport correct_ds(const RMatrix& d, double eps2) {
  if (d.rows() != d.cols() || d.rows() == 0) throw ShapeError("correct_ds: expected a square matrix");
  if (!(eps2 >= 0.0)) throw ParameterError("correct_ds: eps2 must be nonnegative");
  const Eigen::Index n = d.rows();
  if ((d.array() < -1e-12).any()) throw DomainError("correct_ds: negative entry");
  const RVector col_sums = d.colwise().sum().transpose();
  const double col_defect = (col_sums.array() - 1.0).abs().maxCoeff();
  if (col_defect > 1e-10) {
    throw PreconditionError("correct_ds: column sums deviate from 1 by " + std::to_string(col_defect));
  }

  CorrectionReport r;
  r.d_input = d;
  r.eps_prime = d.rowwise().sum().array() - 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double e = r.eps_prime(i);
    if (1.0 + e <= 0.0) {
      throw DegeneracyError("correct_ds: row " + std::to_string(i) + " has nonpositive sum");
    }
    if (std::abs(e) > eps2 + 1e-12) {
      throw PreconditionError("correct_ds: row defect " + std::to_string(e) + " exceeds eps2 " +
                              std::to_string(eps2));
    }
    (e >= 0.0 ? r.lambda_plus : r.lambda_minus).push_back(static_cast<int>(i));
  }
  r.balance = r.eps_prime.sum();

  r.eps_matrix = RMatrix::Zero(n, n);
  // Rounding-level defects: the input already is doubly stochastic.
  if (r.eps_prime.cwiseAbs().maxCoeff() <= 1e-12 && DoublyStochastic::satisfies(d)) {
    r.d_corrected = d;
    return r;
  }
  RVector taken = RVector::Zero(n);
  for (int i : r.lambda_plus) {
    const double factor = r.eps_prime(i) / (1.0 + r.eps_prime(i));
    r.eps_matrix.row(i) = d.row(i) * factor;
    taken += r.eps_matrix.row(i).transpose();
  }

  r.d_corrected = d;
  for (int i : r.lambda_plus) r.d_corrected.row(i) -= r.eps_matrix.row(i);

  if (!r.lambda_minus.empty() && taken.sum() > 0.0) {
    RVector need(static_cast<Eigen::Index>(r.lambda_minus.size()));
    for (std::size_t k = 0; k < r.lambda_minus.size(); ++k) {
      need(static_cast<Eigen::Index>(k)) = -r.eps_prime(r.lambda_minus[k]);
    }
    // Totals agree up to the column-sum slack; the row side is authoritative.
    RVector supply = taken * (need.sum() / taken.sum());
    const TransportPlan plan = riesz_interpolate(need, supply);
    for (std::size_t k = 0; k < r.lambda_minus.size(); ++k) {
      const int i = r.lambda_minus[k];
      r.eps_matrix.row(i) = plan.e.row(static_cast<Eigen::Index>(k));
      r.d_corrected.row(i) += plan.e.row(static_cast<Eigen::Index>(k));
    }
  }

  if (!DoublyStochastic::satisfies(r.d_corrected)) {
    throw InvariantError("correct_ds: corrected matrix is not doubly stochastic (defect " +
                         std::to_string(DoublyStochastic::sum_defect(r.d_corrected)) + ")");
  }
  return r;
}

AlignedFrames align_frames(const NormalMatrix& x, const NormalMatrix& y,
                           std::optional<double> grouping_tol) {
  const SpectralForm fx = spectral_decompose(x, grouping_tol);
  const SpectralForm fy = spectral_decompose(y, grouping_tol);
  return {fx.frame, fx.expanded(), fy.frame, fy.expanded()};
}

CorrectionReport corrected_channel(const NormalMatrix& x, const NormalMatrix& y,
                                   const ChannelAction& phi, const CorrectionOptions& options) {
  return corrected_channel(x, y, align_frames(x, y, options.grouping_tol), phi, options);
}

namespace {

void require_frame(const CMatrix& frame, const CVector& values, const CMatrix& m, const char* name) {
  const Eigen::Index n = m.rows();
  if (frame.rows() != n || frame.cols() != n || values.size() != n) {
    throw ShapeError(std::string("corrected_channel: ") + name + " frame has the wrong size");
  }
  const double scale = std::max(1.0, operator_norm(m));
  const double unit = unitarity_defect(frame);
  const double fit = operator_norm(CMatrix(frame * values.asDiagonal() * frame.adjoint()) - m);
  if (unit > 1e-8 || fit > 1e-8 * scale) {
    throw PreconditionError(std::string("corrected_channel: frame misalignment for ") + name +
                            " (unitarity " + std::to_string(unit) + ", fit " +
                            std::to_string(fit) + ")");
  }
}

}  // namespace

CorrectionReport corrected_channel(const NormalMatrix& x, const NormalMatrix& y,
                                   const AlignedFrames& frames, const ChannelAction& phi,
                                   const CorrectionOptions& options) {
  const Eigen::Index n = x.dim();
  if (y.dim() != n) throw ShapeError("corrected_channel: x and y differ in size");
  require_frame(frames.x_frame, frames.lambda, x.matrix(), "x");
  require_frame(frames.y_frame, frames.mu, y.matrix(), "y");

  const double gtol = options.grouping_tol.value_or(default_grouping_tolerance(y));
  auto groups = group_equal_values(frames.mu, gtol);
  CVector values(static_cast<Eigen::Index>(groups.size()));
  for (std::size_t k = 0; k < groups.size(); ++k) {
    values(static_cast<Eigen::Index>(k)) = frames.mu(groups[k].front());
  }
  const SpectralGrouping grouping(groups, values);

  const CMatrix& xf = frames.x_frame;
  const CMatrix& yf = frames.y_frame;
  const ChannelAction phi_y = [&](const CMatrix& a) -> CMatrix {
    return xf.adjoint() * phi(yf * a * yf.adjoint()) * xf;
  };

  const double nn = static_cast<double>(n);
  double s = 1.0;
  std::vector<double> defects;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const double share = static_cast<double>(groups[k].size()) / nn;
    s = std::min(s, share);
    const Complex tr = phi_y(grouping.projection(k)).trace() / nn;
    defects.push_back(std::abs(tr - share));
  }
  const double max_defect = *std::max_element(defects.begin(), defects.end());
  const double eps1_measured = operator_norm(CMatrix(phi(y.matrix()) - x.matrix()));
  const double eps2_measured = max_defect / s;
  const double slack = 1e-12 * std::max(1.0, operator_norm(x.matrix()));

  double eps1 = eps1_measured;
  double eps2 = eps2_measured;
  if (options.eps1) {
    if (eps1_measured > *options.eps1 + slack) {
      throw PreconditionError("corrected_channel: ||phi(y) - x|| = " +
                              std::to_string(eps1_measured) + " exceeds eps1");
    }
    eps1 = *options.eps1;
  }
  if (options.eps2) {
    if (max_defect > s * *options.eps2 + 1e-12) {
      throw PreconditionError("corrected_channel: trace defect " + std::to_string(max_defect) +
                              " exceeds s * eps2");
    }
    eps2 = *options.eps2;
  }

  const ExtractedMatrix extracted = ds_from_channel(phi_y, frames.mu, grouping, gtol);
  CorrectionReport r = correct_ds(extracted.d.transpose(), eps2 + 1e-12);
  r.eps1 = eps1;
  r.eps2 = eps2;
  r.s = s;
  r.measured = !options.eps1 && !options.eps2;
  r.trace_defects = std::move(defects);
  r.lambda = frames.lambda;
  r.mu = frames.mu;

  const RMatrix forward = r.d_corrected.transpose();
  r.lambda_prime = forward.cast<Complex>() * frames.mu;
  r.channel = channel_from_ds(DoublyStochastic(forward), yf, xf);
  r.achieved = operator_norm(CMatrix((*r.channel)(y.matrix()) - x.matrix()));
  r.bound = 2.0 * eps2 * y.norm() + 3.0 * eps1;
  if (r.achieved > r.bound + 1e-8) {
    throw InvariantError("corrected_channel: achieved " + std::to_string(r.achieved) +
                         " exceeds bound " + std::to_string(r.bound));
  }
  return r;
}

}  // namespace orbithull
