#pragma once

#include <optional>
#include <vector>

#include "orbithull/core.hpp"
#include "orbithull/cpmaps.hpp"
#include "orbithull/spectra.hpp"

namespace orbithull {

/// Every intermediate of the trace-defect repair, for audit.
///
/// Matrices follow the source-row layout: row i belongs to the source
/// eigenvalue mu_i, columns sum to 1, row i sums to 1 + eps_prime(i).
/// The channel built from the result maps diag(mu) to diag(d_corrected^T mu).
struct CorrectionReport {
  RMatrix d_input;
  RVector eps_prime;
  std::vector<int> lambda_plus;   // eps'_i >= 0
  std::vector<int> lambda_minus;  // eps'_i < 0
  RMatrix eps_matrix;             // nonnegative corrections eps_ij
  RMatrix d_corrected;
  double balance = 0.0;           // sum over both index sets of eps'_i

  // Filled by corrected_channel only.
  double eps1 = 0.0;
  double eps2 = 0.0;
  double s = 0.0;                 // min_k tau(Q_k)
  bool measured = false;
  std::vector<double> trace_defects;  // |tau(phi(Q_k)) - tau(Q_k)|
  double bound = 0.0;             // 2 eps2 ||y|| + 3 eps1
  double achieved = 0.0;          // ||psi(y) - x||
  CVector lambda;                 // eigenvalues of x (x-frame order)
  CVector lambda_prime;           // d_corrected^T mu
  CVector mu;
  std::optional<MixedUnitaryChannel> channel;
};

/// Repairs `d` (unit column sums, |row sum - 1| <= eps2) into an exactly
/// doubly stochastic matrix. Throws PreconditionError when column sums are
/// off by more than 1e-10 or a row defect exceeds eps2, DegeneracyError when
/// some 1 + eps'_i <= 0.
CorrectionReport correct_ds(const RMatrix& d, double eps2);

struct CorrectionOptions {
  std::optional<double> eps1;  // measured as ||phi(y) - x|| when absent
  std::optional<double> eps2;  // measured as max_k defect_k / s when absent
  std::optional<double> grouping_tol;
};

/// Eigenframes for x = X diag(lambda) X^* and y = Y diag(mu) Y^*.
struct AlignedFrames {
  CMatrix x_frame;
  CVector lambda;
  CMatrix y_frame;
  CVector mu;
};

/// Frames from spectral decompositions of x and y.
AlignedFrames align_frames(const NormalMatrix& x, const NormalMatrix& y,
                           std::optional<double> grouping_tol = std::nullopt);

/// Builds a trace preserving mixed-unitary channel psi with
/// ||psi(y) - x|| <= 2 eps2 ||y|| + 3 eps1 from a unital channel action `phi`
/// with ||phi(y) - x|| <= eps1 and per-projection trace defects <= s eps2.
/// Throws PreconditionError when a supplied eps is violated or the frames do
/// not diagonalize x and y.
CorrectionReport corrected_channel(const NormalMatrix& x, const NormalMatrix& y,
                                   const ChannelAction& phi, const CorrectionOptions& options = {});
CorrectionReport corrected_channel(const NormalMatrix& x, const NormalMatrix& y,
                                   const AlignedFrames& frames, const ChannelAction& phi,
                                   const CorrectionOptions& options = {});

}  // namespace orbithull
