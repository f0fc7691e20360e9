#pragma once

#include <functional>
#include <vector>

#include "orbithull/birkhoff.hpp"
#include "orbithull/core.hpp"
#include "orbithull/majorization.hpp"

namespace orbithull {

/// A channel given only by its action, matrix in and matrix out.
using ChannelAction = std::function<CMatrix(const CMatrix&)>;

struct UnitaryTerm {
  double weight = 0.0;
  CMatrix unitary;
};

/// Phi(a) = sum_i t_i U_i^* a U_i with convex weights and unitary U_i.
class MixedUnitaryChannel {
 public:
  /// Validates weights in (0, 1] summing to 1 within 1e-12 and
  /// ||U_i^* U_i - I|| <= 1e-10. Throws InvariantError / ShapeError.
  MixedUnitaryChannel(Eigen::Index dim, std::vector<UnitaryTerm> terms);

  static MixedUnitaryChannel identity(Eigen::Index dim);

  Eigen::Index dim() const { return dim_; }
  const std::vector<UnitaryTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  CMatrix operator()(const CMatrix& a) const;
  ChannelAction action() const;

  /// `next` applied after this channel, as one flat channel.
  MixedUnitaryChannel then(const MixedUnitaryChannel& next) const;
  /// Channel a -> W Phi(W^* a W) W^* for a unitary W.
  MixedUnitaryChannel conjugated(const CMatrix& w) const;

 private:
  Eigen::Index dim_;
  std::vector<UnitaryTerm> terms_;
};

/// Throws ShapeError when dims differ.
CMatrix apply(const MixedUnitaryChannel& ch, const CMatrix& m);

/// Partition of {0..n-1} into index groups S_k with one value per group.
class SpectralGrouping {
 public:
  SpectralGrouping(std::vector<std::vector<int>> groups, CVector values);

  /// Groups equal entries of mu (within tol), first appearance order.
  static SpectralGrouping from_tuple(const CVector& mu, double tol = 0.0);
  /// Singleton groups {0}, {1}, ...: the full-diagonal pinching.
  static SpectralGrouping full_diagonal(Eigen::Index n);

  const std::vector<std::vector<int>>& groups() const { return groups_; }
  const CVector& values() const { return values_; }
  Eigen::Index dim() const { return n_; }
  /// Q_k as a 0/1 diagonal matrix.
  CMatrix projection(std::size_t k) const;
  /// True when every index carries its group's value within tol and
  /// different groups carry different values.
  bool consistent_with(const CVector& mu, double tol) const;

 private:
  std::vector<std::vector<int>> groups_;
  CVector values_;
  Eigen::Index n_ = 0;
};

/// Birkhoff-decompose D and emit sum_sigma t_sigma Ad(F P_sigma^T F^*), so
/// that the channel maps F diag(mu) F^* to F diag(D mu) F^*.
MixedUnitaryChannel channel_from_ds(const DoublyStochastic& d, const CMatrix& frame);
MixedUnitaryChannel channel_from_ds(const DoublyStochastic& d);
/// Two-frame form with unitaries Y P_sigma^T X^*: maps Y diag(mu) Y^* to
/// X diag(D mu) X^*.
MixedUnitaryChannel channel_from_ds(const DoublyStochastic& d, const CMatrix& source_frame,
                                    const CMatrix& target_frame);

/// Keeps the diagonal blocks of `grouping`, zeroes the rest.
CMatrix pinch(const CMatrix& m, const SpectralGrouping& grouping);
/// Keeps only the diagonal.
CMatrix pinch(const CMatrix& m);

struct ExtractedMatrix {
  /// Oriented so that diag(Phi(diag mu)) = D mu when Phi maps the diagonal
  /// algebra into itself: D(j, i) = Tr(e_j Phi(Q_k) e_j) / |S_k| for i in S_k.
  RMatrix d;
  RVector row_sums;  // 1 when Phi is unital
  RVector col_sums;  // tau(Phi(Q_k)) / tau(Q_k) for each i in S_k
  bool unital = false;
  double unital_defect = 0.0;
};

/// Stochastic matrix read off a channel through its action on the spectral
/// projections of mu. Throws PreconditionError when the grouping does not
/// match mu.
ExtractedMatrix ds_from_channel(const ChannelAction& ch, const CVector& mu,
                                const SpectralGrouping& grouping, double value_tol = 1e-12);
ExtractedMatrix ds_from_channel(const MixedUnitaryChannel& ch, const CVector& mu);

struct ChannelReport {
  bool unital = false;
  double unital_residual = 0.0;
  bool trace_preserving = false;
  double trace_residual = 0.0;
  bool contractive = false;
  double contraction_excess = 0.0;  // max(||Phi(a)|| - ||a||) over the test set
};

ChannelReport check_channel(const MixedUnitaryChannel& ch, double tol = 1e-10);
/// Action-only version: unitality from Phi(I), trace preservation on all
/// matrix units, contractivity on matrix units plus fixed test matrices.
ChannelReport check_channel(const ChannelAction& ch, Eigen::Index dim, double tol = 1e-10);

}  // namespace orbithull
