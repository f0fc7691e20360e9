#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbithull/core.hpp"
#include "orbithull/cpmaps.hpp"
#include "orbithull/spectra.hpp"

namespace orbithull {

/// Convex-averaging witness: a chain of mixed-unitary stages, applied in
/// order, taking `source` to within `achieved` of `target`.
struct AveragingWitness {
  std::vector<MixedUnitaryChannel> stages;
  CMatrix source;
  CMatrix target;
  double achieved = 0.0;     // ||target - apply(source)||
  double bound = 0.0;
  std::string route;
  std::vector<std::pair<std::string, long>> ledger;  // block sizes and counts
  std::string notes;

  Eigen::Index dim() const { return source.rows(); }
  CMatrix apply(const CMatrix& a) const;
  std::size_t flat_size() const;
  /// All stages composed into one channel. Throws SizeError above
  /// `max_terms` terms.
  MixedUnitaryChannel channel(std::size_t max_terms = 20000) const;
  bool within_bound(double slack = 1e-9) const { return achieved <= bound + slack; }
};

/// Runs `first`, then `second`. Requires first.target == second.source
/// (PreconditionError otherwise); the bound is the sum of both bounds.
AveragingWitness chain(const AveragingWitness& first, const AveragingWitness& second);

/// Unitary with a one at (i, dest[i]); conjugation u^* a u moves index i to
/// dest[i].
CMatrix permutation_unitary(const Permutation& dest);

/// y' = diag(0, a, ..., a) (K - 1 copies) to y = diag(a, ..., a) (K copies)
/// with the K cyclic block shifts at weight 1/K. Achieved error is ||a|| / K.
/// Throws ParameterError for K < 2.
AveragingWitness cyclic_shift_witness(const NormalMatrix& a, int k);

/// Layout [e | q | p]: source diag(y_small, 0, y_big), target diag(0, 0, y_big),
/// identity plus K swaps of e with disjoint blocks of q at weight 1/(K+1).
/// q_size defaults to K * size(e); ParameterError when K * size(e) > q_size.
AveragingWitness absorb_witness(const NormalMatrix& y_small, const NormalMatrix& y_big, int k,
                                std::optional<int> q_size = std::nullopt);

/// Layout [p_1 .. p_l | e_1 .. e_l] with p_i the eigenspaces of x (in x's
/// frame) and e_i of size e_sizes[i]. Source x (+) y_small, target
/// x (+) sum_i lambda_i e_i, bound (||y_small|| + 3||x||) / K.
/// ParameterError unless (K + 2) e_sizes[i] <= m_i and K >= 2.
AveragingWitness corner_replace_witness(const SpectralForm& x, const std::vector<int>& e_sizes,
                                        const NormalMatrix& y_small, int k);

/// x = x1 (+) x2 with x1 = sum_j lambda_j p_j. Source x1 (+) 0, target x,
/// bound 8||x|| / K + eps + eta. eta defaults to the smallest admissible
/// value (largest distance from sp(x2) to the lambda_j); a supplied eta below
/// it is a PreconditionError. ParameterError unless (2K + 5) size(x2) <= m_j.
AveragingWitness absorb_estimate(const SpectralForm& x1, const NormalMatrix& x2, int k,
                                 std::optional<double> eta = std::nullopt, double eps = 0.0);

}  // namespace orbithull
