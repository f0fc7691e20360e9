#pragma once

#include <optional>
#include <vector>

#include "orbithull/core.hpp"
#include "orbithull/majorization.hpp"

namespace orbithull {

/// sigma[i] is the image of i (0-indexed). The matrix P_sigma has a one at
/// (i, sigma[i]), so (P_sigma v)_i = v_{sigma[i]}.
using Permutation = std::vector<int>;

RMatrix permutation_matrix(const Permutation& sigma);
bool is_permutation(const Permutation& sigma);

struct PermutationTerm {
  double weight = 0.0;
  Permutation perm;
};

/// Convex combination of distinct permutations; weights sum to 1 within 1e-12.
class PermutationCombination {
 public:
  explicit PermutationCombination(std::vector<PermutationTerm> terms);

  const std::vector<PermutationTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  /// Common permutation length.
  Eigen::Index n() const;

 private:
  std::vector<PermutationTerm> terms_;
};

/// Perfect matching on the support {(i, j) : w(i, j) > threshold}. Rows are
/// processed in order and columns tried in increasing order, so the result is
/// deterministic. Empty optional when none exists.
std::optional<Permutation> support_matching(const RMatrix& w, double threshold);

/// Greedy Birkhoff peeling. Entries at or below tol/n count as zero.
/// Throws DegeneracyError if the residual loses its perfect matching while
/// mass above `tol` remains.
PermutationCombination decompose(const DoublyStochastic& d, double tol = 1e-12);

/// sum_t weight_t * P_t.
DoublyStochastic evaluate(const PermutationCombination& c, Eigen::Index n);

/// Marcus-Ree / Caratheodory bound (n-1)^2 + 1.
inline std::size_t birkhoff_term_bound(Eigen::Index n) {
  return static_cast<std::size_t>((n - 1) * (n - 1) + 1);
}

}  // namespace orbithull
