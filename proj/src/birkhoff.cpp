#include "orbithull/birkhoff.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

namespace orbithull {

RMatrix permutation_matrix(const Permutation& sigma) {
  const auto n = static_cast<Eigen::Index>(sigma.size());
  RMatrix p = RMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p(i, sigma[static_cast<std::size_t>(i)]) = 1.0;
  return p;
}

bool is_permutation(const Permutation& sigma) {
  std::vector<bool> seen(sigma.size(), false);
  for (int v : sigma) {
    if (v < 0 || static_cast<std::size_t>(v) >= sigma.size() || seen[static_cast<std::size_t>(v)]) {
      return false;
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

PermutationCombination::PermutationCombination(std::vector<PermutationTerm> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) throw InvariantError("PermutationCombination: no terms");
  const std::size_t n = terms_.front().perm.size();
  double total = 0.0;
  std::set<Permutation> seen;
  for (const auto& t : terms_) {
    if (t.perm.size() != n || !is_permutation(t.perm)) {
      throw InvariantError("PermutationCombination: invalid permutation");
    }
    if (!(t.weight > 0.0) || t.weight > 1.0 + 1e-12) {
      throw InvariantError("PermutationCombination: weight outside (0, 1]");
    }
    if (!seen.insert(t.perm).second) {
      throw InvariantError("PermutationCombination: repeated permutation");
    }
    total += t.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvariantError("PermutationCombination: weights sum to " + std::to_string(total));
  }
}

Eigen::Index PermutationCombination::n() const {
  return static_cast<Eigen::Index>(terms_.front().perm.size());
}

std::optional<Permutation> support_matching(const RMatrix& w, double threshold) {
  const int n = static_cast<int>(w.rows());
  std::vector<int> match_col(n, -1);  // column -> row
  std::vector<char> visited;
  std::function<bool(int)> augment = [&](int row) {
    for (int j = 0; j < n; ++j) {
      if (w(row, j) <= threshold || visited[j]) continue;
      visited[j] = 1;
      if (match_col[j] < 0 || augment(match_col[j])) {
        match_col[j] = row;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < n; ++i) {
    visited.assign(n, 0);
    if (!augment(i)) return std::nullopt;
  }
  Permutation sigma(n);
  for (int j = 0; j < n; ++j) sigma[match_col[j]] = j;
  return sigma;
}

PermutationCombination decompose(const DoublyStochastic& d, double tol) {
  if (!(tol > 0.0)) throw ParameterError("decompose: tol must be positive");
  const Eigen::Index n = d.size();
  const double zero = tol / static_cast<double>(n);
  RMatrix residual = d.matrix();
  residual = (residual.array() <= zero).select(0.0, residual);

  std::vector<PermutationTerm> terms;
  while (residual.maxCoeff() > zero) {
    auto sigma = support_matching(residual, zero);
    if (!sigma) {
      if (residual.maxCoeff() <= std::max(tol, 1e-9)) break;
      throw DegeneracyError("decompose: residual has no perfect matching (max entry " +
                            std::to_string(residual.maxCoeff()) +
                            "); input is not doubly stochastic within tol");
    }
    double weight = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) weight = std::min(weight, residual(i, (*sigma)[i]));
    for (Eigen::Index i = 0; i < n; ++i) {
      double& e = residual(i, (*sigma)[i]);
      e -= weight;
      if (e <= zero) e = 0.0;
    }
    if (weight >= tol / 2.0) terms.push_back({weight, std::move(*sigma)});
  }
  if (terms.empty()) throw DegeneracyError("decompose: no mass above tolerance");

  // Renormalize so the weights form an exact convex combination; the
  // deficit is the dust removed above.
  double total = 0.0;
  for (const auto& t : terms) total += t.weight;
  for (auto& t : terms) t.weight /= total;
  return PermutationCombination(std::move(terms));
}

DoublyStochastic evaluate(const PermutationCombination& c, Eigen::Index n) {
  if (c.n() != n) throw ShapeError("evaluate: permutation length differs from n");
  RMatrix d = RMatrix::Zero(n, n);
  for (const auto& t : c.terms()) {
    for (Eigen::Index i = 0; i < n; ++i) d(i, t.perm[static_cast<std::size_t>(i)]) += t.weight;
  }
  return DoublyStochastic(std::move(d));
}

}  // namespace orbithull
