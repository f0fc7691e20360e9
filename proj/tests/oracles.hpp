#pragma once

// Independent reference computations used as test oracles. They favour
// brute force over speed and share no code with the library routines
// they check.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "orbithull/core.hpp"

namespace oracle {

using orbithull::CMatrix;
using orbithull::Complex;
using orbithull::CVector;
using orbithull::RMatrix;
using orbithull::RVector;

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// sqrt of the largest eigenvalue of M^* M by power iteration.
inline double power_norm(const CMatrix& m, int iters = 2000) {
  const CMatrix g = m.adjoint() * m;
  CVector v = CVector::Ones(m.cols()) + CVector::LinSpaced(m.cols(), 0.1, 0.9) * Complex(0.0, 1.0);
  double lam = 0.0;
  for (int i = 0; i < iters; ++i) {
    const CVector w = g * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    lam = std::abs(v.dot(w)) / v.squaredNorm();
    v = w / nw;
  }
  return std::sqrt(lam);
}

/// Max over permutations of sum_i w(i, sigma(i)).
inline double brute_assignment(const RMatrix& w) {
  double best = -1e300;
  for (const auto& p : all_permutations(static_cast<int>(w.rows()))) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += w(static_cast<Eigen::Index>(i), p[i]);
    best = std::max(best, s);
  }
  return best;
}

/// Real majorization by the definition on sorted prefix sums, with slack.
inline bool prefix_majorized(std::vector<double> lam, std::vector<double> mu, double slack) {
  std::sort(lam.rbegin(), lam.rend());
  std::sort(mu.rbegin(), mu.rend());
  double sl = 0.0, sm = 0.0;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    sl += lam[i];
    sm += mu[i];
    if (sl > sm + slack) return false;
  }
  return std::abs(sl - sm) <= slack;
}

inline CMatrix diag(const CVector& v) { return v.asDiagonal(); }

inline bool is_unitary(const CMatrix& u, double tol) {
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace oracle
