#include "orbithull/random.hpp"

#include <algorithm>
#include <numeric>

namespace orbithull {

Rng make_rng(std::uint64_t seed) { return Rng(seed); }

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

CVector random_tuple(Rng& rng, Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
  return v;
}

CVector random_real_tuple(Rng& rng, Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(rng, -1, 1);
  return v;
}

CMatrix random_unitary(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) z(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Permutation random_permutation(Rng& rng, Eigen::Index n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  // Fisher-Yates with an explicit distribution for portable output.
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const int j = uniform_int(rng, 0, static_cast<int>(i));
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  }
  return p;
}

RVector random_simplex(Rng& rng, Eigen::Index n) {
  std::exponential_distribution<double> e(1.0);
  RVector w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = e(rng) + 1e-3;
  return w / w.sum();
}

DoublyStochastic random_doubly_stochastic(Rng& rng, Eigen::Index n, int terms) {
  const RVector w = random_simplex(rng, terms);
  RMatrix d = RMatrix::Zero(n, n);
  for (int t = 0; t < terms; ++t) d += w(t) * permutation_matrix(random_permutation(rng, n));
  return DoublyStochastic(d);
}

CMatrix random_normal(Rng& rng, const CVector& values) {
  const CMatrix u = random_unitary(rng, values.size());
  return u * values.asDiagonal() * u.adjoint();
}

}  // namespace orbithull
