#include "orbithull/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace orbithull {

ComplexTuple::ComplexTuple(CVector entries) : entries_(std::move(entries)) {
  if (entries_.size() < 1) throw ShapeError("ComplexTuple: needs at least one entry");
}

ComplexTuple::ComplexTuple(std::initializer_list<Complex> entries)
    : ComplexTuple(CVector::Map(entries.begin(), static_cast<Eigen::Index>(entries.size()))) {}

bool ComplexTuple::is_real(double tol) const {
  return entries_.size() == 0 || entries_.imag().cwiseAbs().maxCoeff() <= tol;
}

DoublyStochastic::DoublyStochastic(RMatrix d) : d_(std::move(d)) {
  if (d_.rows() != d_.cols() || d_.rows() == 0) {
    throw ShapeError("DoublyStochastic: expected a nonempty square matrix");
  }
  if (!satisfies(d_)) {
    throw InvariantError("DoublyStochastic: negative entry or row/column sum off 1 (defect " +
                         std::to_string(sum_defect(d_)) + ")");
  }
}

DoublyStochastic DoublyStochastic::identity(Eigen::Index n) {
  return DoublyStochastic(RMatrix::Identity(n, n));
}

DoublyStochastic DoublyStochastic::uniform(Eigen::Index n) {
  return DoublyStochastic(RMatrix::Constant(n, n, 1.0 / static_cast<double>(n)));
}

double DoublyStochastic::sum_defect(const RMatrix& d) {
  const double rows = (d.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double cols = (d.colwise().sum().array() - 1.0).abs().maxCoeff();
  return std::max(rows, cols);
}

bool DoublyStochastic::satisfies(const RMatrix& d, double entry_tol, double sum_tol) {
  if (d.rows() != d.cols() || d.rows() == 0) return false;
  return d.minCoeff() >= -entry_tol && sum_defect(d) <= sum_tol;
}

namespace {

void check_pair(const ComplexTuple& lam, const ComplexTuple& mu) {
  if (lam.size() != mu.size()) {
    throw ShapeError("tuples differ in length: " + std::to_string(lam.size()) + " vs " +
                     std::to_string(mu.size()));
  }
}

// min t  s.t.  D doubly stochastic, |Re/Im (D mu - lambda)_i| <= t.
// Columns: d_ij at i*n+j, t at n^2, then 4n slacks.
// Rows: n row sums, n column sums, then per i: Re+, Re-, Im+, Im-.
template <typename Scalar>
StandardFormLp<Scalar> distance_lp(const std::vector<Scalar>& lre, const std::vector<Scalar>& lim,
                                   const std::vector<Scalar>& mre, const std::vector<Scalar>& mim) {
  const std::size_t n = lre.size();
  const std::size_t tcol = n * n;
  StandardFormLp<Scalar> lp(6 * n, n * n + 1 + 4 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      lp.a(i, i * n + j) = Scalar(1);
      lp.a(n + j, i * n + j) = Scalar(1);
    }
    lp.b(i) = Scalar(1);
    lp.b(n + i) = Scalar(1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t base = 2 * n + 4 * i;
    for (std::size_t j = 0; j < n; ++j) {
      lp.a(base + 0, i * n + j) = mre[j];
      lp.a(base + 1, i * n + j) = -mre[j];
      lp.a(base + 2, i * n + j) = mim[j];
      lp.a(base + 3, i * n + j) = -mim[j];
    }
    for (std::size_t r = 0; r < 4; ++r) {
      lp.a(base + r, tcol) = Scalar(-1);
      lp.a(base + r, tcol + 1 + 4 * i + r) = Scalar(1);
    }
    lp.b(base + 0) = lre[i];
    lp.b(base + 1) = -lre[i];
    lp.b(base + 2) = lim[i];
    lp.b(base + 3) = -lim[i];
  }
  lp.c(tcol) = Scalar(1);
  return lp;
}

template <typename Scalar>
struct DistanceSolution {
  std::vector<std::vector<Scalar>> d;
  Scalar t;
  CVector separator;
};

template <typename Scalar, typename Convert>
DistanceSolution<Scalar> solve_distance(const ComplexTuple& lam, const ComplexTuple& mu,
                                        Convert conv) {
  const std::size_t n = static_cast<std::size_t>(lam.size());
  std::vector<Scalar> lre(n), lim(n), mre(n), mim(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    lre[i] = conv(lam[k].real());
    lim[i] = conv(lam[k].imag());
    mre[i] = conv(mu[k].real());
    mim[i] = conv(mu[k].imag());
  }
  const auto lp = distance_lp<Scalar>(lre, lim, mre, mim);
  const auto res = solve_lp(lp);
  if (res.status != LpStatus::optimal) {
    // The Birkhoff polytope is nonempty and t is bounded below by 0.
    throw DegeneracyError(std::string("distance LP returned ") + to_string(res.status));
  }
  DistanceSolution<Scalar> out;
  out.d.assign(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.d[i][j] = res.x[i * n + j];
  }
  out.t = res.objective;
  out.separator.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t base = 2 * n + 4 * i;
    const double re = to_double(res.dual[base + 0]) - to_double(res.dual[base + 1]);
    const double im = to_double(res.dual[base + 2]) - to_double(res.dual[base + 3]);
    out.separator(static_cast<Eigen::Index>(i)) = Complex(re, im);
  }
  return out;
}

// Simplex vertices satisfy the equalities to rounding; only negative dust
// needs clamping.
RMatrix to_matrix(const std::vector<std::vector<double>>& d) {
  const auto n = static_cast<Eigen::Index>(d.size());
  RMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = std::max(0.0, d[i][j]);
  }
  return out;
}

}  // namespace

double separation_gap(const CVector& c, const ComplexTuple& lam, const ComplexTuple& mu) {
  check_pair(lam, mu);
  const Eigen::Index n = lam.size();
  RMatrix w(n, n);
  double at_lambda = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    at_lambda += (std::conj(c(i)) * lam[i]).real();
    for (Eigen::Index j = 0; j < n; ++j) w(i, j) = (std::conj(c(i)) * mu[j]).real();
  }
  return at_lambda - max_weight_assignment(w).value;
}

MajorizationCertificate is_majorized(const ComplexTuple& lam, const ComplexTuple& mu, double tol,
                                     bool exact) {
  check_pair(lam, mu);
  if (!(tol > 0.0)) throw ParameterError("is_majorized: tol must be positive");
  const Eigen::Index n = lam.size();

  MajorizationCertificate cert;
  cert.tol = tol;
  RMatrix d;
  CVector separator;
  const Complex mean = mu.entries().mean();
  if (box_norm(lam.entries() - CVector::Constant(n, mean)) <= tol / 2) {
    // Constant lambda at the mean of mu: J/n is a witness.
    const RMatrix j = RMatrix::Constant(n, n, 1.0 / static_cast<double>(n));
    cert.residual = box_norm(j.cast<Complex>() * mu.entries() - lam.entries());
    if (cert.residual <= tol) {
      cert.feasible = true;
      cert.witness = DoublyStochastic(j);
      if (exact) {
        cert.exact_witness = std::vector<std::vector<std::string>>(
            static_cast<std::size_t>(n), std::vector<std::string>(static_cast<std::size_t>(n),
                                                                  Rational(1, static_cast<long>(n)).str()));
      }
      return cert;
    }
  }
  if (exact) {
    const auto sol = solve_distance<Rational>(lam, mu, [](double v) { return to_rational(v); });
    cert.feasible = sol.t <= to_rational(tol);
    std::vector<std::vector<double>> dd(static_cast<std::size_t>(n));
    std::vector<std::vector<std::string>> exact_d(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < sol.d.size(); ++i) {
      for (const Rational& r : sol.d[i]) {
        dd[i].push_back(to_double(r));
        exact_d[i].push_back(r.str());
      }
    }
    d = to_matrix(dd);
    separator = sol.separator;
    if (cert.feasible) cert.exact_witness = std::move(exact_d);
  } else {
    const auto sol = solve_distance<double>(lam, mu, [](double v) { return v; });
    cert.feasible = sol.t <= tol;
    d = to_matrix(sol.d);
    separator = sol.separator;
  }

  const CVector image = d.cast<Complex>() * mu.entries();
  cert.residual = box_norm(image - lam.entries());
  if (cert.feasible) {
    cert.witness = DoublyStochastic(d);
    // A witness must meet the stated residual bound on direct evaluation.
    cert.feasible = cert.residual <= tol;
  }
  if (!cert.feasible) {
    cert.witness.reset();
    cert.exact_witness.reset();
    cert.separator = separator;
    cert.gap = separation_gap(separator, lam, mu);
  }
  return cert;
}

bool perm_hull_oracle(const ComplexTuple& lam, const ComplexTuple& mu, double tol) {
  check_pair(lam, mu);
  const Eigen::Index n = lam.size();
  if (n > 8) throw SizeError("perm_hull_oracle: n > 8 is not enumerable");
  if (!(tol > 0.0)) throw ParameterError("perm_hull_oracle: tol must be positive");

  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  // sum_s w_s = 1 and, per coordinate, |sum_s w_s (P_s mu)_i - lambda_i| <= tol
  // written as four slack rows.
  const std::size_t np = perms.size();
  const auto un = static_cast<std::size_t>(n);
  StandardFormLp<double> lp(1 + 4 * un, np + 4 * un);
  for (std::size_t s = 0; s < np; ++s) lp.a(0, s) = 1.0;
  lp.b(0) = 1.0;
  for (std::size_t i = 0; i < un; ++i) {
    const std::size_t row = 1 + 4 * i;
    for (std::size_t s = 0; s < np; ++s) {
      const Complex v = mu[perms[s][i]];
      lp.a(row + 0, s) = v.real();
      lp.a(row + 1, s) = -v.real();
      lp.a(row + 2, s) = v.imag();
      lp.a(row + 3, s) = -v.imag();
    }
    for (std::size_t r = 0; r < 4; ++r) lp.a(row + r, np + 4 * i + r) = 1.0;
    const Complex l = lam[static_cast<Eigen::Index>(i)];
    lp.b(row + 0) = l.real() + tol;
    lp.b(row + 1) = -l.real() + tol;
    lp.b(row + 2) = l.imag() + tol;
    lp.b(row + 3) = -l.imag() + tol;
  }
  return solve_lp(lp).status == LpStatus::optimal;
}

bool real_majorization(const RVector& lam, const RVector& mu) {
  if (lam.size() != mu.size()) throw ShapeError("real_majorization: length mismatch");
  std::vector<double> a(lam.data(), lam.data() + lam.size());
  std::vector<double> b(mu.data(), mu.data() + mu.size());
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double sa = 0.0, sb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sa += a[k];
    sb += b[k];
    if (sa > sb + 1e-10) return false;
  }
  return std::abs(sa - sb) <= 1e-10;
}

bool real_majorization(const ComplexTuple& lam, const ComplexTuple& mu) {
  if (!lam.is_real() || !mu.is_real()) {
    throw DomainError("real_majorization: tuples must be real");
  }
  return real_majorization(RVector(lam.entries().real()), RVector(mu.entries().real()));
}

HullDistance hull_distance(const ComplexTuple& lam, const ComplexTuple& mu) {
  check_pair(lam, mu);
  const auto sol = solve_distance<double>(lam, mu, [](double v) { return v; });
  HullDistance out;
  out.optimal_d = to_matrix(sol.d);
  const CVector image = out.optimal_d.cast<Complex>() * mu.entries();
  out.box = std::max(0.0, box_norm(image - lam.entries()));
  out.modulus_lower = out.box;
  out.modulus_upper = std::sqrt(2.0) * out.box;
  out.separator = sol.separator;
  return out;
}

Assignment max_weight_assignment(const RMatrix& w) {
  // Shortest augmenting path Hungarian method on cost = -w (1-indexed
  // potentials, column 0 is the virtual source).
  const int n = static_cast<int>(w.rows());
  if (w.cols() != n) throw ShapeError("max_weight_assignment: square weights required");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -w(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Assignment out;
  out.sigma.assign(n, 0);
  for (int j = 1; j <= n; ++j) out.sigma[p[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) out.value += w(i, out.sigma[i]);
  return out;
}

}  // namespace orbithull
