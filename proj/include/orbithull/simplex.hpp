#pragma once

// Dense two-phase tableau simplex (Dantzig pricing, Bland's rule on stalls),
// templated on the scalar
// so the same code runs in double precision and over exact rationals.
//
// Problem form:   minimize c.x   subject to   A x = b,  x >= 0.
//
// Every row gets an artificial column. Phase 1 minimizes their sum; the
// artificial columns are kept (barred from entering) through phase 2 so the
// optimal duals can be read off their reduced costs. An infeasible problem
// returns a Farkas vector y with y^T A <= 0 and y^T b > 0.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "orbithull/core.hpp"

namespace orbithull {

using Rational = boost::multiprecision::cpp_rational;

enum class LpStatus { optimal, infeasible, unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

template <typename Scalar>
struct SimplexTolerance {
  static Scalar pivot() { return Scalar(1e-11); }
  static Scalar cost() { return Scalar(1e-10); }
  static Scalar feasibility() { return Scalar(1e-9); }
};

template <>
struct SimplexTolerance<Rational> {
  static Rational pivot() { return Rational(0); }
  static Rational cost() { return Rational(0); }
  static Rational feasibility() { return Rational(0); }
};

/// Dense standard-form LP. Row-major constraint matrix.
template <typename Scalar>
class StandardFormLp {
 public:
  StandardFormLp(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Scalar(0)), b_(rows, Scalar(0)),
        c_(cols, Scalar(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& a(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& a(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Scalar& b(std::size_t i) { return b_[i]; }
  const Scalar& b(std::size_t i) const { return b_[i]; }
  Scalar& c(std::size_t j) { return c_[j]; }
  const Scalar& c(std::size_t j) const { return c_[j]; }

 private:
  std::size_t rows_, cols_;
  std::vector<Scalar> a_, b_, c_;
};

template <typename Scalar>
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<Scalar> x;       // primal solution (optimal only)
  std::vector<Scalar> dual;    // y with reduced costs c - A^T y >= 0 (optimal only)
  std::vector<Scalar> farkas;  // y^T A <= 0, y^T b > 0 (infeasible only)
  Scalar objective = Scalar(0);
  Scalar infeasibility = Scalar(0);  // phase-1 optimum
  long pivots = 0;
};

namespace detail {

template <typename Scalar>
class Tableau {
 public:
  Tableau(const StandardFormLp<Scalar>& lp)
      : m_(lp.rows()), n_(lp.cols()), width_(n_ + m_ + 1), t_((m_ + 1) * width_, Scalar(0)),
        basis_(m_), sign_(m_, 1) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (lp.b(i) < Scalar(0)) sign_[i] = -1;
      const Scalar s = Scalar(sign_[i]);
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = s * lp.a(i, j);
      at(i, n_ + i) = Scalar(1);
      rhs(i) = s * lp.b(i);
      basis_[i] = n_ + i;
    }
  }

  Scalar& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
  Scalar& rhs(std::size_t i) { return at(i, width_ - 1); }
  const Scalar& rhs(std::size_t i) const { return at(i, width_ - 1); }
  Scalar& cost(std::size_t j) { return at(m_, j); }

  void set_phase_one() {
    for (std::size_t j = 0; j < width_; ++j) cost(j) = Scalar(0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) cost(j) -= at(i, j);
      cost(width_ - 1) -= rhs(i);
    }
  }

  void set_phase_two(const StandardFormLp<Scalar>& lp) {
    for (std::size_t j = 0; j < width_; ++j) cost(j) = j < n_ ? lp.c(j) : Scalar(0);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t bj = basis_[i];
      const Scalar cb = bj < n_ ? lp.c(bj) : Scalar(0);
      if (cb == Scalar(0)) continue;
      for (std::size_t j = 0; j < width_; ++j) cost(j) -= cb * at(i, j);
    }
  }

  void pivot(std::size_t r, std::size_t s) {
    const Scalar inv = Scalar(1) / at(r, s);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) *= inv;
    at(r, s) = Scalar(1);
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const Scalar f = at(i, s);
      if (f == Scalar(0)) continue;
      Scalar* row = &t_[i * width_];
      const Scalar* prow = &t_[r * width_];
      for (std::size_t j = 0; j < width_; ++j) {
        if (prow[j] != Scalar(0)) row[j] -= f * prow[j];
      }
      row[s] = Scalar(0);
    }
    basis_[r] = s;
    ++pivots_;
  }

  // Returns false when unbounded.
  bool run(std::size_t enterable) {
    const Scalar cost_tol = SimplexTolerance<Scalar>::cost();
    const Scalar piv_tol = SimplexTolerance<Scalar>::pivot();
    const long limit = 200000 + 50 * static_cast<long>(width_ * (m_ + 1));
    // Dantzig pricing; Bland's rule while the objective stalls.
    constexpr long kStall = 50;
    long stalled = 0;
    for (;;) {
      if (pivots_ > limit) throw DegeneracyError("simplex: pivot limit exceeded");
      std::size_t s = enterable;
      if (stalled >= kStall) {
        for (std::size_t j = 0; j < enterable; ++j) {
          if (cost(j) < -cost_tol) {
            s = j;
            break;
          }
        }
      } else {
        Scalar most = -cost_tol;
        for (std::size_t j = 0; j < enterable; ++j) {
          if (cost(j) < most) {
            most = cost(j);
            s = j;
          }
        }
      }
      if (s == enterable) return true;
      std::size_t r = m_;
      Scalar best(0);
      for (std::size_t i = 0; i < m_; ++i) {
        const Scalar& v = at(i, s);
        if (!(v > piv_tol)) continue;
        const Scalar ratio = rhs(i) / v;
        if (r == m_ || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == m_) return false;
      stalled = best > Scalar(0) ? 0 : stalled + 1;
      pivot(r, s);
    }
  }

  void drive_out_artificials() {
    const Scalar piv_tol = SimplexTolerance<Scalar>::pivot();
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::size_t best = n_;
      Scalar mag(0);
      for (std::size_t j = 0; j < n_; ++j) {
        Scalar v = at(i, j);
        if (v < Scalar(0)) v = -v;
        if (v > piv_tol && v > mag) {
          mag = v;
          best = j;
        }
      }
      if (best < n_) pivot(i, best);  // otherwise the row is redundant
    }
  }

  std::vector<Scalar> primal() const {
    std::vector<Scalar> x(n_, Scalar(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) {
        const Scalar v = rhs(i);
        x[basis_[i]] = v < Scalar(0) ? Scalar(0) : v;
      }
    }
    return x;
  }

  // Duals of the original rows given the cost attached to artificials.
  std::vector<Scalar> duals(const Scalar& artificial_cost) const {
    std::vector<Scalar> y(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      y[i] = Scalar(sign_[i]) * (artificial_cost - at(m_, n_ + i));
    }
    return y;
  }

  Scalar objective_value() const { return -at(m_, width_ - 1); }
  long pivots() const { return pivots_; }
  std::size_t originals() const { return n_; }

 private:
  std::size_t m_, n_, width_;
  std::vector<Scalar> t_;
  std::vector<std::size_t> basis_;
  std::vector<int> sign_;
  long pivots_ = 0;
};

}  // namespace detail

template <typename Scalar>
LpResult<Scalar> solve_lp(const StandardFormLp<Scalar>& lp) {
  detail::Tableau<Scalar> tab(lp);
  LpResult<Scalar> result;

  Scalar bscale(1);
  for (std::size_t i = 0; i < lp.rows(); ++i) {
    Scalar v = lp.b(i) < Scalar(0) ? Scalar(-lp.b(i)) : lp.b(i);
    if (v > bscale) bscale = v;
  }

  tab.set_phase_one();
  tab.run(tab.originals());
  result.infeasibility = tab.objective_value();
  if (result.infeasibility > SimplexTolerance<Scalar>::feasibility() * bscale) {
    result.status = LpStatus::infeasible;
    result.farkas = tab.duals(Scalar(1));
    result.pivots = tab.pivots();
    return result;
  }
  tab.drive_out_artificials();
  tab.set_phase_two(lp);
  if (!tab.run(tab.originals())) {
    result.status = LpStatus::unbounded;
    result.pivots = tab.pivots();
    return result;
  }
  result.status = LpStatus::optimal;
  result.x = tab.primal();
  result.dual = tab.duals(Scalar(0));
  result.objective = tab.objective_value();
  result.pivots = tab.pivots();
  return result;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double v) { return v; }

/// Exact conversion of a finite double to a rational.
inline Rational to_rational(double v) {
  if (!std::isfinite(v)) throw DomainError("to_rational: non-finite value");
  int exp = 0;
  double mant = std::frexp(v, &exp);
  // 53 bits of mantissa shifted into an integer.
  const double scaled = std::ldexp(mant, 53);
  Rational r(static_cast<long long>(scaled));
  exp -= 53;
  boost::multiprecision::cpp_int p = 1;
  p <<= std::abs(exp);
  if (exp >= 0) return r * Rational(p);
  return r / Rational(p);
}

}  // namespace orbithull
