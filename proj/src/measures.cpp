#include "orbithull/measures.hpp"

#include <algorithm>
#include <cmath>

#include "orbithull/simplex.hpp"

namespace orbithull {

DiscreteTransferMap::DiscreteTransferMap(std::vector<Complex> x, std::vector<Complex> y, RMatrix s)
    : x_(std::move(x)), y_(std::move(y)), s_(std::move(s)) {
  if (s_.rows() != static_cast<Eigen::Index>(y_.size()) ||
      s_.cols() != static_cast<Eigen::Index>(x_.size())) {
    throw ShapeError("DiscreteTransferMap: S must be |Y| x |X|");
  }
  if (s_.size() > 0 && (s_.minCoeff() < 0.0 ||
                        (s_.rowwise().sum().array() - 1.0).abs().maxCoeff() > 1e-12)) {
    throw InvariantError("DiscreteTransferMap: rows of S must be probability vectors");
  }
}

CVector DiscreteTransferMap::apply(const CVector& f) const {
  if (f.size() != s_.cols()) throw ShapeError("DiscreteTransferMap::apply: size mismatch");
  return s_.cast<Complex>() * f;
}

RVector DiscreteTransferMap::pushback(const RVector& nu) const {
  if (nu.size() != s_.rows()) throw ShapeError("DiscreteTransferMap::pushback: size mismatch");
  return s_.transpose() * nu;
}

std::vector<std::pair<int, int>> test_monomials(int degree) {
  std::vector<std::pair<int, int>> out;
  for (int total = 1; total <= degree; ++total) {
    for (int a = total; a >= 0; --a) out.emplace_back(a, total - a);
  }
  return out;
}

namespace {

Complex monomial(Complex z, int a, int b) {
  return std::pow(z, a) * std::pow(std::conj(z), b);
}

// Real functional L(v) = coef . v - constant over the kernel entries.
struct Functional {
  std::vector<double> coef;
  double constant = 0.0;
};

void check_inputs(double eps, int degree) {
  if (degree < 1) throw ParameterError("degree must be at least 1");
  if (!(eps >= 0.0)) throw ParameterError("eps must be nonnegative");
}

// Functionals for (a) and (b), with kernel entry (y, x) at index(y, x).
template <typename Index>
std::vector<Functional> functionals(const DiscreteMeasure& mx, const DiscreteMeasure& my,
                                    int degree, Index index) {
  const auto& xs = mx.support();
  const auto& ys = my.support();
  const std::size_t vars = xs.size() * ys.size();
  std::vector<Functional> out;
  for (std::size_t y = 0; y < ys.size(); ++y) {
    Functional re{std::vector<double>(vars, 0.0), ys[y].real()};
    Functional im{std::vector<double>(vars, 0.0), ys[y].imag()};
    for (std::size_t x = 0; x < xs.size(); ++x) {
      re.coef[index(y, x)] = xs[x].real();
      im.coef[index(y, x)] = xs[x].imag();
    }
    out.push_back(std::move(re));
    out.push_back(std::move(im));
  }
  for (const auto& [a, b] : test_monomials(degree)) {
    Complex target = 0.0;
    for (std::size_t x = 0; x < xs.size(); ++x) target += mx.weights()[x] * monomial(xs[x], a, b);
    Functional re{std::vector<double>(vars, 0.0), target.real()};
    Functional im{std::vector<double>(vars, 0.0), target.imag()};
    for (std::size_t y = 0; y < ys.size(); ++y) {
      for (std::size_t x = 0; x < xs.size(); ++x) {
        const Complex f = my.weights()[y] * monomial(xs[x], a, b);
        re.coef[index(y, x)] = f.real();
        im.coef[index(y, x)] = f.imag();
      }
    }
    out.push_back(std::move(re));
    out.push_back(std::move(im));
  }
  return out;
}

void measure_defects(const DiscreteMeasure& mx, const DiscreteMeasure& my, const RMatrix& s,
                     int degree, TransferReport& r) {
  const auto& xs = mx.support();
  const auto& ys = my.support();
  r.transport_defect = 0.0;
  for (std::size_t y = 0; y < ys.size(); ++y) {
    Complex v = 0.0;
    for (std::size_t x = 0; x < xs.size(); ++x) v += s(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) * xs[x];
    v -= ys[y];
    r.transport_defect = std::max({r.transport_defect, std::abs(v.real()), std::abs(v.imag())});
  }
  r.trace_defect = 0.0;
  for (const auto& [a, b] : test_monomials(degree)) {
    Complex v = 0.0;
    for (std::size_t x = 0; x < xs.size(); ++x) {
      v -= mx.weights()[x] * monomial(xs[x], a, b);
      for (std::size_t y = 0; y < ys.size(); ++y) {
        v += my.weights()[y] * s(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) *
             monomial(xs[x], a, b);
      }
    }
    r.trace_defect = std::max({r.trace_defect, std::abs(v.real()), std::abs(v.imag())});
  }
}

// Clamp rounding dust and renormalize rows to exact probability vectors.
RMatrix clean_rows(RMatrix s) {
  s = s.cwiseMax(0.0);
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    const double total = s.row(i).sum();
    if (total > 0.0) s.row(i) /= total;
  }
  return s;
}

}  // namespace

TransferReport check_condition4(const DiscreteMeasure& mx, const DiscreteMeasure& my, double eps,
                                int degree) {
  check_inputs(eps, degree);
  const std::size_t m = mx.size();
  const std::size_t k = my.size();
  const auto index = [m](std::size_t y, std::size_t x) { return y * m + x; };
  const auto fs = functionals(mx, my, degree, index);
  const std::size_t vars = k * m;
  const std::size_t t_col = vars;
  const std::size_t cols = vars + 1 + 2 * fs.size();
  StandardFormLp<double> lp(k + 2 * fs.size(), cols);
  for (std::size_t y = 0; y < k; ++y) {
    for (std::size_t x = 0; x < m; ++x) lp.a(y, index(y, x)) = 1.0;
    lp.b(y) = 1.0;
  }
  // L - t + s1 = c  and  -L - t + s2 = -c.
  for (std::size_t f = 0; f < fs.size(); ++f) {
    const std::size_t up = k + 2 * f;
    const std::size_t down = up + 1;
    for (std::size_t j = 0; j < vars; ++j) {
      lp.a(up, j) = fs[f].coef[j];
      lp.a(down, j) = -fs[f].coef[j];
    }
    lp.a(up, t_col) = -1.0;
    lp.a(down, t_col) = -1.0;
    lp.a(up, vars + 1 + 2 * f) = 1.0;
    lp.a(down, vars + 2 + 2 * f) = 1.0;
    lp.b(up) = fs[f].constant;
    lp.b(down) = -fs[f].constant;
  }
  lp.c(t_col) = 1.0;
  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) {
    throw InvariantError(std::string("check_condition4: LP ended ") + to_string(sol.status));
  }
  RMatrix s(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m));
  for (std::size_t y = 0; y < k; ++y) {
    for (std::size_t x = 0; x < m; ++x) {
      s(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = sol.x[index(y, x)];
    }
  }
  s = clean_rows(s);
  TransferReport r;
  r.eps = eps;
  r.degree = degree;
  r.budget = std::max(0.0, sol.x[t_col]);
  measure_defects(mx, my, s, degree, r);
  r.feasible = r.budget <= eps;
  if (r.feasible) r.map = DiscreteTransferMap(mx.support(), my.support(), s);
  return r;
}

TransferReport check_condition5(const DiscreteMeasure& mx, const DiscreteMeasure& my, double eps,
                                int degree) {
  check_inputs(eps, degree);
  const std::size_t m = mx.size();
  const std::size_t k = my.size();
  // gamma(delta_y) is column y of G, stored column-major: G(x, y) at x * k + y.
  const auto index = [k](std::size_t y, std::size_t x) { return x * k + y; };
  const auto fs = functionals(mx, my, degree, index);
  const std::size_t vars = k * m;
  const std::size_t cols = vars + 2 * fs.size();
  StandardFormLp<double> lp(k + 2 * fs.size(), cols);
  for (std::size_t y = 0; y < k; ++y) {
    for (std::size_t x = 0; x < m; ++x) lp.a(y, index(y, x)) = 1.0;
    lp.b(y) = 1.0;
  }
  // L + s1 = c + eps  and  -L + s2 = eps - c.
  for (std::size_t f = 0; f < fs.size(); ++f) {
    const std::size_t up = k + 2 * f;
    const std::size_t down = up + 1;
    for (std::size_t j = 0; j < vars; ++j) {
      lp.a(up, j) = fs[f].coef[j];
      lp.a(down, j) = -fs[f].coef[j];
    }
    lp.a(up, vars + 2 * f) = 1.0;
    lp.a(down, vars + 1 + 2 * f) = 1.0;
    lp.b(up) = fs[f].constant + eps;
    lp.b(down) = eps - fs[f].constant;
  }
  const auto sol = solve_lp(lp);
  TransferReport r;
  r.eps = eps;
  r.degree = degree;
  r.feasible = sol.status == LpStatus::optimal;
  if (!r.feasible) return r;
  RMatrix s(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m));
  for (std::size_t y = 0; y < k; ++y) {
    for (std::size_t x = 0; x < m; ++x) {
      s(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = sol.x[index(y, x)];
    }
  }
  s = clean_rows(s);
  measure_defects(mx, my, s, degree, r);
  r.map = DiscreteTransferMap(mx.support(), my.support(), s);
  r.budget = std::max(r.transport_defect, r.trace_defect);
  return r;
}

double affine_sup_defect(const DiscreteTransferMap& map) {
  double out = 0.0;
  const auto& xs = map.source_support();
  const auto& ys = map.target_support();
  for (std::size_t y = 0; y < ys.size(); ++y) {
    Complex v = -ys[y];
    for (std::size_t x = 0; x < xs.size(); ++x) {
      v += map.s()(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) * xs[x];
    }
    out = std::max({out, std::abs(v.real()), std::abs(v.imag())});
  }
  return out;
}

}  // namespace orbithull
