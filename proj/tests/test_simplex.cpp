#include <doctest.h>

#include "orbithull/simplex.hpp"

using namespace orbithull;

namespace {

// min -x - y  s.t.  x + 2y + s1 = 4,  3x + y + s2 = 6.
template <typename S>
StandardFormLp<S> corner_lp() {
  StandardFormLp<S> lp(2, 4);
  lp.a(0, 0) = S(1); lp.a(0, 1) = S(2); lp.a(0, 2) = S(1); lp.b(0) = S(4);
  lp.a(1, 0) = S(3); lp.a(1, 1) = S(1); lp.a(1, 3) = S(1); lp.b(1) = S(6);
  lp.c(0) = S(-1); lp.c(1) = S(-1);
  return lp;
}

// Oracle: enumerate all basic solutions of a 2-row problem.
double brute_corner_optimum() {
  double best = 1e300;
  const double a[2][4] = {{1, 2, 1, 0}, {3, 1, 0, 1}};
  const double b[2] = {4, 6};
  const double c[4] = {-1, -1, 0, 0};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double det = a[0][i] * a[1][j] - a[0][j] * a[1][i];
      if (std::abs(det) < 1e-12) continue;
      const double xi = (b[0] * a[1][j] - b[1] * a[0][j]) / det;
      const double xj = (a[0][i] * b[1] - a[1][i] * b[0]) / det;
      if (xi < -1e-12 || xj < -1e-12) continue;
      best = std::min(best, c[i] * xi + c[j] * xj);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("optimal vertex matches vertex enumeration") {
  const auto r = solve_lp(corner_lp<double>());
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(brute_corner_optimum()));
  CHECK(r.x[0] == doctest::Approx(1.6));
  CHECK(r.x[1] == doctest::Approx(1.2));
}

TEST_CASE("rational mode is exact") {
  const auto r = solve_lp(corner_lp<Rational>());
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.x[0] == Rational(8, 5));
  CHECK(r.x[1] == Rational(6, 5));
  CHECK(r.objective == Rational(-14, 5));
}

TEST_CASE("duals satisfy complementary conditions") {
  const auto lp = corner_lp<double>();
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::optimal);
  double by = 0.0;
  for (std::size_t i = 0; i < lp.rows(); ++i) by += lp.b(i) * r.dual[i];
  CHECK(by == doctest::Approx(r.objective));
  for (std::size_t j = 0; j < lp.cols(); ++j) {
    double aty = 0.0;
    for (std::size_t i = 0; i < lp.rows(); ++i) aty += lp.a(i, j) * r.dual[i];
    CHECK(lp.c(j) - aty >= -1e-9);
  }
}

TEST_CASE("infeasible problem returns a Farkas vector") {
  // x + y = -1 with x, y >= 0, plus x - y = 0.
  StandardFormLp<double> lp(2, 2);
  lp.a(0, 0) = 1; lp.a(0, 1) = 1; lp.b(0) = -1;
  lp.a(1, 0) = 1; lp.a(1, 1) = -1; lp.b(1) = 0;
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::infeasible);
  double yb = 0.0;
  for (std::size_t i = 0; i < 2; ++i) yb += r.farkas[i] * lp.b(i);
  CHECK(yb > 0.0);
  for (std::size_t j = 0; j < 2; ++j) {
    double ya = 0.0;
    for (std::size_t i = 0; i < 2; ++i) ya += r.farkas[i] * lp.a(i, j);
    CHECK(ya <= 1e-12);
  }
}

TEST_CASE("unbounded problem is reported") {
  // min -x  s.t.  x - y = 0.
  StandardFormLp<double> lp(1, 2);
  lp.a(0, 0) = 1; lp.a(0, 1) = -1;
  lp.c(0) = -1;
  CHECK(solve_lp(lp).status == LpStatus::unbounded);
}

TEST_CASE("degenerate problem terminates under Bland's rule") {
  // Beale's cycling example in standard form.
  const Rational a[3][7] = {
      {1, 0, 0, Rational(1, 4), -8, -1, 9},
      {0, 1, 0, Rational(1, 2), -12, Rational(-1, 2), 3},
      {0, 0, 1, 0, 0, 1, 0}};
  StandardFormLp<Rational> lp(3, 7);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 7; ++j) lp.a(i, j) = a[i][j];
  lp.b(2) = Rational(1);
  lp.c(3) = Rational(-3, 4); lp.c(4) = Rational(20); lp.c(5) = Rational(-1, 2); lp.c(6) = Rational(6);
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == Rational(-5, 4));
}

TEST_CASE("double to rational conversion is exact") {
  for (double v : {0.1, -3.75, 1e-300, 123456789.125}) CHECK(to_double(to_rational(v)) == v);
  CHECK(to_rational(0.5) == Rational(1, 2));
}
