#include <doctest.h>

#include "orbithull/random.hpp"
#include "orbithull/transport.hpp"

using namespace orbithull;

namespace {

RVector vec(std::initializer_list<double> v) {
  RVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Oracle: a plan is valid when it is nonnegative with the requested marginals.
bool valid(const TransportPlan& p, const RVector& a, const RVector& b) {
  return (p.e.array() >= 0.0).all() &&
         (p.e.rowwise().sum() - a).cwiseAbs().maxCoeff() <= 1e-12 &&
         (p.e.colwise().sum().transpose() - b).cwiseAbs().maxCoeff() <= 1e-12;
}

}  // namespace

TEST_CASE("northwest corner examples") {
  const auto one = riesz_interpolate(vec({1}), vec({1}));
  CHECK(one.e(0, 0) == 1.0);

  const auto p = riesz_interpolate(vec({2, 1}), vec({1, 2}));
  RMatrix expect(2, 2);
  expect << 1, 1, 0, 1;
  CHECK(p.e == expect);

  const auto z = riesz_interpolate(vec({0, 3}), vec({3, 0}));
  expect << 0, 0, 3, 0;
  CHECK(z.e == expect);
}

TEST_CASE("random marginals yield valid plans with staircase support") {
  Rng rng = make_rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 7;
    const int k = 1 + (trial * 3) % 5;
    const RVector a = random_simplex(rng, m) * 3.0;
    RVector b = random_simplex(rng, k) * 3.0;
    const auto p = riesz_interpolate(a, b);
    CHECK(valid(p, a, p.col_marginals));
    CHECK(p.marginal_defect() <= 1e-12);
    CHECK(p.support_size() <= m + k - 1);
  }
}

TEST_CASE("transport errors") {
  CHECK_THROWS_AS(riesz_interpolate(vec({1, 1}), vec({1})), BalanceError);
  CHECK_THROWS_AS(riesz_interpolate(vec({-1, 2}), vec({1})), DomainError);
  // Dust below the clamp threshold is accepted.
  CHECK_NOTHROW(riesz_interpolate(vec({-1e-13, 1}), vec({1})));
}
