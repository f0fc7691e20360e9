#include <doctest.h>

#include "oracles.hpp"
#include "orbithull/majorization.hpp"
#include "orbithull/random.hpp"

using namespace orbithull;

namespace {

ComplexTuple tuple(std::initializer_list<Complex> v) { return ComplexTuple(v); }
const Complex I(0.0, 1.0);

}  // namespace

TEST_CASE("oracle: Hungarian assignment matches brute force") {
  Rng rng = make_rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    RMatrix w(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w(i, j) = uniform(rng, -1, 1);
    const Assignment a = max_weight_assignment(w);
    CHECK(a.value == doctest::Approx(oracle::brute_assignment(w)).epsilon(1e-12));
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += w(i, a.sigma[static_cast<std::size_t>(i)]);
    CHECK(s == doctest::Approx(a.value));
  }
}

TEST_CASE("oracle: permutation hull oracle on hand examples") {
  CHECK(perm_hull_oracle(tuple({3.0, -I}), tuple({3.0, -I}), 1e-9));
  CHECK(perm_hull_oracle(tuple({0.25, 0.75}), tuple({0.0, 1.0}), 1e-9));
  CHECK_FALSE(perm_hull_oracle(tuple({-0.1, 1.1}), tuple({0.0, 1.0}), 1e-9));
  CHECK_THROWS_AS(perm_hull_oracle(ComplexTuple(CVector::Zero(9)), ComplexTuple(CVector::Zero(9)), 1e-9),
                  SizeError);
}

TEST_CASE("is_majorized examples") {
  const auto same = is_majorized(tuple({3.0, -I}), tuple({3.0, -I}), 1e-7);
  REQUIRE(same.feasible);
  CHECK(same.residual <= 1e-12);

  const auto mean = is_majorized(tuple({0.0, 0.0, 0.0, 0.0}), tuple({1.0, I, -1.0, -I}), 1e-7);
  REQUIRE(mean.feasible);
  CHECK(max_abs(RMatrix(mean.witness->matrix().array() - 0.25)) <= 1e-12);

  const auto two = is_majorized(tuple({0.25, 0.75}), tuple({0.0, 1.0}), 1e-7);
  REQUIRE(two.feasible);
  RMatrix expect(2, 2);
  expect << 0.75, 0.25, 0.25, 0.75;
  CHECK(max_abs(RMatrix(two.witness->matrix() - expect)) <= 1e-12);

  const auto sep = is_majorized(tuple({1.0, 1.0, -1.0, -1.0}), tuple({1.0, I, -1.0, -I}), 1e-7);
  CHECK_FALSE(sep.feasible);
  REQUIRE(sep.separator);
  CHECK(sep.gap > 1e-7);

  CHECK_FALSE(is_majorized(tuple({0.5, 1.5}), tuple({0.0, 1.0}), 1e-7).feasible);
}

TEST_CASE("is_majorized errors") {
  CHECK_THROWS_AS(is_majorized(tuple({1.0}), tuple({1.0, 2.0}), 1e-7), ShapeError);
  CHECK_THROWS_AS(is_majorized(tuple({1.0}), tuple({1.0}), 0.0), ParameterError);
}

TEST_CASE("separator is certified by the assignment bound") {
  Rng rng = make_rng(5);
  int negatives = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 4;
    const ComplexTuple lam(random_tuple(rng, n));
    const ComplexTuple mu(random_tuple(rng, n));
    const auto c = is_majorized(lam, mu, 1e-7);
    if (c.feasible) continue;
    ++negatives;
    REQUIRE(c.separator);
    // Recompute the gap over all permutations by brute force.
    double best = -1e300;
    for (const auto& p : oracle::all_permutations(n)) {
      double v = 0.0;
      for (int i = 0; i < n; ++i) v += (std::conj((*c.separator)(i)) * mu[p[static_cast<std::size_t>(i)]]).real();
      best = std::max(best, v);
    }
    double at = 0.0;
    for (int i = 0; i < n; ++i) at += (std::conj((*c.separator)(i)) * lam[i]).real();
    CHECK(at - best == doctest::Approx(c.gap).epsilon(1e-9));
    CHECK(c.gap > 0.0);
    CHECK(c.gap <= c.residual + 1e-9);
  }
  CHECK(negatives > 0);
}

TEST_CASE("is_majorized agrees with the oracle and with prefix sums on real data") {
  Rng rng = make_rng(3);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 2 + trial % 4;
    const CVector mu = random_real_tuple(rng, n);
    CVector lam;
    if (trial % 2 == 0) {
      lam = random_doubly_stochastic(rng, n, 3).matrix().cast<Complex>() * mu;
    } else {
      lam = random_real_tuple(rng, n);
      lam.array() += (mu.sum() - lam.sum()) / static_cast<double>(n);
    }
    const bool lp = is_majorized(ComplexTuple(lam), ComplexTuple(mu), 1e-7).feasible;
    CHECK(lp == perm_hull_oracle(ComplexTuple(lam), ComplexTuple(mu), 1e-7));
    std::vector<double> l(static_cast<std::size_t>(n)), m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      l[static_cast<std::size_t>(i)] = lam(i).real();
      m[static_cast<std::size_t>(i)] = mu(i).real();
    }
    CHECK(real_majorization(lam.real(), mu.real()) == oracle::prefix_majorized(l, m, 1e-10));
  }
}

TEST_CASE("exact mode agrees with floating point") {
  Rng rng = make_rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    const ComplexTuple mu(random_tuple(rng, n));
    const ComplexTuple lam(trial % 2 ? random_tuple(rng, n)
                                     : CVector(random_doubly_stochastic(rng, n, 2).matrix().cast<Complex>() * mu.entries()));
    const auto a = is_majorized(lam, mu, 1e-7, false);
    const auto b = is_majorized(lam, mu, 1e-7, true);
    CHECK(a.feasible == b.feasible);
    if (b.feasible) CHECK(b.exact_witness);
  }
}

TEST_CASE("real majorization examples") {
  RVector a(2), b(2);
  a << 0.5, 0.5;
  b << 0.0, 1.0;
  CHECK(real_majorization(a, b));
  CHECK_FALSE(real_majorization(b, a));
  RVector c(3), d(3);
  c << 2, 1, 1;
  d << 3, 1, 0;
  CHECK(real_majorization(c, d));
  CHECK_THROWS_AS(real_majorization(tuple({I, 1.0}), tuple({1.0, 1.0})), DomainError);
}

TEST_CASE("hull distance examples") {
  CHECK(hull_distance(tuple({1.0, 2.0}), tuple({2.0, 1.0})).box <= 1e-12);
  CHECK(hull_distance(tuple({0.5, 1.5}), tuple({0.0, 1.0})).box == doctest::Approx(0.5));
  const auto h = hull_distance(tuple({-0.1, 1.1}), tuple({0.0, 1.0}));
  CHECK(h.box == doctest::Approx(0.1));
  CHECK(h.modulus_upper == doctest::Approx(0.1 * std::sqrt(2.0)));
}

TEST_CASE("doubly stochastic validation") {
  RMatrix bad(2, 2);
  bad << 0.5, 0.6, 0.5, 0.4;
  CHECK_THROWS_AS(DoublyStochastic{bad}, InvariantError);
  CHECK(DoublyStochastic::satisfies(DoublyStochastic::uniform(4).matrix()));
}
