#include <doctest.h>

#include "oracles.hpp"
#include "orbithull/correction.hpp"
#include "orbithull/hull.hpp"
#include "orbithull/random.hpp"

using namespace orbithull;

namespace {

// Unital, generally not trace preserving: (1 - theta) Phi_D + theta <xi, . xi> I.
ChannelAction perturbed(const MixedUnitaryChannel& base, const CVector& xi, double theta) {
  return [base, xi, theta](const CMatrix& a) -> CMatrix {
    const Complex v = xi.dot(a * xi);
    return (1.0 - theta) * base(a) + theta * v * CMatrix::Identity(a.rows(), a.cols());
  };
}

}  // namespace

TEST_CASE("correct_ds two by two example") {
  RMatrix d(2, 2);
  d << 0.6, 0.5, 0.4, 0.5;
  const auto r = correct_ds(d, 0.1);
  RMatrix expect(2, 2);
  expect << 6.0 / 11, 5.0 / 11, 5.0 / 11, 6.0 / 11;
  CHECK(max_abs(RMatrix(r.d_corrected - expect)) <= 1e-12);
  CHECK(r.eps_prime(0) == doctest::Approx(0.1));
  CHECK(r.eps_prime(1) == doctest::Approx(-0.1));
  CHECK(r.lambda_plus == std::vector<int>{0});
  CHECK(r.lambda_minus == std::vector<int>{1});
  CHECK(std::abs(r.balance) <= 1e-12);
  CHECK((r.eps_matrix.array() >= 0.0).all());
}

TEST_CASE("correct_ds leaves doubly stochastic input unchanged") {
  Rng rng = make_rng(30);
  const DoublyStochastic d = random_doubly_stochastic(rng, 5, 4);
  const auto r = correct_ds(d.matrix(), 0.0);
  CHECK(max_abs(RMatrix(r.d_corrected - d.matrix())) <= 1e-12);
}

TEST_CASE("correct_ds on random column-stochastic input") {
  Rng rng = make_rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 7;
    RMatrix d(n, n);
    for (int j = 0; j < n; ++j) d.col(j) = random_simplex(rng, n);
    const double eps2 = ((d.rowwise().sum().array() - 1.0).abs()).maxCoeff();
    if (eps2 >= 1.0) continue;
    const auto r = correct_ds(d, eps2);
    CHECK(DoublyStochastic::satisfies(r.d_corrected));
    CHECK(max_abs(RMatrix(r.d_corrected - d)) <= 2.0 * eps2 + 1e-12);
  }
}

TEST_CASE("correct_ds errors") {
  RMatrix d(2, 2);
  d << 0, 0, 1, 1;
  CHECK_THROWS_AS(correct_ds(d, 1.0), DegeneracyError);
  d << 0.6, 0.5, 0.4, 0.5;
  CHECK_THROWS_AS(correct_ds(d, 0.05), PreconditionError);
  CHECK_THROWS_AS(correct_ds(d, -1.0), ParameterError);
  d << 0.7, 0.5, 0.4, 0.5;
  CHECK_THROWS_AS(correct_ds(d, 1.0), PreconditionError);
  d << 1.1, 0.5, -0.1, 0.5;
  CHECK_THROWS_AS(correct_ds(d, 1.0), DomainError);
  CHECK_THROWS_AS(correct_ds(RMatrix::Ones(2, 3), 1.0), ShapeError);
}

TEST_CASE("corrected channel meets its bound") {
  Rng rng = make_rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    const CVector mu = random_tuple(rng, n);
    const DoublyStochastic d = random_doubly_stochastic(rng, n, 3);
    const CMatrix yf = random_unitary(rng, n);
    const CMatrix y = yf * oracle::diag(mu) * yf.adjoint();
    const auto base = channel_from_ds(d, yf);
    const NormalMatrix x(base(y));
    CVector xi = random_tuple(rng, n);
    xi.normalize();
    const double theta = 0.05 * uniform(rng);
    const auto r = corrected_channel(x, NormalMatrix(y), perturbed(base, xi, theta));
    REQUIRE(r.channel);
    CHECK(check_channel(*r.channel).trace_preserving);
    CHECK(r.achieved <= r.bound + 1e-8);
    CHECK(std::abs(r.achieved - witness_error(*r.channel, x.matrix(), y)) <= 1e-12);
  }
}

TEST_CASE("corrected channel rejects violated budgets and bad frames") {
  CVector mu(3);
  mu << 0.0, 1.0, 2.0;
  const NormalMatrix y = NormalMatrix::diagonal(mu);
  const NormalMatrix x = NormalMatrix::diagonal(CVector::Constant(3, 1.0));
  const ChannelAction avg = [](const CMatrix& a) -> CMatrix {
    return a.trace() / 3.0 * CMatrix::Identity(3, 3);
  };
  CHECK_NOTHROW(corrected_channel(x, y, avg));
  CorrectionOptions tight;
  tight.eps1 = 0.0;
  const ChannelAction off = [](const CMatrix& a) -> CMatrix {
    return (a.trace() / 3.0 + 0.1) * CMatrix::Identity(3, 3);
  };
  CHECK_THROWS_AS(corrected_channel(x, y, off, tight), PreconditionError);

  AlignedFrames frames = align_frames(x, y);
  frames.y_frame = CMatrix::Ones(3, 3);
  CHECK_THROWS_AS(corrected_channel(x, y, frames, avg), PreconditionError);
}
