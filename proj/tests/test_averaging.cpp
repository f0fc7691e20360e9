#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "orbithull/averaging.hpp"
#include "orbithull/random.hpp"

using namespace orbithull;

namespace {

CVector vec(std::initializer_list<Complex> v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (Complex x : v) out(i++) = x;
  return out;
}

// Spectral form of a random normal matrix with the given values repeated.
SpectralForm repeated(Rng& rng, const std::vector<Complex>& values, const std::vector<int>& mult) {
  CVector t(std::accumulate(mult.begin(), mult.end(), 0));
  Eigen::Index at = 0;
  for (std::size_t k = 0; k < values.size(); ++k)
    for (int r = 0; r < mult[k]; ++r) t(at++) = values[k];
  return spectral_decompose(NormalMatrix(random_normal(rng, t)));
}

// Oracle: direct stage-by-stage evaluation.
double recomputed_error(const AveragingWitness& w) {
  CMatrix a = w.source;
  for (const auto& s : w.stages) {
    CMatrix next = CMatrix::Zero(a.rows(), a.cols());
    for (const auto& t : s.terms()) next += t.weight * t.unitary.adjoint() * a * t.unitary;
    a = next;
  }
  return operator_norm(CMatrix(w.target - a));
}

}  // namespace

TEST_CASE("permutation unitary moves index i to dest[i]") {
  const CMatrix u = permutation_unitary({1, 2, 0});
  const CMatrix out = u.adjoint() * oracle::diag(vec({10.0, 20.0, 30.0})) * u;
  CHECK(out(1, 1) == Complex(10.0));
  CHECK(out(2, 2) == Complex(20.0));
  CHECK(out(0, 0) == Complex(30.0));
  CHECK(oracle::is_unitary(u, 0.0));
}

TEST_CASE("cyclic shift witness achieves norm over K") {
  Rng rng = make_rng(40);
  for (int k = 2; k <= 6; ++k) {
    const NormalMatrix a(random_normal(rng, random_tuple(rng, 3)));
    const auto w = cyclic_shift_witness(a, k);
    CHECK(w.dim() == 3 * k);
    CHECK(w.achieved == doctest::Approx(a.norm() / k).epsilon(1e-10));
    CHECK(w.within_bound());
    CHECK(std::abs(recomputed_error(w) - w.achieved) <= 1e-12);
  }
  CHECK_THROWS_AS(cyclic_shift_witness(NormalMatrix::diagonal(vec({1.0})), 1), ParameterError);
}

TEST_CASE("absorb witness stays within its bound") {
  Rng rng = make_rng(41);
  for (int k = 1; k <= 6; ++k) {
    const NormalMatrix small(random_normal(rng, random_tuple(rng, 2)));
    const NormalMatrix big(random_normal(rng, random_tuple(rng, 3)));
    const auto w = absorb_witness(small, big, k);
    CHECK(w.dim() == 2 + 2 * k + 3);
    CHECK(w.within_bound());
    CHECK(std::abs(recomputed_error(w) - w.achieved) <= 1e-12);
    CHECK(check_channel(w.channel()).trace_preserving);
  }
  const NormalMatrix one = NormalMatrix::diagonal(vec({1.0}));
  CHECK_THROWS_AS(absorb_witness(one, one, 3, 2), ParameterError);
  CHECK_THROWS_AS(absorb_witness(one, one, 0), ParameterError);
}

TEST_CASE("corner replacement stays within its bound") {
  Rng rng = make_rng(42);
  for (int k = 2; k <= 5; ++k) {
    const SpectralForm x = repeated(rng, {1.0, Complex(0.0, -1.0), 0.5}, {3 * k, 2 * k + 4, k + 2});
    const NormalMatrix small(random_normal(rng, random_tuple(rng, 3)));
    const auto w = corner_replace_witness(x, {1, 1, 1}, small, k);
    CHECK(w.dim() == x.dim() + 3);
    CHECK(w.within_bound());
    CHECK(std::abs(recomputed_error(w) - w.achieved) <= 1e-10);
  }
  const SpectralForm x = repeated(rng, {1.0}, {3});
  CHECK_THROWS_AS(corner_replace_witness(x, {1}, NormalMatrix::diagonal(vec({2.0})), 2), ParameterError);
  const SpectralForm wide = repeated(rng, {1.0}, {8});
  CHECK_THROWS_AS(corner_replace_witness(wide, {1}, NormalMatrix::diagonal(vec({2.0, 1.0})), 2), ShapeError);
}

TEST_CASE("absorption estimate stays within its bound") {
  Rng rng = make_rng(43);
  for (int k = 2; k <= 4; ++k) {
    const int m = 2 * (2 * k + 5);
    const SpectralForm x1 = repeated(rng, {1.0, Complex(0.0, 1.0), -1.0}, {m, m + 1, m + 2});
    const NormalMatrix x2 = NormalMatrix::diagonal(vec({1.05, Complex(0.02, 0.95)}));
    const auto w = absorb_estimate(x1, NormalMatrix(random_normal(rng, x2.matrix().diagonal())), k);
    CHECK(w.dim() == x1.dim() + 2);
    CHECK(w.within_bound());
    CHECK(std::abs(recomputed_error(w) - w.achieved) <= 1e-10);
  }
  const SpectralForm x1 = repeated(rng, {1.0}, {8});
  CHECK_THROWS_AS(absorb_estimate(x1, NormalMatrix::diagonal(vec({1.0})), 2), ParameterError);
  CHECK_THROWS_AS(absorb_estimate(x1, NormalMatrix::diagonal(vec({1.0})), 1), ParameterError);
  const SpectralForm ok = repeated(rng, {1.0}, {9});
  CHECK_THROWS_AS(absorb_estimate(ok, NormalMatrix::diagonal(vec({2.0})), 2, 0.5), PreconditionError);
}

TEST_CASE("absorption estimate with x2 = 0 and x1 = 0 is exact") {
  Rng rng = make_rng(44);
  const SpectralForm x1 = repeated(rng, {0.0}, {9});
  const auto w = absorb_estimate(x1, NormalMatrix::diagonal(vec({0.0})), 2);
  CHECK(w.achieved <= 1e-12);
}

TEST_CASE("chaining adds bounds and checks endpoints") {
  Rng rng = make_rng(45);
  const NormalMatrix small(random_normal(rng, random_tuple(rng, 1)));
  const NormalMatrix big(random_normal(rng, random_tuple(rng, 2)));
  const auto w = absorb_witness(small, big, 2);
  AveragingWitness id;
  id.stages.push_back(MixedUnitaryChannel::identity(w.dim()));
  id.source = w.target;
  id.target = w.target;
  const auto c = chain(w, id);
  CHECK(c.stages.size() == w.stages.size() + 1);
  CHECK(c.bound == doctest::Approx(w.bound));
  CHECK(c.achieved == doctest::Approx(w.achieved));
  CHECK_THROWS_AS(chain(id, w), PreconditionError);
  CHECK_THROWS_AS(w.channel(1), SizeError);
}
