#include "orbithull/cpmaps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orbithull/spectra.hpp"

namespace orbithull {

namespace {

bool is_unitary(const CMatrix& u, double tol) {
  const auto n = u.rows();
  const CMatrix defect = u.adjoint() * u - CMatrix::Identity(n, n);
  const double frob = defect.norm();
  if (frob <= tol) return true;  // Frobenius bounds the operator norm
  return operator_norm(defect) <= tol;
}

// Small fixed family for contraction checks.
std::vector<CMatrix> contraction_test_set(Eigen::Index n) {
  std::vector<CMatrix> out;
  out.push_back(CMatrix::Identity(n, n));
  CMatrix dft(n, n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      dft(i, j) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                             two_pi * static_cast<double>(i * j) / static_cast<double>(n));
    }
  }
  out.push_back(dft);
  CMatrix ramp = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) ramp(i, i) = Complex(static_cast<double>(i + 1), 1.0);
  out.push_back(ramp);
  CMatrix unit = CMatrix::Zero(n, n);
  unit(0, n - 1) = 1.0;
  out.push_back(unit);
  return out;
}

double contraction_excess(const ChannelAction& ch, Eigen::Index n) {
  double excess = -std::numeric_limits<double>::infinity();
  for (const auto& a : contraction_test_set(n)) {
    excess = std::max(excess, operator_norm(ch(a)) - operator_norm(a));
  }
  return excess;
}

}  // namespace

MixedUnitaryChannel::MixedUnitaryChannel(Eigen::Index dim, std::vector<UnitaryTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim_ <= 0) throw ShapeError("MixedUnitaryChannel: dimension must be positive");
  if (terms_.empty()) throw InvariantError("MixedUnitaryChannel: no terms");
  double total = 0.0;
  for (const auto& t : terms_) {
    if (t.unitary.rows() != dim_ || t.unitary.cols() != dim_) {
      throw ShapeError("MixedUnitaryChannel: unitary of wrong size");
    }
    if (!(t.weight > 0.0) || t.weight > 1.0 + 1e-12) {
      throw InvariantError("MixedUnitaryChannel: weight outside (0, 1]");
    }
    if (!is_unitary(t.unitary, 1e-10)) {
      throw InvariantError("MixedUnitaryChannel: term is not unitary");
    }
    total += t.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvariantError("MixedUnitaryChannel: weights sum to " + std::to_string(total));
  }
}

MixedUnitaryChannel MixedUnitaryChannel::identity(Eigen::Index dim) {
  return MixedUnitaryChannel(dim, {{1.0, CMatrix::Identity(dim, dim)}});
}

CMatrix MixedUnitaryChannel::operator()(const CMatrix& a) const {
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw ShapeError("channel of dim " + std::to_string(dim_) + " applied to " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " matrix");
  }
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (const auto& t : terms_) out.noalias() += t.weight * (t.unitary.adjoint() * a * t.unitary);
  return out;
}

ChannelAction MixedUnitaryChannel::action() const {
  return [self = *this](const CMatrix& a) { return self(a); };
}

MixedUnitaryChannel MixedUnitaryChannel::then(const MixedUnitaryChannel& next) const {
  if (next.dim_ != dim_) throw ShapeError("channel composition: dimension mismatch");
  std::vector<UnitaryTerm> out;
  out.reserve(terms_.size() * next.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : next.terms_) out.push_back({a.weight * b.weight, a.unitary * b.unitary});
  }
  return MixedUnitaryChannel(dim_, std::move(out));
}

MixedUnitaryChannel MixedUnitaryChannel::conjugated(const CMatrix& w) const {
  std::vector<UnitaryTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.weight, w * t.unitary * w.adjoint()});
  return MixedUnitaryChannel(dim_, std::move(out));
}

CMatrix apply(const MixedUnitaryChannel& ch, const CMatrix& m) { return ch(m); }

SpectralGrouping::SpectralGrouping(std::vector<std::vector<int>> groups, CVector values)
    : groups_(std::move(groups)), values_(std::move(values)) {
  if (static_cast<Eigen::Index>(groups_.size()) != values_.size()) {
    throw ShapeError("SpectralGrouping: one value per group required");
  }
  for (const auto& g : groups_) {
    if (g.empty()) throw InvariantError("SpectralGrouping: empty group");
    n_ += static_cast<Eigen::Index>(g.size());
  }
  std::vector<bool> seen(static_cast<std::size_t>(n_), false);
  for (const auto& g : groups_) {
    for (int i : g) {
      if (i < 0 || i >= n_ || seen[static_cast<std::size_t>(i)]) {
        throw InvariantError("SpectralGrouping: groups do not partition {0..n-1}");
      }
      seen[static_cast<std::size_t>(i)] = true;
    }
  }
}

SpectralGrouping SpectralGrouping::from_tuple(const CVector& mu, double tol) {
  auto groups = group_equal_values(mu, tol);
  CVector values(static_cast<Eigen::Index>(groups.size()));
  for (std::size_t k = 0; k < groups.size(); ++k) {
    values(static_cast<Eigen::Index>(k)) = mu(groups[k].front());
  }
  return SpectralGrouping(std::move(groups), std::move(values));
}

SpectralGrouping SpectralGrouping::full_diagonal(Eigen::Index n) {
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups.push_back({i});
  return SpectralGrouping(std::move(groups), CVector::Zero(n));
}

CMatrix SpectralGrouping::projection(std::size_t k) const {
  CMatrix q = CMatrix::Zero(n_, n_);
  for (int i : groups_.at(k)) q(i, i) = 1.0;
  return q;
}

bool SpectralGrouping::consistent_with(const CVector& mu, double tol) const {
  if (mu.size() != n_) return false;
  for (std::size_t k = 0; k < groups_.size(); ++k) {
    const Complex v = mu(groups_[k].front());
    for (int i : groups_[k]) {
      if (std::abs(mu(i) - v) > tol) return false;
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (std::abs(mu(groups_[l].front()) - v) <= tol) return false;
    }
  }
  return true;
}

MixedUnitaryChannel channel_from_ds(const DoublyStochastic& d, const CMatrix& source_frame,
                                    const CMatrix& target_frame) {
  const Eigen::Index n = d.size();
  if (source_frame.rows() != n || source_frame.cols() != n || target_frame.rows() != n ||
      target_frame.cols() != n) {
    throw ShapeError("channel_from_ds: frame size");
  }
  const auto combo = decompose(d);
  std::vector<UnitaryTerm> terms;
  terms.reserve(combo.size());
  for (const auto& t : combo.terms()) {
    const CMatrix p = permutation_matrix(t.perm).transpose().cast<Complex>();
    terms.push_back({t.weight, source_frame * p * target_frame.adjoint()});
  }
  return MixedUnitaryChannel(n, std::move(terms));
}

MixedUnitaryChannel channel_from_ds(const DoublyStochastic& d, const CMatrix& frame) {
  return channel_from_ds(d, frame, frame);
}

MixedUnitaryChannel channel_from_ds(const DoublyStochastic& d) {
  return channel_from_ds(d, CMatrix::Identity(d.size(), d.size()));
}

CMatrix pinch(const CMatrix& m, const SpectralGrouping& grouping) {
  require_square(m, "pinch");
  if (grouping.dim() != m.rows()) throw ShapeError("pinch: grouping does not cover the matrix");
  CMatrix out = CMatrix::Zero(m.rows(), m.cols());
  for (const auto& g : grouping.groups()) {
    for (int i : g) {
      for (int j : g) out(i, j) = m(i, j);
    }
  }
  return out;
}

CMatrix pinch(const CMatrix& m) {
  require_square(m, "pinch");
  return CMatrix(m.diagonal().asDiagonal());
}

ExtractedMatrix ds_from_channel(const ChannelAction& ch, const CVector& mu,
                                const SpectralGrouping& grouping, double value_tol) {
  const Eigen::Index n = mu.size();
  if (grouping.dim() != n) throw ShapeError("ds_from_channel: grouping size differs from mu");
  if (!grouping.consistent_with(mu, value_tol)) {
    throw PreconditionError("ds_from_channel: grouping is not the level-set partition of mu");
  }
  ExtractedMatrix out;
  out.d = RMatrix::Zero(n, n);
  for (std::size_t k = 0; k < grouping.groups().size(); ++k) {
    const auto& group = grouping.groups()[k];
    const CMatrix image = ch(grouping.projection(k));
    if (image.rows() != n || image.cols() != n) throw ShapeError("ds_from_channel: bad action");
    const double size = static_cast<double>(group.size());
    for (int i : group) {
      for (Eigen::Index j = 0; j < n; ++j) out.d(j, i) = image(j, j).real() / size;
    }
  }
  out.row_sums = out.d.rowwise().sum();
  out.col_sums = out.d.colwise().sum().transpose();
  out.unital_defect = (out.row_sums.array() - 1.0).abs().maxCoeff();
  out.unital = out.unital_defect <= 1e-10;
  return out;
}

ExtractedMatrix ds_from_channel(const MixedUnitaryChannel& ch, const CVector& mu) {
  return ds_from_channel(ch.action(), mu, SpectralGrouping::from_tuple(mu));
}

ChannelReport check_channel(const MixedUnitaryChannel& ch, double tol) {
  const Eigen::Index n = ch.dim();
  CMatrix unital = CMatrix::Zero(n, n);
  CMatrix dual = CMatrix::Zero(n, n);
  for (const auto& t : ch.terms()) {
    unital.noalias() += t.weight * (t.unitary.adjoint() * t.unitary);
    dual.noalias() += t.weight * (t.unitary * t.unitary.adjoint());
  }
  const CMatrix id = CMatrix::Identity(n, n);
  ChannelReport r;
  r.unital_residual = operator_norm(unital - id);
  r.trace_residual = operator_norm(dual - id);
  r.contraction_excess = contraction_excess(ch.action(), n);
  r.unital = r.unital_residual <= tol;
  r.trace_preserving = r.trace_residual <= tol;
  r.contractive = r.contraction_excess <= tol;
  return r;
}

ChannelReport check_channel(const ChannelAction& ch, Eigen::Index n, double tol) {
  const CMatrix id = CMatrix::Identity(n, n);
  ChannelReport r;
  r.unital_residual = operator_norm(ch(id) - id);
  double trace = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      CMatrix e = CMatrix::Zero(n, n);
      e(i, j) = 1.0;
      const Complex expected = i == j ? Complex(1.0) : Complex(0.0);
      trace = std::max(trace, std::abs(ch(e).trace() - expected));
    }
  }
  r.trace_residual = trace;
  r.contraction_excess = contraction_excess(ch, n);
  r.unital = r.unital_residual <= tol;
  r.trace_preserving = r.trace_residual <= tol;
  r.contractive = r.contraction_excess <= tol;
  return r;
}

}  // namespace orbithull
