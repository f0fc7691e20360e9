#include "orbithull/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace orbithull {

NormalityReport check_normality(const CMatrix& m, double tol) {
  require_square(m, "check_normality");
  NormalityReport report;
  report.defect = operator_norm(m.adjoint() * m - m * m.adjoint());
  report.tolerance = tol;
  report.pass = report.defect <= tol;
  return report;
}

double default_normality_tolerance(const CMatrix& m) {
  const double nrm = operator_norm(m);
  return 1e-10 * nrm * nrm;
}

NormalMatrix::NormalMatrix(CMatrix m, std::optional<double> tol) : m_(std::move(m)) {
  require_square(m_, "NormalMatrix");
  if (m_.rows() == 0) throw ShapeError("NormalMatrix: dimension must be positive");
  const double limit = tol.value_or(default_normality_tolerance(m_));
  const auto report = check_normality(m_, limit);
  defect_ = report.defect;
  if (!report.pass) {
    throw PreconditionError("matrix is not normal: defect " + std::to_string(defect_) +
                            " exceeds " + std::to_string(limit));
  }
  norm_ = operator_norm(m_);
}

NormalMatrix NormalMatrix::diagonal(const CVector& values) {
  return NormalMatrix(CMatrix(values.asDiagonal()));
}

CVector SpectralForm::expanded() const {
  const int n = std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
  CVector out(n);
  int k = 0;
  for (std::size_t g = 0; g < multiplicities.size(); ++g) {
    for (int r = 0; r < multiplicities[g]; ++r) out(k++) = values(static_cast<Eigen::Index>(g));
  }
  return out;
}

CMatrix SpectralForm::reconstruct() const {
  return frame * expanded().asDiagonal() * frame.adjoint();
}

std::vector<std::vector<int>> SpectralForm::groups() const {
  std::vector<std::vector<int>> out;
  int k = 0;
  for (int m : multiplicities) {
    std::vector<int> g(m);
    std::iota(g.begin(), g.end(), k);
    k += m;
    out.push_back(std::move(g));
  }
  return out;
}

double default_grouping_tolerance(const NormalMatrix& m) { return 1e-8 * m.norm(); }

std::vector<std::vector<int>> group_equal_values(const CVector& values, double tol) {
  std::vector<std::vector<int>> groups;
  std::vector<Complex> centers;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    bool placed = false;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (std::abs(values(i) - centers[g]) <= tol) {
        groups[g].push_back(static_cast<int>(i));
        placed = true;
        break;
      }
    }
    if (!placed) {
      groups.push_back({static_cast<int>(i)});
      centers.push_back(values(i));
    }
  }
  return groups;
}

SpectralForm spectral_decompose(const NormalMatrix& m, std::optional<double> grouping_tol) {
  const CMatrix& a = m.matrix();
  const Eigen::Index n = a.rows();
  Eigen::ComplexSchur<CMatrix> schur(a);
  if (schur.info() != Eigen::Success) {
    throw PreconditionError("spectral_decompose: Schur iteration did not converge");
  }
  const CMatrix& t = schur.matrixT();
  const CMatrix& q = schur.matrixU();

  const double off = operator_norm(CMatrix(t.triangularView<Eigen::StrictlyUpper>()));
  if (off > 1e-8 * std::max(m.norm(), 1e-300)) {
    throw PreconditionError("spectral_decompose: triangular factor is not diagonal (" +
                            std::to_string(off) + ")");
  }

  const CVector diag = t.diagonal();
  const double tol = grouping_tol.value_or(default_grouping_tolerance(m));
  const auto groups = group_equal_values(diag, tol);

  SpectralForm form;
  form.values.resize(static_cast<Eigen::Index>(groups.size()));
  form.frame.resize(n, n);
  Eigen::Index col = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    Complex sum = 0.0;
    for (int idx : groups[g]) {
      sum += diag(idx);
      form.frame.col(col++) = q.col(idx);
    }
    form.values(static_cast<Eigen::Index>(g)) = sum / static_cast<double>(groups[g].size());
    form.multiplicities.push_back(static_cast<int>(groups[g].size()));
  }
  return form;
}

DiscreteMeasure::DiscreteMeasure(std::vector<Complex> support, std::vector<double> weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  if (support_.size() != weights_.size()) {
    throw InvariantError("DiscreteMeasure: support and weights differ in length");
  }
  if (support_.empty()) throw InvariantError("DiscreteMeasure: empty support");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw InvariantError("DiscreteMeasure: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvariantError("DiscreteMeasure: weights sum to " + std::to_string(total));
  }
  for (std::size_t i = 0; i < support_.size(); ++i) {
    for (std::size_t j = i + 1; j < support_.size(); ++j) {
      if (support_[i] == support_[j]) {
        throw InvariantError("DiscreteMeasure: repeated support point");
      }
    }
  }
}

DiscreteMeasure tracial_spectral_measure(const NormalMatrix& m, std::optional<double> grouping_tol) {
  const SpectralForm form = spectral_decompose(m, grouping_tol);
  std::vector<Complex> support(form.values.data(), form.values.data() + form.values.size());
  std::vector<double> weights;
  const double n = static_cast<double>(m.dim());
  for (int mult : form.multiplicities) weights.push_back(mult / n);
  return DiscreteMeasure(std::move(support), std::move(weights));
}

bool measures_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, double point_tol,
                    double weight_tol) {
  // Merge atoms that collapse under point_tol on either side before matching.
  auto total_near = [&](const DiscreteMeasure& m, Complex z) {
    double w = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (std::abs(m.support()[i] - z) <= point_tol) w += m.weights()[i];
    }
    return w;
  };
  for (const auto* m : {&a, &b}) {
    for (const Complex& z : m->support()) {
      if (std::abs(total_near(a, z) - total_near(b, z)) > weight_tol) return false;
    }
  }
  return true;
}

}  // namespace orbithull
