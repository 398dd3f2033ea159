#include "igtop/collocation.hpp"

#include <cmath>
#include <stdexcept>

namespace igtop {

namespace {
constexpr double kPivotTol = 1e-14;
}

BandedLU::BandedLU(int n, int bandwidth)
    : n_(n), kb_(bandwidth), band_(static_cast<size_t>(n) * (2 * bandwidth + 1), 0.0) {}

double& BandedLU::at(int i, int j) {
  // Diagonal offset storage: row i holds entries j in [i-kb, i+kb].
  return band_[static_cast<size_t>(i) * (2 * kb_ + 1) + (j - i + kb_)];
}

void BandedLU::factorize() {
  for (int k = 0; k < n_; ++k) {
    const double piv = at(k, k);
    if (std::abs(piv) < kPivotTol) {
      throw std::runtime_error("BandedLU: singular collocation matrix");
    }
    const int imax = std::min(n_ - 1, k + kb_);
    const int jmax = std::min(n_ - 1, k + kb_);
    for (int i = k + 1; i <= imax; ++i) {
      const double m = at(i, k) / piv;
      at(i, k) = m;
      for (int j = k + 1; j <= jmax; ++j) {
        at(i, j) -= m * at(k, j);
      }
    }
  }
  factorized_ = true;
}

void BandedLU::solve(double* x, int stride) const {
  // Forward substitution with unit lower factor, then back substitution.
  for (int i = 0; i < n_; ++i) {
    const int j0 = std::max(0, i - kb_);
    double s = x[static_cast<ptrdiff_t>(i) * stride];
    for (int j = j0; j < i; ++j) {
      s -= band_[static_cast<size_t>(i) * (2 * kb_ + 1) + (j - i + kb_)] *
           x[static_cast<ptrdiff_t>(j) * stride];
    }
    x[static_cast<ptrdiff_t>(i) * stride] = s;
  }
  for (int i = n_ - 1; i >= 0; --i) {
    const int j1 = std::min(n_ - 1, i + kb_);
    double s = x[static_cast<ptrdiff_t>(i) * stride];
    for (int j = i + 1; j <= j1; ++j) {
      s -= band_[static_cast<size_t>(i) * (2 * kb_ + 1) + (j - i + kb_)] *
           x[static_cast<ptrdiff_t>(j) * stride];
    }
    x[static_cast<ptrdiff_t>(i) * stride] =
        s / band_[static_cast<size_t>(i) * (2 * kb_ + 1) + kb_];
  }
}

CollocationSolver1D::CollocationSolver1D(const KnotVector& kv)
    : n_(kv.num_basis()),
      degree_(kv.degree()),
      greville_(kv.greville()),
      lu_(kv.num_basis(), kv.degree()),
      dense_(Eigen::MatrixXd::Zero(kv.num_basis(), kv.num_basis())) {
  double N[kMaxDegree + 1];
  for (int i = 0; i < n_; ++i) {
    const int span = kv.find_span(greville_[i]);
    kv.basis_values(span, greville_[i], N);
    for (int k = 0; k <= degree_; ++k) {
      const int j = span + k;
      dense_(i, j) = N[k];
      lu_.at(i, j) = N[k];
    }
  }
  lu_.factorize();
}

void CollocationSolver1D::solve_columns(Eigen::Ref<Eigen::MatrixXd> values) const {
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    lu_.solve(values.col(c).data(), 1);
  }
}

void CollocationSolver1D::solve_rows(Eigen::Ref<Eigen::MatrixXd> values) const {
  const int stride = static_cast<int>(values.outerStride());
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    lu_.solve(values.data() + r, stride);
  }
}

Eigen::MatrixXd CollocationSolver1D::matrix() const { return dense_; }

TensorCollocation::TensorCollocation(const TensorSpace& space)
    : u_(space.u()), v_(space.v()), cu_(u_.matrix()), cv_(v_.matrix()) {}

Eigen::MatrixXd TensorCollocation::solve(Eigen::MatrixXd greville_values) const {
  // Values V = Cu * C * Cv^T. Solve in u along columns, then in v along rows.
  u_.solve_columns(greville_values);
  v_.solve_rows(greville_values);
  return greville_values;
}

Eigen::MatrixXd TensorCollocation::apply(const Eigen::MatrixXd& coeffs) const {
  return cu_ * coeffs * cv_.transpose();
}

}  // namespace igtop
