#ifndef IGTOP_COLLOCATION_HPP
#define IGTOP_COLLOCATION_HPP

#include "igtop/tensor_space.hpp"

#include <Eigen/Dense>

#include <vector>

namespace igtop {

/// LU factorization without pivoting for a banded matrix with equal lower and
/// upper bandwidth. B-spline collocation matrices at Greville points are
/// totally positive, so the elimination runs without pivoting; a vanishing
/// pivot is reported as an error.
class BandedLU {
 public:
  BandedLU(int n, int bandwidth);

  /// Matrix entry accessor for assembly; (i,j) must satisfy |i-j| <= bandwidth.
  double& at(int i, int j);
  void factorize();
  /// Solves A x = b in place; x may be strided (stride in doubles).
  void solve(double* x, int stride = 1) const;

  int size() const { return n_; }

 private:
  int n_ = 0;
  int kb_ = 0;
  std::vector<double> band_;  // (2*kb+1) diagonals, row-major per column
  bool factorized_ = false;
};

/// Interpolation in a 1D spline space at its Greville abscissae. The banded
/// collocation matrix B_j(greville_i) is factorized once at construction.
class CollocationSolver1D {
 public:
  explicit CollocationSolver1D(const KnotVector& kv);

  const std::vector<double>& greville() const { return greville_; }

  /// In place: each column of the (n x k) array is a right-hand side of
  /// values at the Greville points; on return it holds spline coefficients.
  void solve_columns(Eigen::Ref<Eigen::MatrixXd> values) const;
  /// In place on rows of an (k x n) array.
  void solve_rows(Eigen::Ref<Eigen::MatrixXd> values) const;

  /// Dense collocation matrix (for tests and diagnostics).
  Eigen::MatrixXd matrix() const;

 private:
  int n_ = 0;
  int degree_ = 0;
  std::vector<double> greville_;
  BandedLU lu_;
  Eigen::MatrixXd dense_;  // kept for matrix(); small (n x n)
};

/// Greville collocation operator for a tensor-product space: maps coefficient
/// grids to values at the Greville tensor grid and back. Factorized once;
/// applications cost two passes of 1D banded solves.
class TensorCollocation {
 public:
  explicit TensorCollocation(const TensorSpace& space);

  const std::vector<double>& greville_u() const { return u_.greville(); }
  const std::vector<double>& greville_v() const { return v_.greville(); }

  /// Coefficients of the spline interpolating `greville_values` (n_u x n_v).
  Eigen::MatrixXd solve(Eigen::MatrixXd greville_values) const;
  /// Values of the spline with coefficients `coeffs` at the Greville grid.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& coeffs) const;

 private:
  CollocationSolver1D u_;
  CollocationSolver1D v_;
  Eigen::MatrixXd cu_;  // dense 1D collocation matrices for apply()
  Eigen::MatrixXd cv_;
};

}  // namespace igtop

#endif
