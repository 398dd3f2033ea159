#ifndef IGTOP_SCALAR_GALERKIN_HPP
#define IGTOP_SCALAR_GALERKIN_HPP

#include "igtop/geometry.hpp"
#include "igtop/spline_field.hpp"
#include "igtop/tensor_space.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <memory>

namespace igtop {

/// Mass and stiffness matrices of a scalar spline space over a geometry,
/// assembled once per run. The mass matrix doubles as the discrete L2(D)
/// inner product for coefficient grids of this space.
class ScalarGalerkin {
 public:
  /// Gauss order defaults to degree+1.
  ScalarGalerkin(const TensorSpace& space, const GeometryMap& geo,
                 int gauss_order = 0);

  const TensorSpace& space() const { return space_; }
  const Eigen::SparseMatrix<double>& mass() const { return mass_; }
  const Eigen::SparseMatrix<double>& stiffness() const { return stiffness_; }

  double inner_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const;
  double norm(const Eigen::MatrixXd& a) const;

 private:
  TensorSpace space_;
  Eigen::SparseMatrix<double> mass_;
  Eigen::SparseMatrix<double> stiffness_;
};

/// Screened-Poisson smoothing: the Galerkin solution of
/// -gamma*Lap(g_f) + g_f = g with natural boundary conditions, i.e.
/// (gamma*K + M) c_f = M c in the same spline space.
class HelmholtzFilter {
 public:
  HelmholtzFilter(std::shared_ptr<const ScalarGalerkin> galerkin, double gamma);

  double gamma() const { return gamma_; }
  Eigen::MatrixXd apply(const Eigen::MatrixXd& coeffs) const;

 private:
  std::shared_ptr<const ScalarGalerkin> galerkin_;
  double gamma_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt_;
};

/// One-shot convenience for a single field.
SplineField2D helmholtz_filter(const SplineField2D& g, const GeometryMap& geo,
                               double gamma);

}  // namespace igtop

#endif
