#ifndef IGTOP_SPLINE_FIELD_HPP
#define IGTOP_SPLINE_FIELD_HPP

#include "igtop/tensor_space.hpp"

#include <Eigen/Dense>

namespace igtop {

/// Scalar tensor-product spline field: value(xi,eta) = sum_ij B_i(xi) B_j(eta) c_ij.
/// Immutable after construction; evaluation is allocation-free.
class SplineField2D {
 public:
  SplineField2D(TensorSpace space, Eigen::MatrixXd coeffs);

  const TensorSpace& space() const { return space_; }
  const Eigen::MatrixXd& coeffs() const { return coeffs_; }

  double value(double xi, double eta) const;
  /// Value and first parametric derivatives in one pass.
  void value_and_gradient(double xi, double eta, double& val, double& d_xi,
                          double& d_eta) const;
  /// Mixed parametric derivative of order (du, dv), du <= degree_u etc.
  double derivative(double xi, double eta, int du, int dv) const;

 private:
  TensorSpace space_;
  Eigen::MatrixXd coeffs_;
};

/// Bidegree polynomial restriction of a spline field to one background
/// element, in coordinates centered at the element midpoint. Built once per
/// element, it makes repeated point queries (adaptive quadrature, dense
/// sampling) cheap: a Horner evaluation instead of a knot search.
class ElementPolynomial {
 public:
  ElementPolynomial(const SplineField2D& field, int eu, int ev);

  double xi_min() const { return xi_min_; }
  double xi_max() const { return xi_max_; }
  double eta_min() const { return eta_min_; }
  double eta_max() const { return eta_max_; }

  /// Evaluate at element-local offsets from the midpoint.
  double eval_local(double dx, double dy) const;
  /// Evaluate at parametric coordinates (must lie in the element closure).
  double eval(double xi, double eta) const {
    return eval_local(xi - mid_xi_, eta - mid_eta_);
  }

 private:
  int degree_u_ = 0;
  int degree_v_ = 0;
  double mid_xi_ = 0.0, mid_eta_ = 0.0;
  double xi_min_ = 0.0, xi_max_ = 0.0, eta_min_ = 0.0, eta_max_ = 0.0;
  // Power-basis coefficients P(a,b) of (dx)^a (dy)^b.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic> pw_;
};

}  // namespace igtop

#endif
