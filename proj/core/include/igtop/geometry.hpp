#ifndef IGTOP_GEOMETRY_HPP
#define IGTOP_GEOMETRY_HPP

#include <Eigen/Dense>

namespace igtop {

/// Map from the parametric domain [0,1]^2 to the physical domain.
///
/// rectangle:    x = width*xi, y = height*eta.
/// quarter_ring: angle a = (pi/2)*xi from the positive x axis,
///               radius r = r_in + (r_out - r_in)*eta,
///               (x,y) = (r cos a, r sin a).
///
/// The quarter ring uses the exact polar map; the framework consumes the
/// geometry only through point maps and Jacobians, so no rational spline
/// machinery is needed.
class GeometryMap {
 public:
  enum class Kind { Rectangle, QuarterRing };

  static GeometryMap rectangle(double width, double height);
  static GeometryMap quarter_ring(double r_in, double r_out);

  Kind kind() const { return kind_; }
  double width() const { return a_; }
  double height() const { return b_; }
  double r_in() const { return a_; }
  double r_out() const { return b_; }

  void map_point(double xi, double eta, double& x, double& y) const;

  struct Jacobian {
    Eigen::Matrix2d J;  // d(x,y)/d(xi,eta)
    double det;         // area scaling factor |det J|
  };
  /// Analytic Jacobian. `det` is the (positive) area scaling factor used as
  /// the integration weight; the signed determinant is available from J.
  Jacobian jacobian(double xi, double eta) const;

  /// Area of the physical domain, integrated with Gauss quadrature.
  double physical_area(int gauss_order = 8) const;

 private:
  GeometryMap(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}
  void check_domain(double xi, double eta) const;

  Kind kind_;
  double a_;  // width or r_in
  double b_;  // height or r_out
};

}  // namespace igtop

#endif
