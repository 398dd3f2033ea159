#include "igtop/geometry.hpp"

#include "igtop/gauss.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace igtop {

GeometryMap GeometryMap::rectangle(double width, double height) {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw std::invalid_argument("rectangle: dimensions must be positive");
  }
  return GeometryMap(Kind::Rectangle, width, height);
}

GeometryMap GeometryMap::quarter_ring(double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_out > r_in)) {
    throw std::invalid_argument("quarter_ring: need 0 < r_in < r_out");
  }
  return GeometryMap(Kind::QuarterRing, r_in, r_out);
}

void GeometryMap::check_domain(double xi, double eta) const {
  if (xi < -1e-12 || xi > 1.0 + 1e-12 || eta < -1e-12 || eta > 1.0 + 1e-12) {
    throw std::out_of_range("GeometryMap: parametric point outside [0,1]^2");
  }
}

void GeometryMap::map_point(double xi, double eta, double& x, double& y) const {
  check_domain(xi, eta);
  if (kind_ == Kind::Rectangle) {
    x = a_ * xi;
    y = b_ * eta;
    return;
  }
  const double angle = 0.5 * std::numbers::pi * xi;
  const double r = a_ + (b_ - a_) * eta;
  x = r * std::cos(angle);
  y = r * std::sin(angle);
}

GeometryMap::Jacobian GeometryMap::jacobian(double xi, double eta) const {
  Jacobian out;
  if (kind_ == Kind::Rectangle) {
    out.J << a_, 0.0, 0.0, b_;
    out.det = a_ * b_;
    return out;
  }
  const double half_pi = 0.5 * std::numbers::pi;
  const double angle = half_pi * xi;
  const double dr = b_ - a_;
  const double r = a_ + dr * eta;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  out.J << -r * s * half_pi, dr * c, r * c * half_pi, dr * s;
  out.det = half_pi * dr * r;
  return out;
}

double GeometryMap::physical_area(int gauss_order) const {
  const GaussRule rule = gauss_rule(gauss_order);
  double area = 0.0;
  for (int i = 0; i < rule.size(); ++i) {
    for (int j = 0; j < rule.size(); ++j) {
      area += rule.weight(i) * rule.weight(j) *
              jacobian(rule.point(i), rule.point(j)).det;
    }
  }
  return area;
}

}  // namespace igtop
