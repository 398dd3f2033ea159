#ifndef IGTOP_GAUSS_HPP
#define IGTOP_GAUSS_HPP

#include <vector>

namespace igtop {

/// 1D Gauss-Legendre rule mapped to [0,1]; exact for polynomials of degree
/// <= 2*order - 1.
class GaussRule {
 public:
  GaussRule(std::vector<double> points, std::vector<double> weights)
      : points_(std::move(points)), weights_(std::move(weights)) {}

  int size() const { return static_cast<int>(points_.size()); }
  double point(int i) const { return points_[i]; }
  double weight(int i) const { return weights_[i]; }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

/// Gauss-Legendre nodes and weights on [0,1]. Supported orders: 1..16.
const GaussRule& gauss_rule(int order);

}  // namespace igtop

#endif
