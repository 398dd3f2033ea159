#include "igtop/gauss.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace igtop {

namespace {

constexpr int kMaxOrder = 16;

// Nodes by Newton iteration on the Legendre polynomial, then mapped from
// [-1,1] to [0,1].
GaussRule make_rule(int q) {
  std::vector<double> x(q), w(q);
  for (int i = 0; i < q; ++i) {
    // Chebyshev-based initial guess for the i-th root.
    double t = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = 0.0;
      for (int k = 0; k < q; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
      }
      const double dp = q * (t * p0 - p1) / (t * t - 1.0);
      const double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    // Recompute derivative at the converged node for the weight.
    p0 = 1.0;
    p1 = 0.0;
    for (int k = 0; k < q; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
    }
    const double dp = q * (t * p0 - p1) / (t * t - 1.0);
    x[i] = 0.5 * (1.0 - t);  // roots come out in decreasing t
    w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
  return GaussRule(std::move(x), std::move(w));
}

}  // namespace

const GaussRule& gauss_rule(int order) {
  if (order < 1 || order > kMaxOrder) {
    throw std::invalid_argument("gauss_rule: order must be in [1,16]");
  }
  static const std::array<GaussRule, kMaxOrder>* rules = [] {
    auto* r = new std::array<GaussRule, kMaxOrder>{
        make_rule(1),  make_rule(2),  make_rule(3),  make_rule(4),
        make_rule(5),  make_rule(6),  make_rule(7),  make_rule(8),
        make_rule(9),  make_rule(10), make_rule(11), make_rule(12),
        make_rule(13), make_rule(14), make_rule(15), make_rule(16)};
    return r;
  }();
  return (*rules)[order - 1];
}

}  // namespace igtop
