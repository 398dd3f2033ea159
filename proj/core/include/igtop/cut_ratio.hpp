#ifndef IGTOP_CUT_RATIO_HPP
#define IGTOP_CUT_RATIO_HPP

#include "igtop/level_set.hpp"

#include <vector>

namespace igtop {

/// Default subdivision limit for the cut-ratio quadrature.
inline constexpr int kCutRatioMaxDepth = 6;
/// Default absolute error target for one element's ratio.
inline constexpr double kCutRatioTol = 1e-6;

/// Fraction |e ∩ {phi<0}| / |e| of background element (eu,ev) covered by
/// material, in parametric measure. Mixed-sign sub-cells are split by
/// adaptive quadtree subdivision; at the depth limit (or as soon as the
/// restriction is planar to within the error target) a linear fit of phi is
/// cut against the sub-cell exactly. Throws std::invalid_argument for
/// tol <= 0.
double cut_ratio(const LevelSetField& phi, int eu, int ev,
                 double tol = kCutRatioTol, int max_depth = kCutRatioMaxDepth);

/// Eq.-style material averaging: alpha = alpha_out + ratio*(alpha_in - alpha_out)
/// with alpha_in = 1 kept explicit. Requires ratio in [0,1] and
/// 0 < alpha_out <= alpha_in.
double element_alpha(double ratio, double alpha_out, double alpha_in = 1.0);

/// Per-element cut ratios and material coefficients for a whole background
/// mesh. Inside elements get ratio 1, Outside ratio 0, Cut elements the
/// quadtree ratio.
struct MaterialField {
  int nu = 0;
  int nv = 0;
  std::vector<double> ratio;
  std::vector<double> alpha;

  double ratio_at(int eu, int ev) const { return ratio[eu + nu * ev]; }
  double alpha_at(int eu, int ev) const { return alpha[eu + nu * ev]; }
};

MaterialField compute_material_field(const LevelSetField& phi,
                                     const ElementClassGrid& classes,
                                     double alpha_in, double alpha_out,
                                     double tol = kCutRatioTol,
                                     int max_depth = kCutRatioMaxDepth);

}  // namespace igtop

#endif
