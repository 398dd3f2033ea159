#ifndef IGTOP_TOPOLOGICAL_DERIVATIVE_HPP
#define IGTOP_TOPOLOGICAL_DERIVATIVE_HPP

#include "igtop/cut_ratio.hpp"
#include "igtop/elasticity.hpp"
#include "igtop/level_set.hpp"

namespace igtop {

/// Parameters of the sensitivity field and its smoothing.
struct TDParams {
  double alpha_in = 1.0;
  double alpha_out = 1e-4;
  double l = 5.0;       // area penalty weight
  double gamma = 1e-4;  // filter length-scale coefficient
  void validate() const;
};

enum class Region { Inside, Outside };

/// Closed-form topological derivative of the compliance-plus-area cost for a
/// circular perturbation at a point with energy density w = sigma(u):eps(u).
double topological_derivative(double w, Region region, const TDParams& params);

/// Cut-element interpolation between the inside and outside values of the
/// generalized derivative: g = dJ_out + ratio * (-dJ_in - dJ_out).
double generalized_td_value(double w, double ratio, const TDParams& params);

/// Generalized topological derivative sampled at the Greville grid of the
/// level-set space and collocated into a degree-d field. At Greville points
/// on boundaries shared by several elements, the per-element values are
/// averaged with equal weights.
SplineField2D generalized_td(const DisplacementField& u,
                             const ElasticMaterial& mat, const GeometryMap& geo,
                             const LevelSetField& phi,
                             const ElementClassGrid& classes,
                             const MaterialField& ratios,
                             const TDParams& params);

}  // namespace igtop

#endif
