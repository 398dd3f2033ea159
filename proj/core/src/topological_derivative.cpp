#include "igtop/topological_derivative.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace igtop {

void TDParams::validate() const {
  if (!(alpha_out > 0.0) || !(alpha_out < alpha_in)) {
    throw std::invalid_argument("TDParams: need 0 < alpha_out < alpha_in");
  }
  if (l < 0.0) throw std::invalid_argument("TDParams: l must be >= 0");
  if (gamma < 0.0) throw std::invalid_argument("TDParams: gamma must be >= 0");
}

double topological_derivative(double w, Region region, const TDParams& p) {
  if (region == Region::Inside) {
    return -3.0 * p.alpha_in *
               ((p.alpha_out - p.alpha_in) / (2.0 * p.alpha_out + p.alpha_in)) * w -
           p.l;
  }
  return -3.0 * p.alpha_out *
             ((p.alpha_in - p.alpha_out) / (2.0 * p.alpha_in + p.alpha_out)) * w +
         p.l;
}

double generalized_td_value(double w, double ratio, const TDParams& p) {
  const double dj_in = topological_derivative(w, Region::Inside, p);
  const double dj_out = topological_derivative(w, Region::Outside, p);
  return dj_out + ratio * (-dj_in - dj_out);
}

namespace {

// Elements incident to a 1D coordinate: two when the point sits on an
// interior element boundary, one otherwise.
void incident_elements(const KnotVector& kv, double x, int out[2], int& count) {
  const int e = kv.element_of(x);
  count = 1;
  out[0] = e;
  constexpr double tol = 1e-12;
  if (e > 0 && std::abs(x - kv.element_left(e)) <= tol) {
    out[count++] = e - 1;
  } else if (e + 1 < kv.num_elements() &&
             std::abs(x - kv.element_right(e)) <= tol) {
    out[count++] = e + 1;
  }
}

}  // namespace

SplineField2D generalized_td(const DisplacementField& u,
                             const ElasticMaterial& mat, const GeometryMap& geo,
                             const LevelSetField& phi,
                             const ElementClassGrid& classes,
                             const MaterialField& ratios,
                             const TDParams& params) {
  params.validate();
  const LevelSetContext& ctx = *phi.context();
  const std::vector<double>& gu = ctx.greville_u();
  const std::vector<double>& gv = ctx.greville_v();
  const TensorSpace& sp = phi.space();
  if (classes.nu != sp.num_elements_u() || classes.nv != sp.num_elements_v() ||
      ratios.nu != classes.nu || ratios.nv != classes.nv) {
    throw std::invalid_argument("generalized_td: grid dims mismatch");
  }

  Eigen::MatrixXd samples(static_cast<Eigen::Index>(gu.size()),
                          static_cast<Eigen::Index>(gv.size()));
  int eus[2], evs[2];
  int ncu = 0, ncv = 0;
  for (size_t j = 0; j < gv.size(); ++j) {
    incident_elements(sp.v(), gv[j], evs, ncv);
    for (size_t i = 0; i < gu.size(); ++i) {
      incident_elements(sp.u(), gu[i], eus, ncu);
      const double w = energy_density(u, mat, geo, gu[i], gv[j]);
      double acc = 0.0;
      for (int a = 0; a < ncu; ++a) {
        for (int b = 0; b < ncv; ++b) {
          double g;
          switch (classes.at(eus[a], evs[b])) {
            case ElementClass::Inside:
              g = -topological_derivative(w, Region::Inside, params);
              break;
            case ElementClass::Outside:
              g = topological_derivative(w, Region::Outside, params);
              break;
            case ElementClass::Cut:
            default:
              g = generalized_td_value(w, ratios.ratio_at(eus[a], evs[b]), params);
              break;
          }
          acc += g;
        }
      }
      samples(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          acc / (ncu * ncv);
    }
  }
  return SplineField2D(sp, ctx.collocation().solve(std::move(samples)));
}

}  // namespace igtop
