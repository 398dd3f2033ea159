#ifndef IGTOP_LEVEL_SET_HPP
#define IGTOP_LEVEL_SET_HPP

#include "igtop/collocation.hpp"
#include "igtop/geometry.hpp"
#include "igtop/spline_field.hpp"
#include "igtop/tensor_space.hpp"

#include <Eigen/Dense>

#include <memory>
#include <vector>

namespace igtop {

/// Sign classification of a background element against the zero isoline.
/// Material is phi <= 0; samples with |phi| <= 1e-12 count as material, so
/// an element is Outside only if some sample is strictly positive and none
/// is strictly negative.
enum class ElementClass : unsigned char { Inside, Outside, Cut };

struct ElementClassGrid {
  int nu = 0;
  int nv = 0;
  std::vector<ElementClass> cls;

  ElementClass at(int eu, int ev) const { return cls[eu + nu * ev]; }
  ElementClass& at(int eu, int ev) { return cls[eu + nu * ev]; }
};

/// Immutable per-run infrastructure for the level-set space: the tensor
/// space, its Greville grid, and the factorized collocation operator.
class LevelSetContext {
 public:
  explicit LevelSetContext(TensorSpace space)
      : space_(std::move(space)),
        collocation_(space_),
        greville_u_(space_.u().greville()),
        greville_v_(space_.v().greville()) {}

  const TensorSpace& space() const { return space_; }
  const TensorCollocation& collocation() const { return collocation_; }
  const std::vector<double>& greville_u() const { return greville_u_; }
  const std::vector<double>& greville_v() const { return greville_v_; }

 private:
  TensorSpace space_;
  TensorCollocation collocation_;
  std::vector<double> greville_u_;
  std::vector<double> greville_v_;
};

/// Discretized level-set function of degree d. Holds both the spline
/// coefficients and the cached values at the Greville tensor grid; the two
/// stay collocation-consistent. Immutable: updates return a new field.
class LevelSetField {
 public:
  /// Collocates the given Greville-point values.
  LevelSetField(std::shared_ptr<const LevelSetContext> ctx,
                Eigen::MatrixXd greville_values);

  static LevelSetField constant(std::shared_ptr<const LevelSetContext> ctx,
                                double value);
  /// Builds from coefficients; the Greville cache is refreshed by evaluation.
  static LevelSetField from_coeffs(std::shared_ptr<const LevelSetContext> ctx,
                                   Eigen::MatrixXd coeffs);

  const std::shared_ptr<const LevelSetContext>& context() const { return ctx_; }
  const TensorSpace& space() const { return ctx_->space(); }
  const SplineField2D& field() const { return field_; }
  const Eigen::MatrixXd& coeffs() const { return field_.coeffs(); }
  const Eigen::MatrixXd& greville_values() const { return greville_values_; }

  double value(double xi, double eta) const { return field_.value(xi, eta); }

  /// Re-collocation from updated Greville-point values.
  LevelSetField with_greville_values(Eigen::MatrixXd new_values) const;
  /// Same field scaled by s (coefficients and cached values alike).
  LevelSetField scaled(double s) const;

 private:
  LevelSetField(std::shared_ptr<const LevelSetContext> ctx,
                Eigen::MatrixXd coeffs, Eigen::MatrixXd greville_values);

  std::shared_ptr<const LevelSetContext> ctx_;
  SplineField2D field_;
  Eigen::MatrixXd greville_values_;
};

/// Per-element classification from the signs of phi at the tensor Gauss
/// points of a (d+2)-point rule plus the four element corners.
ElementClassGrid classify_elements(const LevelSetField& phi);

/// L2(D) inner product of two spline fields on the same background mesh
/// (degrees may differ), by element-wise Gauss quadrature of order
/// max(degrees)+1 with the geometry Jacobian.
double l2_inner_product(const SplineField2D& f, const SplineField2D& g,
                        const GeometryMap& geo);
double l2_norm(const SplineField2D& f, const GeometryMap& geo);

}  // namespace igtop

#endif
