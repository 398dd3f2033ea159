#ifndef IGTOP_ELASTICITY_HPP
#define IGTOP_ELASTICITY_HPP

#include "igtop/cut_ratio.hpp"
#include "igtop/geometry.hpp"
#include "igtop/spline_field.hpp"
#include "igtop/tensor_space.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <memory>
#include <vector>

namespace igtop {

/// Isotropic linear-elastic material under plane strain.
struct ElasticMaterial {
  double E = 1.0;
  double nu = 1.0 / 3.0;

  double mu() const { return E / (2.0 * (1.0 + nu)); }
  double lambda() const { return E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)); }
  void validate() const;
};

enum class Edge { XiMin, XiMax, EtaMin, EtaMax };

/// Concentrated load lumped onto the spline basis at a parametric location.
struct PointLoad {
  double xi = 1.0;
  double eta = 0.5;
  double dir_x = 0.0;
  double dir_y = -1.0;
  double magnitude = 1.0;
  void validate() const;  // direction must be a unit vector
};

/// Two-component spline displacement field of degree p.
class DisplacementField {
 public:
  DisplacementField(TensorSpace space, Eigen::MatrixXd coeffs_x,
                    Eigen::MatrixXd coeffs_y);

  const TensorSpace& space() const { return x_.space(); }
  const SplineField2D& x() const { return x_; }
  const SplineField2D& y() const { return y_; }

  void value(double xi, double eta, double& ux, double& uy) const;

 private:
  SplineField2D x_;
  SplineField2D y_;
};

/// Unscaled strain-energy density sigma(u):eps(u) at a parametric point,
/// with strains mapped through the geometry Jacobian.
double energy_density(const DisplacementField& u, const ElasticMaterial& mat,
                      const GeometryMap& geo, double xi, double eta);

/// Per-element stiffness blocks and areas for a fixed space/geometry/material
/// and Gauss order. Only the element material coefficient alpha changes over
/// an optimization run, so these are computed once and reused by every
/// assembly and by the compliance evaluation.
class ElementMatrices {
 public:
  ElementMatrices(const TensorSpace& space, const GeometryMap& geo,
                  const ElasticMaterial& mat, int gauss_order);

  const TensorSpace& space() const { return space_; }
  int gauss_order() const { return gauss_order_; }
  int local_size() const { return local_size_; }
  int num_elements() const { return nelem_; }
  int num_dofs() const { return 2 * space_.num_basis_u() * space_.num_basis_v(); }

  const int* element_dofs(int e) const { return dofs_.data() + static_cast<size_t>(e) * local_size_; }
  /// Packed upper triangle of the element stiffness (alpha not applied).
  const double* upper(int e) const { return upper_.data() + static_cast<size_t>(e) * upper_size_; }
  int upper_size() const { return upper_size_; }

  /// u_e^T K_e u_e against a full dof vector (alpha not applied).
  double element_energy(int e, const Eigen::VectorXd& u) const;
  double element_physical_area(int e) const { return areas_[e]; }
  double domain_area() const { return domain_area_; }

 private:
  TensorSpace space_;
  int gauss_order_;
  int nelem_ = 0;
  int local_size_ = 0;
  int upper_size_ = 0;
  std::vector<int> dofs_;
  std::vector<double> upper_;
  std::vector<double> areas_;
  double domain_area_ = 0.0;
};

/// Assembled immersed elasticity system: stiffness with per-element alpha
/// scaling, load vector, and Dirichlet constraints. Row/column elimination
/// happens at solve time, so the full symmetric K stays inspectable.
class ElasticSystem {
 public:
  ElasticSystem(const TensorSpace& space, const GeometryMap& geo,
                const ElasticMaterial& mat, const MaterialField& alpha,
                int gauss_order);
  /// Gauss order defaults to p+1.
  ElasticSystem(const TensorSpace& space, const GeometryMap& geo,
                const ElasticMaterial& mat, const MaterialField& alpha);

  const TensorSpace& space() const { return em_->space(); }
  int dof(int i, int j, int comp) const;
  int num_dofs() const { return em_->num_dofs(); }

  /// Homogeneous Dirichlet conditions on a full parametric edge: the
  /// boundary-interpolatory index line of control variables is eliminated.
  void apply_dirichlet(Edge edge);
  /// Prescribe one control variable (used for patch tests).
  void constrain(int i, int j, int comp, double value);
  void apply_point_load(const PointLoad& load);

  const Eigen::SparseMatrix<double>& stiffness() const { return K_; }
  const Eigen::VectorXd& load() const { return F_; }
  int num_constrained() const;

  /// Direct SPD solve with iterative refinement to the requested relative
  /// residual on the reduced system. Throws on factorization failure or
  /// non-convergence.
  DisplacementField solve(double rel_tol = 1e-10) const;

  const ElementMatrices& element_matrices() const { return *em_; }

 private:
  std::shared_ptr<const ElementMatrices> em_;
  GeometryMap geo_;
  Eigen::SparseMatrix<double> K_;
  Eigen::VectorXd F_;
  std::vector<char> constrained_;
  Eigen::VectorXd constraint_value_;
};

/// Compliance term of the cost: element-wise Gauss quadrature of
/// alpha_e * sigma(u):eps(u), plus l times the material area
/// sum_e ratio_e * |e|_phys.
struct CostBreakdown {
  double compliance = 0.0;
  double area = 0.0;  // physical material area
  double total(double l) const { return compliance + l * area; }
};
CostBreakdown cost_breakdown(const DisplacementField& u,
                             const ElasticMaterial& mat,
                             const MaterialField& alpha, const GeometryMap& geo,
                             int gauss_order);
double cost(const DisplacementField& u, const ElasticMaterial& mat,
            const MaterialField& alpha, double l, const GeometryMap& geo);

/// Repeated-solve path for the optimizer: fixed space, geometry, boundary
/// conditions and loads; only alpha changes between calls. The sparsity
/// pattern and its symbolic factorization are reused across solves.
class ComplianceProblem {
 public:
  ComplianceProblem(const TensorSpace& space, const GeometryMap& geo,
                    const ElasticMaterial& mat, std::vector<Edge> dirichlet,
                    std::vector<PointLoad> loads, int gauss_order);

  struct Solution {
    DisplacementField u;
    double compliance = 0.0;
  };
  Solution solve(const MaterialField& alpha, double rel_tol = 1e-10);

  const ElementMatrices& element_matrices() const { return *em_; }
  int num_solves() const { return num_solves_; }

 private:
  std::shared_ptr<const ElementMatrices> em_;
  GeometryMap geo_;
  std::vector<int> full_to_free_;
  std::vector<int> free_dofs_;
  Eigen::VectorXd F_full_;
  Eigen::VectorXd F_red_;
  Eigen::SparseMatrix<double> K_red_;
  std::vector<int> scatter_;  // per element, per upper entry: (pos_ab, pos_ba)
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt_;
  int num_solves_ = 0;
};

}  // namespace igtop

#endif
