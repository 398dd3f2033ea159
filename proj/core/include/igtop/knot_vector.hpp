#ifndef IGTOP_KNOT_VECTOR_HPP
#define IGTOP_KNOT_VECTOR_HPP

#include <Eigen/Dense>

#include <vector>

namespace igtop {

// Largest polynomial degree the stack-based evaluation buffers support.
inline constexpr int kMaxDegree = 32;

/// Open knot vector defining a 1D B-spline space of degree p with n basis
/// functions. Knots are non-decreasing and the end knots have multiplicity
/// p+1, so the basis interpolates at the domain endpoints.
class KnotVector {
 public:
  KnotVector(std::vector<double> knots, int degree);

  /// Open uniform knot vector with num_elements nonzero spans on [a, b].
  /// The space has num_elements + degree basis functions.
  static KnotVector open_uniform(int num_elements, int degree, double a = 0.0,
                                 double b = 1.0);

  int degree() const { return degree_; }
  int num_basis() const { return static_cast<int>(knots_.size()) - degree_ - 1; }
  int num_elements() const { return num_elements_; }
  double domain_min() const { return knots_.front(); }
  double domain_max() const { return knots_.back(); }
  const std::vector<double>& knots() const { return knots_; }

  /// Index of the first basis function that is nonzero at xi. The nonzero
  /// basis functions at xi are span..span+degree. Queries at the right domain
  /// endpoint evaluate in the last nonzero span, so endpoint interpolation
  /// holds. Throws std::out_of_range outside [domain_min, domain_max].
  int find_span(double xi) const;

  /// Parametric bounds of nonzero span e (element numbering, 0-based).
  double element_left(int e) const { return knots_[elem_knot_[e]]; }
  double element_right(int e) const { return knots_[elem_knot_[e] + 1]; }
  /// Element index containing xi (right endpoint belongs to the last one).
  int element_of(double xi) const;
  /// First nonzero basis index on element e.
  int element_first_basis(int e) const { return elem_knot_[e] - degree_; }

  /// Greville abscissae (knot averages), one per basis function. Requires
  /// degree >= 1.
  std::vector<double> greville() const;

  /// Nonzero basis values at xi for the span from find_span(xi).
  /// N must hold degree+1 doubles.
  void basis_values(int span, double xi, double* N) const;

  /// Nonzero basis values and derivatives up to order nderiv (<= degree).
  /// ders is (nderiv+1) x (degree+1) row-major; row k holds the k-th
  /// derivatives of basis functions span..span+degree at xi.
  void basis_derivatives(int span, double xi, int nderiv, double* ders) const;

 private:
  std::vector<double> knots_;
  int degree_ = 0;
  int num_elements_ = 0;
  std::vector<int> elem_knot_;  // knot index of each nonzero span
};

/// Nonzero basis functions at a query point.
struct BasisEvaluation {
  int span = 0;                  // index of the first nonzero basis function
  Eigen::VectorXd values;        // degree+1 nonzero values
  Eigen::MatrixXd derivatives;   // (deriv_order+1) x (degree+1); row 0 = values
};

/// Cox-de Boor evaluation of the nonzero basis functions (and derivatives up
/// to deriv_order) at xi. Throws std::out_of_range for xi outside the domain
/// and std::invalid_argument for deriv_order > degree.
BasisEvaluation eval_basis(const KnotVector& kv, double xi, int deriv_order = 0);

}  // namespace igtop

#endif
