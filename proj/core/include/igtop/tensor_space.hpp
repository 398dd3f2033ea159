#ifndef IGTOP_TENSOR_SPACE_HPP
#define IGTOP_TENSOR_SPACE_HPP

#include "igtop/knot_vector.hpp"

namespace igtop {

/// Tensor-product B-spline space on [0,1]^2 (or whatever the knot domains
/// are). Coefficient grids are (num_basis_u x num_basis_v), index (i,j).
class TensorSpace {
 public:
  TensorSpace(KnotVector u, KnotVector v) : u_(std::move(u)), v_(std::move(v)) {}

  /// Same open uniform knot vector in both directions.
  static TensorSpace uniform(int num_elements_u, int num_elements_v, int degree) {
    return TensorSpace(KnotVector::open_uniform(num_elements_u, degree),
                       KnotVector::open_uniform(num_elements_v, degree));
  }

  const KnotVector& u() const { return u_; }
  const KnotVector& v() const { return v_; }
  int num_basis_u() const { return u_.num_basis(); }
  int num_basis_v() const { return v_.num_basis(); }
  int num_elements_u() const { return u_.num_elements(); }
  int num_elements_v() const { return v_.num_elements(); }
  int num_elements() const { return num_elements_u() * num_elements_v(); }

  int element_index(int eu, int ev) const { return eu + num_elements_u() * ev; }

 private:
  KnotVector u_;
  KnotVector v_;
};

}  // namespace igtop

#endif
