#include "igtop/knot_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace igtop {

KnotVector::KnotVector(std::vector<double> knots, int degree)
    : knots_(std::move(knots)), degree_(degree) {
  if (degree_ < 0) {
    throw std::invalid_argument("KnotVector: degree must be >= 0");
  }
  if (degree_ > kMaxDegree) {
    throw std::invalid_argument("KnotVector: degree exceeds supported maximum");
  }
  const int nk = static_cast<int>(knots_.size());
  if (nk < 2 * (degree_ + 1)) {
    throw std::invalid_argument("KnotVector: too few knots for the degree");
  }
  if (!std::is_sorted(knots_.begin(), knots_.end())) {
    throw std::invalid_argument("KnotVector: knots must be non-decreasing");
  }
  for (int i = 0; i <= degree_; ++i) {
    if (knots_[i] != knots_.front() || knots_[nk - 1 - i] != knots_.back()) {
      throw std::invalid_argument(
          "KnotVector: end knots must have multiplicity degree+1");
    }
  }
  if (knots_.front() == knots_.back()) {
    throw std::invalid_argument("KnotVector: empty parametric domain");
  }
  // Record the nonzero spans.
  for (int s = degree_; s < num_basis(); ++s) {
    if (knots_[s + 1] > knots_[s]) {
      elem_knot_.push_back(s);
    }
  }
  num_elements_ = static_cast<int>(elem_knot_.size());
}

KnotVector KnotVector::open_uniform(int num_elements, int degree, double a,
                                    double b) {
  if (num_elements < 1) {
    throw std::invalid_argument("open_uniform: num_elements must be >= 1");
  }
  if (degree < 0) {
    throw std::invalid_argument("open_uniform: degree must be >= 0");
  }
  if (!(b > a)) {
    throw std::invalid_argument("open_uniform: domain must be non-empty");
  }
  std::vector<double> knots;
  knots.reserve(num_elements + 2 * degree + 1);
  for (int i = 0; i <= degree; ++i) knots.push_back(a);
  for (int i = 1; i < num_elements; ++i) {
    knots.push_back(a + (b - a) * static_cast<double>(i) / num_elements);
  }
  for (int i = 0; i <= degree; ++i) knots.push_back(b);
  return KnotVector(std::move(knots), degree);
}

int KnotVector::find_span(double xi) const {
  if (xi < domain_min() || xi > domain_max() || std::isnan(xi)) {
    throw std::out_of_range("find_span: point outside the parametric domain (" +
                            std::to_string(xi) + ")");
  }
  const int n = num_basis();
  if (xi >= knots_[n]) {
    return n - 1 - degree_;
  }
  int low = degree_;
  int high = n;
  while (high - low > 1) {
    const int mid = (low + high) / 2;
    if (xi < knots_[mid]) {
      high = mid;
    } else {
      low = mid;
    }
  }
  return low - degree_;
}

int KnotVector::element_of(double xi) const {
  const int first = find_span(xi) ;
  // find_span returns the first nonzero basis index; its knot span index is
  // first + degree. Map to element numbering.
  const int knot_span = first + degree_;
  const auto it =
      std::upper_bound(elem_knot_.begin(), elem_knot_.end(), knot_span);
  return static_cast<int>(it - elem_knot_.begin()) - 1;
}

std::vector<double> KnotVector::greville() const {
  if (degree_ < 1) {
    throw std::invalid_argument("greville: degree must be >= 1");
  }
  std::vector<double> pts(num_basis());
  for (int i = 0; i < num_basis(); ++i) {
    double sum = 0.0;
    for (int k = 1; k <= degree_; ++k) sum += knots_[i + k];
    pts[i] = sum / degree_;
  }
  return pts;
}

void KnotVector::basis_values(int span, double xi, double* N) const {
  // Knot-index form of the span for the classic triangular recursion.
  const int s = span + degree_;
  double left[kMaxDegree + 1];
  double right[kMaxDegree + 1];
  N[0] = 1.0;
  for (int j = 1; j <= degree_; ++j) {
    left[j] = xi - knots_[s + 1 - j];
    right[j] = knots_[s + j] - xi;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = N[r] / (right[r + 1] + left[j - r]);
      N[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    N[j] = saved;
  }
}

void KnotVector::basis_derivatives(int span, double xi, int nderiv,
                                   double* ders) const {
  const int p = degree_;
  const int s = span + p;
  const int ld = p + 1;
  double ndu[(kMaxDegree + 1) * (kMaxDegree + 1)];
  double left[kMaxDegree + 1];
  double right[kMaxDegree + 1];
  auto NDU = [&](int i, int j) -> double& { return ndu[i * (p + 1) + j]; };

  NDU(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = xi - knots_[s + 1 - j];
    right[j] = knots_[s + j] - xi;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      NDU(j, r) = right[r + 1] + left[j - r];
      const double temp = NDU(r, j - 1) / NDU(j, r);
      NDU(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    NDU(j, j) = saved;
  }
  for (int j = 0; j <= p; ++j) ders[0 * ld + j] = NDU(j, p);

  // Derivative rows from the difference table, one basis function at a time.
  double a[2][kMaxDegree + 1];
  for (int r = 0; r <= p; ++r) {
    int s1 = 0;
    int s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= nderiv; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / NDU(pk + 1, rk);
        d = a[s2][0] * NDU(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / NDU(pk + 1, rk + j);
        d += a[s2][j] * NDU(rk + j, pk);
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / NDU(pk + 1, r);
        d += a[s2][k] * NDU(r, pk);
      }
      ders[k * ld + r] = d;
      std::swap(s1, s2);
    }
  }
  // Multiply by the factorial-style factors p!/(p-k)!.
  double fac = static_cast<double>(p);
  for (int k = 1; k <= nderiv; ++k) {
    for (int j = 0; j <= p; ++j) ders[k * ld + j] *= fac;
    fac *= static_cast<double>(p - k);
  }
}

BasisEvaluation eval_basis(const KnotVector& kv, double xi, int deriv_order) {
  if (deriv_order < 0 || deriv_order > kv.degree()) {
    throw std::invalid_argument("eval_basis: deriv_order must be in [0, degree]");
  }
  BasisEvaluation out;
  out.span = kv.find_span(xi);
  const int p = kv.degree();
  out.values.resize(p + 1);
  out.derivatives.resize(deriv_order + 1, p + 1);
  std::vector<double> buf((deriv_order + 1) * (p + 1));
  if (deriv_order == 0) {
    kv.basis_values(out.span, xi, buf.data());
  } else {
    kv.basis_derivatives(out.span, xi, deriv_order, buf.data());
  }
  for (int k = 0; k <= deriv_order; ++k) {
    for (int j = 0; j <= p; ++j) {
      out.derivatives(k, j) = buf[k * (p + 1) + j];
    }
  }
  out.values = out.derivatives.row(0);
  return out;
}

}  // namespace igtop
