#include "igtop/spline_field.hpp"

#include <stdexcept>

namespace igtop {

SplineField2D::SplineField2D(TensorSpace space, Eigen::MatrixXd coeffs)
    : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != space_.num_basis_u() ||
      coeffs_.cols() != space_.num_basis_v()) {
    throw std::invalid_argument("SplineField2D: coefficient grid dims mismatch");
  }
}

double SplineField2D::value(double xi, double eta) const {
  const KnotVector& ku = space_.u();
  const KnotVector& kv = space_.v();
  double Nu[kMaxDegree + 1];
  double Nv[kMaxDegree + 1];
  const int su = ku.find_span(xi);
  const int sv = kv.find_span(eta);
  ku.basis_values(su, xi, Nu);
  kv.basis_values(sv, eta, Nv);
  double out = 0.0;
  for (int j = 0; j <= kv.degree(); ++j) {
    double s = 0.0;
    for (int i = 0; i <= ku.degree(); ++i) {
      s += Nu[i] * coeffs_(su + i, sv + j);
    }
    out += s * Nv[j];
  }
  return out;
}

void SplineField2D::value_and_gradient(double xi, double eta, double& val,
                                       double& d_xi, double& d_eta) const {
  const KnotVector& ku = space_.u();
  const KnotVector& kv = space_.v();
  const int pu = ku.degree();
  const int pv = kv.degree();
  double Du[2 * (kMaxDegree + 1)];
  double Dv[2 * (kMaxDegree + 1)];
  const int su = ku.find_span(xi);
  const int sv = kv.find_span(eta);
  ku.basis_derivatives(su, xi, 1, Du);
  kv.basis_derivatives(sv, eta, 1, Dv);
  val = d_xi = d_eta = 0.0;
  for (int j = 0; j <= pv; ++j) {
    double s0 = 0.0, s1 = 0.0;
    for (int i = 0; i <= pu; ++i) {
      const double c = coeffs_(su + i, sv + j);
      s0 += Du[i] * c;
      s1 += Du[(pu + 1) + i] * c;
    }
    val += s0 * Dv[j];
    d_xi += s1 * Dv[j];
    d_eta += s0 * Dv[(pv + 1) + j];
  }
}

double SplineField2D::derivative(double xi, double eta, int du, int dv) const {
  const KnotVector& ku = space_.u();
  const KnotVector& kv = space_.v();
  const int pu = ku.degree();
  const int pv = kv.degree();
  if (du < 0 || dv < 0 || du > pu || dv > pv) {
    throw std::invalid_argument("derivative: order out of range");
  }
  std::vector<double> Du((du + 1) * (pu + 1));
  std::vector<double> Dv((dv + 1) * (pv + 1));
  const int su = ku.find_span(xi);
  const int sv = kv.find_span(eta);
  ku.basis_derivatives(su, xi, du, Du.data());
  kv.basis_derivatives(sv, eta, dv, Dv.data());
  double out = 0.0;
  for (int j = 0; j <= pv; ++j) {
    double s = 0.0;
    for (int i = 0; i <= pu; ++i) {
      s += Du[du * (pu + 1) + i] * coeffs_(su + i, sv + j);
    }
    out += s * Dv[dv * (pv + 1) + j];
  }
  return out;
}

ElementPolynomial::ElementPolynomial(const SplineField2D& field, int eu, int ev) {
  const TensorSpace& sp = field.space();
  const KnotVector& ku = sp.u();
  const KnotVector& kv = sp.v();
  degree_u_ = ku.degree();
  degree_v_ = kv.degree();
  xi_min_ = ku.element_left(eu);
  xi_max_ = ku.element_right(eu);
  eta_min_ = kv.element_left(ev);
  eta_max_ = kv.element_right(ev);
  mid_xi_ = 0.5 * (xi_min_ + xi_max_);
  mid_eta_ = 0.5 * (eta_min_ + eta_max_);

  // Taylor coefficients of the local polynomial at the element midpoint are
  // exact because the restriction to one element is a polynomial.
  const int pu = degree_u_;
  const int pv = degree_v_;
  std::vector<double> Tu((pu + 1) * (pu + 1));
  std::vector<double> Tv((pv + 1) * (pv + 1));
  const int su = ku.find_span(mid_xi_);
  const int sv = kv.find_span(mid_eta_);
  ku.basis_derivatives(su, mid_xi_, pu, Tu.data());
  kv.basis_derivatives(sv, mid_eta_, pv, Tv.data());
  double fact = 1.0;
  for (int k = 0; k <= pu; ++k) {
    if (k > 1) fact *= k;
    for (int i = 0; i <= pu; ++i) Tu[k * (pu + 1) + i] /= fact;
  }
  fact = 1.0;
  for (int k = 0; k <= pv; ++k) {
    if (k > 1) fact *= k;
    for (int j = 0; j <= pv; ++j) Tv[k * (pv + 1) + j] /= fact;
  }

  pw_.setZero(pu + 1, pv + 1);
  const Eigen::MatrixXd& c = field.coeffs();
  for (int a = 0; a <= pu; ++a) {
    for (int b = 0; b <= pv; ++b) {
      double s = 0.0;
      for (int i = 0; i <= pu; ++i) {
        for (int j = 0; j <= pv; ++j) {
          s += Tu[a * (pu + 1) + i] * Tv[b * (pv + 1) + j] * c(su + i, sv + j);
        }
      }
      pw_(a, b) = s;
    }
  }
}

double ElementPolynomial::eval_local(double dx, double dy) const {
  // Horner in dy inside Horner in dx.
  double out = 0.0;
  for (int a = degree_u_; a >= 0; --a) {
    double row = 0.0;
    for (int b = degree_v_; b >= 0; --b) {
      row = row * dy + pw_(a, b);
    }
    out = out * dx + row;
  }
  return out;
}

}  // namespace igtop
