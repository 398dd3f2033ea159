#include "igtop/scalar_galerkin.hpp"

#include "igtop/gauss.hpp"
#include "igtop/knot_vector.hpp"

#include <stdexcept>
#include <vector>

namespace igtop {

ScalarGalerkin::ScalarGalerkin(const TensorSpace& space, const GeometryMap& geo,
                               int gauss_order)
    : space_(space) {
  const KnotVector& ku = space_.u();
  const KnotVector& kv = space_.v();
  const int pu = ku.degree();
  const int pv = kv.degree();
  if (gauss_order <= 0) gauss_order = std::max(pu, pv) + 1;
  const GaussRule& rule = gauss_rule(gauss_order);
  const int nq = rule.size();
  const int nbf = (pu + 1) * (pv + 1);
  const int n_u = space_.num_basis_u();
  const int n = n_u * space_.num_basis_v();

  std::vector<Eigen::Triplet<double>> mt, kt;
  mt.reserve(static_cast<size_t>(space_.num_elements()) * nbf * nbf);
  kt.reserve(mt.capacity());

  std::vector<double> Du(2 * (pu + 1)), Dv(2 * (pv + 1));
  std::vector<double> N(nbf), gx(nbf), gy(nbf);
  std::vector<int> gdof(nbf);
  Eigen::MatrixXd Mloc(nbf, nbf), Kloc(nbf, nbf);

  for (int ev = 0; ev < space_.num_elements_v(); ++ev) {
    const double e0 = kv.element_left(ev);
    const double eh = kv.element_right(ev) - e0;
    for (int eu = 0; eu < space_.num_elements_u(); ++eu) {
      const double x0 = ku.element_left(eu);
      const double xh = ku.element_right(eu) - x0;
      const int su = ku.element_first_basis(eu);
      const int sv = kv.element_first_basis(ev);
      for (int j = 0; j <= pv; ++j) {
        for (int i = 0; i <= pu; ++i) {
          gdof[i + (pu + 1) * j] = (su + i) + n_u * (sv + j);
        }
      }
      Mloc.setZero();
      Kloc.setZero();
      for (int qi = 0; qi < nq; ++qi) {
        const double xi = x0 + xh * rule.point(qi);
        ku.basis_derivatives(ku.find_span(xi), xi, 1, Du.data());
        for (int qj = 0; qj < nq; ++qj) {
          const double eta = e0 + eh * rule.point(qj);
          kv.basis_derivatives(kv.find_span(eta), eta, 1, Dv.data());
          const GeometryMap::Jacobian jac = geo.jacobian(xi, eta);
          const Eigen::Matrix2d Jinv = jac.J.inverse();
          const double w = rule.weight(qi) * rule.weight(qj) * xh * eh * jac.det;
          for (int j = 0; j <= pv; ++j) {
            for (int i = 0; i <= pu; ++i) {
              const int a = i + (pu + 1) * j;
              N[a] = Du[i] * Dv[j];
              const double d_xi = Du[(pu + 1) + i] * Dv[j];
              const double d_eta = Du[i] * Dv[(pv + 1) + j];
              gx[a] = d_xi * Jinv(0, 0) + d_eta * Jinv(1, 0);
              gy[a] = d_xi * Jinv(0, 1) + d_eta * Jinv(1, 1);
            }
          }
          for (int a = 0; a < nbf; ++a) {
            for (int b = a; b < nbf; ++b) {
              Mloc(a, b) += w * N[a] * N[b];
              Kloc(a, b) += w * (gx[a] * gx[b] + gy[a] * gy[b]);
            }
          }
        }
      }
      for (int a = 0; a < nbf; ++a) {
        for (int b = a; b < nbf; ++b) {
          mt.emplace_back(gdof[a], gdof[b], Mloc(a, b));
          kt.emplace_back(gdof[a], gdof[b], Kloc(a, b));
          if (a != b) {
            mt.emplace_back(gdof[b], gdof[a], Mloc(a, b));
            kt.emplace_back(gdof[b], gdof[a], Kloc(a, b));
          }
        }
      }
    }
  }
  mass_.resize(n, n);
  mass_.setFromTriplets(mt.begin(), mt.end());
  mass_.makeCompressed();
  stiffness_.resize(n, n);
  stiffness_.setFromTriplets(kt.begin(), kt.end());
  stiffness_.makeCompressed();
}

double ScalarGalerkin::inner_product(const Eigen::MatrixXd& a,
                                     const Eigen::MatrixXd& b) const {
  const Eigen::Map<const Eigen::VectorXd> va(a.data(), a.size());
  const Eigen::Map<const Eigen::VectorXd> vb(b.data(), b.size());
  return va.dot(mass_ * vb);
}

double ScalarGalerkin::norm(const Eigen::MatrixXd& a) const {
  return std::sqrt(std::max(0.0, inner_product(a, a)));
}

HelmholtzFilter::HelmholtzFilter(std::shared_ptr<const ScalarGalerkin> galerkin,
                                 double gamma)
    : galerkin_(std::move(galerkin)), gamma_(gamma) {
  if (gamma_ < 0.0) {
    throw std::invalid_argument("HelmholtzFilter: gamma must be >= 0");
  }
  const Eigen::SparseMatrix<double> A =
      gamma_ * galerkin_->stiffness() + galerkin_->mass();
  llt_.compute(A);
  if (llt_.info() != Eigen::Success) {
    throw std::runtime_error("HelmholtzFilter: factorization failed");
  }
}

Eigen::MatrixXd HelmholtzFilter::apply(const Eigen::MatrixXd& coeffs) const {
  const Eigen::Map<const Eigen::VectorXd> c(coeffs.data(), coeffs.size());
  Eigen::VectorXd rhs = galerkin_->mass() * c;
  Eigen::VectorXd sol = llt_.solve(rhs);
  return Eigen::Map<Eigen::MatrixXd>(sol.data(), coeffs.rows(), coeffs.cols());
}

SplineField2D helmholtz_filter(const SplineField2D& g, const GeometryMap& geo,
                               double gamma) {
  const HelmholtzFilter filter(
      std::make_shared<const ScalarGalerkin>(g.space(), geo), gamma);
  return SplineField2D(g.space(), filter.apply(g.coeffs()));
}

}  // namespace igtop
