#include "igtop/level_set.hpp"

#include "igtop/gauss.hpp"

#include <cmath>
#include <stdexcept>

namespace igtop {

namespace {
constexpr double kSignTol = 1e-12;
}

LevelSetField::LevelSetField(std::shared_ptr<const LevelSetContext> ctx,
                             Eigen::MatrixXd greville_values)
    : ctx_(std::move(ctx)),
      field_(ctx_->space(), ctx_->collocation().solve(greville_values)),
      greville_values_(std::move(greville_values)) {
  if (greville_values_.rows() != space().num_basis_u() ||
      greville_values_.cols() != space().num_basis_v()) {
    throw std::invalid_argument("LevelSetField: Greville grid dims mismatch");
  }
}

LevelSetField::LevelSetField(std::shared_ptr<const LevelSetContext> ctx,
                             Eigen::MatrixXd coeffs,
                             Eigen::MatrixXd greville_values)
    : ctx_(std::move(ctx)),
      field_(ctx_->space(), std::move(coeffs)),
      greville_values_(std::move(greville_values)) {}

LevelSetField LevelSetField::constant(std::shared_ptr<const LevelSetContext> ctx,
                                      double value) {
  const int n = ctx->space().num_basis_u();
  const int m = ctx->space().num_basis_v();
  // Partition of unity: constant coefficients give the constant field.
  return LevelSetField(std::move(ctx), Eigen::MatrixXd::Constant(n, m, value),
                       Eigen::MatrixXd::Constant(n, m, value));
}

LevelSetField LevelSetField::from_coeffs(
    std::shared_ptr<const LevelSetContext> ctx, Eigen::MatrixXd coeffs) {
  Eigen::MatrixXd values = ctx->collocation().apply(coeffs);
  return LevelSetField(std::move(ctx), std::move(coeffs), std::move(values));
}

LevelSetField LevelSetField::with_greville_values(
    Eigen::MatrixXd new_values) const {
  return LevelSetField(ctx_, std::move(new_values));
}

LevelSetField LevelSetField::scaled(double s) const {
  return LevelSetField(ctx_, coeffs() * s, greville_values_ * s);
}

ElementClassGrid classify_elements(const LevelSetField& phi) {
  const TensorSpace& sp = phi.space();
  const int d = std::max(phi.space().u().degree(), phi.space().v().degree());
  const GaussRule& rule = gauss_rule(d + 2);
  const int nq = rule.size();

  ElementClassGrid grid;
  grid.nu = sp.num_elements_u();
  grid.nv = sp.num_elements_v();
  grid.cls.resize(static_cast<size_t>(grid.nu) * grid.nv);

  for (int ev = 0; ev < grid.nv; ++ev) {
    for (int eu = 0; eu < grid.nu; ++eu) {
      const ElementPolynomial poly(phi.field(), eu, ev);
      const double w = poly.xi_max() - poly.xi_min();
      const double h = poly.eta_max() - poly.eta_min();
      bool has_pos = false;
      bool has_neg = false;
      auto sample = [&](double xi, double eta) {
        const double v = poly.eval(xi, eta);
        if (v > kSignTol) has_pos = true;
        if (v < -kSignTol) has_neg = true;
      };
      for (int i = 0; i < nq && !(has_pos && has_neg); ++i) {
        for (int j = 0; j < nq; ++j) {
          sample(poly.xi_min() + w * rule.point(i),
                 poly.eta_min() + h * rule.point(j));
        }
      }
      if (!(has_pos && has_neg)) {
        sample(poly.xi_min(), poly.eta_min());
        sample(poly.xi_max(), poly.eta_min());
        sample(poly.xi_min(), poly.eta_max());
        sample(poly.xi_max(), poly.eta_max());
      }
      ElementClass c = ElementClass::Cut;
      if (has_pos && has_neg) {
        c = ElementClass::Cut;
      } else if (has_pos) {
        c = ElementClass::Outside;
      } else {
        c = ElementClass::Inside;
      }
      grid.at(eu, ev) = c;
    }
  }
  return grid;
}

namespace {

void check_same_mesh(const TensorSpace& a, const TensorSpace& b) {
  if (a.num_elements_u() != b.num_elements_u() ||
      a.num_elements_v() != b.num_elements_v()) {
    throw std::invalid_argument("fields live on different background meshes");
  }
  for (int e = 0; e < a.num_elements_u(); ++e) {
    if (std::abs(a.u().element_left(e) - b.u().element_left(e)) > 1e-12) {
      throw std::invalid_argument("fields live on different background meshes");
    }
  }
  for (int e = 0; e < a.num_elements_v(); ++e) {
    if (std::abs(a.v().element_left(e) - b.v().element_left(e)) > 1e-12) {
      throw std::invalid_argument("fields live on different background meshes");
    }
  }
}

}  // namespace

double l2_inner_product(const SplineField2D& f, const SplineField2D& g,
                        const GeometryMap& geo) {
  check_same_mesh(f.space(), g.space());
  const int deg = std::max(
      {f.space().u().degree(), f.space().v().degree(), g.space().u().degree(),
       g.space().v().degree()});
  const GaussRule& rule = gauss_rule(deg + 1);
  const int nq = rule.size();

  double total = 0.0;
  for (int ev = 0; ev < f.space().num_elements_v(); ++ev) {
    for (int eu = 0; eu < f.space().num_elements_u(); ++eu) {
      const ElementPolynomial pf(f, eu, ev);
      const ElementPolynomial pg(g, eu, ev);
      const double w = pf.xi_max() - pf.xi_min();
      const double h = pf.eta_max() - pf.eta_min();
      double acc = 0.0;
      for (int i = 0; i < nq; ++i) {
        const double xi = pf.xi_min() + w * rule.point(i);
        for (int j = 0; j < nq; ++j) {
          const double eta = pf.eta_min() + h * rule.point(j);
          const double jac = geo.jacobian(xi, eta).det;
          acc += rule.weight(i) * rule.weight(j) * jac * pf.eval(xi, eta) *
                 pg.eval(xi, eta);
        }
      }
      total += acc * w * h;
    }
  }
  return total;
}

double l2_norm(const SplineField2D& f, const GeometryMap& geo) {
  return std::sqrt(std::max(0.0, l2_inner_product(f, f, geo)));
}

}  // namespace igtop
