#include "igtop/elasticity.hpp"

#include "igtop/gauss.hpp"

#include <cmath>
#include <stdexcept>

namespace igtop {

void ElasticMaterial::validate() const {
  if (!(E > 0.0)) throw std::invalid_argument("ElasticMaterial: E must be > 0");
  if (nu < 0.0 || nu >= 0.5) {
    throw std::invalid_argument("ElasticMaterial: need 0 <= nu < 0.5");
  }
}

void PointLoad::validate() const {
  const double n = std::hypot(dir_x, dir_y);
  if (std::abs(n - 1.0) > 1e-9) {
    throw std::invalid_argument("PointLoad: direction must be a unit vector");
  }
}

DisplacementField::DisplacementField(TensorSpace space, Eigen::MatrixXd coeffs_x,
                                     Eigen::MatrixXd coeffs_y)
    : x_(space, std::move(coeffs_x)), y_(std::move(space), std::move(coeffs_y)) {}

void DisplacementField::value(double xi, double eta, double& ux,
                              double& uy) const {
  ux = x_.value(xi, eta);
  uy = y_.value(xi, eta);
}

double energy_density(const DisplacementField& u, const ElasticMaterial& mat,
                      const GeometryMap& geo, double xi, double eta) {
  double vx, dx_xi, dx_eta, vy, dy_xi, dy_eta;
  u.x().value_and_gradient(xi, eta, vx, dx_xi, dx_eta);
  u.y().value_and_gradient(xi, eta, vy, dy_xi, dy_eta);
  const Eigen::Matrix2d Jinv = geo.jacobian(xi, eta).J.inverse();
  const double ux_x = dx_xi * Jinv(0, 0) + dx_eta * Jinv(1, 0);
  const double ux_y = dx_xi * Jinv(0, 1) + dx_eta * Jinv(1, 1);
  const double uy_x = dy_xi * Jinv(0, 0) + dy_eta * Jinv(1, 0);
  const double uy_y = dy_xi * Jinv(0, 1) + dy_eta * Jinv(1, 1);
  const double e11 = ux_x;
  const double e22 = uy_y;
  const double e12 = 0.5 * (ux_y + uy_x);
  const double tr = e11 + e22;
  return 2.0 * mat.mu() * (e11 * e11 + e22 * e22 + 2.0 * e12 * e12) +
         mat.lambda() * tr * tr;
}

ElementMatrices::ElementMatrices(const TensorSpace& space, const GeometryMap& geo,
                                 const ElasticMaterial& mat, int gauss_order)
    : space_(space), gauss_order_(gauss_order) {
  mat.validate();
  const KnotVector& ku = space_.u();
  const KnotVector& kv = space_.v();
  const int pu = ku.degree();
  const int pv = kv.degree();
  const int neu = space_.num_elements_u();
  const int nev = space_.num_elements_v();
  nelem_ = neu * nev;
  const int nbf = (pu + 1) * (pv + 1);
  local_size_ = 2 * nbf;
  upper_size_ = local_size_ * (local_size_ + 1) / 2;
  dofs_.resize(static_cast<size_t>(nelem_) * local_size_);
  upper_.assign(static_cast<size_t>(nelem_) * upper_size_, 0.0);
  areas_.assign(nelem_, 0.0);

  const GaussRule& rule = gauss_rule(gauss_order_);
  const int nq = rule.size();
  const double lam = mat.lambda();
  const double mu = mat.mu();
  const int n_u = space_.num_basis_u();

  std::vector<double> Du(2 * (pu + 1)), Dv(2 * (pv + 1));
  std::vector<double> gx(nbf), gy(nbf);

  for (int ev = 0; ev < nev; ++ev) {
    const double e0 = kv.element_left(ev);
    const double eh = kv.element_right(ev) - e0;
    for (int eu = 0; eu < neu; ++eu) {
      const double x0 = ku.element_left(eu);
      const double xh = ku.element_right(eu) - x0;
      const int e = space_.element_index(eu, ev);
      const int su = ku.element_first_basis(eu);
      const int sv = kv.element_first_basis(ev);

      int* dofs = dofs_.data() + static_cast<size_t>(e) * local_size_;
      for (int j = 0; j <= pv; ++j) {
        for (int i = 0; i <= pu; ++i) {
          const int a = i + (pu + 1) * j;
          const int g = (su + i) + n_u * (sv + j);
          dofs[2 * a] = 2 * g;
          dofs[2 * a + 1] = 2 * g + 1;
        }
      }

      double* up = upper_.data() + static_cast<size_t>(e) * upper_size_;
      double area = 0.0;
      for (int qi = 0; qi < nq; ++qi) {
        const double xi = x0 + xh * rule.point(qi);
        ku.basis_derivatives(ku.find_span(xi), xi, 1, Du.data());
        for (int qj = 0; qj < nq; ++qj) {
          const double eta = e0 + eh * rule.point(qj);
          kv.basis_derivatives(kv.find_span(eta), eta, 1, Dv.data());

          const GeometryMap::Jacobian jac = geo.jacobian(xi, eta);
          const Eigen::Matrix2d Jinv = jac.J.inverse();
          const double w = rule.weight(qi) * rule.weight(qj) * xh * eh * jac.det;
          area += w;

          for (int j = 0; j <= pv; ++j) {
            for (int i = 0; i <= pu; ++i) {
              const int a = i + (pu + 1) * j;
              const double d_xi = Du[(pu + 1) + i] * Dv[j];
              const double d_eta = Du[i] * Dv[(pv + 1) + j];
              gx[a] = d_xi * Jinv(0, 0) + d_eta * Jinv(1, 0);
              gy[a] = d_xi * Jinv(0, 1) + d_eta * Jinv(1, 1);
            }
          }
          // Upper triangle of the vector-valued local stiffness:
          // dof (a, comp); plane-strain D matrix in Lame form.
          int idx = 0;
          for (int A = 0; A < local_size_; ++A) {
            const int a = A >> 1;
            const int ca = A & 1;
            for (int B = A; B < local_size_; ++B) {
              const int b = B >> 1;
              const int cb = B & 1;
              double k;
              if (ca == 0 && cb == 0) {
                k = (lam + 2.0 * mu) * gx[a] * gx[b] + mu * gy[a] * gy[b];
              } else if (ca == 1 && cb == 1) {
                k = (lam + 2.0 * mu) * gy[a] * gy[b] + mu * gx[a] * gx[b];
              } else if (ca == 0) {
                k = lam * gx[a] * gy[b] + mu * gy[a] * gx[b];
              } else {
                k = lam * gy[a] * gx[b] + mu * gx[a] * gy[b];
              }
              up[idx++] += w * k;
            }
          }
        }
      }
      areas_[e] = area;
    }
  }
  for (const double a : areas_) domain_area_ += a;
}

double ElementMatrices::element_energy(int e, const Eigen::VectorXd& u) const {
  const int* dofs = element_dofs(e);
  const double* up = upper(e);
  double acc = 0.0;
  int idx = 0;
  for (int A = 0; A < local_size_; ++A) {
    const double ua = u[dofs[A]];
    acc += up[idx++] * ua * ua;
    for (int B = A + 1; B < local_size_; ++B) {
      acc += 2.0 * up[idx++] * ua * u[dofs[B]];
    }
  }
  return acc;
}

namespace {

// Shared by ElasticSystem and ComplianceProblem.
Eigen::VectorXd point_load_vector(const TensorSpace& space,
                                  const PointLoad& load) {
  load.validate();
  const KnotVector& ku = space.u();
  const KnotVector& kv = space.v();
  double Nu[kMaxDegree + 1], Nv[kMaxDegree + 1];
  const int su = ku.find_span(load.xi);
  const int sv = kv.find_span(load.eta);
  ku.basis_values(su, load.xi, Nu);
  kv.basis_values(sv, load.eta, Nv);
  Eigen::VectorXd F = Eigen::VectorXd::Zero(2 * ku.num_basis() * kv.num_basis());
  for (int j = 0; j <= kv.degree(); ++j) {
    for (int i = 0; i <= ku.degree(); ++i) {
      const double N = Nu[i] * Nv[j];
      const int g = (su + i) + ku.num_basis() * (sv + j);
      F[2 * g] += load.magnitude * load.dir_x * N;
      F[2 * g + 1] += load.magnitude * load.dir_y * N;
    }
  }
  return F;
}

std::vector<int> edge_basis_u(const TensorSpace& space, Edge edge) {
  // Index lines of boundary-interpolatory control variables.
  std::vector<int> line;
  switch (edge) {
    case Edge::XiMin:
      line = {0, -1};
      break;
    case Edge::XiMax:
      line = {space.num_basis_u() - 1, -1};
      break;
    case Edge::EtaMin:
      line = {-1, 0};
      break;
    case Edge::EtaMax:
      line = {-1, space.num_basis_v() - 1};
      break;
  }
  return line;
}

void refine_solution(const Eigen::SparseMatrix<double>& A,
                     const Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>& llt,
                     const Eigen::VectorXd& b, Eigen::VectorXd& x,
                     double rel_tol) {
  const double bn = b.norm();
  if (bn == 0.0) {
    x.setZero();
    return;
  }
  for (int it = 0; it < 5; ++it) {
    const Eigen::VectorXd r = b - A * x;
    if (r.norm() <= rel_tol * bn) return;
    x += llt.solve(r);
  }
  if ((b - A * x).norm() > rel_tol * bn) {
    throw std::runtime_error("elasticity solve: residual tolerance not reached");
  }
}

}  // namespace

ElasticSystem::ElasticSystem(const TensorSpace& space, const GeometryMap& geo,
                             const ElasticMaterial& mat,
                             const MaterialField& alpha, int gauss_order)
    : em_(std::make_shared<const ElementMatrices>(space, geo, mat, gauss_order)),
      geo_(geo) {
  if (alpha.nu != space.num_elements_u() || alpha.nv != space.num_elements_v()) {
    throw std::invalid_argument("ElasticSystem: alpha field dims mismatch");
  }
  const int n = em_->num_dofs();
  F_ = Eigen::VectorXd::Zero(n);
  constrained_.assign(n, 0);
  constraint_value_ = Eigen::VectorXd::Zero(n);

  const int L = em_->local_size();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(em_->num_elements()) * L * L);
  for (int e = 0; e < em_->num_elements(); ++e) {
    const double a_e = alpha.alpha[e];
    const int* dofs = em_->element_dofs(e);
    const double* up = em_->upper(e);
    int idx = 0;
    for (int A = 0; A < L; ++A) {
      for (int B = A; B < L; ++B) {
        const double v = a_e * up[idx++];
        trips.emplace_back(dofs[A], dofs[B], v);
        if (A != B) trips.emplace_back(dofs[B], dofs[A], v);
      }
    }
  }
  K_.resize(n, n);
  K_.setFromTriplets(trips.begin(), trips.end());
  K_.makeCompressed();
}

ElasticSystem::ElasticSystem(const TensorSpace& space, const GeometryMap& geo,
                             const ElasticMaterial& mat,
                             const MaterialField& alpha)
    : ElasticSystem(space, geo, mat, alpha,
                    std::max(space.u().degree(), space.v().degree()) + 1) {}

int ElasticSystem::dof(int i, int j, int comp) const {
  return 2 * (i + space().num_basis_u() * j) + comp;
}

void ElasticSystem::apply_dirichlet(Edge edge) {
  const auto line = edge_basis_u(space(), edge);
  for (int j = 0; j < space().num_basis_v(); ++j) {
    for (int i = 0; i < space().num_basis_u(); ++i) {
      if ((line[0] >= 0 && i == line[0]) || (line[1] >= 0 && j == line[1])) {
        constrain(i, j, 0, 0.0);
        constrain(i, j, 1, 0.0);
      }
    }
  }
}

void ElasticSystem::constrain(int i, int j, int comp, double value) {
  const int d = dof(i, j, comp);
  constrained_[d] = 1;
  constraint_value_[d] = value;
}

void ElasticSystem::apply_point_load(const PointLoad& load) {
  F_ += point_load_vector(space(), load);
}

int ElasticSystem::num_constrained() const {
  int c = 0;
  for (const char f : constrained_) c += f;
  return c;
}

DisplacementField ElasticSystem::solve(double rel_tol) const {
  const int n = num_dofs();
  std::vector<int> full_to_free(n, -1);
  std::vector<int> free_dofs;
  free_dofs.reserve(n);
  for (int d = 0; d < n; ++d) {
    if (!constrained_[d]) {
      full_to_free[d] = static_cast<int>(free_dofs.size());
      free_dofs.push_back(d);
    }
  }
  const int nf = static_cast<int>(free_dofs.size());

  // Move prescribed values to the right-hand side, then cut the system down
  // to the free dofs.
  Eigen::VectorXd u_c = constraint_value_;
  for (int d = 0; d < n; ++d) {
    if (!constrained_[d]) u_c[d] = 0.0;
  }
  Eigen::VectorXd F_eff = F_ - K_ * u_c;

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(K_.nonZeros());
  for (int col = 0; col < K_.outerSize(); ++col) {
    const int rc = full_to_free[col];
    if (rc < 0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(K_, col); it; ++it) {
      const int rr = full_to_free[it.row()];
      if (rr >= 0) trips.emplace_back(rr, rc, it.value());
    }
  }
  Eigen::SparseMatrix<double> K_red(nf, nf);
  K_red.setFromTriplets(trips.begin(), trips.end());
  K_red.makeCompressed();

  Eigen::VectorXd F_red(nf);
  for (int k = 0; k < nf; ++k) F_red[k] = F_eff[free_dofs[k]];

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(K_red);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("elasticity solve: Cholesky factorization failed");
  }
  Eigen::VectorXd x = llt.solve(F_red);
  refine_solution(K_red, llt, F_red, x, rel_tol);

  Eigen::VectorXd u = u_c;
  for (int k = 0; k < nf; ++k) u[free_dofs[k]] = x[k];

  const int n_u = space().num_basis_u();
  const int n_v = space().num_basis_v();
  Eigen::MatrixXd cx(n_u, n_v), cy(n_u, n_v);
  for (int j = 0; j < n_v; ++j) {
    for (int i = 0; i < n_u; ++i) {
      cx(i, j) = u[2 * (i + n_u * j)];
      cy(i, j) = u[2 * (i + n_u * j) + 1];
    }
  }
  return DisplacementField(space(), std::move(cx), std::move(cy));
}

CostBreakdown cost_breakdown(const DisplacementField& u,
                             const ElasticMaterial& mat,
                             const MaterialField& alpha, const GeometryMap& geo,
                             int gauss_order) {
  const TensorSpace& sp = u.space();
  if (alpha.nu != sp.num_elements_u() || alpha.nv != sp.num_elements_v()) {
    throw std::invalid_argument("cost: alpha field dims mismatch");
  }
  const GaussRule& rule = gauss_rule(gauss_order);
  const int nq = rule.size();
  CostBreakdown out;
  for (int ev = 0; ev < sp.num_elements_v(); ++ev) {
    const double e0 = sp.v().element_left(ev);
    const double eh = sp.v().element_right(ev) - e0;
    for (int eu = 0; eu < sp.num_elements_u(); ++eu) {
      const double x0 = sp.u().element_left(eu);
      const double xh = sp.u().element_right(eu) - x0;
      double energy = 0.0;
      double area = 0.0;
      for (int qi = 0; qi < nq; ++qi) {
        const double xi = x0 + xh * rule.point(qi);
        for (int qj = 0; qj < nq; ++qj) {
          const double eta = e0 + eh * rule.point(qj);
          const double w =
              rule.weight(qi) * rule.weight(qj) * xh * eh * geo.jacobian(xi, eta).det;
          energy += w * energy_density(u, mat, geo, xi, eta);
          area += w;
        }
      }
      const int e = eu + sp.num_elements_u() * ev;
      out.compliance += alpha.alpha[e] * energy;
      out.area += alpha.ratio[e] * area;
    }
  }
  return out;
}

double cost(const DisplacementField& u, const ElasticMaterial& mat,
            const MaterialField& alpha, double l, const GeometryMap& geo) {
  const int p = std::max(u.space().u().degree(), u.space().v().degree());
  return cost_breakdown(u, mat, alpha, geo, p + 1).total(l);
}

ComplianceProblem::ComplianceProblem(const TensorSpace& space,
                                     const GeometryMap& geo,
                                     const ElasticMaterial& mat,
                                     std::vector<Edge> dirichlet,
                                     std::vector<PointLoad> loads,
                                     int gauss_order)
    : em_(std::make_shared<const ElementMatrices>(space, geo, mat, gauss_order)),
      geo_(geo) {
  const int n = em_->num_dofs();
  std::vector<char> constrained(n, 0);
  for (const Edge e : dirichlet) {
    const auto line = edge_basis_u(space, e);
    for (int j = 0; j < space.num_basis_v(); ++j) {
      for (int i = 0; i < space.num_basis_u(); ++i) {
        if ((line[0] >= 0 && i == line[0]) || (line[1] >= 0 && j == line[1])) {
          constrained[2 * (i + space.num_basis_u() * j)] = 1;
          constrained[2 * (i + space.num_basis_u() * j) + 1] = 1;
        }
      }
    }
  }
  full_to_free_.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (!constrained[d]) {
      full_to_free_[d] = static_cast<int>(free_dofs_.size());
      free_dofs_.push_back(d);
    }
  }
  const int nf = static_cast<int>(free_dofs_.size());
  if (nf == 0) {
    throw std::invalid_argument("ComplianceProblem: all dofs constrained");
  }

  F_full_ = Eigen::VectorXd::Zero(n);
  for (const PointLoad& l : loads) F_full_ += point_load_vector(space, l);
  F_red_.resize(nf);
  for (int k = 0; k < nf; ++k) F_red_[k] = F_full_[free_dofs_[k]];

  // Fixed sparsity pattern over the free dofs.
  const int L = em_->local_size();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(em_->num_elements()) * L * L);
  for (int e = 0; e < em_->num_elements(); ++e) {
    const int* dofs = em_->element_dofs(e);
    for (int A = 0; A < L; ++A) {
      const int ra = full_to_free_[dofs[A]];
      if (ra < 0) continue;
      for (int B = A; B < L; ++B) {
        const int rb = full_to_free_[dofs[B]];
        if (rb < 0) continue;
        trips.emplace_back(ra, rb, 0.0);
        if (ra != rb) trips.emplace_back(rb, ra, 0.0);
      }
    }
  }
  K_red_.resize(nf, nf);
  K_red_.setFromTriplets(trips.begin(), trips.end());
  K_red_.makeCompressed();

  // Value-array scatter positions for every element entry (upper pair and its
  // mirror), so re-assembly is a scaled accumulation.
  auto value_pos = [&](int row, int col) -> int {
    const int* outer = K_red_.outerIndexPtr();
    const int* inner = K_red_.innerIndexPtr();
    int lo = outer[col];
    int hi = outer[col + 1];
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (inner[mid] < row) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  };
  scatter_.assign(static_cast<size_t>(em_->num_elements()) * em_->upper_size() * 2,
                  -1);
  for (int e = 0; e < em_->num_elements(); ++e) {
    const int* dofs = em_->element_dofs(e);
    int idx = 0;
    for (int A = 0; A < L; ++A) {
      const int ra = full_to_free_[dofs[A]];
      for (int B = A; B < L; ++B, ++idx) {
        const int rb = full_to_free_[dofs[B]];
        if (ra < 0 || rb < 0) continue;
        const size_t s = (static_cast<size_t>(e) * em_->upper_size() + idx) * 2;
        scatter_[s] = value_pos(rb, ra);
        scatter_[s + 1] = (ra == rb) ? -1 : value_pos(ra, rb);
      }
    }
  }
  llt_.analyzePattern(K_red_);
}

ComplianceProblem::Solution ComplianceProblem::solve(const MaterialField& alpha,
                                                     double rel_tol) {
  const TensorSpace& sp = em_->space();
  if (alpha.nu != sp.num_elements_u() || alpha.nv != sp.num_elements_v()) {
    throw std::invalid_argument("ComplianceProblem: alpha field dims mismatch");
  }
  double* values = K_red_.valuePtr();
  std::fill(values, values + K_red_.nonZeros(), 0.0);
  const int us = em_->upper_size();
  for (int e = 0; e < em_->num_elements(); ++e) {
    const double a_e = alpha.alpha[e];
    const double* up = em_->upper(e);
    const int* sc = scatter_.data() + static_cast<size_t>(e) * us * 2;
    for (int idx = 0; idx < us; ++idx) {
      const int p0 = sc[2 * idx];
      if (p0 < 0) continue;
      const double v = a_e * up[idx];
      values[p0] += v;
      const int p1 = sc[2 * idx + 1];
      if (p1 >= 0) values[p1] += v;
    }
  }

  llt_.factorize(K_red_);
  if (llt_.info() != Eigen::Success) {
    throw std::runtime_error("compliance solve: Cholesky factorization failed");
  }
  Eigen::VectorXd x = llt_.solve(F_red_);
  refine_solution(K_red_, llt_, F_red_, x, rel_tol);
  ++num_solves_;

  Eigen::VectorXd u = Eigen::VectorXd::Zero(em_->num_dofs());
  for (size_t k = 0; k < free_dofs_.size(); ++k) u[free_dofs_[k]] = x[k];

  double compliance = 0.0;
  for (int e = 0; e < em_->num_elements(); ++e) {
    compliance += alpha.alpha[e] * em_->element_energy(e, u);
  }

  const int n_u = sp.num_basis_u();
  const int n_v = sp.num_basis_v();
  Eigen::MatrixXd cx(n_u, n_v), cy(n_u, n_v);
  for (int j = 0; j < n_v; ++j) {
    for (int i = 0; i < n_u; ++i) {
      cx(i, j) = u[2 * (i + n_u * j)];
      cy(i, j) = u[2 * (i + n_u * j) + 1];
    }
  }
  return Solution{DisplacementField(sp, std::move(cx), std::move(cy)), compliance};
}

}  // namespace igtop
