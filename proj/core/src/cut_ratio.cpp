#include "igtop/cut_ratio.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace igtop {

namespace {

// Area fraction of the box [x0,x1]x[y0,y1] where a + b*x + c*y < 0, by
// clipping the box against the half-plane.
double halfplane_fraction(double a, double b, double c, double x0, double x1,
                          double y0, double y1) {
  if (b == 0.0 && c == 0.0) {
    return a <= 0.0 ? 1.0 : 0.0;
  }
  std::array<std::array<double, 2>, 8> poly{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
  int n = 4;
  std::array<std::array<double, 2>, 8> out;
  int m = 0;
  auto level = [&](const std::array<double, 2>& p) {
    return a + b * p[0] + c * p[1];
  };
  for (int i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    const double lp = level(p);
    const double lq = level(q);
    if (lp <= 0.0) out[m++] = p;
    if ((lp < 0.0 && lq > 0.0) || (lp > 0.0 && lq < 0.0)) {
      const double t = lp / (lp - lq);
      out[m++] = {p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])};
    }
  }
  if (m < 3) return 0.0;
  double area2 = 0.0;
  for (int i = 0; i < m; ++i) {
    const auto& p = out[i];
    const auto& q = out[(i + 1) % m];
    area2 += p[0] * q[1] - q[0] * p[1];
  }
  const double box = (x1 - x0) * (y1 - y0);
  return std::clamp(0.5 * std::abs(area2) / box, 0.0, 1.0);
}

struct CellQuad {
  const ElementPolynomial* poly;
  double tol;
  int max_depth;

  double fraction(double x0, double x1, double y0, double y1, int depth) const {
    // 3x3 sample lattice bounds the sign pattern of the restriction.
    const double xs[3] = {x0, 0.5 * (x0 + x1), x1};
    const double ys[3] = {y0, 0.5 * (y0 + y1), y1};
    double v[9];
    bool has_pos = false;
    bool has_neg = false;
    double scale = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double val = poly->eval_local(xs[i], ys[j]);
        v[i * 3 + j] = val;
        scale = std::max(scale, std::abs(val));
        if (val > 0.0) has_pos = true;
        if (val < 0.0) has_neg = true;
      }
    }
    if (!has_pos) return 1.0;  // ties count as material
    if (!has_neg) return 0.0;

    // Least-squares plane through the nine samples (orthogonal design).
    const double hx = 0.5 * (x1 - x0);
    const double hy = 0.5 * (y1 - y0);
    double sum = 0.0, sx = 0.0, sy = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        sum += v[i * 3 + j];
        sx += v[i * 3 + j] * (i - 1);
        sy += v[i * 3 + j] * (j - 1);
      }
    }
    const double mean = sum / 9.0;
    const double bx = sx / (6.0 * hx);
    const double by = sy / (6.0 * hy);
    const double cx = 0.5 * (x0 + x1);
    const double cy = 0.5 * (y0 + y1);
    const double a0 = mean - bx * cx - by * cy;
    double resid = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double fit = a0 + bx * xs[i] + by * ys[j];
        resid = std::max(resid, std::abs(v[i * 3 + j] - fit));
      }
    }
    const double grad = std::hypot(bx * hx, by * hy);
    const bool planar = resid <= std::max(1e-13 * scale, tol * grad);
    if (planar || depth >= max_depth) {
      return halfplane_fraction(a0, bx, by, x0, x1, y0, y1);
    }
    return 0.25 * (fraction(x0, cx, y0, cy, depth + 1) +
                   fraction(cx, x1, y0, cy, depth + 1) +
                   fraction(x0, cx, cy, y1, depth + 1) +
                   fraction(cx, x1, cy, y1, depth + 1));
  }
};

}  // namespace

double cut_ratio(const LevelSetField& phi, int eu, int ev, double tol,
                 int max_depth) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("cut_ratio: tol must be positive");
  }
  if (max_depth < 0) {
    throw std::invalid_argument("cut_ratio: max_depth must be >= 0");
  }
  const ElementPolynomial poly(phi.field(), eu, ev);
  const CellQuad quad{&poly, tol, max_depth};
  const double mx = 0.5 * (poly.xi_min() + poly.xi_max());
  const double my = 0.5 * (poly.eta_min() + poly.eta_max());
  // Work in midpoint-centered local coordinates, matching eval_local.
  return quad.fraction(poly.xi_min() - mx, poly.xi_max() - mx,
                       poly.eta_min() - my, poly.eta_max() - my, 0);
}

double element_alpha(double ratio, double alpha_out, double alpha_in) {
  if (ratio < 0.0 || ratio > 1.0) {
    throw std::invalid_argument("element_alpha: ratio must be in [0,1]");
  }
  if (!(alpha_out > 0.0) || !(alpha_out <= alpha_in)) {
    throw std::invalid_argument("element_alpha: need 0 < alpha_out <= alpha_in");
  }
  return alpha_out + ratio * (alpha_in - alpha_out);
}

MaterialField compute_material_field(const LevelSetField& phi,
                                     const ElementClassGrid& classes,
                                     double alpha_in, double alpha_out,
                                     double tol, int max_depth) {
  MaterialField mf;
  mf.nu = classes.nu;
  mf.nv = classes.nv;
  mf.ratio.resize(static_cast<size_t>(mf.nu) * mf.nv);
  mf.alpha.resize(mf.ratio.size());
  for (int ev = 0; ev < mf.nv; ++ev) {
    for (int eu = 0; eu < mf.nu; ++eu) {
      double r = 0.0;
      switch (classes.at(eu, ev)) {
        case ElementClass::Inside:
          r = 1.0;
          break;
        case ElementClass::Outside:
          r = 0.0;
          break;
        case ElementClass::Cut:
          r = cut_ratio(phi, eu, ev, tol, max_depth);
          break;
      }
      mf.ratio[eu + mf.nu * ev] = r;
      mf.alpha[eu + mf.nu * ev] = element_alpha(r, alpha_out, alpha_in);
    }
  }
  return mf;
}

}  // namespace igtop
