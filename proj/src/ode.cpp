#include "ode.hpp"

#include <cmath>

namespace qcb::ode {

namespace {

double ambient_inner(const Manifold& m, const Vec& a, const Vec& b) {
  if (m.kind != ManifoldKind::hyperbolic) return a.dot(b);
  double s = -a[0] * b[0];
  for (Eigen::Index i = 1; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// State layout: [gamma, gamma', Y, Y'] with the curvature term
//   gamma'' = -k B(gamma', gamma') gamma
//   Y''     = -k (2 B(gamma', Y') gamma + B(gamma', gamma') Y)
struct VariationSystem {
  Manifold m;
  double k;

  void rhs(const Mat& s, Mat& out) const {
    const Vec g = s.col(0), gd = s.col(1), y = s.col(2), yd = s.col(3);
    out.col(0) = gd;
    out.col(1) = -k * ambient_inner(m, gd, gd) * g;
    out.col(2) = yd;
    out.col(3) = -k * (2.0 * ambient_inner(m, gd, yd) * g +
                       ambient_inner(m, gd, gd) * y);
  }
};

Mat rk4_to_one(const VariationSystem& sys, Mat state, double step) {
  int nsteps = std::max(1, static_cast<int>(std::ceil(1.0 / step)));
  double h = 1.0 / nsteps;
  Mat k1 = state, k2 = state, k3 = state, k4 = state, tmp = state;
  for (int i = 0; i < nsteps; ++i) {
    sys.rhs(state, k1);
    tmp = state + 0.5 * h * k1;
    sys.rhs(tmp, k2);
    tmp = state + 0.5 * h * k2;
    sys.rhs(tmp, k3);
    tmp = state + h * k3;
    sys.rhs(tmp, k4);
    state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return state;
}

Mat run_variation(const Point& x, const Tangent& v, const Tangent& w,
                  double step) {
  const int a = x.manifold.ambient_dim();
  Mat state(a, 4);
  state.col(0) = x.coords;
  state.col(1) = v.components;
  state.col(2) = Vec::Zero(a);
  state.col(3) = w.components;
  VariationSystem sys{x.manifold,
                      static_cast<double>(x.manifold.curvature())};
  return rk4_to_one(sys, state, step);
}

}  // namespace

Point integrate_geodesic(const Point& x, const Tangent& v, double step) {
  Mat end = run_variation(x, v, zero_tangent(x), step);
  Vec c = end.col(0);
  // pull the endpoint back onto the model surface before validating
  if (x.manifold.kind == ManifoldKind::sphere) {
    c.normalize();
  } else if (x.manifold.kind == ManifoldKind::hyperbolic) {
    c /= std::sqrt(-ambient_inner(x.manifold, c, c));
  }
  return make_point(x.manifold, c);
}

Vec integrate_jacobi(const Point& x, const Tangent& v, const Tangent& w,
                     double step) {
  Mat end = run_variation(x, v, w, step);
  return end.col(2);
}

double jacobian_from_dexp(const Point& x0, const Tangent& y) {
  const int n = x0.manifold.dim;
  Frame f = frame(x0);
  Point xe = exp(x0, y);
  Mat gram(n, n);
  std::vector<Vec> pushed(n);
  for (int i = 0; i < n; ++i) {
    pushed[i] = dexp(x0, y, f.vector(i)).components;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      gram(i, j) = metric_inner(xe, pushed[i], pushed[j]);
    }
  }
  return std::sqrt(std::abs(gram.determinant()));
}

}  // namespace qcb::ode
