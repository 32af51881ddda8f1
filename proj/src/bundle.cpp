#include "bundle.hpp"

#include <cmath>

#include "rng.hpp"

namespace qcb {

CotangentStack make_stack(const Point& base, const Mat& matrix) {
  require(matrix.cols() == base.manifold.dim, Errc::dimension_mismatch,
          "stack matrix must have n columns");
  require(matrix.rows() >= 1, Errc::dimension_mismatch,
          "stack matrix must have at least one row");
  require(matrix.allFinite(), Errc::non_finite_value,
          "stack matrix entries must be finite");
  return CotangentStack{base, matrix};
}

CotangentStack trivialize(const Point& base, const std::vector<Vec>& values) {
  const int n = base.manifold.dim;
  require(static_cast<int>(values.size()) == n, Errc::dimension_mismatch,
          "trivialize: one value per frame vector required");
  const Eigen::Index m = values[0].size();
  require(m >= 1, Errc::dimension_mismatch, "trivialize: target dim >= 1");
  Mat mat(m, n);
  for (int i = 0; i < n; ++i) {
    require(values[i].size() == m, Errc::dimension_mismatch,
            "trivialize: inconsistent value dimensions");
    mat.col(i) = values[i];
  }
  return make_stack(base, mat);
}

double delta(const CotangentStack& a, const CotangentStack& b) {
  require(a.base.manifold == b.base.manifold, Errc::manifold_mismatch,
          "delta: stacks live on different manifolds");
  require(a.matrix.rows() == b.matrix.rows(), Errc::dimension_mismatch,
          "delta: target dimensions differ");
  return distance(a.base, b.base) + (a.matrix - b.matrix).norm();
}

double fiber_norm(const CotangentStack& a) { return a.matrix.norm(); }

Mat dexp_frame_matrix(const Point& x0, const Tangent& y) {
  const int n = x0.manifold.dim;
  Frame f0 = frame(x0);
  Point x = exp(x0, y);
  Frame fx = frame(x);
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    Tangent image = dexp(x0, y, f0.vector(i));
    m.col(i) = frame_coords(fx, image);
  }
  return m;
}

CotangentStack pullback_compose(const CotangentStack& beta, const Point& x0) {
  require(beta.base.manifold == x0.manifold, Errc::manifold_mismatch,
          "pullback_compose: base manifolds differ");
  Tangent y = log(x0, beta.base);
  Mat l = dexp_frame_matrix(x0, y);
  return CotangentStack{x0, beta.matrix * l};
}

CotangentStack compose_inverse_dexp(const Point& x0, const Tangent& y,
                                    const Mat& flat_matrix) {
  require(flat_matrix.cols() == x0.manifold.dim, Errc::dimension_mismatch,
          "compose_inverse_dexp: matrix must have n columns");
  Point x = exp(x0, y);
  if (x0.manifold.kind == ManifoldKind::flat) {
    return CotangentStack{x, flat_matrix};
  }
  Mat l = dexp_frame_matrix(x0, y);
  // B L^{-1} via L^T z = B^T
  Mat composed =
      l.transpose().partialPivLu().solve(flat_matrix.transpose()).transpose();
  return CotangentStack{x, composed};
}

Integrand make_integrand(const std::string& name, int n, int m) {
  require(n >= 1 && m >= 1, Errc::invalid_argument,
          "integrand dimensions must be positive");
  if (name == "quad") {
    return Integrand{name, m,
                     [](const Point&, const Mat& a) { return a.squaredNorm(); }};
  }
  if (name == "neg_quad") {
    return Integrand{
        name, m, [](const Point&, const Mat& a) { return -a.squaredNorm(); }};
  }
  if (name == "det" || name == "det_squared") {
    require(n == 2 && m == 2, Errc::invalid_argument,
            "integrand '" + name + "' requires n = m = 2");
    if (name == "det") {
      return Integrand{name, m, [](const Point&, const Mat& a) {
                         return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
                       }};
    }
    return Integrand{name, m, [](const Point&, const Mat& a) {
                       double d = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
                       return d * d;
                     }};
  }
  fail(Errc::unknown_integrand, "unknown integrand '" + name + "'");
}

std::vector<std::string> integrand_names() {
  return {"quad", "neg_quad", "det", "det_squared"};
}

Integrand scale_integrand(const Integrand& f, double c) {
  auto inner = f.eval;
  return Integrand{std::to_string(c) + "*" + f.name, f.target_dim,
                   [inner, c](const Point& x, const Mat& a) {
                     return c * inner(x, a);
                   }};
}

Integrand add_integrands(const Integrand& f, const Integrand& g) {
  require(f.target_dim == g.target_dim, Errc::dimension_mismatch,
          "add_integrands: target dimensions differ");
  auto fe = f.eval;
  auto ge = g.eval;
  return Integrand{f.name + "+" + g.name, f.target_dim,
                   [fe, ge](const Point& x, const Mat& a) {
                     return fe(x, a) + ge(x, a);
                   }};
}

bool integrand_bounded_on_samples(const Integrand& f, const Point& x, int n,
                                  double radius, int samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mat a(f.target_dim, n);
  for (int s = 0; s < samples; ++s) {
    for (int j = 0; j < f.target_dim; ++j) {
      for (int i = 0; i < n; ++i) a(j, i) = uniform(rng, -radius, radius);
    }
    if (!std::isfinite(f(x, a))) return false;
  }
  return true;
}

}  // namespace qcb
