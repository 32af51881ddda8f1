#include "quadrature.hpp"

#include <cmath>

namespace qcb {

CubeSpec build_cube(const Point& x0, double r) {
  require(r > 0.0 && std::isfinite(r), Errc::invalid_argument,
          "cube radius must be positive and finite");
  const double half_diag = r * std::sqrt(double(x0.manifold.dim)) / 2.0;
  require(half_diag < x0.manifold.injectivity_radius(),
          Errc::injectivity_violation,
          "cube exceeds the injectivity radius: r*sqrt(n)/2 = " +
              std::to_string(half_diag));
  return CubeSpec{x0, r};
}

void gauss_legendre(int q, std::vector<double>& points,
                    std::vector<double>& weights) {
  require(q >= 2, Errc::invalid_argument, "quadrature order must be >= 2");
  points.assign(q, 0.0);
  weights.assign(q, 0.0);
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration from the Chebyshev initial guess
    double t = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    double p1 = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      p1 = t;
      for (int k = 2; k <= q; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - t * t) * dp * dp);
    points[i] = -t;
    points[q - 1 - i] = t;
    weights[i] = w;
    weights[q - 1 - i] = w;
  }
}

QuadGrid quad_grid(const CubeSpec& cube, int order, int subdivisions) {
  require(subdivisions >= 1, Errc::invalid_argument,
          "subdivisions must be >= 1");
  const int n = cube.center.manifold.dim;
  require(n <= 3, Errc::invalid_argument,
          "tensor quadrature supports n <= 3");

  std::vector<double> gp, gw;
  gauss_legendre(order, gp, gw);

  // composite 1D rule on (-r/2, r/2)
  const double r = cube.radius;
  const double panel = r / subdivisions;
  std::vector<double> pts1, wts1;
  pts1.reserve(order * subdivisions);
  wts1.reserve(order * subdivisions);
  for (int s = 0; s < subdivisions; ++s) {
    const double lo = -0.5 * r + s * panel;
    for (int i = 0; i < order; ++i) {
      pts1.push_back(lo + (gp[i] + 1.0) * 0.5 * panel);
      wts1.push_back(gw[i] * 0.5 * panel);
    }
  }
  const int per_axis = static_cast<int>(pts1.size());

  QuadGrid grid;
  grid.cube = cube;
  grid.order = order;
  grid.subdivisions = subdivisions;
  grid.center_frame = frame(cube.center);

  size_t total = 1;
  for (int i = 0; i < n; ++i) total *= per_axis;
  grid.nodes.reserve(total);

  std::vector<int> idx(n, 0);
  Vec y(n);
  for (size_t k = 0; k < total; ++k) {
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      y[i] = pts1[idx[i]];
      w *= wts1[idx[i]];
    }
    Tangent yt = from_frame_coords(grid.center_frame, y);
    grid.nodes.push_back(
        QuadNode{y, w, volume_jacobian(cube.center, yt)});
    for (int i = 0; i < n; ++i) {
      if (++idx[i] < per_axis) break;
      idx[i] = 0;
    }
  }
  return grid;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double integrate(const QuadGrid& grid,
                 const std::function<double(const QuadNode&)>& g) {
  std::vector<double> terms(grid.nodes.size());
  for (size_t k = 0; k < grid.nodes.size(); ++k) {
    const QuadNode& node = grid.nodes[k];
    const double v = g(node);
    require(std::isfinite(v), Errc::non_finite_value,
            "integrate: evaluator returned a non-finite value");
    terms[k] = node.weight * node.jacobian * v;
  }
  return pairwise_sum(terms);
}

double cube_measure(const QuadGrid& grid) {
  std::vector<double> terms(grid.nodes.size());
  for (size_t k = 0; k < grid.nodes.size(); ++k) {
    terms[k] = grid.nodes[k].weight * grid.nodes[k].jacobian;
  }
  return pairwise_sum(terms);
}

double average_integrate(const QuadGrid& grid,
                         const std::function<double(const QuadNode&)>& g) {
  return integrate(grid, g) / cube_measure(grid);
}

}  // namespace qcb
