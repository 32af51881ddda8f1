#pragma once

// Exponential cubes Q^r_{x0} and tensor-product Gauss-Legendre quadrature on
// the flat cube, pushed forward with the volume Jacobian. Grids can be
// subdivided into equal panels per axis; the composite rule resolves
// oscillatory integrands (high-h laminates) that a single panel cannot.

#include <functional>
#include <span>
#include <vector>

#include "geometry.hpp"

namespace qcb {

struct CubeSpec {
  Point center;
  double radius = 0.0;

  bool operator==(const CubeSpec& o) const {
    return same_point(center, o.center) && radius == o.radius;
  }
};

// Validates r sqrt(n)/2 < injectivity radius (strictly).
CubeSpec build_cube(const Point& x0, double r);

struct QuadNode {
  Vec cube_coords;  // y in the flat cube, frame(center) coordinates
  double weight;    // flat tensor weight; sum over nodes = r^n
  double jacobian;  // J(y) > 0
};

struct QuadGrid {
  CubeSpec cube;
  int order = 0;         // q, Gauss-Legendre points per panel per dimension
  int subdivisions = 1;  // panels per dimension
  Frame center_frame;
  std::vector<QuadNode> nodes;

  Tangent node_tangent(size_t k) const {
    return from_frame_coords(center_frame, nodes[k].cube_coords);
  }
};

// (order * subdivisions)^n nodes; n <= 3.
QuadGrid quad_grid(const CubeSpec& cube, int order, int subdivisions = 1);

// Gauss-Legendre points/weights on (-1, 1), weights summing to 2.
void gauss_legendre(int q, std::vector<double>& points,
                    std::vector<double>& weights);

// Fixed-tree pairwise reduction; the result depends only on the buffer
// contents, never on evaluation order.
double pairwise_sum(std::span<const double> values);

// sum_k weight_k J(y_k) g(y_k). Throws NonFiniteValue on non-finite g.
double integrate(const QuadGrid& grid,
                 const std::function<double(const QuadNode&)>& g);

// mu(Q^r) computed with the same grid (g = 1).
double cube_measure(const QuadGrid& grid);

double average_integrate(const QuadGrid& grid,
                         const std::function<double(const QuadNode&)>& g);

}  // namespace qcb
