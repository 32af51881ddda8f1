#pragma once

// Analytic model manifolds: flat R^n, the unit sphere S^n (ambient embedding
// in R^{n+1}) and hyperbolic space H^n (hyperboloid model in Minkowski
// R^{1,n}). All geometry is closed form; an RK4 oracle for cross-validation
// lives in ode.hpp.

#include <vector>

#include "types.hpp"

namespace qcb {

enum class ManifoldKind { flat, sphere, hyperbolic };

const char* kind_name(ManifoldKind k);
ManifoldKind kind_from_name(const std::string& name);

struct Manifold {
  ManifoldKind kind = ManifoldKind::flat;
  int dim = 1;  // intrinsic dimension n

  static Manifold flat(int n);
  static Manifold sphere(int n);
  static Manifold hyperbolic(int n);

  int curvature() const;      // 0, +1, -1
  int ambient_dim() const;    // n for flat, n+1 for sphere/hyperbolic
  double injectivity_radius() const;
  bool operator==(const Manifold&) const = default;
};

// Chart-embedded point. Sphere points are unit vectors, hyperbolic points
// satisfy <x,x>_{1,n} = -1 with positive first coordinate.
struct Point {
  Manifold manifold;
  Vec coords;
};

// Tangent vector in the ambient representation of its base point.
struct Tangent {
  Point base;
  Vec components;
};

// Orthonormal frame at a point; column i of basis is E_i.
struct Frame {
  Point base;
  Mat basis;  // ambient_dim x n

  Tangent vector(int i) const;
};

Point make_point(const Manifold& m, const Vec& coords);
Point origin(const Manifold& m);
bool same_point(const Point& a, const Point& b, double tol = 1e-12);

// Riemannian inner product g_x applied to ambient tangent representations.
double metric_inner(const Point& x, const Vec& a, const Vec& b);

Tangent make_tangent(const Point& x, const Vec& components);
Tangent zero_tangent(const Point& x);
double norm(const Tangent& v);

Point exp(const Point& x, const Tangent& v);
Tangent log(const Point& x, const Point& y);
double distance(const Point& x, const Point& y);

// Differential of the exponential map: d exp_x[v](w), a tangent at exp_x(v).
// Radial component is transported along the geodesic unchanged, the normal
// component is scaled by sn_k(|v|)/|v|.
Tangent dexp(const Point& x, const Tangent& v, const Tangent& w);

// Density J(y) of the Riemannian measure in normal coordinates at x0;
// (sn_k(|y|)/|y|)^{n-1} on space forms, J(0) = 1.
double volume_jacobian(const Point& x0, const Tangent& y);

// Deterministic orthonormal frame: Gram-Schmidt on the ambient basis vectors
// projected to T_xM, skipping the axis of largest |coordinate| of x
// (ties broken toward the lowest index). Flat manifolds use the standard
// basis.
Frame frame(const Point& x);

// Coordinates of v in the frame F (components on E_i).
Vec frame_coords(const Frame& f, const Tangent& v);
Tangent from_frame_coords(const Frame& f, const Vec& coords);

}  // namespace qcb
