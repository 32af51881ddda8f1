#pragma once

// RK4 integration of the ambient geodesic and Jacobi (variation) equations.
// Cross-validates the closed-form exp/dexp/volume_jacobian without sharing
// any of their formulas: space forms satisfy gamma'' = -k <gamma',gamma'> gamma
// in the ambient representation, and the variation field of the geodesic
// family exp_x(t(v + s w)) obeys the linearization of that equation.

#include "geometry.hpp"

namespace qcb::ode {

// Endpoint of t -> exp_x(t v) at t = 1, integrated with fixed-step RK4.
Point integrate_geodesic(const Point& x, const Tangent& v, double step = 1e-3);

// d exp_x[v](w) via the variation equation; returns the ambient components
// of the variation field at t = 1 (a tangent vector at exp_x(v)).
Vec integrate_jacobi(const Point& x, const Tangent& v, const Tangent& w,
                     double step = 1e-3);

// Volume Jacobian assembled from the closed-form dexp: the Gram determinant
// of the pushed-forward frame. Independent of the (sn_k(t)/t)^{n-1} formula.
double jacobian_from_dexp(const Point& x0, const Tangent& y);

}  // namespace qcb::ode
