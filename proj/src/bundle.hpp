#pragma once

// The bundle L(TM, R^m): fiber elements stored as m x n matrices of values
// on the deterministic orthonormal frame of their base point, the chart
// distance delta, fiber norms and the pullback along
// L_x = d exp_{x0}[exp_{x0}^{-1}(x)].

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace qcb {

// Element of (T*_x M)^m: row j, column i stores alpha^j(E_i) relative to
// frame(base).
struct CotangentStack {
  Point base;
  Mat matrix;  // m x n
};

CotangentStack make_stack(const Point& base, const Mat& matrix);

// Build the frame matrix from the values alpha(E_i) (one R^m value per
// frame vector); column i of the result is values[i].
CotangentStack trivialize(const Point& base, const std::vector<Vec>& values);

// delta(alpha, beta) = d^M(x, y) + ||I alpha - I beta||_F
double delta(const CotangentStack& a, const CotangentStack& b);

// Frobenius norm of the frame matrix; equals |alpha|_{g_x}.
double fiber_norm(const CotangentStack& a);

// Matrix of L_x = d exp_{x0}[y] between the deterministic frames at x0 and
// exp_{x0}(y): column i holds the frame(exp(y)) coordinates of dexp[y](E_i).
Mat dexp_frame_matrix(const Point& x0, const Tangent& y);

// Given beta at x = beta.base, returns beta o L_x as a stack at x0.
CotangentStack pullback_compose(const CotangentStack& beta, const Point& x0);

// Manifold differential of a map defined in normal coordinates at x0: given
// the flat matrix B of a linear map on T_{x0}M, returns B o d(exp^{-1})[x]
// as a stack at x = exp_{x0}(y).
CotangentStack compose_inverse_dexp(const Point& x0, const Tangent& y,
                                    const Mat& flat_matrix);

// Continuous integrand f on the bundle, evaluated as (base point, frame
// matrix) -> real.
struct Integrand {
  std::string name;
  int target_dim = 1;  // m
  std::function<double(const Point&, const Mat&)> eval;

  double operator()(const Point& x, const Mat& a) const { return eval(x, a); }
};

// Registry accepted by the CLI: quad, neg_quad, det, det_squared.
Integrand make_integrand(const std::string& name, int n, int m);
std::vector<std::string> integrand_names();

Integrand scale_integrand(const Integrand& f, double c);
Integrand add_integrands(const Integrand& f, const Integrand& g);

// Samples matrices with entries in [-radius, radius] and checks every value
// is finite.
bool integrand_bounded_on_samples(const Integrand& f, const Point& x, int n,
                                  double radius, int samples, uint64_t seed);

}  // namespace qcb
