#pragma once

// Compactly supported test functions on exponential cubes, their periodic
// extension and the oscillation sequence phi_h(x) = (1/h) psi(h exp^{-1}(x)).
//
// phi(y) = eta(2y/r) sum_k a_k sin(2 pi <kappa_k, y>/r + theta_k) b_k with
// integer frequency vectors kappa_k and the bump
// eta(s) = prod_i beta(s_i), beta(t) = exp(1 - 1/(1 - t^2)) for |t| < 1.
// Oscillation bases drop the bump; integer frequencies and zero phases make
// the mode sum exactly r-periodic and zero on the cube-corner lattice.

#include <string>
#include <vector>

#include "bundle.hpp"
#include "quadrature.hpp"

namespace qcb {

struct Mode {
  double amplitude = 0.0;
  Eigen::VectorXi frequency;  // integer vector, length n
  double phase = 0.0;
  Vec output;  // b in R^m
};

struct TestFunction {
  CubeSpec cube;
  std::vector<Mode> modes;
  bool bump = true;
  int target_dim = 1;  // m

  // Same mode shape on another cube: amplitudes scale with the radius ratio
  // so the differential keeps its normalized profile (grad_sup is preserved
  // across a radius schedule).
  TestFunction rescaled(const CubeSpec& cube2) const;

  std::string descriptor() const;
};

TestFunction make_test_function(const CubeSpec& cube,
                                const std::vector<Mode>& modes,
                                bool bump = true);

double bump_beta(double t);
double bump_dbeta(double t);

// phi and dphi at cube coordinates y (frame(center) chart of T_{x0}M).
// Throws OutsideCube beyond the closed cube.
Vec eval_phi(const TestFunction& tf, const Vec& y);
Mat eval_dphi(const TestFunction& tf, const Vec& y);

// Convenience overloads taking the tangent itself.
Vec eval_phi(const TestFunction& tf, const Tangent& y);
Mat eval_dphi(const TestFunction& tf, const Tangent& y);

// r-periodic extension; evaluation wraps into the fundamental cube.
struct PeriodicMap {
  TestFunction base;

  Vec wrap(const Vec& y) const;
  Vec value(const Vec& y) const;
  Mat differential(const Vec& y) const;
};

PeriodicMap periodize(const TestFunction& tf);

// Bump-free periodic mode sum with the index list of the sequence.
struct OscillationSequence {
  TestFunction base;  // bump = false, phases = 0 mod pi
  std::vector<int> h_list;

  PeriodicMap periodized() const { return periodize(base); }
};

OscillationSequence make_oscillation(const TestFunction& pure_modes,
                                     const std::vector<int>& h_list);

struct OscillationValue {
  Vec value;                   // (1/h) psi(h y)
  CotangentStack differential;  // d psi[h y] o d(exp^{-1})[x], based at x
};

// phi_h at x in Q^r_{x0}; the 1/h and h factors cancel in the differential.
OscillationValue oscillate(const OscillationSequence& seq, int h,
                           const Point& x);

}  // namespace qcb
