#pragma once

// Quasiconvexity deficit on exponential cubes, the radius-schedule decision
// procedure, the laminate falsifier and the Euclidean Morrey cross-check.
//
// A checker can only falsify: ConsistentWithQC means no violation was found
// within the given family/budget, never a proof of quasiconvexity.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bundle.hpp"
#include "perturbation.hpp"
#include "quadrature.hpp"

namespace qcb {

struct DeficitReport {
  double r = 0.0;
  double deficit = 0.0;   // avg f(alpha + dphi o L) - f(alpha)
  double grad_sup = 0.0;  // sup_k ||dphi(y_k)||_F over the grid
  int order = 0;
  std::string phi_id;
};

enum class VerdictStatus { consistent_with_qc, violation_found };

const char* status_name(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::consistent_with_qc;
  std::vector<DeficitReport> evidence;
  double threshold = 0.0;      // epsilon actually used
  double shrink_factor = 0.5;  // rho of the persistence rule
  std::string note;
  std::optional<TestFunction> witness;  // the test function behind evidence
};

// Average of f over the cube at alpha + dphi[x] o L_x, minus f(alpha). The
// perturbation differential is assembled as a bundle element at each node and
// pulled back through L_x, exactly as in the defining inequality.
DeficitReport deficit(const Integrand& f, const Point& x0,
                      const CotangentStack& alpha, const TestFunction& tf,
                      const QuadGrid& grid);

// Runs deficit across a strictly decreasing radius schedule, rescaling the
// test function to each cube. ViolationFound requires every deficit <= -eps
// and |deficit_{i+1}| >= rho |deficit_i| (the o(1) persistence rule);
// anything that shrinks faster than rho per halving is treated as the
// curvature correction, not a violation.
struct CheckOptions {
  int order = 8;
  int subdivisions = 1;
  double shrink_factor = 0.5;
  std::optional<double> threshold;  // default 1e-4 * max(1, grad_sup^2)
};

Verdict check(const Integrand& f, const Point& x0, const CotangentStack& alpha,
              const TestFunction& tf, const std::vector<double>& schedule,
              const CheckOptions& opts = {});

// Seeded multistart search over laminate test functions (b tensor nu modes),
// refined by coordinate-shrink steps; promising candidates are confirmed by
// check() on a halving schedule.
struct FalsifyOptions {
  double r0 = 0.5;
  int order = 8;
  int subdivisions = 1;
  int max_modes = 3;
  int refine_passes = 2;
  double shrink_factor = 0.5;
};

Verdict falsify(const Integrand& f, const Point& x0,
                const CotangentStack& alpha, int budget, uint64_t seed,
                const FalsifyOptions& opts = {});

// Classical Morrey deficit on a flat cube:
//   avg f(x, A + Dphi(x)) - f(x0, A).
// Agrees with deficit() on flat manifolds on the same grid.
double euclid_morrey_check(const Integrand& f, const Mat& a,
                           const TestFunction& tf, const QuadGrid& grid);

struct RankOneReport {
  double min_second_difference = 0.0;
  bool nonconvex_direction = false;
  int samples = 0;
};

// Second-difference signs of t -> f(A + t b nu^T) on t in [-1, 1].
RankOneReport rank_one_probe(const Integrand& f, const Point& x, const Mat& a,
                             const Vec& b, const Vec& nu, int samples);

}  // namespace qcb
