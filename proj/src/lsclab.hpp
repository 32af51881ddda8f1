#pragma once

// Lower-semicontinuity experiments: build the weak*-null oscillation sequence
// u_h = u + phi_h, evaluate F(u_h, Q^r) and F(u, Q^r) and report the liminf
// gap together with weak* convergence diagnostics.

#include <string>
#include <vector>

#include "perturbation.hpp"
#include "qcengine.hpp"

namespace qcb {

// u(x) = A log_{x0}(x) + c in normal coordinates, du[x] = A o d(exp^{-1})[x].
struct BaseMap {
  Point x0;
  Mat matrix;  // A, m x n
  Vec offset;  // c in R^m

  Vec value(const Point& x) const;
  CotangentStack differential(const Point& x) const;
};

BaseMap make_base_map(const Point& x0, const Mat& a, const Vec& c);

// u_h = u + phi_h with analytic differential.
struct PerturbedMap {
  BaseMap base;
  OscillationSequence sequence;
  int h = 1;

  Vec value(const Point& x) const;
  CotangentStack differential(const Point& x) const;
};

std::vector<PerturbedMap> build_sequence(const BaseMap& u,
                                         const OscillationSequence& seq,
                                         const std::vector<int>& h_list);

struct LscRow {
  int h = 0;
  double f_uh = 0.0;      // F(u_h, Q^r)
  double sup_diff = 0.0;  // ||u_h - u||_inf over the grid
  double grad_sup = 0.0;  // ||du_h||_inf over the grid
};

struct WeakstarRecord {
  double decay_exponent = 0.0;  // fit of log sup_diff against log h
  double gradient_ratio = 0.0;  // max ||du_h|| / chain-rule bound
  bool decay_ok = false;
  bool gradient_ok = false;
  bool degenerate = false;  // constant sequence, exponent undefined
};

struct LscReport {
  std::vector<LscRow> rows;
  double f_u = 0.0;
  double gap = 0.0;  // min over the largest three h of F(u_h) - F(u)
  double tolerance = 0.0;
  bool semicontinuity_ok = false;
  WeakstarRecord diagnostics;
};

// Per-h integration refines the base grid with h panels per axis so that the
// composite rule always resolves one oscillation period per panel.
LscReport run_lsc(const Integrand& f, const BaseMap& u,
                  const OscillationSequence& seq,
                  const std::vector<int>& h_list, const QuadGrid& base_grid);

WeakstarRecord weakstar_diagnostics(const BaseMap& u,
                                    const OscillationSequence& seq,
                                    const std::vector<int>& h_list,
                                    const QuadGrid& base_grid);

}  // namespace qcb
