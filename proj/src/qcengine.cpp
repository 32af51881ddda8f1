#include "qcengine.hpp"

#include <cmath>

#include "rng.hpp"

namespace qcb {

namespace {

double default_threshold(double grad_sup) {
  return 1e-4 * std::max(1.0, grad_sup * grad_sup);
}

void check_deficit_inputs(const Point& x0, const CotangentStack& alpha,
                          const TestFunction& tf, const QuadGrid& grid) {
  require(same_point(alpha.base, x0), Errc::base_mismatch,
          "deficit: alpha must be based at x0");
  require(same_point(grid.cube.center, x0), Errc::base_mismatch,
          "deficit: grid cube must be centered at x0");
  require(tf.cube == grid.cube, Errc::invalid_argument,
          "deficit: test function and grid use different cubes");
  require(alpha.matrix.rows() == tf.target_dim, Errc::dimension_mismatch,
          "deficit: alpha and test function target dimensions differ");
}

}  // namespace

const char* status_name(VerdictStatus s) {
  return s == VerdictStatus::consistent_with_qc ? "ConsistentWithQC"
                                                : "ViolationFound";
}

DeficitReport deficit(const Integrand& f, const Point& x0,
                      const CotangentStack& alpha, const TestFunction& tf,
                      const QuadGrid& grid) {
  check_deficit_inputs(x0, alpha, tf, grid);
  const Mat& base = alpha.matrix;
  const double f0 = f(x0, base);
  require(std::isfinite(f0), Errc::non_finite_value,
          "deficit: f(alpha) is not finite");

  double grad_sup = 0.0;
  const double avg = average_integrate(grid, [&](const QuadNode& node) {
    const Mat dphi_flat = eval_dphi(tf, node.cube_coords);
    grad_sup = std::max(grad_sup, dphi_flat.norm());
    const Tangent ylog = from_frame_coords(grid.center_frame, node.cube_coords);
    // manifold differential of phi at x = exp(y), then composed back with L_x
    const CotangentStack dphi_x = compose_inverse_dexp(x0, ylog, dphi_flat);
    const CotangentStack pulled = pullback_compose(dphi_x, x0);
    return f(x0, base + pulled.matrix);
  });

  DeficitReport report;
  report.r = grid.cube.radius;
  report.deficit = avg - f0;
  report.grad_sup = grad_sup;
  report.order = grid.order;
  report.phi_id = tf.descriptor();
  return report;
}

Verdict check(const Integrand& f, const Point& x0, const CotangentStack& alpha,
              const TestFunction& tf, const std::vector<double>& schedule,
              const CheckOptions& opts) {
  require(!schedule.empty(), Errc::schedule_invalid,
          "check: empty radius schedule");
  for (size_t i = 0; i < schedule.size(); ++i) {
    require(schedule[i] > 0.0, Errc::schedule_invalid,
            "check: radii must be positive");
    require(i == 0 || schedule[i] < schedule[i - 1], Errc::schedule_invalid,
            "check: schedule must be strictly decreasing");
  }

  Verdict verdict;
  verdict.shrink_factor = opts.shrink_factor;
  verdict.witness = tf;
  double grad_sup = 0.0;
  for (double r : schedule) {
    const CubeSpec cube = build_cube(x0, r);
    const TestFunction tfr = tf.rescaled(cube);
    const QuadGrid grid = quad_grid(cube, opts.order, opts.subdivisions);
    verdict.evidence.push_back(deficit(f, x0, alpha, tfr, grid));
    grad_sup = std::max(grad_sup, verdict.evidence.back().grad_sup);
  }

  const double eps =
      opts.threshold ? *opts.threshold : default_threshold(grad_sup);
  verdict.threshold = eps;

  bool all_below = true;
  for (const DeficitReport& rep : verdict.evidence) {
    if (rep.deficit > -eps) all_below = false;
  }
  bool persistent = true;
  for (size_t i = 0; i + 1 < verdict.evidence.size(); ++i) {
    const double prev = std::abs(verdict.evidence[i].deficit);
    const double next = std::abs(verdict.evidence[i + 1].deficit);
    if (next < opts.shrink_factor * prev) persistent = false;
  }

  if (all_below && persistent) {
    verdict.status = VerdictStatus::violation_found;
    verdict.note = "deficit below -eps at every radius, non-vanishing trend";
  } else {
    verdict.status = VerdictStatus::consistent_with_qc;
    verdict.note = all_below ? "deficit trend vanishes as r -> 0 (o(1) term)"
                             : "no persistent negative deficit";
  }
  return verdict;
}

namespace {

struct Candidate {
  TestFunction tf;
  double score = 0.0;
};

TestFunction random_laminate(std::mt19937_64& rng, const CubeSpec& cube,
                             int m, int max_modes) {
  const int n = cube.center.manifold.dim;
  const int nmodes = uniform_int(rng, 1, max_modes);
  std::vector<Mode> modes;
  for (int k = 0; k < nmodes; ++k) {
    Mode mode;
    mode.amplitude = uniform(rng, 0.2, 1.0);
    mode.frequency.resize(n);
    bool nonzero = false;
    for (int i = 0; i < n; ++i) {
      mode.frequency[i] = uniform_int(rng, -2, 2);
      nonzero = nonzero || mode.frequency[i] != 0;
    }
    if (!nonzero) mode.frequency[0] = 1;
    mode.phase = 0.0;
    mode.output.resize(m);
    for (int j = 0; j < m; ++j) mode.output[j] = normal(rng);
    double bn = mode.output.norm();
    if (bn < 1e-12) {
      mode.output.setZero();
      mode.output[0] = 1.0;
    } else {
      mode.output /= bn;
    }
    modes.push_back(mode);
  }
  return make_test_function(cube, modes, true);
}

}  // namespace

Verdict falsify(const Integrand& f, const Point& x0,
                const CotangentStack& alpha, int budget, uint64_t seed,
                const FalsifyOptions& opts) {
  require(budget >= 1, Errc::invalid_argument, "falsify: budget must be >= 1");
  const CubeSpec cube = build_cube(x0, opts.r0);
  const QuadGrid grid = quad_grid(cube, opts.order, opts.subdivisions);
  const int m = static_cast<int>(alpha.matrix.rows());
  std::mt19937_64 rng(seed);

  auto score = [&](const TestFunction& tf) {
    return deficit(f, x0, alpha, tf, grid).deficit;
  };

  std::optional<Candidate> best;
  const std::vector<double> schedule{opts.r0, opts.r0 / 2.0, opts.r0 / 4.0};
  CheckOptions copts;
  copts.order = opts.order;
  copts.subdivisions = opts.subdivisions;
  copts.shrink_factor = opts.shrink_factor;

  for (int trial = 0; trial < budget; ++trial) {
    Candidate cand{random_laminate(rng, cube, m, opts.max_modes), 0.0};
    cand.score = score(cand.tf);

    // derivative-free refinement: coordinate steps on amplitudes and output
    // vectors with shrinking step size
    double step = 0.25;
    for (int pass = 0; pass < opts.refine_passes; ++pass) {
      for (size_t k = 0; k < cand.tf.modes.size(); ++k) {
        for (int dir = -1; dir <= 1; dir += 2) {
          TestFunction trial_tf = cand.tf;
          trial_tf.modes[k].amplitude *= (1.0 + dir * step);
          double s = score(trial_tf);
          if (s < cand.score) {
            cand.tf = trial_tf;
            cand.score = s;
          }
        }
        for (int j = 0; j < m; ++j) {
          for (int dir = -1; dir <= 1; dir += 2) {
            TestFunction trial_tf = cand.tf;
            trial_tf.modes[k].output[j] += dir * step;
            double s = score(trial_tf);
            if (s < cand.score) {
              cand.tf = trial_tf;
              cand.score = s;
            }
          }
        }
      }
      step *= 0.5;
    }

    if (!best || cand.score < best->score) best = cand;

    const double eps = default_threshold(
        deficit(f, x0, alpha, cand.tf, grid).grad_sup);
    if (cand.score <= -eps) {
      Verdict confirmed = check(f, x0, alpha, cand.tf, schedule, copts);
      if (confirmed.status == VerdictStatus::violation_found) {
        confirmed.note += " (falsifier trial " + std::to_string(trial) + ")";
        return confirmed;
      }
    }
  }

  // budget exhausted: report the most negative evidence found
  Verdict verdict;
  verdict.status = VerdictStatus::consistent_with_qc;
  verdict.note = "no violation found within budget";
  verdict.shrink_factor = opts.shrink_factor;
  if (best) {
    Verdict best_check = check(f, x0, alpha, best->tf, schedule, copts);
    verdict.evidence = best_check.evidence;
    verdict.threshold = best_check.threshold;
    verdict.witness = best->tf;
  }
  return verdict;
}

double euclid_morrey_check(const Integrand& f, const Mat& a,
                           const TestFunction& tf, const QuadGrid& grid) {
  require(grid.cube.center.manifold.kind == ManifoldKind::flat,
          Errc::manifold_not_flat,
          "euclid_morrey_check: requires a flat manifold");
  require(tf.cube == grid.cube, Errc::invalid_argument,
          "euclid_morrey_check: test function and grid use different cubes");
  const Point& x0 = grid.cube.center;
  const double f0 = f(x0, a);
  const double avg = average_integrate(grid, [&](const QuadNode& node) {
    Point x{x0.manifold, x0.coords + node.cube_coords};
    return f(x, a + eval_dphi(tf, node.cube_coords));
  });
  return avg - f0;
}

RankOneReport rank_one_probe(const Integrand& f, const Point& x, const Mat& a,
                             const Vec& b, const Vec& nu, int samples) {
  require(samples >= 3, Errc::invalid_argument,
          "rank_one_probe: samples must be >= 3");
  require(b.size() == a.rows() && nu.size() == a.cols(),
          Errc::dimension_mismatch, "rank_one_probe: b/nu dimension mismatch");
  const Mat direction = b * nu.transpose();
  std::vector<double> values(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = -1.0 + 2.0 * i / (samples - 1);
    values[i] = f(x, a + t * direction);
  }
  RankOneReport report;
  report.samples = samples;
  report.min_second_difference = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < samples; ++i) {
    const double d2 = values[i + 1] - 2.0 * values[i] + values[i - 1];
    report.min_second_difference =
        std::min(report.min_second_difference, d2);
  }
  report.nonconvex_direction = report.min_second_difference < -1e-10;
  return report;
}

}  // namespace qcb
