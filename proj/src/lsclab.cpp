#include "lsclab.hpp"

#include <cmath>

namespace qcb {

namespace {

double slope_fit(const std::vector<double>& logx,
                 const std::vector<double>& logy) {
  const size_t n = logx.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += logx[i];
    my += logy[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < n; ++i) {
    num += (logx[i] - mx) * (logy[i] - my);
    den += (logx[i] - mx) * (logx[i] - mx);
  }
  return num / den;
}

struct RowData {
  LscRow row;
  double chain_bound = 0.0;  // pointwise (||A|| + ||Dpsi||) ||L^{-1}||_2 sup
};

// One oscillation index: integrate f(du_h) on a grid refined to h panels per
// axis and collect the sup-norm/gradient statistics on the same nodes.
RowData compute_row(const Integrand* f, const BaseMap& u,
                    const OscillationSequence& seq, int h,
                    const QuadGrid& base_grid) {
  const Point& x0 = u.x0;
  const QuadGrid grid =
      quad_grid(base_grid.cube, base_grid.order, base_grid.subdivisions * h);
  const PeriodicMap psi = seq.periodized();
  const double anorm = u.matrix.norm();

  RowData data;
  data.row.h = h;
  auto evaluator = [&](const QuadNode& node) {
    const Vec y = node.cube_coords;
    const Mat dpsi = psi.differential(h * y);
    const Vec diff = psi.value(h * y) / h;
    const Tangent ylog = from_frame_coords(grid.center_frame, y);
    const CotangentStack du_h =
        compose_inverse_dexp(x0, ylog, u.matrix + dpsi);

    data.row.sup_diff = std::max(data.row.sup_diff, diff.norm());
    data.row.grad_sup = std::max(data.row.grad_sup, du_h.matrix.norm());
    if (x0.manifold.kind == ManifoldKind::flat) {
      data.chain_bound = std::max(data.chain_bound, anorm + dpsi.norm());
    } else {
      const Mat l = dexp_frame_matrix(x0, ylog);
      const double linv_norm =
          1.0 / l.jacobiSvd().singularValues().minCoeff();
      data.chain_bound =
          std::max(data.chain_bound, (anorm + dpsi.norm()) * linv_norm);
    }
    return f ? (*f)(du_h.base, du_h.matrix) : 0.0;
  };
  const double value = integrate(grid, evaluator);
  if (f) data.row.f_uh = value;
  return data;
}

}  // namespace

BaseMap make_base_map(const Point& x0, const Mat& a, const Vec& c) {
  require(a.cols() == x0.manifold.dim, Errc::dimension_mismatch,
          "base map matrix must have n columns");
  require(c.size() == a.rows(), Errc::dimension_mismatch,
          "base map offset must match the matrix rows");
  return BaseMap{x0, a, c};
}

Vec BaseMap::value(const Point& x) const {
  const Vec y = frame_coords(frame(x0), log(x0, x));
  return matrix * y + offset;
}

CotangentStack BaseMap::differential(const Point& x) const {
  return compose_inverse_dexp(x0, log(x0, x), matrix);
}

Vec PerturbedMap::value(const Point& x) const {
  return base.value(x) + oscillate(sequence, h, x).value;
}

CotangentStack PerturbedMap::differential(const Point& x) const {
  CotangentStack du = base.differential(x);
  du.matrix += oscillate(sequence, h, x).differential.matrix;
  return du;
}

std::vector<PerturbedMap> build_sequence(const BaseMap& u,
                                         const OscillationSequence& seq,
                                         const std::vector<int>& h_list) {
  require(same_point(u.x0, seq.base.cube.center), Errc::base_mismatch,
          "build_sequence: base map and oscillation use different centers");
  int prev = 0;
  std::vector<PerturbedMap> maps;
  for (int h : h_list) {
    require(h > prev, Errc::invalid_argument,
            "h_list must be strictly increasing and positive");
    prev = h;
    maps.push_back(PerturbedMap{u, seq, h});
  }
  return maps;
}

LscReport run_lsc(const Integrand& f, const BaseMap& u,
                  const OscillationSequence& seq,
                  const std::vector<int>& h_list, const QuadGrid& base_grid) {
  require(same_point(base_grid.cube.center, u.x0), Errc::base_mismatch,
          "run_lsc: grid must be centered at the base map point");
  require(same_point(seq.base.cube.center, u.x0), Errc::base_mismatch,
          "run_lsc: oscillation must be centered at the base map point");
  require(!h_list.empty(), Errc::invalid_argument, "run_lsc: empty h_list");

  LscReport report;
  double gradient_ratio = 0.0;
  for (int h : h_list) {
    RowData data = compute_row(&f, u, seq, h, base_grid);
    if (data.chain_bound > 0.0) {
      gradient_ratio =
          std::max(gradient_ratio, data.row.grad_sup / data.chain_bound);
    }
    report.rows.push_back(data.row);
  }

  // F(u) on the finest grid used for the sequence, so the gap is a
  // same-resolution difference
  const int h_max = h_list.back();
  const QuadGrid fine = quad_grid(base_grid.cube, base_grid.order,
                                  base_grid.subdivisions * h_max);
  report.f_u = integrate(fine, [&](const QuadNode& node) {
    const Tangent ylog = from_frame_coords(fine.center_frame, node.cube_coords);
    const CotangentStack du = compose_inverse_dexp(u.x0, ylog, u.matrix);
    return f(du.base, du.matrix);
  });

  // liminf proxy: minimum over the largest three h values
  const size_t tail = std::min<size_t>(3, report.rows.size());
  double gap = std::numeric_limits<double>::infinity();
  for (size_t i = report.rows.size() - tail; i < report.rows.size(); ++i) {
    gap = std::min(gap, report.rows[i].f_uh - report.f_u);
  }
  report.gap = gap;
  report.tolerance = 1e-6 * (1.0 + std::abs(report.f_u));
  report.semicontinuity_ok = report.gap >= -report.tolerance;

  // weak* diagnostics from the same rows
  WeakstarRecord diag;
  diag.gradient_ratio = gradient_ratio;
  diag.gradient_ok = gradient_ratio <= 1.0 + 1e-9;
  std::vector<double> lh, ls;
  for (const LscRow& row : report.rows) {
    if (row.sup_diff > 1e-15) {
      lh.push_back(std::log(double(row.h)));
      ls.push_back(std::log(row.sup_diff));
    }
  }
  if (lh.size() < 2) {
    diag.degenerate = true;
    diag.decay_ok = true;  // nothing to decay
    diag.decay_exponent = 0.0;
  } else {
    diag.decay_exponent = slope_fit(lh, ls);
    diag.decay_ok = std::abs(diag.decay_exponent + 1.0) <= 0.05;
  }
  report.diagnostics = diag;
  return report;
}

WeakstarRecord weakstar_diagnostics(const BaseMap& u,
                                    const OscillationSequence& seq,
                                    const std::vector<int>& h_list,
                                    const QuadGrid& base_grid) {
  WeakstarRecord diag;
  std::vector<double> lh, ls;
  double gradient_ratio = 0.0;
  for (int h : h_list) {
    RowData data = compute_row(nullptr, u, seq, h, base_grid);
    if (data.chain_bound > 0.0) {
      gradient_ratio =
          std::max(gradient_ratio, data.row.grad_sup / data.chain_bound);
    }
    if (data.row.sup_diff > 1e-15) {
      lh.push_back(std::log(double(h)));
      ls.push_back(std::log(data.row.sup_diff));
    }
  }
  diag.gradient_ratio = gradient_ratio;
  diag.gradient_ok = gradient_ratio <= 1.0 + 1e-9;
  if (lh.size() < 2) {
    diag.degenerate = true;
    diag.decay_ok = true;
    diag.decay_exponent = 0.0;
  } else {
    diag.decay_exponent = slope_fit(lh, ls);
    diag.decay_ok = std::abs(diag.decay_exponent + 1.0) <= 0.05;
  }
  return diag;
}

}  // namespace qcb
