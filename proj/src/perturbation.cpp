#include "perturbation.hpp"

#include <cmath>
#include <sstream>

namespace qcb {

namespace {

void check_inside(const TestFunction& tf, const Vec& y) {
  const double half = tf.cube.radius / 2.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    require(std::abs(y[i]) <= half + 1e-12, Errc::outside_cube,
            "evaluation point lies outside the closed cube");
  }
}

struct BumpState {
  double eta = 1.0;
  Vec grad;  // d eta / d y
};

BumpState bump_state(const TestFunction& tf, const Vec& y) {
  const int n = static_cast<int>(y.size());
  BumpState st;
  st.grad = Vec::Zero(n);
  if (!tf.bump) return st;
  const double scale = 2.0 / tf.cube.radius;
  Vec b(n), db(n);
  for (int i = 0; i < n; ++i) {
    const double s = scale * y[i];
    b[i] = bump_beta(s);
    db[i] = bump_dbeta(s) * scale;
  }
  st.eta = b.prod();
  for (int i = 0; i < n; ++i) {
    double partial = db[i];
    for (int j = 0; j < n; ++j) {
      if (j != i) partial *= b[j];
    }
    st.grad[i] = partial;
  }
  return st;
}

}  // namespace

double bump_beta(double t) {
  const double u = 1.0 - t * t;
  if (u <= 1e-12) return 0.0;
  return std::exp(1.0 - 1.0 / u);
}

double bump_dbeta(double t) {
  const double u = 1.0 - t * t;
  if (u <= 1e-12) return 0.0;
  return std::exp(1.0 - 1.0 / u) * (-2.0 * t) / (u * u);
}

TestFunction make_test_function(const CubeSpec& cube,
                                const std::vector<Mode>& modes, bool bump) {
  require(!modes.empty(), Errc::invalid_argument,
          "a test function needs at least one mode");
  const int n = cube.center.manifold.dim;
  const Eigen::Index m = modes[0].output.size();
  require(m >= 1, Errc::dimension_mismatch, "mode output dimension >= 1");
  for (const Mode& mode : modes) {
    require(mode.frequency.size() == n, Errc::dimension_mismatch,
            "mode frequency vector must have length n");
    require(mode.output.size() == m, Errc::dimension_mismatch,
            "inconsistent mode output dimensions");
    require(std::isfinite(mode.amplitude) && std::isfinite(mode.phase) &&
                mode.output.allFinite(),
            Errc::invalid_argument, "mode parameters must be finite");
  }
  TestFunction tf;
  tf.cube = cube;
  tf.modes = modes;
  tf.bump = bump;
  tf.target_dim = static_cast<int>(m);
  return tf;
}

TestFunction TestFunction::rescaled(const CubeSpec& cube2) const {
  TestFunction out = *this;
  const double scale = cube2.radius / cube.radius;
  out.cube = cube2;
  for (Mode& mode : out.modes) mode.amplitude *= scale;
  return out;
}

std::string TestFunction::descriptor() const {
  std::ostringstream os;
  os << (bump ? "bump" : "per");
  for (const Mode& mode : modes) {
    os << ";a=" << mode.amplitude << ":k=(";
    for (int i = 0; i < mode.frequency.size(); ++i) {
      if (i) os << ",";
      os << mode.frequency[i];
    }
    os << "):th=" << mode.phase << ":b=(";
    for (int j = 0; j < mode.output.size(); ++j) {
      if (j) os << ",";
      os << mode.output[j];
    }
    os << ")";
  }
  return os.str();
}

Vec eval_phi(const TestFunction& tf, const Vec& y) {
  check_inside(tf, y);
  const BumpState st = bump_state(tf, y);
  Vec out = Vec::Zero(tf.target_dim);
  if (st.eta == 0.0) return out;
  const double two_pi_over_r = 2.0 * M_PI / tf.cube.radius;
  for (const Mode& mode : tf.modes) {
    double arg = mode.phase;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      arg += two_pi_over_r * mode.frequency[i] * y[i];
    }
    out += mode.amplitude * std::sin(arg) * mode.output;
  }
  return st.eta * out;
}

Mat eval_dphi(const TestFunction& tf, const Vec& y) {
  check_inside(tf, y);
  const int n = static_cast<int>(y.size());
  const BumpState st = bump_state(tf, y);
  Mat out = Mat::Zero(tf.target_dim, n);
  if (tf.bump && st.eta == 0.0 && st.grad.isZero()) return out;
  const double two_pi_over_r = 2.0 * M_PI / tf.cube.radius;
  for (const Mode& mode : tf.modes) {
    double arg = mode.phase;
    for (int i = 0; i < n; ++i) {
      arg += two_pi_over_r * mode.frequency[i] * y[i];
    }
    const double sv = std::sin(arg);
    const double cv = std::cos(arg);
    for (int i = 0; i < n; ++i) {
      const double factor =
          st.grad[i] * sv + st.eta * cv * two_pi_over_r * mode.frequency[i];
      out.col(i) += mode.amplitude * factor * mode.output;
    }
  }
  return out;
}

Vec eval_phi(const TestFunction& tf, const Tangent& y) {
  return eval_phi(tf, frame_coords(frame(tf.cube.center), y));
}

Mat eval_dphi(const TestFunction& tf, const Tangent& y) {
  return eval_dphi(tf, frame_coords(frame(tf.cube.center), y));
}

Vec PeriodicMap::wrap(const Vec& y) const {
  const double r = base.cube.radius;
  Vec out = y;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out[i] -= r * std::nearbyint(out[i] / r);
  }
  return out;
}

Vec PeriodicMap::value(const Vec& y) const { return eval_phi(base, wrap(y)); }

Mat PeriodicMap::differential(const Vec& y) const {
  return eval_dphi(base, wrap(y));
}

PeriodicMap periodize(const TestFunction& tf) { return PeriodicMap{tf}; }

OscillationSequence make_oscillation(const TestFunction& pure_modes,
                                     const std::vector<int>& h_list) {
  require(!pure_modes.bump, Errc::invalid_argument,
          "oscillation base must be a pure periodic mode sum (no bump)");
  for (const Mode& mode : pure_modes.modes) {
    require(std::abs(std::sin(mode.phase)) <= 1e-12, Errc::invalid_argument,
            "oscillation modes need phase = 0 mod pi to vanish on the "
            "cube-corner lattice");
  }
  int prev = 0;
  for (int h : h_list) {
    require(h > prev, Errc::invalid_argument,
            "h_list must be strictly increasing and positive");
    prev = h;
  }
  return OscillationSequence{pure_modes, h_list};
}

OscillationValue oscillate(const OscillationSequence& seq, int h,
                           const Point& x) {
  require(h >= 1, Errc::invalid_argument, "oscillation index h must be >= 1");
  const Point& x0 = seq.base.cube.center;
  Tangent ylog = log(x0, x);
  Vec y = frame_coords(frame(x0), ylog);
  PeriodicMap psi = seq.periodized();
  OscillationValue out{psi.value(h * y) / h,
                       compose_inverse_dexp(x0, ylog, psi.differential(h * y))};
  return out;
}

}  // namespace qcb
