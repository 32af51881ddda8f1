#include "geometry.hpp"

#include <cmath>
#include <limits>

namespace qcb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double minkowski(const Vec& a, const Vec& b) {
  double s = -a[0] * b[0];
  for (Eigen::Index i = 1; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// sn_k(t)/t, continuous at t = 0.
double sn_ratio(int curvature, double t) {
  if (curvature == 0 || t < 1e-14) return 1.0;
  return curvature > 0 ? std::sin(t) / t : std::sinh(t) / t;
}

void check_same_manifold(const Manifold& a, const Manifold& b,
                         const char* op) {
  require(a == b, Errc::manifold_mismatch,
          std::string(op) + ": points live on different manifolds");
}

}  // namespace

const char* kind_name(ManifoldKind k) {
  switch (k) {
    case ManifoldKind::flat: return "flat";
    case ManifoldKind::sphere: return "sphere";
    case ManifoldKind::hyperbolic: return "hyperbolic";
  }
  return "?";
}

ManifoldKind kind_from_name(const std::string& name) {
  if (name == "flat") return ManifoldKind::flat;
  if (name == "sphere") return ManifoldKind::sphere;
  if (name == "hyperbolic") return ManifoldKind::hyperbolic;
  fail(Errc::invalid_argument, "unknown manifold kind '" + name + "'");
}

Manifold Manifold::flat(int n) {
  require(n >= 1, Errc::invalid_argument, "manifold dimension must be >= 1");
  return Manifold{ManifoldKind::flat, n};
}

Manifold Manifold::sphere(int n) {
  require(n >= 1, Errc::invalid_argument, "manifold dimension must be >= 1");
  return Manifold{ManifoldKind::sphere, n};
}

Manifold Manifold::hyperbolic(int n) {
  require(n >= 1, Errc::invalid_argument, "manifold dimension must be >= 1");
  return Manifold{ManifoldKind::hyperbolic, n};
}

int Manifold::curvature() const {
  switch (kind) {
    case ManifoldKind::flat: return 0;
    case ManifoldKind::sphere: return 1;
    case ManifoldKind::hyperbolic: return -1;
  }
  return 0;
}

int Manifold::ambient_dim() const {
  return kind == ManifoldKind::flat ? dim : dim + 1;
}

double Manifold::injectivity_radius() const {
  return kind == ManifoldKind::sphere ? M_PI : kInf;
}

Point make_point(const Manifold& m, const Vec& coords) {
  require(coords.size() == m.ambient_dim(), Errc::dimension_mismatch,
          "point coordinate length does not match the ambient dimension");
  require(coords.allFinite(), Errc::invalid_argument,
          "point coordinates must be finite");
  switch (m.kind) {
    case ManifoldKind::flat:
      break;
    case ManifoldKind::sphere:
      require(std::abs(coords.norm() - 1.0) <= 1e-9, Errc::invalid_argument,
              "sphere point must be a unit vector");
      break;
    case ManifoldKind::hyperbolic:
      require(std::abs(minkowski(coords, coords) + 1.0) <= 1e-9 &&
                  coords[0] > 0.0,
              Errc::invalid_argument,
              "hyperbolic point must lie on the upper hyperboloid sheet");
      break;
  }
  return Point{m, coords};
}

Point origin(const Manifold& m) {
  Vec c = Vec::Zero(m.ambient_dim());
  if (m.kind != ManifoldKind::flat) c[0] = 1.0;
  return Point{m, c};
}

bool same_point(const Point& a, const Point& b, double tol) {
  return a.manifold == b.manifold && (a.coords - b.coords).norm() <= tol;
}

double metric_inner(const Point& x, const Vec& a, const Vec& b) {
  return x.manifold.kind == ManifoldKind::hyperbolic ? minkowski(a, b)
                                                     : a.dot(b);
}

Tangent make_tangent(const Point& x, const Vec& components) {
  require(components.size() == x.manifold.ambient_dim(),
          Errc::dimension_mismatch, "tangent component length mismatch");
  Vec c = components;
  switch (x.manifold.kind) {
    case ManifoldKind::flat:
      break;
    case ManifoldKind::sphere: {
      double ip = c.dot(x.coords);
      require(std::abs(ip) <= 1e-8 * (1.0 + c.norm()), Errc::invalid_argument,
              "tangent is not orthogonal to its sphere base point");
      c -= ip * x.coords;  // remove residual normal drift
      break;
    }
    case ManifoldKind::hyperbolic: {
      double ip = minkowski(c, x.coords);
      require(std::abs(ip) <= 1e-8 * (1.0 + c.norm()), Errc::invalid_argument,
              "tangent is not Minkowski-orthogonal to its base point");
      c += ip * x.coords;  // <x,x> = -1
      break;
    }
  }
  return Tangent{x, c};
}

Tangent zero_tangent(const Point& x) {
  return Tangent{x, Vec::Zero(x.manifold.ambient_dim())};
}

double norm(const Tangent& v) {
  double s = metric_inner(v.base, v.components, v.components);
  return s <= 0.0 ? 0.0 : std::sqrt(s);
}

Point exp(const Point& x, const Tangent& v) {
  require(same_point(v.base, x), Errc::base_mismatch,
          "exp: tangent is not based at the given point");
  const double t = norm(v);
  switch (x.manifold.kind) {
    case ManifoldKind::flat:
      return Point{x.manifold, x.coords + v.components};
    case ManifoldKind::sphere: {
      require(t < x.manifold.injectivity_radius(),
              Errc::out_of_injectivity_radius,
              "exp: |v| >= injectivity radius on the sphere");
      if (t < 1e-14) return x;
      Vec c = std::cos(t) * x.coords + std::sin(t) * (v.components / t);
      c.normalize();
      return Point{x.manifold, c};
    }
    case ManifoldKind::hyperbolic: {
      if (t < 1e-14) return x;
      Vec c = std::cosh(t) * x.coords + std::sinh(t) * (v.components / t);
      c /= std::sqrt(-minkowski(c, c));
      return Point{x.manifold, c};
    }
  }
  fail(Errc::invalid_argument, "exp: unreachable");
}

Tangent log(const Point& x, const Point& y) {
  check_same_manifold(x.manifold, y.manifold, "log");
  switch (x.manifold.kind) {
    case ManifoldKind::flat:
      return Tangent{x, y.coords - x.coords};
    case ManifoldKind::sphere: {
      double d = distance(x, y);
      require(d < M_PI - 1e-9, Errc::antipodal_point,
              "log: points are antipodal on the sphere");
      if (d < 1e-14) return zero_tangent(x);
      Vec u = y.coords - x.coords.dot(y.coords) * x.coords;
      return Tangent{x, d * (u / u.norm())};
    }
    case ManifoldKind::hyperbolic: {
      double d = distance(x, y);
      if (d < 1e-14) return zero_tangent(x);
      Vec u = y.coords + minkowski(x.coords, y.coords) * x.coords;
      double un = std::sqrt(std::max(minkowski(u, u), 0.0));
      if (un < 1e-300) return zero_tangent(x);
      return Tangent{x, d * (u / un)};
    }
  }
  fail(Errc::invalid_argument, "log: unreachable");
}

double distance(const Point& x, const Point& y) {
  check_same_manifold(x.manifold, y.manifold, "distance");
  if ((x.coords.array() == y.coords.array()).all()) return 0.0;
  // chord-based forms stay accurate near zero separation, where
  // acos/acosh of an inner product lose absolute precision
  switch (x.manifold.kind) {
    case ManifoldKind::flat:
      return (y.coords - x.coords).norm();
    case ManifoldKind::sphere: {
      const double half_chord = 0.5 * (y.coords - x.coords).norm();
      return 2.0 * std::asin(std::min(half_chord, 1.0));
    }
    case ManifoldKind::hyperbolic: {
      const Vec diff = y.coords - x.coords;
      const double q = std::max(minkowski(diff, diff), 0.0);
      return 2.0 * std::asinh(0.5 * std::sqrt(q));
    }
  }
  return 0.0;
}

Tangent dexp(const Point& x, const Tangent& v, const Tangent& w) {
  require(same_point(v.base, x) && same_point(w.base, x), Errc::base_mismatch,
          "dexp: tangents are not based at the given point");
  const double t = norm(v);
  if (x.manifold.kind == ManifoldKind::sphere) {
    require(t < x.manifold.injectivity_radius(),
            Errc::out_of_injectivity_radius,
            "dexp: |v| >= injectivity radius on the sphere");
  }
  if (x.manifold.kind == ManifoldKind::flat) {
    Point y{x.manifold, x.coords + v.components};
    return Tangent{y, w.components};
  }
  if (t < 1e-14) return w;

  const Vec u = v.components / t;
  const double radial = metric_inner(x, w.components, u);
  const Vec perp = w.components - radial * u;
  const Point y = exp(x, v);

  Vec out;
  if (x.manifold.kind == ManifoldKind::sphere) {
    Vec gamma_dot = -std::sin(t) * x.coords + std::cos(t) * u;
    out = radial * gamma_dot + (std::sin(t) / t) * perp;
  } else {
    Vec gamma_dot = std::sinh(t) * x.coords + std::cosh(t) * u;
    out = radial * gamma_dot + (std::sinh(t) / t) * perp;
  }
  return make_tangent(y, out);
}

double volume_jacobian(const Point& x0, const Tangent& y) {
  require(same_point(y.base, x0), Errc::base_mismatch,
          "volume_jacobian: tangent is not based at the given point");
  const double t = norm(y);
  if (x0.manifold.kind == ManifoldKind::sphere) {
    require(t < x0.manifold.injectivity_radius(),
            Errc::out_of_injectivity_radius,
            "volume_jacobian: |y| >= injectivity radius");
  }
  const double ratio = sn_ratio(x0.manifold.curvature(), t);
  return std::pow(ratio, x0.manifold.dim - 1);
}

Tangent Frame::vector(int i) const {
  return Tangent{base, basis.col(i)};
}

Frame frame(const Point& x) {
  const int n = x.manifold.dim;
  const int a = x.manifold.ambient_dim();
  Mat basis(a, n);

  if (x.manifold.kind == ManifoldKind::flat) {
    basis = Mat::Identity(a, n);
    return Frame{x, basis};
  }

  int pivot = 0;
  for (int i = 1; i < a; ++i) {
    if (std::abs(x.coords[i]) > std::abs(x.coords[pivot])) pivot = i;
  }

  int col = 0;
  for (int i = 0; i < a; ++i) {
    if (i == pivot) continue;
    Vec e = Vec::Zero(a);
    e[i] = 1.0;
    double ip = metric_inner(x, e, x.coords);
    // project to T_xM: subtract the normal component (<x,x> = +1 resp. -1)
    if (x.manifold.kind == ManifoldKind::sphere) {
      e -= ip * x.coords;
    } else {
      e += ip * x.coords;
    }
    for (int j = 0; j < col; ++j) {
      e -= metric_inner(x, e, basis.col(j)) * Vec(basis.col(j));
    }
    double nn = metric_inner(x, e, e);
    require(nn > 1e-20, Errc::invalid_argument,
            "frame: degenerate Gram-Schmidt pivot");
    basis.col(col++) = e / std::sqrt(nn);
  }
  return Frame{x, basis};
}

Vec frame_coords(const Frame& f, const Tangent& v) {
  require(same_point(v.base, f.base), Errc::base_mismatch,
          "frame_coords: tangent is not based at the frame point");
  Vec c(f.basis.cols());
  for (int i = 0; i < f.basis.cols(); ++i) {
    c[i] = metric_inner(f.base, v.components, f.basis.col(i));
  }
  return c;
}

Tangent from_frame_coords(const Frame& f, const Vec& coords) {
  require(coords.size() == f.basis.cols(), Errc::dimension_mismatch,
          "from_frame_coords: coordinate length mismatch");
  return Tangent{f.base, f.basis * coords};
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::base_mismatch: return "BaseMismatch";
    case Errc::manifold_mismatch: return "ManifoldMismatch";
    case Errc::out_of_injectivity_radius: return "OutOfInjectivityRadius";
    case Errc::antipodal_point: return "AntipodalPoint";
    case Errc::injectivity_violation: return "InjectivityViolation";
    case Errc::outside_cube: return "OutsideCube";
    case Errc::non_finite_value: return "NonFiniteValue";
    case Errc::schedule_invalid: return "ScheduleInvalid";
    case Errc::manifold_not_flat: return "ManifoldNotFlat";
    case Errc::config_parse: return "ConfigParseError";
    case Errc::unknown_integrand: return "UnknownIntegrand";
    case Errc::io_error: return "IoError";
  }
  return "Error";
}

}  // namespace qcb
