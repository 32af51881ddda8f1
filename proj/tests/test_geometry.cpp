#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geometry.hpp"
#include "ode.hpp"
#include "test_support.hpp"

using namespace qcb;

namespace {

const Manifold kFlat2 = Manifold::flat(2);
const Manifold kSphere2 = Manifold::sphere(2);
const Manifold kHyp2 = Manifold::hyperbolic(2);

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("manifold invariants") {
  CHECK(kFlat2.injectivity_radius() ==
        std::numeric_limits<double>::infinity());
  CHECK(kSphere2.injectivity_radius() == doctest::Approx(M_PI));
  CHECK(kHyp2.injectivity_radius() ==
        std::numeric_limits<double>::infinity());
  CHECK(kSphere2.curvature() == 1);
  CHECK(kHyp2.curvature() == -1);
  CHECK_THROWS_AS(Manifold::sphere(0), Error);
}

TEST_CASE("point validation") {
  CHECK_THROWS_AS(make_point(kSphere2, v3(1.0, 1.0, 0.0)), Error);
  CHECK_THROWS_AS(make_point(kHyp2, v3(-1.0, 0.0, 0.0)), Error);
  CHECK_NOTHROW(make_point(kSphere2, v3(0.0, 0.0, 1.0)));
  CHECK_NOTHROW(make_point(kHyp2, v3(std::cosh(0.3), std::sinh(0.3), 0.0)));
  CHECK_THROWS_AS(make_point(kFlat2, v3(0.0, 0.0, 0.0)), Error);
}

TEST_CASE("exp: flat translation") {
  Point x = make_point(kFlat2, v2(0.0, 0.0));
  Point y = exp(x, make_tangent(x, v2(1.0, 2.0)));
  CHECK((y.coords - v2(1.0, 2.0)).norm() == doctest::Approx(0.0));
}

TEST_CASE("exp: sphere quarter turn") {
  Point x = make_point(kSphere2, v3(1.0, 0.0, 0.0));
  Point y = exp(x, make_tangent(x, v3(0.0, M_PI / 2.0, 0.0)));
  CHECK((y.coords - v3(0.0, 1.0, 0.0)).norm() < 1e-12);
}

TEST_CASE("exp: hyperbolic unit step") {
  Point x = origin(kHyp2);
  Point y = exp(x, make_tangent(x, v3(0.0, 1.0, 0.0)));
  CHECK((y.coords - v3(std::cosh(1.0), std::sinh(1.0), 0.0)).norm() < 1e-12);
  CHECK(y.coords[0] == doctest::Approx(1.5431).epsilon(1e-4));
  CHECK(y.coords[1] == doctest::Approx(1.1752).epsilon(1e-4));
}

TEST_CASE("exp rejects base mismatch and injectivity violations") {
  Point x = origin(kSphere2);
  Point z = exp(x, make_tangent(x, v3(0.0, 0.5, 0.0)));
  Tangent at_z = make_tangent(z, frame(z).basis.col(0));
  CHECK_THROWS_AS(exp(x, at_z), Error);
  CHECK_THROWS_AS(exp(x, make_tangent(x, v3(0.0, M_PI, 0.0))), Error);
}

TEST_CASE("log: identity and flat translation inverse") {
  std::mt19937_64 rng(11);
  for (const Manifold& m : {kFlat2, kSphere2, kHyp2}) {
    Point x = test::random_point(rng, m, 0.8);
    CHECK(norm(log(x, x)) == doctest::Approx(0.0));
  }
  Point a = make_point(kFlat2, v2(1.0, 1.0));
  Point b = make_point(kFlat2, v2(2.0, 3.0));
  CHECK((log(a, b).components - v2(1.0, 2.0)).norm() == doctest::Approx(0.0));
}

TEST_CASE("log: sphere closed form and antipodal rejection") {
  Point x = make_point(kSphere2, v3(1.0, 0.0, 0.0));
  Point y = make_point(kSphere2, v3(0.0, 1.0, 0.0));
  CHECK((log(x, y).components - v3(0.0, M_PI / 2.0, 0.0)).norm() < 1e-12);
  Point anti = make_point(kSphere2, v3(-1.0, 0.0, 0.0));
  CHECK_THROWS_AS(log(x, anti), Error);
}

TEST_CASE("round trip exp(log) within 0.9 injectivity radius") {
  std::mt19937_64 rng(7);
  for (const Manifold& m : {kFlat2, kSphere2, kHyp2, Manifold::sphere(3),
                            Manifold::hyperbolic(3)}) {
    const double reach = m.kind == ManifoldKind::sphere ? 0.9 * M_PI : 2.0;
    for (int trial = 0; trial < 50; ++trial) {
      Point x = test::random_point(rng, m, 0.5);
      Point y = exp(x, test::random_tangent(rng, x, reach));
      Point back = exp(x, log(x, y));
      CHECK((back.coords - y.coords).norm() < 1e-10);
      CHECK(norm(log(x, y)) == doctest::Approx(distance(x, y)).epsilon(1e-10));
    }
  }
}

TEST_CASE("dexp at v = 0 is the identity") {
  std::mt19937_64 rng(3);
  for (const Manifold& m : {kFlat2, kSphere2, kHyp2}) {
    Point x = test::random_point(rng, m, 0.7);
    Tangent w = test::random_tangent(rng, x, 1.0);
    Tangent out = dexp(x, zero_tangent(x), w);
    CHECK((out.components - w.components).norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("dexp normal scaling on the space forms") {
  // sphere: |v| = pi/2, unit w perp v -> sin(pi/2)/(pi/2) = 2/pi
  Point xs = origin(kSphere2);
  Tangent v = make_tangent(xs, v3(0.0, M_PI / 2.0, 0.0));
  Tangent w = make_tangent(xs, v3(0.0, 0.0, 1.0));
  Tangent out = dexp(xs, v, w);
  CHECK(norm(out) == doctest::Approx(2.0 / M_PI).epsilon(1e-12));

  // hyperbolic: |v| = 1, unit w perp v -> sinh(1)
  Point xh = origin(kHyp2);
  Tangent vh = make_tangent(xh, v3(0.0, 1.0, 0.0));
  Tangent wh = make_tangent(xh, v3(0.0, 0.0, 1.0));
  CHECK(norm(dexp(xh, vh, wh)) == doctest::Approx(std::sinh(1.0)).epsilon(1e-12));
}

TEST_CASE("Gauss lemma: radial directions keep unit length") {
  std::mt19937_64 rng(5);
  for (const Manifold& m : {kSphere2, kHyp2, Manifold::sphere(3)}) {
    for (int trial = 0; trial < 25; ++trial) {
      Point x = test::random_point(rng, m, 0.5);
      Tangent v = test::random_tangent(rng, x, 1.5);
      Tangent unit = Tangent{x, v.components / norm(v)};
      CHECK(norm(dexp(x, v, unit)) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("ODE oracle agrees with closed forms to 1e-6") {
  std::mt19937_64 rng(13);
  for (const Manifold& m : {kSphere2, kHyp2}) {
    for (int trial = 0; trial < 20; ++trial) {
      Point x = test::random_point(rng, m, 0.6);
      Tangent v = test::random_tangent(rng, x, 1.0);
      Tangent w = test::random_tangent(rng, x, 1.0);
      Point end = exp(x, v);
      Point end_ode = ode::integrate_geodesic(x, v);
      CHECK((end.coords - end_ode.coords).norm() < 1e-6);
      Vec jac = ode::integrate_jacobi(x, v, w);
      CHECK((dexp(x, v, w).components - jac).norm() < 1e-6);
    }
  }
}

TEST_CASE("volume jacobian closed form and dexp Gram oracle") {
  Point xs = origin(kSphere2);
  Tangent ys = make_tangent(xs, v3(0.0, 1.0, 0.0));
  CHECK(volume_jacobian(xs, ys) == doctest::Approx(std::sin(1.0)).epsilon(1e-12));

  Point xh = origin(kHyp2);
  Tangent yh = make_tangent(xh, v3(0.0, 1.0, 0.0));
  CHECK(volume_jacobian(xh, yh) ==
        doctest::Approx(std::sinh(1.0)).epsilon(1e-12));

  Point xf = origin(kFlat2);
  CHECK(volume_jacobian(xf, make_tangent(xf, v2(3.0, -4.0))) == 1.0);

  std::mt19937_64 rng(17);
  for (const Manifold& m : {kSphere2, kHyp2, Manifold::sphere(3),
                            Manifold::hyperbolic(3)}) {
    for (int trial = 0; trial < 20; ++trial) {
      Point x = test::random_point(rng, m, 0.5);
      Tangent y = test::random_tangent(rng, x, 1.2);
      CHECK(volume_jacobian(x, y) ==
            doctest::Approx(ode::jacobian_from_dexp(x, y)).epsilon(1e-8));
    }
  }
}

TEST_CASE("J -> 1 at rate r^2 (log-log slope 2 +- 0.1)") {
  std::mt19937_64 rng(23);
  for (const Manifold& m : {kSphere2, kHyp2}) {
    Point x = origin(m);
    Frame f = frame(x);
    std::vector<double> radii{0.4, 0.2, 0.1, 0.05};
    std::vector<double> sup(radii.size(), 0.0);
    for (size_t ri = 0; ri < radii.size(); ++ri) {
      const double bound = radii[ri] * std::sqrt(double(m.dim)) / 2.0;
      for (int trial = 0; trial < 200; ++trial) {
        Vec c = test::random_vec(rng, m.dim);
        c *= uniform(rng, 0.0, bound) / c.norm();
        double j = volume_jacobian(x, from_frame_coords(f, c));
        sup[ri] = std::max(sup[ri], std::abs(j - 1.0));
      }
      // the corner |y| = r sqrt(n)/2 dominates; include it
      Vec corner = Vec::Ones(m.dim) * (radii[ri] / 2.0);
      double j = volume_jacobian(x, from_frame_coords(f, corner));
      sup[ri] = std::max(sup[ri], std::abs(j - 1.0));
    }
    for (size_t ri = 0; ri + 1 < radii.size(); ++ri) {
      const double slope = std::log(sup[ri] / sup[ri + 1]) /
                           std::log(radii[ri] / radii[ri + 1]);
      CHECK(slope == doctest::Approx(2.0).epsilon(0.05));
    }
  }
}

TEST_CASE("frame: deterministic pivot rule") {
  Point xf = make_point(kFlat2, v2(0.3, -0.7));
  Frame ff = frame(xf);
  CHECK((ff.basis - Mat::Identity(2, 2)).norm() == doctest::Approx(0.0));

  Point xs = make_point(kSphere2, v3(0.0, 0.0, 1.0));
  Frame fs = frame(xs);
  CHECK((fs.basis.col(0) - v3(1.0, 0.0, 0.0)).norm() < 1e-12);
  CHECK((fs.basis.col(1) - v3(0.0, 1.0, 0.0)).norm() < 1e-12);
}

TEST_CASE("frame: orthonormality on random points") {
  std::mt19937_64 rng(29);
  for (const Manifold& m : {kFlat2, kSphere2, kHyp2, Manifold::sphere(3),
                            Manifold::hyperbolic(3), Manifold::flat(3)}) {
    for (int trial = 0; trial < 20; ++trial) {
      Point x = test::random_point(rng, m, 1.0);
      Frame f = frame(x);
      for (int i = 0; i < m.dim; ++i) {
        for (int j = 0; j < m.dim; ++j) {
          const double expected = i == j ? 1.0 : 0.0;
          CHECK(metric_inner(x, f.basis.col(i), f.basis.col(j)) ==
                doctest::Approx(expected).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("frame coordinate round trip") {
  std::mt19937_64 rng(31);
  for (const Manifold& m : {kSphere2, kHyp2}) {
    Point x = test::random_point(rng, m, 0.9);
    Frame f = frame(x);
    Vec c = test::random_vec(rng, m.dim);
    Tangent t = from_frame_coords(f, c);
    CHECK((frame_coords(f, t) - c).norm() < 1e-12);
  }
}
