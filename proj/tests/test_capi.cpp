// Exercises the public shared-library surface only (qcbench.h), the same
// boundary the CLI uses.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qcbench/qcbench.h"

namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) {
  return std::string(QCB_FIXTURE_DIR) + "/" + name;
}

struct ManifoldHandle {
  qcb_manifold* m = nullptr;
  ManifoldHandle(qcb_manifold_kind kind, int dim) {
    REQUIRE(qcb_manifold_create(kind, dim, &m) == QCB_OK);
  }
  ~ManifoldHandle() { qcb_manifold_destroy(m); }
};

}  // namespace

TEST_CASE("version and error strings are reachable") {
  CHECK(std::string(qcb_version()) == "0.1.0");
  CHECK(qcb_last_error() != nullptr);
}

TEST_CASE("manifold handles report their shape") {
  ManifoldHandle sphere(QCB_MANIFOLD_SPHERE, 2);
  CHECK(qcb_manifold_dimension(sphere.m) == 2);
  CHECK(qcb_manifold_ambient_dimension(sphere.m) == 3);
  CHECK(qcb_manifold_injectivity_radius(sphere.m) == doctest::Approx(M_PI));

  ManifoldHandle flat(QCB_MANIFOLD_FLAT, 3);
  CHECK(qcb_manifold_ambient_dimension(flat.m) == 3);

  qcb_manifold* bad = nullptr;
  CHECK(qcb_manifold_create(QCB_MANIFOLD_SPHERE, 0, &bad) ==
        QCB_E_INVALID_ARGUMENT);
  CHECK(std::string(qcb_last_error()).size() > 0);
}

TEST_CASE("geometry round trip through the C boundary") {
  ManifoldHandle sphere(QCB_MANIFOLD_SPHERE, 2);
  double x[3], v[3] = {0.0, M_PI / 2.0, 0.0}, y[3], back[3];
  REQUIRE(qcb_manifold_origin(sphere.m, x) == QCB_OK);
  CHECK(x[0] == 1.0);

  REQUIRE(qcb_exp(sphere.m, x, v, y) == QCB_OK);
  CHECK(y[1] == doctest::Approx(1.0).epsilon(1e-12));

  REQUIRE(qcb_log(sphere.m, x, y, back) == QCB_OK);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(v[i]).epsilon(1e-10));

  double d = 0.0;
  REQUIRE(qcb_distance(sphere.m, x, y, &d) == QCB_OK);
  CHECK(d == doctest::Approx(M_PI / 2.0).epsilon(1e-12));

  double w[3] = {0.0, 0.0, 1.0}, dw[3];
  REQUIRE(qcb_dexp(sphere.m, x, v, w, dw) == QCB_OK);
  const double norm = std::sqrt(dw[0] * dw[0] + dw[1] * dw[1] + dw[2] * dw[2]);
  CHECK(norm == doctest::Approx(2.0 / M_PI).epsilon(1e-12));

  double j = 0.0;
  double yt[3] = {0.0, 1.0, 0.0};
  REQUIRE(qcb_volume_jacobian(sphere.m, x, yt, &j) == QCB_OK);
  CHECK(j == doctest::Approx(std::sin(1.0)).epsilon(1e-12));

  // out of the injectivity radius: geometry error code
  double too_far[3] = {0.0, 4.0, 0.0}, out[3];
  CHECK(qcb_exp(sphere.m, x, too_far, out) == QCB_E_GEOMETRY);
}

TEST_CASE("experiment workflow: load, run, inspect, write") {
  qcb_experiment* e = nullptr;
  REQUIRE(qcb_experiment_load(fixture("negquad_flat.cfg").c_str(), &e) ==
          QCB_OK);

  const fs::path dir = fs::temp_directory_path() / "qcb_capi_out";
  fs::remove_all(dir);
  REQUIRE(qcb_experiment_set_out_dir(e, dir.string().c_str()) == QCB_OK);

  qcb_run_result* r = nullptr;
  REQUIRE(qcb_experiment_run(e, "falsify", &r) == QCB_OK);
  CHECK(qcb_result_exit_code(r) == 2);
  CHECK(std::string(qcb_result_status(r)) == "ViolationFound");

  const std::string csv = qcb_result_csv(r);
  CHECK(csv.rfind("r,deficit,grad_sup,q,phi_id\n", 0) == 0);

  auto record = nlohmann::json::parse(std::string(qcb_result_record_json(r)));
  CHECK(record["status"] == "ViolationFound");
  CHECK(record["subcommand"] == "falsify");

  REQUIRE(qcb_result_write_reports(r) == QCB_OK);
  size_t count = qcb_result_file_count(r);
  CHECK(count >= 3);
  for (size_t i = 0; i < count; ++i) {
    const fs::path path = dir / qcb_result_file_name(r, i);
    std::ifstream in(path, std::ios::binary);
    CHECK(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    CHECK(os.str() == std::string(qcb_result_file_contents(r, i)));
  }
  qcb_result_destroy(r);

  // seed override changes the record but keeps the verdict
  REQUIRE(qcb_experiment_set_seed(e, 99) == QCB_OK);
  qcb_run_result* r2 = nullptr;
  REQUIRE(qcb_experiment_run(e, "falsify", &r2) == QCB_OK);
  CHECK(qcb_result_exit_code(r2) == 2);
  qcb_result_destroy(r2);
  qcb_experiment_destroy(e);
  fs::remove_all(dir);
}

TEST_CASE("experiment errors: missing file, bad text, bad subcommand") {
  qcb_experiment* e = nullptr;
  CHECK(qcb_experiment_load("/nonexistent.cfg", &e) == QCB_E_IO);

  CHECK(qcb_experiment_load_string("schema_version = 1\nwhat = no\n", "bad",
                                   &e) == QCB_E_PARSE);
  CHECK(std::string(qcb_last_error()).find("what") != std::string::npos);

  REQUIRE(qcb_experiment_load_string(
              "schema_version = 1\nintegrand = entropy\n", "bad", &e) ==
          QCB_OK);
  qcb_run_result* r = nullptr;
  CHECK(qcb_experiment_run(e, "falsify", &r) == QCB_E_UNKNOWN_INTEGRAND);
  CHECK(qcb_experiment_run(e, "fly", &r) == QCB_E_INVALID_ARGUMENT);
  qcb_experiment_destroy(e);
}

TEST_CASE("load_string runs a full check experiment") {
  const char* text =
      "schema_version = 1\n"
      "manifold = hyperbolic\n"
      "dim = 2\n"
      "m = 2\n"
      "integrand = quad\n"
      "r0 = 0.4\n"
      "quad_order = 8\n"
      "mode.1.amplitude = 0.4\n"
      "mode.1.frequency = 1 0\n"
      "mode.1.phase = 0\n"
      "mode.1.b = 1 0\n";
  qcb_experiment* e = nullptr;
  REQUIRE(qcb_experiment_load_string(text, "hyp_check", &e) == QCB_OK);
  qcb_run_result* r = nullptr;
  REQUIRE(qcb_experiment_run(e, "check", &r) == QCB_OK);
  CHECK(qcb_result_exit_code(r) == 0);
  CHECK(std::string(qcb_result_status(r)) == "ConsistentWithQC");
  qcb_result_destroy(r);
  qcb_experiment_destroy(e);
}
