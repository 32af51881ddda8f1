#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "runner.hpp"

using namespace qcb;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) {
  return std::string(QCB_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("config parser: values, defaults and echo") {
  ExperimentConfig cfg = ExperimentConfig::load(fixture("quad_sphere.cfg"));
  CHECK(cfg.name == "quad_sphere");
  CHECK(cfg.manifold_kind == ManifoldKind::sphere);
  CHECK(cfg.dim == 2);
  CHECK(cfg.m == 2);
  CHECK(cfg.integrand_name == "quad");
  CHECK(cfg.r0 == 0.4);
  CHECK(cfg.quad_order == 12);
  CHECK(cfg.modes.size() == 2);
  CHECK(cfg.modes[1].frequency == std::vector<int>{1, 1});
  CHECK(cfg.radius_schedule() == std::vector<double>{0.4, 0.2, 0.1});
  CHECK(cfg.raw.at("integrand") == "quad");
  // defaults
  CHECK(cfg.budget == 50);
  CHECK(cfg.seed == 1);
  CHECK(cfg.out_dir == ".");
  Mat a = cfg.alpha_matrix();
  CHECK(a(0, 0) == 0.6);
  CHECK(a(1, 1) == 0.4);
}

TEST_CASE("config parser: malformed inputs are rejected with messages") {
  auto expect_parse_error = [](const std::string& text) {
    try {
      ExperimentConfig::parse(text, "bad");
      FAIL("expected a parse error");
    } catch (const Error& err) {
      CHECK(err.code() == Errc::config_parse);
      CHECK(std::string(err.what()).size() > 0);
    }
  };
  expect_parse_error("manifold = sphere\n");  // missing schema_version
  expect_parse_error("schema_version = 1\nnot a pair\n");
  expect_parse_error("schema_version = 1\nmystery_key = 3\n");
  expect_parse_error("schema_version = 1\ndim = banana\n");
  expect_parse_error("schema_version = 1\ndim = 7\n");
  expect_parse_error("schema_version = 2\n");
  expect_parse_error("schema_version = 1\nmanifold = torus\n");
  expect_parse_error("schema_version = 1\nmode.2.amplitude = 1\n");
  expect_parse_error("schema_version = 1\ndim = 2\ndim = 2\n");
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/path.cfg"), Error);
}

TEST_CASE("check fixture: consistent on the sphere, exit 0") {
  ExperimentConfig cfg = ExperimentConfig::load(fixture("quad_sphere.cfg"));
  RunOutput out = run_experiment(cfg, Subcommand::check);
  CHECK(out.exit_code == 0);
  CHECK(out.status == "ConsistentWithQC");
  REQUIRE(out.find("_deficits.csv") != nullptr);
  REQUIRE(out.find("_verdict.json") != nullptr);
  REQUIRE(out.find("_record.json") != nullptr);

  // three schedule radii -> three CSV rows -> three plot rows
  const std::string& csv = out.find("_deficits.csv")->contents;
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  const std::string& plot = out.find("_r_vs_deficit.dat")->contents;
  CHECK(std::count(plot.begin(), plot.end(), '\n') == 4);
  CHECK(plot.rfind("# r deficit\n", 0) == 0);
}

TEST_CASE("falsify fixture: violation on flat, exit 2, deterministic CSV") {
  ExperimentConfig cfg = ExperimentConfig::load(fixture("negquad_flat.cfg"));
  RunOutput out1 = run_experiment(cfg, Subcommand::falsify);
  RunOutput out2 = run_experiment(cfg, Subcommand::falsify);
  CHECK(out1.exit_code == 2);
  CHECK(out1.status == "ViolationFound");
  CHECK(out1.find("_deficits.csv")->contents ==
        out2.find("_deficits.csv")->contents);

  // a different seed changes the search trajectory but not the verdict
  RunOverrides seed9;
  seed9.seed = 9;
  RunOutput out3 = run_experiment(cfg, Subcommand::falsify, seed9);
  CHECK(out3.exit_code == 2);
}

TEST_CASE("lsc fixture: neg_quad fails, emits rows for every h") {
  ExperimentConfig cfg =
      ExperimentConfig::load(fixture("negquad_lsc_flat.cfg"));
  RunOutput out = run_experiment(cfg, Subcommand::lsc);
  CHECK(out.exit_code == 2);
  CHECK(out.status == "SEMICONTINUITY_FAIL");
  const std::string& csv = out.find("_lsc.csv")->contents;
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 rows
  const std::string& plot = out.find("_h_vs_F.dat")->contents;
  CHECK(std::count(plot.begin(), plot.end(), '\n') == 5);
}

TEST_CASE("euclid-compare fixture: flat pipelines agree, exit 0") {
  ExperimentConfig cfg = ExperimentConfig::load(fixture("euclid_flat.cfg"));
  RunOutput out = run_experiment(cfg, Subcommand::euclid_compare);
  CHECK(out.exit_code == 0);
  CHECK(out.status == "EUCLID_AGREE");
  auto record = nlohmann::json::parse(out.find("_record.json")->contents);
  CHECK(record["euclid_compare"]["abs_difference"].get<double>() <= 1e-10);

  // refusing curved manifolds maps to an error, not a verdict
  ExperimentConfig sphere_cfg =
      ExperimentConfig::load(fixture("quad_sphere.cfg"));
  CHECK_THROWS_AS(run_experiment(sphere_cfg, Subcommand::euclid_compare),
                  Error);
}

TEST_CASE("explicit x0 coordinates and overrides take effect") {
  const char* text =
      "schema_version = 1\n"
      "manifold = sphere\n"
      "dim = 2\n"
      "m = 2\n"
      "integrand = quad\n"
      "x0 = 0 0 1\n"
      "r0 = 0.4\n"
      "quad_order = 8\n"
      "mode.1.amplitude = 0.4\n"
      "mode.1.frequency = 1 0\n"
      "mode.1.b = 1 0\n";
  ExperimentConfig cfg = ExperimentConfig::parse(text, "north_pole");
  Point x0 = cfg.base_point();
  CHECK(x0.coords[2] == 1.0);

  RunOverrides overrides;
  overrides.quad_order = 10;
  overrides.seed = 123;
  RunOutput out = run_experiment(cfg, Subcommand::check, overrides);
  CHECK(out.exit_code == 0);
  auto record = nlohmann::json::parse(out.find("_record.json")->contents);
  CHECK(record["effective"]["quad_order"] == 10);
  CHECK(record["effective"]["seed"] == 123);
  CHECK(record["config"]["quad_order"] == "8");  // raw echo keeps the file

  // invalid explicit point is a config-level failure
  ExperimentConfig bad = ExperimentConfig::parse(
      "schema_version = 1\nmanifold = sphere\ndim = 2\nx0 = 0 0 2\n", "bad");
  CHECK_THROWS_AS(bad.base_point(), Error);
}

TEST_CASE("unknown integrand surfaces as UnknownIntegrand") {
  ExperimentConfig cfg = ExperimentConfig::parse(
      "schema_version = 1\nintegrand = entropy\n", "bad");
  try {
    run_experiment(cfg, Subcommand::falsify);
    FAIL("expected UnknownIntegrand");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::unknown_integrand);
  }
}

TEST_CASE("run record JSON round-trips losslessly") {
  ExperimentConfig cfg = ExperimentConfig::load(fixture("quad_sphere.cfg"));
  RunOutput out = run_experiment(cfg, Subcommand::check);
  const std::string& text = out.find("_record.json")->contents;
  auto parsed = nlohmann::json::parse(text);
  CHECK(parsed.dump(2) + "\n" == text);
  auto reparsed = nlohmann::json::parse(parsed.dump());
  CHECK(reparsed == parsed);
  CHECK(parsed["tool_version"] == "0.1.0");
  CHECK(parsed["config"]["integrand"] == "quad");
  CHECK(parsed["wall_time_seconds"].is_number());
}

TEST_CASE("CSV determinism across repeated runs of every fixture") {
  const std::vector<std::pair<std::string, Subcommand>> fixtures = {
      {"quad_sphere.cfg", Subcommand::check},
      {"negquad_flat.cfg", Subcommand::falsify},
      {"negquad_sphere.cfg", Subcommand::falsify},
      {"negquad_lsc_flat.cfg", Subcommand::lsc},
      {"quad_lsc_sphere.cfg", Subcommand::lsc},
      {"det_lsc_flat.cfg", Subcommand::lsc},
      {"euclid_flat.cfg", Subcommand::euclid_compare},
  };
  for (const auto& [name, sub] : fixtures) {
    ExperimentConfig cfg = ExperimentConfig::load(fixture(name));
    RunOutput a = run_experiment(cfg, sub);
    RunOutput b = run_experiment(cfg, sub);
    REQUIRE(a.files.size() == b.files.size());
    for (size_t i = 0; i < a.files.size(); ++i) {
      CHECK(a.files[i].filename == b.files[i].filename);
      if (a.files[i].filename.find("_record.json") != std::string::npos) {
        continue;  // contains wall time
      }
      CHECK(a.files[i].contents == b.files[i].contents);
    }
  }
}

TEST_CASE("write_reports places files in the output directory") {
  ExperimentConfig cfg = ExperimentConfig::load(fixture("quad_sphere.cfg"));
  const fs::path dir =
      fs::temp_directory_path() / "qcb_runner_test_out";
  fs::remove_all(dir);
  RunOverrides overrides;
  overrides.out_dir = dir.string();
  RunOutput out = run_experiment(cfg, Subcommand::check, overrides);
  write_reports(out);
  for (const ReportFile& file : out.files) {
    CHECK(read_file(dir / file.filename) == file.contents);
  }
  fs::remove_all(dir);
}

TEST_CASE("empty reports keep their headers") {
  CHECK(deficit_csv({}) == "r,deficit,grad_sup,q,phi_id\n");
  CHECK(plot_r_vs_deficit({}) == "# r deficit\n");
  LscReport empty;
  CHECK(lsc_csv(empty) == "h,F_uh,sup_diff,grad_sup\n");
  CHECK(plot_h_vs_f(empty) == "# h F_uh\n");
}

TEST_CASE("format_double: shortest round-trip, locale-free") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-1.0) == "-1");
  const double v = 0.1 + 0.2;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("CLI binary honors the exit-code contract and is deterministic") {
  const std::string cli = QCB_CLI_PATH;
  const fs::path dir = fs::temp_directory_path() / "qcb_cli_test_out";
  fs::remove_all(dir);
  fs::create_directories(dir);

  auto run_cli = [&](const std::string& sub, const std::string& cfg,
                     const std::string& outsub) {
    const std::string cmd = cli + " " + sub + " --config " + fixture(cfg) +
                            " --out " + (dir / outsub).string() +
                            " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WEXITSTATUS(raw);
  };

  CHECK(run_cli("check", "quad_sphere.cfg", "a") == 0);
  CHECK(run_cli("falsify", "negquad_flat.cfg", "b1") == 2);
  CHECK(run_cli("falsify", "negquad_flat.cfg", "b2") == 2);
  CHECK(read_file(dir / "b1" / "negquad_flat_deficits.csv") ==
        read_file(dir / "b2" / "negquad_flat_deficits.csv"));
  CHECK(run_cli("lsc", "negquad_lsc_flat.cfg", "c") == 2);

  // malformed config: exit 1
  const fs::path bad = dir / "bad.cfg";
  std::ofstream(bad) << "this is not a config\n";
  const std::string cmd = cli + " check --config " + bad.string() +
                          " 2> " + (dir / "err.txt").string() + " > /dev/null";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 1);
  CHECK(read_file(dir / "err.txt").size() > 0);

  fs::remove_all(dir);
}
