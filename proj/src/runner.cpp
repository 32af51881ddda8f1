#include "runner.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lsclab.hpp"

namespace qcb {

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";
constexpr double kEuclidAgreementTol = 1e-10;

json report_to_json(const DeficitReport& rep) {
  return json{{"r", rep.r},
              {"deficit", rep.deficit},
              {"grad_sup", rep.grad_sup},
              {"q", rep.order},
              {"phi_id", rep.phi_id}};
}

json verdict_to_json(const Verdict& verdict) {
  json evidence = json::array();
  for (const DeficitReport& rep : verdict.evidence) {
    evidence.push_back(report_to_json(rep));
  }
  return json{{"status", status_name(verdict.status)},
              {"threshold", verdict.threshold},
              {"shrink_factor", verdict.shrink_factor},
              {"note", verdict.note},
              {"evidence", evidence}};
}

json lsc_to_json(const LscReport& report) {
  json rows = json::array();
  for (const LscRow& row : report.rows) {
    rows.push_back(json{{"h", row.h},
                        {"F_uh", row.f_uh},
                        {"sup_diff", row.sup_diff},
                        {"grad_sup", row.grad_sup}});
  }
  return json{
      {"status",
       report.semicontinuity_ok ? "SEMICONTINUITY_OK" : "SEMICONTINUITY_FAIL"},
      {"F_u", report.f_u},
      {"gap", report.gap},
      {"tolerance", report.tolerance},
      {"decay_exponent", report.diagnostics.decay_exponent},
      {"decay_ok", report.diagnostics.decay_ok},
      {"gradient_ratio", report.diagnostics.gradient_ratio},
      {"gradient_ok", report.diagnostics.gradient_ok},
      {"degenerate", report.diagnostics.degenerate},
      {"rows", rows}};
}

}  // namespace

std::string deficit_csv(const std::vector<DeficitReport>& reports) {
  std::ostringstream os;
  os << "r,deficit,grad_sup,q,phi_id\n";
  for (const DeficitReport& rep : reports) {
    // phi_id carries commas inside mode vectors; quote it per RFC 4180
    os << format_double(rep.r) << "," << format_double(rep.deficit) << ","
       << format_double(rep.grad_sup) << "," << rep.order << ",\""
       << rep.phi_id << "\"\n";
  }
  return os.str();
}

std::string lsc_csv(const LscReport& report) {
  std::ostringstream os;
  os << "h,F_uh,sup_diff,grad_sup\n";
  for (const LscRow& row : report.rows) {
    os << row.h << "," << format_double(row.f_uh) << ","
       << format_double(row.sup_diff) << "," << format_double(row.grad_sup)
       << "\n";
  }
  return os.str();
}

std::string plot_r_vs_deficit(const std::vector<DeficitReport>& reports) {
  std::ostringstream os;
  os << "# r deficit\n";
  for (const DeficitReport& rep : reports) {
    os << format_double(rep.r) << " " << format_double(rep.deficit) << "\n";
  }
  return os.str();
}

std::string plot_h_vs_f(const LscReport& report) {
  std::ostringstream os;
  os << "# h F_uh\n";
  for (const LscRow& row : report.rows) {
    os << row.h << " " << format_double(row.f_uh) << "\n";
  }
  return os.str();
}

namespace {

TestFunction config_test_function(const ExperimentConfig& cfg,
                                  const CubeSpec& cube, bool bump) {
  require(!cfg.modes.empty(), Errc::config_parse,
          "this subcommand needs at least one mode.<k>.* group");
  return make_test_function(cube, cfg.mode_list(cfg.dim), bump);
}

struct Experiment {
  ExperimentConfig cfg;
  Point x0;
  Integrand f;
  CotangentStack alpha;
};

Experiment setup(const ExperimentConfig& cfg) {
  const Point x0 = cfg.base_point();
  Integrand f = make_integrand(cfg.integrand_name, cfg.dim, cfg.m);
  require(integrand_bounded_on_samples(f, x0, cfg.dim, 10.0, 64, 0),
          Errc::non_finite_value,
          "integrand is not finite on bounded matrix samples");
  CotangentStack alpha = make_stack(x0, cfg.alpha_matrix());
  return Experiment{cfg, x0, f, alpha};
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Subcommand parse_subcommand(const std::string& name) {
  if (name == "check") return Subcommand::check;
  if (name == "falsify") return Subcommand::falsify;
  if (name == "lsc") return Subcommand::lsc;
  if (name == "euclid-compare") return Subcommand::euclid_compare;
  fail(Errc::invalid_argument, "unknown subcommand '" + name + "'");
}

const char* subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::check: return "check";
    case Subcommand::falsify: return "falsify";
    case Subcommand::lsc: return "lsc";
    case Subcommand::euclid_compare: return "euclid-compare";
  }
  return "?";
}

const ReportFile* RunOutput::find(const std::string& suffix) const {
  for (const ReportFile& file : files) {
    if (file.filename.size() >= suffix.size() &&
        file.filename.compare(file.filename.size() - suffix.size(),
                              suffix.size(), suffix) == 0) {
      return &file;
    }
  }
  return nullptr;
}

RunOutput run_experiment(const ExperimentConfig& config, Subcommand subcommand,
                         const RunOverrides& overrides) {
  const auto t_start = std::chrono::steady_clock::now();

  ExperimentConfig cfg = config;
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.quad_order) cfg.quad_order = *overrides.quad_order;
  if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;

  Experiment ex = setup(cfg);
  RunOutput out;
  out.out_dir = cfg.out_dir;

  json record{{"schema_version", cfg.schema_version},
              {"tool_version", kToolVersion},
              {"subcommand", subcommand_name(subcommand)},
              {"config", cfg.raw},
              {"name", cfg.name},
              // values after command-line overrides
              {"effective",
               json{{"seed", cfg.seed},
                    {"quad_order", cfg.quad_order},
                    {"quad_subdivisions", cfg.quad_subdivisions},
                    {"r0", cfg.r0},
                    {"out_dir", cfg.out_dir}}}};

  switch (subcommand) {
    case Subcommand::check: {
      const CubeSpec cube = build_cube(ex.x0, cfg.r0);
      const TestFunction tf = config_test_function(cfg, cube, true);
      CheckOptions opts;
      opts.order = cfg.quad_order;
      opts.subdivisions = cfg.quad_subdivisions;
      const Verdict verdict =
          check(ex.f, ex.x0, ex.alpha, tf, cfg.radius_schedule(), opts);
      out.status = status_name(verdict.status);
      out.exit_code =
          verdict.status == VerdictStatus::violation_found ? 2 : 0;
      record["verdict"] = verdict_to_json(verdict);
      out.files.push_back({cfg.name + "_deficits.csv",
                           deficit_csv(verdict.evidence)});
      out.files.push_back({cfg.name + "_verdict.json",
                           verdict_to_json(verdict).dump(2) + "\n"});
      out.files.push_back({cfg.name + "_r_vs_deficit.dat",
                           plot_r_vs_deficit(verdict.evidence)});
      break;
    }
    case Subcommand::falsify: {
      FalsifyOptions opts;
      opts.r0 = cfg.r0;
      opts.order = cfg.quad_order;
      opts.subdivisions = cfg.quad_subdivisions;
      const Verdict verdict =
          falsify(ex.f, ex.x0, ex.alpha, cfg.budget, cfg.seed, opts);
      out.status = status_name(verdict.status);
      out.exit_code =
          verdict.status == VerdictStatus::violation_found ? 2 : 0;
      record["verdict"] = verdict_to_json(verdict);
      record["seed"] = cfg.seed;
      record["budget"] = cfg.budget;
      out.files.push_back({cfg.name + "_deficits.csv",
                           deficit_csv(verdict.evidence)});
      out.files.push_back({cfg.name + "_verdict.json",
                           verdict_to_json(verdict).dump(2) + "\n"});
      out.files.push_back({cfg.name + "_r_vs_deficit.dat",
                           plot_r_vs_deficit(verdict.evidence)});
      break;
    }
    case Subcommand::lsc: {
      const CubeSpec cube = build_cube(ex.x0, cfg.r0);
      const TestFunction base = config_test_function(cfg, cube, false);
      const OscillationSequence seq = make_oscillation(base, cfg.h_list);
      const Mat u_a = cfg.u_matrix ? *cfg.u_matrix : Mat::Zero(cfg.m, cfg.dim);
      const Vec u_c = cfg.u_offset ? *cfg.u_offset : Vec::Zero(cfg.m);
      const BaseMap u = make_base_map(ex.x0, u_a, u_c);
      const QuadGrid grid =
          quad_grid(cube, cfg.quad_order, cfg.quad_subdivisions);
      const LscReport report = run_lsc(ex.f, u, seq, cfg.h_list, grid);
      out.status = report.semicontinuity_ok ? "SEMICONTINUITY_OK"
                                            : "SEMICONTINUITY_FAIL";
      out.exit_code = report.semicontinuity_ok ? 0 : 2;
      record["lsc"] = lsc_to_json(report);
      out.files.push_back({cfg.name + "_lsc.csv", lsc_csv(report)});
      out.files.push_back(
          {cfg.name + "_lsc.json", lsc_to_json(report).dump(2) + "\n"});
      out.files.push_back({cfg.name + "_h_vs_F.dat", plot_h_vs_f(report)});
      break;
    }
    case Subcommand::euclid_compare: {
      require(cfg.manifold_kind == ManifoldKind::flat, Errc::manifold_not_flat,
              "euclid-compare requires manifold = flat");
      const CubeSpec cube = build_cube(ex.x0, cfg.r0);
      const TestFunction tf = config_test_function(cfg, cube, true);
      const QuadGrid grid =
          quad_grid(cube, cfg.quad_order, cfg.quad_subdivisions);
      const DeficitReport riem = deficit(ex.f, ex.x0, ex.alpha, tf, grid);
      const double euclid =
          euclid_morrey_check(ex.f, ex.alpha.matrix, tf, grid);
      const double diff = std::abs(riem.deficit - euclid);
      const bool agree = diff <= kEuclidAgreementTol;
      out.status = agree ? "EUCLID_AGREE" : "EUCLID_DISAGREE";
      out.exit_code = agree ? 0 : 2;
      json cmp{{"riemannian_deficit", riem.deficit},
               {"euclidean_deficit", euclid},
               {"abs_difference", diff},
               {"tolerance", kEuclidAgreementTol},
               {"agree", agree}};
      record["euclid_compare"] = cmp;
      DeficitReport euc = riem;
      euc.deficit = euclid;
      euc.phi_id += "/euclidean";
      DeficitReport riem_row = riem;
      riem_row.phi_id += "/riemannian";
      const std::vector<DeficitReport> rows{riem_row, euc};
      out.files.push_back({cfg.name + "_deficits.csv", deficit_csv(rows)});
      out.files.push_back(
          {cfg.name + "_compare.json", cmp.dump(2) + "\n"});
      out.files.push_back(
          {cfg.name + "_r_vs_deficit.dat", plot_r_vs_deficit(rows)});
      break;
    }
  }

  const auto t_end = std::chrono::steady_clock::now();
  record["wall_time_seconds"] =
      std::chrono::duration<double>(t_end - t_start).count();
  record["exit_code"] = out.exit_code;
  record["status"] = out.status;
  out.files.push_back({cfg.name + "_record.json", record.dump(2) + "\n"});
  return out;
}

void write_reports(const RunOutput& out) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out.out_dir, ec);
  for (const ReportFile& file : out.files) {
    const fs::path path = fs::path(out.out_dir) / file.filename;
    std::ofstream os(path, std::ios::binary);
    require(os.good(), Errc::io_error,
            "cannot open '" + path.string() + "' for writing");
    os << file.contents;
    require(os.good(), Errc::io_error, "failed writing '" + path.string() + "'");
  }
}

}  // namespace qcb
