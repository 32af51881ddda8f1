#pragma once

// Experiment orchestration behind the CLI: dispatch a config to the engine,
// collect CSV / JSON / plot-data report contents and write them out.
// Contents are assembled in memory first; identical config + seed yields
// byte-identical CSV.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "lsclab.hpp"

namespace qcb {

enum class Subcommand { check, falsify, lsc, euclid_compare };

Subcommand parse_subcommand(const std::string& name);
const char* subcommand_name(Subcommand s);

struct RunOverrides {
  std::optional<uint64_t> seed;
  std::optional<int> quad_order;
  std::optional<std::string> out_dir;
};

struct ReportFile {
  std::string filename;
  std::string contents;
};

struct RunOutput {
  int exit_code = 0;       // 0 consistent/ok, 2 violation/fail
  std::string status;      // e.g. "ConsistentWithQC", "SEMICONTINUITY_FAIL"
  std::string out_dir;
  std::vector<ReportFile> files;  // CSV, JSON verdict/report, record, plot data

  const ReportFile* find(const std::string& suffix) const;
};

RunOutput run_experiment(const ExperimentConfig& config, Subcommand subcommand,
                         const RunOverrides& overrides = {});

// Writes every report file into out.out_dir; throws IoError on failure.
void write_reports(const RunOutput& out);

// Deterministic shortest round-trip formatting used by every report writer.
std::string format_double(double v);

// Report formatters; empty inputs produce header-only contents.
std::string deficit_csv(const std::vector<DeficitReport>& reports);
std::string lsc_csv(const LscReport& report);
std::string plot_r_vs_deficit(const std::vector<DeficitReport>& reports);
std::string plot_h_vs_f(const LscReport& report);

}  // namespace qcb
