// qcb: config-driven front end for the qcbench shared library.
//
// Exit codes: 0 = ConsistentWithQC / SEMICONTINUITY_OK / agreement,
//             2 = ViolationFound / SEMICONTINUITY_FAIL / disagreement,
//             1 = configuration or runtime error (message on stderr).

#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qcbench/qcbench.h"

namespace {

struct CommonArgs {
  std::string config;
  std::string out_dir;
  std::optional<uint64_t> seed;
  std::optional<int> quad_order;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config, "experiment config file")
      ->required();
  sub->add_option("--out", args.out_dir, "output directory (overrides config)");
  sub->add_option("--seed", [&args](const CLI::results_t& res) {
        args.seed = std::stoull(res[0]);
        return true;
      },
      "falsifier seed (overrides config)");
  sub->add_option("--quad-order", [&args](const CLI::results_t& res) {
        args.quad_order = std::stoi(res[0]);
        return true;
      },
      "Gauss-Legendre order per panel (overrides config)");
}

int run(const std::string& subcommand, const CommonArgs& args) {
  qcb_experiment* experiment = nullptr;
  if (qcb_experiment_load(args.config.c_str(), &experiment) != QCB_OK) {
    std::cerr << "qcb: " << qcb_last_error() << "\n";
    return 1;
  }
  std::unique_ptr<qcb_experiment, decltype(&qcb_experiment_destroy)> eguard(
      experiment, &qcb_experiment_destroy);

  if (args.seed) qcb_experiment_set_seed(experiment, *args.seed);
  if (args.quad_order &&
      qcb_experiment_set_quad_order(experiment, *args.quad_order) != QCB_OK) {
    std::cerr << "qcb: " << qcb_last_error() << "\n";
    return 1;
  }
  if (!args.out_dir.empty()) {
    qcb_experiment_set_out_dir(experiment, args.out_dir.c_str());
  }

  qcb_run_result* result = nullptr;
  if (qcb_experiment_run(experiment, subcommand.c_str(), &result) != QCB_OK) {
    std::cerr << "qcb: " << qcb_last_error() << "\n";
    return 1;
  }
  std::unique_ptr<qcb_run_result, decltype(&qcb_result_destroy)> rguard(
      result, &qcb_result_destroy);

  if (qcb_result_write_reports(result) != QCB_OK) {
    std::cerr << "qcb: " << qcb_last_error() << "\n";
    return 1;
  }

  std::cout << qcb_result_status(result) << "\n";
  for (size_t i = 0; i < qcb_result_file_count(result); ++i) {
    std::cout << "  wrote " << qcb_result_file_name(result, i) << "\n";
  }
  return qcb_result_exit_code(result);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("qcbench ") + qcb_version() +
               " - Riemannian quasiconvexity testbench"};
  app.require_subcommand(1);

  CommonArgs check_args, falsify_args, lsc_args, euclid_args;
  CLI::App* check =
      app.add_subcommand("check", "deficit across a radius schedule");
  add_common(check, check_args);
  CLI::App* falsify =
      app.add_subcommand("falsify", "multistart laminate counterexample search");
  add_common(falsify, falsify_args);
  CLI::App* lsc = app.add_subcommand(
      "lsc", "weak* lower-semicontinuity experiment for u + phi_h");
  add_common(lsc, lsc_args);
  CLI::App* euclid = app.add_subcommand(
      "euclid-compare", "Riemannian vs classical Morrey deficit on flat cubes");
  add_common(euclid, euclid_args);

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return run("check", check_args);
  if (falsify->parsed()) return run("falsify", falsify_args);
  if (lsc->parsed()) return run("lsc", lsc_args);
  if (euclid->parsed()) return run("euclid-compare", euclid_args);
  return 1;
}
