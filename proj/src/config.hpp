#pragma once

// Key-value experiment configuration. Format: one `key = value` pair per
// line, `#` comments, vectors as whitespace-separated numbers, matrices as
// `;`-separated rows. Modes are numbered groups `mode.<k>.<field>`.
// `schema_version` is required; unknown keys are rejected.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "perturbation.hpp"

namespace qcb {

struct ModeSpec {
  double amplitude = 0.0;
  std::vector<int> frequency;
  double phase = 0.0;
  std::vector<double> output;
};

struct ExperimentConfig {
  int schema_version = 1;
  std::string name;

  ManifoldKind manifold_kind = ManifoldKind::flat;
  int dim = 2;
  int m = 2;
  std::string integrand_name = "quad";
  std::optional<std::vector<double>> x0_coords;  // nullopt: canonical origin
  std::optional<Mat> alpha;                      // default: zero m x n

  double r0 = 0.5;
  std::optional<std::vector<double>> schedule;  // overrides r0 halvings
  int schedule_steps = 3;
  int quad_order = 8;
  int quad_subdivisions = 1;

  std::vector<ModeSpec> modes;

  int budget = 50;
  uint64_t seed = 1;

  std::optional<Mat> u_matrix;  // lsc base map A
  std::optional<Vec> u_offset;  // lsc base map c
  std::vector<int> h_list{4, 8, 16, 32};

  std::string out_dir = ".";

  // verbatim key-value pairs, echoed into the run record
  std::map<std::string, std::string> raw;

  static ExperimentConfig load(const std::string& path);
  static ExperimentConfig parse(const std::string& text,
                                const std::string& display_name);

  // derived values
  Manifold manifold() const;
  Point base_point() const;
  Mat alpha_matrix() const;
  std::vector<double> radius_schedule() const;
  std::vector<Mode> mode_list(int n) const;
};

}  // namespace qcb
