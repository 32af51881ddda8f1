#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qcb {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  const size_t b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(Errc::config_parse, "key '" + key + "': expected a number, got '" +
                                 value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(Errc::config_parse, "key '" + key + "': expected an integer, got '" +
                                 value + "'");
  }
}

std::vector<std::string> split_ws(const std::string& value) {
  std::istringstream is(value);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<double> parse_vector(const std::string& key,
                                 const std::string& value) {
  std::vector<double> out;
  for (const std::string& tok : split_ws(value)) {
    out.push_back(parse_double(key, tok));
  }
  require(!out.empty(), Errc::config_parse,
          "key '" + key + "': expected a nonempty vector");
  return out;
}

std::vector<int> parse_int_vector(const std::string& key,
                                  const std::string& value) {
  std::vector<int> out;
  for (const std::string& tok : split_ws(value)) {
    out.push_back(static_cast<int>(parse_int(key, tok)));
  }
  require(!out.empty(), Errc::config_parse,
          "key '" + key + "': expected a nonempty vector");
  return out;
}

Mat parse_matrix(const std::string& key, const std::string& value) {
  std::vector<std::vector<double>> rows;
  std::string row;
  std::istringstream is(value);
  while (std::getline(is, row, ';')) {
    rows.push_back(parse_vector(key, row));
  }
  require(!rows.empty(), Errc::config_parse,
          "key '" + key + "': expected a nonempty matrix");
  Mat out(rows.size(), rows[0].size());
  for (size_t j = 0; j < rows.size(); ++j) {
    require(rows[j].size() == rows[0].size(), Errc::config_parse,
            "key '" + key + "': rows have different lengths");
    for (size_t i = 0; i < rows[j].size(); ++i) out(j, i) = rows[j][i];
  }
  return out;
}

struct ModeAccumulator {
  std::map<int, ModeSpec> by_index;
  std::map<int, int> fields_seen;
};

bool handle_mode_key(const std::string& key, const std::string& value,
                     ModeAccumulator& acc) {
  if (key.rfind("mode.", 0) != 0) return false;
  const size_t second_dot = key.find('.', 5);
  require(second_dot != std::string::npos, Errc::config_parse,
          "mode key '" + key + "' must look like mode.<k>.<field>");
  const int index =
      static_cast<int>(parse_int(key, key.substr(5, second_dot - 5)));
  require(index >= 1, Errc::config_parse, "mode indices start at 1");
  const std::string field = key.substr(second_dot + 1);
  ModeSpec& mode = acc.by_index[index];
  if (field == "amplitude") {
    mode.amplitude = parse_double(key, value);
  } else if (field == "frequency") {
    mode.frequency = parse_int_vector(key, value);
  } else if (field == "phase") {
    mode.phase = parse_double(key, value);
  } else if (field == "b") {
    mode.output = parse_vector(key, value);
  } else {
    fail(Errc::config_parse, "unknown mode field '" + field + "'");
  }
  acc.fields_seen[index] += 1;
  return true;
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::io_error, "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string stem = path;
  const size_t slash = stem.find_last_of('/');
  if (slash != std::string::npos) stem = stem.substr(slash + 1);
  const size_t dot = stem.find_last_of('.');
  if (dot != std::string::npos) stem = stem.substr(0, dot);
  return parse(buffer.str(), stem);
}

ExperimentConfig ExperimentConfig::parse(const std::string& text,
                                         const std::string& display_name) {
  ExperimentConfig cfg;
  cfg.name = display_name;

  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  ModeAccumulator modes;
  bool saw_version = false;

  while (std::getline(lines, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const size_t eq = line.find('=');
    require(eq != std::string::npos, Errc::config_parse,
            "line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(!key.empty() && !value.empty(), Errc::config_parse,
            "line " + std::to_string(lineno) + ": empty key or value");
    require(!cfg.raw.count(key), Errc::config_parse,
            "duplicate key '" + key + "'");
    cfg.raw[key] = value;

    if (handle_mode_key(key, value, modes)) continue;

    if (key == "schema_version") {
      cfg.schema_version = static_cast<int>(parse_int(key, value));
      require(cfg.schema_version == 1, Errc::config_parse,
              "unsupported schema_version " + value);
      saw_version = true;
    } else if (key == "name") {
      cfg.name = value;
    } else if (key == "manifold") {
      try {
        cfg.manifold_kind = kind_from_name(value);
      } catch (const Error&) {
        fail(Errc::config_parse, "unknown manifold '" + value + "'");
      }
    } else if (key == "dim") {
      cfg.dim = static_cast<int>(parse_int(key, value));
    } else if (key == "m") {
      cfg.m = static_cast<int>(parse_int(key, value));
    } else if (key == "integrand") {
      cfg.integrand_name = value;
    } else if (key == "x0") {
      if (value != "origin") cfg.x0_coords = parse_vector(key, value);
    } else if (key == "alpha") {
      cfg.alpha = parse_matrix(key, value);
    } else if (key == "r0") {
      cfg.r0 = parse_double(key, value);
    } else if (key == "schedule") {
      cfg.schedule = parse_vector(key, value);
    } else if (key == "schedule_steps") {
      cfg.schedule_steps = static_cast<int>(parse_int(key, value));
    } else if (key == "quad_order") {
      cfg.quad_order = static_cast<int>(parse_int(key, value));
    } else if (key == "quad_subdivisions") {
      cfg.quad_subdivisions = static_cast<int>(parse_int(key, value));
    } else if (key == "budget") {
      cfg.budget = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
      cfg.seed = static_cast<uint64_t>(parse_int(key, value));
    } else if (key == "u.A") {
      cfg.u_matrix = parse_matrix(key, value);
    } else if (key == "u.c") {
      std::vector<double> c = parse_vector(key, value);
      cfg.u_offset = Eigen::Map<const Vec>(c.data(), c.size());
    } else if (key == "h_list") {
      cfg.h_list = parse_int_vector(key, value);
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else {
      fail(Errc::config_parse, "unknown key '" + key + "'");
    }
  }

  require(saw_version, Errc::config_parse,
          "config must declare schema_version");
  require(cfg.dim >= 1 && cfg.dim <= 3, Errc::config_parse,
          "dim must be in 1..3");
  require(cfg.m >= 1, Errc::config_parse, "m must be >= 1");
  require(cfg.r0 > 0.0, Errc::config_parse, "r0 must be positive");
  require(cfg.quad_order >= 2, Errc::config_parse, "quad_order must be >= 2");
  require(cfg.quad_subdivisions >= 1, Errc::config_parse,
          "quad_subdivisions must be >= 1");
  require(cfg.schedule_steps >= 1, Errc::config_parse,
          "schedule_steps must be >= 1");
  require(cfg.budget >= 1, Errc::config_parse, "budget must be >= 1");

  for (const auto& [index, mode] : modes.by_index) {
    require(index == static_cast<int>(cfg.modes.size()) + 1,
            Errc::config_parse, "mode indices must be contiguous from 1");
    require(!mode.frequency.empty() && !mode.output.empty(),
            Errc::config_parse,
            "mode " + std::to_string(index) +
                " needs at least 'frequency' and 'b'");
    cfg.modes.push_back(mode);
  }
  return cfg;
}

Manifold ExperimentConfig::manifold() const {
  switch (manifold_kind) {
    case ManifoldKind::flat: return Manifold::flat(dim);
    case ManifoldKind::sphere: return Manifold::sphere(dim);
    case ManifoldKind::hyperbolic: return Manifold::hyperbolic(dim);
  }
  return Manifold::flat(dim);
}

Point ExperimentConfig::base_point() const {
  const Manifold mfd = manifold();
  if (!x0_coords) return origin(mfd);
  const std::vector<double>& c = *x0_coords;
  return make_point(mfd, Eigen::Map<const Vec>(c.data(), c.size()));
}

Mat ExperimentConfig::alpha_matrix() const {
  if (!alpha) return Mat::Zero(m, dim);
  require(alpha->rows() == m && alpha->cols() == dim, Errc::config_parse,
          "alpha must be an m x n matrix");
  return *alpha;
}

std::vector<double> ExperimentConfig::radius_schedule() const {
  if (schedule) {
    return *schedule;
  }
  std::vector<double> out;
  double r = r0;
  for (int i = 0; i < schedule_steps; ++i) {
    out.push_back(r);
    r /= 2.0;
  }
  return out;
}

std::vector<Mode> ExperimentConfig::mode_list(int n) const {
  std::vector<Mode> out;
  for (const ModeSpec& spec : modes) {
    Mode mode;
    mode.amplitude = spec.amplitude;
    require(static_cast<int>(spec.frequency.size()) == n, Errc::config_parse,
            "mode frequency vectors must have length dim");
    mode.frequency = Eigen::Map<const Eigen::VectorXi>(
        spec.frequency.data(), spec.frequency.size());
    mode.phase = spec.phase;
    require(static_cast<int>(spec.output.size()) == m, Errc::config_parse,
            "mode output vectors must have length m");
    mode.output = Eigen::Map<const Vec>(spec.output.data(), spec.output.size());
    out.push_back(mode);
  }
  return out;
}

}  // namespace qcb
