#include "qcbench/qcbench.h"

#include <cstring>
#include <string>

#include "runner.hpp"

namespace {

thread_local std::string g_last_error;

qcb_status status_from(const qcb::Error& err) {
  using qcb::Errc;
  switch (err.code()) {
    case Errc::config_parse:
      return QCB_E_PARSE;
    case Errc::unknown_integrand:
      return QCB_E_UNKNOWN_INTEGRAND;
    case Errc::io_error:
      return QCB_E_IO;
    case Errc::non_finite_value:
      return QCB_E_NON_FINITE;
    case Errc::out_of_injectivity_radius:
    case Errc::antipodal_point:
    case Errc::injectivity_violation:
    case Errc::base_mismatch:
    case Errc::manifold_mismatch:
    case Errc::outside_cube:
    case Errc::manifold_not_flat:
      return QCB_E_GEOMETRY;
    default:
      return QCB_E_INVALID_ARGUMENT;
  }
}

template <typename F>
qcb_status guarded(F&& body) {
  try {
    body();
    return QCB_OK;
  } catch (const qcb::Error& err) {
    g_last_error = std::string(qcb::errc_name(err.code())) + ": " + err.what();
    return status_from(err);
  } catch (const std::exception& ex) {
    g_last_error = ex.what();
    return QCB_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QCB_E_INTERNAL;
  }
}

qcb::Vec to_vec(const double* data, int len) {
  return Eigen::Map<const qcb::Vec>(data, len);
}

}  // namespace

struct qcb_manifold {
  qcb::Manifold m;
};

struct qcb_experiment {
  qcb::ExperimentConfig config;
};

struct qcb_run_result {
  qcb::RunOutput output;
  std::string record_json;
  std::string csv;
};

extern "C" {

const char* qcb_version(void) { return "0.1.0"; }

const char* qcb_last_error(void) { return g_last_error.c_str(); }

qcb_status qcb_manifold_create(qcb_manifold_kind kind, int dimension,
                               qcb_manifold** out) {
  return guarded([&] {
    qcb::require(out != nullptr, qcb::Errc::invalid_argument,
                 "null output handle");
    qcb::Manifold m;
    switch (kind) {
      case QCB_MANIFOLD_FLAT: m = qcb::Manifold::flat(dimension); break;
      case QCB_MANIFOLD_SPHERE: m = qcb::Manifold::sphere(dimension); break;
      case QCB_MANIFOLD_HYPERBOLIC:
        m = qcb::Manifold::hyperbolic(dimension);
        break;
      default:
        qcb::fail(qcb::Errc::invalid_argument, "unknown manifold kind");
    }
    *out = new qcb_manifold{m};
  });
}

void qcb_manifold_destroy(qcb_manifold* m) { delete m; }

int qcb_manifold_dimension(const qcb_manifold* m) { return m->m.dim; }

int qcb_manifold_ambient_dimension(const qcb_manifold* m) {
  return m->m.ambient_dim();
}

double qcb_manifold_injectivity_radius(const qcb_manifold* m) {
  return m->m.injectivity_radius();
}

qcb_status qcb_manifold_origin(const qcb_manifold* m, double* coords) {
  return guarded([&] {
    qcb::Point p = qcb::origin(m->m);
    std::memcpy(coords, p.coords.data(), sizeof(double) * p.coords.size());
  });
}

qcb_status qcb_exp(const qcb_manifold* m, const double* x, const double* v,
                   double* out) {
  return guarded([&] {
    const int a = m->m.ambient_dim();
    qcb::Point px = qcb::make_point(m->m, to_vec(x, a));
    qcb::Point py = qcb::exp(px, qcb::make_tangent(px, to_vec(v, a)));
    std::memcpy(out, py.coords.data(), sizeof(double) * a);
  });
}

qcb_status qcb_log(const qcb_manifold* m, const double* x, const double* y,
                   double* out) {
  return guarded([&] {
    const int a = m->m.ambient_dim();
    qcb::Point px = qcb::make_point(m->m, to_vec(x, a));
    qcb::Point py = qcb::make_point(m->m, to_vec(y, a));
    qcb::Tangent t = qcb::log(px, py);
    std::memcpy(out, t.components.data(), sizeof(double) * a);
  });
}

qcb_status qcb_dexp(const qcb_manifold* m, const double* x, const double* v,
                    const double* w, double* out) {
  return guarded([&] {
    const int a = m->m.ambient_dim();
    qcb::Point px = qcb::make_point(m->m, to_vec(x, a));
    qcb::Tangent tv = qcb::make_tangent(px, to_vec(v, a));
    qcb::Tangent tw = qcb::make_tangent(px, to_vec(w, a));
    qcb::Tangent r = qcb::dexp(px, tv, tw);
    std::memcpy(out, r.components.data(), sizeof(double) * a);
  });
}

qcb_status qcb_distance(const qcb_manifold* m, const double* x,
                        const double* y, double* out) {
  return guarded([&] {
    const int a = m->m.ambient_dim();
    *out = qcb::distance(qcb::make_point(m->m, to_vec(x, a)),
                         qcb::make_point(m->m, to_vec(y, a)));
  });
}

qcb_status qcb_volume_jacobian(const qcb_manifold* m, const double* x0,
                               const double* y, double* out) {
  return guarded([&] {
    const int a = m->m.ambient_dim();
    qcb::Point px = qcb::make_point(m->m, to_vec(x0, a));
    *out = qcb::volume_jacobian(px, qcb::make_tangent(px, to_vec(y, a)));
  });
}

qcb_status qcb_experiment_load(const char* config_path, qcb_experiment** out) {
  return guarded([&] {
    qcb::require(config_path && out, qcb::Errc::invalid_argument,
                 "null argument");
    *out = new qcb_experiment{qcb::ExperimentConfig::load(config_path)};
  });
}

qcb_status qcb_experiment_load_string(const char* config_text,
                                      const char* name, qcb_experiment** out) {
  return guarded([&] {
    qcb::require(config_text && out, qcb::Errc::invalid_argument,
                 "null argument");
    *out = new qcb_experiment{qcb::ExperimentConfig::parse(
        config_text, name ? name : "experiment")};
  });
}

void qcb_experiment_destroy(qcb_experiment* e) { delete e; }

qcb_status qcb_experiment_set_seed(qcb_experiment* e, uint64_t seed) {
  return guarded([&] { e->config.seed = seed; });
}

qcb_status qcb_experiment_set_quad_order(qcb_experiment* e, int order) {
  return guarded([&] {
    qcb::require(order >= 2, qcb::Errc::invalid_argument,
                 "quadrature order must be >= 2");
    e->config.quad_order = order;
  });
}

qcb_status qcb_experiment_set_out_dir(qcb_experiment* e, const char* dir) {
  return guarded([&] {
    qcb::require(dir != nullptr, qcb::Errc::invalid_argument, "null dir");
    e->config.out_dir = dir;
  });
}

qcb_status qcb_experiment_run(qcb_experiment* e, const char* subcommand,
                              qcb_run_result** out) {
  return guarded([&] {
    qcb::require(subcommand && out, qcb::Errc::invalid_argument,
                 "null argument");
    qcb::Subcommand sub = qcb::parse_subcommand(subcommand);
    auto* result = new qcb_run_result;
    try {
      result->output = qcb::run_experiment(e->config, sub);
    } catch (...) {
      delete result;
      throw;
    }
    const qcb::ReportFile* record = result->output.find("_record.json");
    result->record_json = record ? record->contents : "";
    const qcb::ReportFile* csv = result->output.find(".csv");
    result->csv = csv ? csv->contents : "";
    *out = result;
  });
}

int qcb_result_exit_code(const qcb_run_result* r) {
  return r->output.exit_code;
}

const char* qcb_result_status(const qcb_run_result* r) {
  return r->output.status.c_str();
}

const char* qcb_result_record_json(const qcb_run_result* r) {
  return r->record_json.c_str();
}

const char* qcb_result_csv(const qcb_run_result* r) { return r->csv.c_str(); }

size_t qcb_result_file_count(const qcb_run_result* r) {
  return r->output.files.size();
}

const char* qcb_result_file_name(const qcb_run_result* r, size_t index) {
  if (index >= r->output.files.size()) return nullptr;
  return r->output.files[index].filename.c_str();
}

const char* qcb_result_file_contents(const qcb_run_result* r, size_t index) {
  if (index >= r->output.files.size()) return nullptr;
  return r->output.files[index].contents.c_str();
}

qcb_status qcb_result_write_reports(const qcb_run_result* r) {
  return guarded([&] { qcb::write_reports(r->output); });
}

void qcb_result_destroy(qcb_run_result* r) { delete r; }

}  // extern "C"
