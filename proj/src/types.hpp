#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qcb {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Error conditions surfaced by the library. Each maps 1:1 onto a C API
// status through the shared-library boundary.
enum class Errc {
  invalid_argument,
  dimension_mismatch,
  base_mismatch,
  manifold_mismatch,
  out_of_injectivity_radius,
  antipodal_point,
  injectivity_violation,
  outside_cube,
  non_finite_value,
  schedule_invalid,
  manifold_not_flat,
  config_parse,
  unknown_integrand,
  io_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace qcb
