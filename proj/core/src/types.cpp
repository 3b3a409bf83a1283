#include "kreinrel/types.hpp"

#include <limits>
#include <mutex>

namespace kreinrel {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::not_hermitian: return "not-hermitian";
    case ErrorKind::not_involution: return "not-an-involution";
    case ErrorKind::host_mismatch: return "host-mismatch";
    case ErrorKind::not_symmetric: return "not-symmetric";
    case ErrorKind::not_selfadjoint: return "not-self-adjoint";
    case ErrorKind::precondition: return "precondition-violation";
    case ErrorKind::not_regular: return "z-not-regular";
    case ErrorKind::hypothesis: return "hypothesis-violation";
    case ErrorKind::invalid_triple: return "invalid-triple";
    case ErrorKind::sampling_exhausted: return "sampling-exhausted";
    case ErrorKind::input: return "input-error";
    case ErrorKind::internal: return "internal-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void TolerancePolicy::validate() const {
  if (!(rank_rel >= std::numeric_limits<double>::epsilon()) || !(rank_abs > 0) || !(angle_tol > 0)) {
    throw Error(ErrorKind::precondition, "tolerances must be positive with rank_rel >= machine epsilon");
  }
}

namespace {
std::mutex tol_mutex;
TolerancePolicy current_tol;
}  // namespace

const TolerancePolicy& tolerance() { return current_tol; }

void set_tolerance(const TolerancePolicy& tol) {
  tol.validate();
  std::lock_guard<std::mutex> lock(tol_mutex);
  current_tol = tol;
}

std::vector<cplx> default_grid() {
  return {{0, 1}, {0, -1}, {0, 2}, {0, -2}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}, {0.5, 1.5}, {0.5, -1.5}};
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorKind::input, std::string(what) + " has non-finite entries");
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

}  // namespace kreinrel
