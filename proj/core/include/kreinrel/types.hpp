#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace kreinrel {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

enum class ErrorKind {
  dimension_mismatch,
  not_hermitian,
  not_involution,
  host_mismatch,
  not_symmetric,
  not_selfadjoint,
  precondition,
  not_regular,
  hypothesis,
  invalid_triple,
  sampling_exhausted,
  input,
  internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct TolerancePolicy {
  double rank_rel = 1e-10;
  double rank_abs = 1e-12;
  double angle_tol = 1e-8;

  // Throws unless every field is positive and rank_rel >= machine epsilon.
  void validate() const;
};

// Process-wide defaults; the CLI overrides them once at startup.
const TolerancePolicy& tolerance();
void set_tolerance(const TolerancePolicy& tol);

// {±i, ±2i, 1±i, −1±i, 1/2±3i/2}, closed under conjugation.
std::vector<cplx> default_grid();

void require_finite(const Matrix& m, const char* what);

inline bool is_real(cplx z, double eps = 1e-14) { return std::abs(z.imag()) <= eps; }

// Largest singular value.
double spectral_norm(const Matrix& m);
double max_abs(const Matrix& m);

}  // namespace kreinrel
