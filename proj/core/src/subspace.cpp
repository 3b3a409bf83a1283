#include "kreinrel/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kreinrel {

namespace {

void check_ambient(const Subspace& a, const Subspace& b, const char* op) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorKind::dimension_mismatch,
                std::string(op) + ": ambient dimensions " + std::to_string(a.ambient_dim()) + " and " +
                    std::to_string(b.ambient_dim()));
  }
}

double threshold(double scale, const TolerancePolicy& tol) {
  return std::max(tol.rank_abs, tol.rank_rel * scale);
}

// Orthonormal basis of the column space, with an explicit cutoff on singular values.
Matrix range_basis(const Matrix& m, double cutoff) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Index r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  return svd.matrixU().leftCols(r);
}

Matrix kernel_with_cutoff(const Matrix& m, double cutoff) {
  const Index n = m.cols();
  if (n == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Index r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  return svd.matrixV().rightCols(n - r);
}

}  // namespace

Subspace Subspace::zero(Index ambient) { return Subspace(Matrix(ambient, 0)); }

Subspace Subspace::full(Index ambient) { return Subspace(Matrix::Identity(ambient, ambient)); }

Subspace Subspace::from_orthonormal(Matrix frame) {
  require_finite(frame, "subspace frame");
  return Subspace(std::move(frame));
}

Subspace Subspace::coordinate(Index ambient, Index first, Index count) {
  if (first < 0 || count < 0 || first + count > ambient) {
    throw Error(ErrorKind::dimension_mismatch, "coordinate subspace out of range");
  }
  Matrix f = Matrix::Zero(ambient, count);
  for (Index k = 0; k < count; ++k) f(first + k, k) = 1.0;
  return Subspace(std::move(f));
}

Index numerical_rank(const Matrix& m, const TolerancePolicy& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double cut = threshold(s(0), tol);
  Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return r;
}

Matrix null_space(const Matrix& m, double scale, const TolerancePolicy& tol) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  if (scale < 0) scale = spectral_norm(m);
  return kernel_with_cutoff(m, threshold(scale, tol));
}

Subspace span(const Matrix& columns, const TolerancePolicy& tol) {
  require_finite(columns, "span input");
  if (columns.cols() == 0 || columns.rows() == 0) return Subspace::zero(columns.rows());
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cut = threshold(s(0), tol);
  Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return Subspace::from_orthonormal(svd.matrixU().leftCols(r));
}

Subspace span_cutoff(const Matrix& columns, double cutoff) {
  require_finite(columns, "span input");
  return Subspace::from_orthonormal(range_basis(columns, cutoff));
}

Matrix kernel_cutoff(const Matrix& m, double cutoff) { return kernel_with_cutoff(m, cutoff); }

double geometric_cutoff(const TolerancePolicy& tol) { return std::max(tol.rank_abs, std::sin(tol.angle_tol)); }

Subspace span(const std::vector<Vector>& vectors, const TolerancePolicy& tol) {
  if (vectors.empty()) throw Error(ErrorKind::dimension_mismatch, "span of an empty list has no ambient dimension");
  const Index n = vectors.front().size();
  Matrix m(n, static_cast<Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != n) throw Error(ErrorKind::dimension_mismatch, "span: vectors of different lengths");
    m.col(static_cast<Index>(k)) = vectors[k];
  }
  return span(m, tol);
}

Subspace complement(const Subspace& a) {
  const Index n = a.ambient_dim();
  if (a.dim() == 0) return Subspace::full(n);
  if (a.dim() == n) return Subspace::zero(n);
  Eigen::HouseholderQR<Matrix> qr(a.frame());
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return Subspace::from_orthonormal(q.rightCols(n - a.dim()));
}

Subspace intersect(const Subspace& a, const Subspace& b, const TolerancePolicy& tol) {
  check_ambient(a, b, "intersect");
  const Index n = a.ambient_dim();
  if (a.is_zero() || b.is_zero()) return Subspace::zero(n);
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  const Matrix ca = complement(a).frame();
  const Matrix cb = complement(b).frame();
  Matrix stacked(ca.cols() + cb.cols(), n);
  stacked << ca.adjoint(), cb.adjoint();
  // A unit vector at angles θa, θb from a and b has |stacked·x|² = sin²θa + sin²θb.
  Matrix k = kernel_with_cutoff(stacked, geometric_cutoff(tol));
  return Subspace::from_orthonormal(std::move(k));
}

Subspace sum(const Subspace& a, const Subspace& b, const TolerancePolicy& tol) {
  check_ambient(a, b, "sum");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Matrix joined(a.ambient_dim(), a.dim() + b.dim());
  joined << a.frame(), b.frame();
  // Singular values of [A | B] are sqrt(1 ± cos θ) over the principal angles.
  const double cut = std::max(tol.rank_abs, std::sqrt(2.0) * std::sin(0.5 * tol.angle_tol));
  return Subspace::from_orthonormal(range_basis(joined, cut));
}

Subspace image(const Matrix& m, const Subspace& a, const TolerancePolicy& tol) {
  if (m.cols() != a.ambient_dim()) {
    throw Error(ErrorKind::dimension_mismatch, "image: matrix has " + std::to_string(m.cols()) +
                                                   " columns, subspace lives in dimension " +
                                                   std::to_string(a.ambient_dim()));
  }
  require_finite(m, "image matrix");
  if (a.is_zero()) return Subspace::zero(m.rows());
  return Subspace::from_orthonormal(range_basis(m * a.frame(), threshold(spectral_norm(m), tol)));
}

Subspace preimage(const Matrix& m, const Subspace& a, const TolerancePolicy& tol) {
  if (m.rows() != a.ambient_dim()) {
    throw Error(ErrorKind::dimension_mismatch, "preimage: matrix has " + std::to_string(m.rows()) +
                                                   " rows, subspace lives in dimension " +
                                                   std::to_string(a.ambient_dim()));
  }
  require_finite(m, "preimage matrix");
  if (a.is_full()) return Subspace::full(m.cols());
  const Matrix c = complement(a).frame();
  return Subspace::from_orthonormal(kernel_with_cutoff(c.adjoint() * m, threshold(spectral_norm(m), tol)));
}

Subspace product(const Subspace& a, const Subspace& b) {
  Matrix f = Matrix::Zero(a.ambient_dim() + b.ambient_dim(), a.dim() + b.dim());
  f.topLeftCorner(a.ambient_dim(), a.dim()) = a.frame();
  f.bottomRightCorner(b.ambient_dim(), b.dim()) = b.frame();
  return Subspace::from_orthonormal(std::move(f));
}

double distance(const Subspace& a, const Subspace& b) {
  check_ambient(a, b, "distance");
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  if (a.dim() == 0) return 0.0;
  const Matrix residual = b.frame() - a.frame() * (a.frame().adjoint() * b.frame());
  return std::asin(std::min(1.0, spectral_norm(residual)));
}

bool equal(const Subspace& a, const Subspace& b, const TolerancePolicy& tol) {
  return distance(a, b) <= tol.angle_tol;
}

bool contains(const Subspace& a, const Subspace& b, const TolerancePolicy& tol) {
  check_ambient(a, b, "contains");
  if (b.is_zero()) return true;
  if (b.dim() > a.dim()) return false;
  const Matrix residual = b.frame() - a.frame() * (a.frame().adjoint() * b.frame());
  return spectral_norm(residual) <= std::sin(tol.angle_tol);
}

double overlap(const Subspace& a, const Subspace& b) {
  check_ambient(a, b, "overlap");
  if (a.is_zero() || b.is_zero()) return 0.0;
  return spectral_norm(a.frame().adjoint() * b.frame());
}

Matrix echelon_basis(const Subspace& a, double pivot_tol) {
  Matrix m = a.frame().transpose();
  const Index rows = m.rows();
  Index lead = 0;
  for (Index col = 0; col < m.cols() && lead < rows; ++col) {
    Index pivot;
    const double best = m.col(col).tail(rows - lead).cwiseAbs().maxCoeff(&pivot);
    if (best <= pivot_tol) continue;
    pivot += lead;
    m.row(lead).swap(m.row(pivot));
    const cplx head = m(lead, col);
    m.row(lead) /= head;
    for (Index r = 0; r < rows; ++r) {
      const cplx factor = m(r, col);
      if (r != lead) m.row(r) -= factor * m.row(lead);
    }
    ++lead;
  }
  for (Index k = 0; k < m.size(); ++k) {
    cplx& x = m.data()[k];
    x = cplx(std::abs(x.real()) < 1e-13 ? 0.0 : x.real(), std::abs(x.imag()) < 1e-13 ? 0.0 : x.imag());
  }
  return m.topRows(lead).transpose();
}

}  // namespace kreinrel
