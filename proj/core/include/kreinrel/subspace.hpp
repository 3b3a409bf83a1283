#pragma once

#include "kreinrel/types.hpp"

#include <vector>

namespace kreinrel {

// A linear subspace of C^n held as an orthonormal column frame.
class Subspace {
 public:
  Subspace() : frame_(0, 0) {}

  static Subspace zero(Index ambient);
  static Subspace full(Index ambient);
  // The caller guarantees orthonormal columns.
  static Subspace from_orthonormal(Matrix frame);
  // Standard basis vectors e_k for k in [first, first + count).
  static Subspace coordinate(Index ambient, Index first, Index count);

  Index ambient_dim() const { return frame_.rows(); }
  Index dim() const { return frame_.cols(); }
  const Matrix& frame() const { return frame_; }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }
  Matrix projector() const { return frame_ * frame_.adjoint(); }

 private:
  explicit Subspace(Matrix frame) : frame_(std::move(frame)) {}
  Matrix frame_;
};

Index numerical_rank(const Matrix& m, const TolerancePolicy& tol = tolerance());
// Right null space; singular values at most max(rank_abs, rank_rel * scale) count as zero.
// A negative scale means "use the largest singular value of m".
Matrix null_space(const Matrix& m, double scale = -1.0, const TolerancePolicy& tol = tolerance());

Subspace span(const Matrix& columns, const TolerancePolicy& tol = tolerance());
// Column space keeping singular values above an absolute cutoff.
Subspace span_cutoff(const Matrix& columns, double cutoff);
Matrix kernel_cutoff(const Matrix& m, double cutoff);
// Cutoff for matrices assembled from orthonormal frames, where singular values measure angles.
double geometric_cutoff(const TolerancePolicy& tol = tolerance());
Subspace span(const std::vector<Vector>& vectors, const TolerancePolicy& tol = tolerance());

Subspace intersect(const Subspace& a, const Subspace& b, const TolerancePolicy& tol = tolerance());
Subspace sum(const Subspace& a, const Subspace& b, const TolerancePolicy& tol = tolerance());
Subspace complement(const Subspace& a);
Subspace image(const Matrix& m, const Subspace& a, const TolerancePolicy& tol = tolerance());
Subspace preimage(const Matrix& m, const Subspace& a, const TolerancePolicy& tol = tolerance());
// A x B inside C^(n+m).
Subspace product(const Subspace& a, const Subspace& b);

// Largest principal angle; +infinity when dimensions differ.
double distance(const Subspace& a, const Subspace& b);
bool equal(const Subspace& a, const Subspace& b, const TolerancePolicy& tol = tolerance());
// True when b lies in a up to angle_tol.
bool contains(const Subspace& a, const Subspace& b, const TolerancePolicy& tol = tolerance());
// Largest Euclidean inner product between unit vectors of a and b; 0 means orthogonal.
double overlap(const Subspace& a, const Subspace& b);

// Reduced column echelon basis: a canonical, human-readable basis that depends only on the subspace.
Matrix echelon_basis(const Subspace& a, double pivot_tol = 1e-9);

}  // namespace kreinrel
