#include "kreinrel/krein.hpp"

#include <algorithm>

namespace kreinrel {

namespace {

constexpr double kStructureTol = 1e-10;

double neutral_tol(const Subspace& a) {
  return 1e-9 * (1.0 + (a.dim() > 0 ? spectral_norm(a.frame()) : 0.0));
}

void check_member(const KreinSpace& space, const Subspace& a, const char* op) {
  if (a.ambient_dim() != space.dim()) {
    throw Error(ErrorKind::dimension_mismatch, std::string(op) + ": subspace of C^" + std::to_string(a.ambient_dim()) +
                                                   " in a space of dimension " + std::to_string(space.dim()));
  }
}

Subspace spectral_part(const KreinSpace& space, bool positive) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(space.J());
  const auto& ev = es.eigenvalues();
  std::vector<Index> cols;
  for (Index k = 0; k < ev.size(); ++k) {
    if ((ev(k) > 0) == positive) cols.push_back(k);
  }
  Matrix f(space.dim(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) f.col(static_cast<Index>(k)) = es.eigenvectors().col(cols[k]);
  return Subspace::from_orthonormal(std::move(f));
}

}  // namespace

KreinSpace KreinSpace::hilbert(Index n) {
  KreinSpace s;
  s.j_ = Matrix::Identity(n, n);
  s.p_ = n;
  s.q_ = 0;
  return s;
}

KreinSpace make_krein(const Matrix& j) {
  if (j.rows() != j.cols()) throw Error(ErrorKind::dimension_mismatch, "fundamental symmetry must be square");
  require_finite(j, "fundamental symmetry");
  const double scale = 1.0 + max_abs(j);
  if (max_abs(j - j.adjoint()) > kStructureTol * scale) {
    throw Error(ErrorKind::not_hermitian, "J differs from its adjoint");
  }
  const Index n = j.rows();
  if (max_abs(j * j - Matrix::Identity(n, n)) > kStructureTol * scale * scale) {
    throw Error(ErrorKind::not_involution, "J*J differs from the identity");
  }
  KreinSpace s;
  s.j_ = 0.5 * (j + j.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.j_, Eigen::EigenvaluesOnly);
  for (Index k = 0; k < n; ++k) {
    if (es.eigenvalues()(k) > 0) ++s.p_; else ++s.q_;
  }
  return s;
}

bool same_space(const KreinSpace& a, const KreinSpace& b) {
  return a.dim() == b.dim() && max_abs(a.J() - b.J()) <= 1e-12 * (1.0 + max_abs(a.J()));
}

Matrix j_hat(const Matrix& j) {
  const Index n = j.rows();
  const cplx i(0, 1);
  Matrix out = Matrix::Zero(2 * n, 2 * n);
  out.topRightCorner(n, n) = -i * j;
  out.bottomLeftCorner(n, n) = i * j;
  return out;
}

DoubledKrein doubled(const KreinSpace& space) {
  DoubledKrein d;
  d.base = space;
  d.space = make_krein(j_hat(space.J()));
  return d;
}

cplx indefinite_inner(const KreinSpace& space, const Vector& f, const Vector& g) {
  if (f.size() != space.dim() || g.size() != space.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "indefinite_inner: vector length differs from the space dimension");
  }
  return f.dot(space.J() * g);
}

Matrix indefinite_gram(const KreinSpace& space, const Subspace& a, const Subspace& b) {
  check_member(space, a, "indefinite_gram");
  check_member(space, b, "indefinite_gram");
  return a.frame().adjoint() * space.J() * b.frame();
}

Subspace ortho_companion(const KreinSpace& space, const Subspace& a) {
  check_member(space, a, "ortho_companion");
  // J is unitary, so J·frame is again orthonormal.
  return complement(Subspace::from_orthonormal(space.J() * a.frame()));
}

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive: return "positive";
    case Definiteness::negative: return "negative";
    case Definiteness::neutral: return "neutral";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::mixed: return "mixed";
  }
  return "unknown";
}

Definiteness classify(const KreinSpace& space, const Subspace& a) {
  check_member(space, a, "classify");
  if (a.is_zero()) return Definiteness::neutral;
  const Matrix g = indefinite_gram(space, a, a);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly);
  const double tol = neutral_tol(a);
  Index pos = 0, neg = 0;
  for (Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double v = es.eigenvalues()(k);
    if (v > tol) ++pos;
    else if (v < -tol) ++neg;
  }
  if (pos > 0 && neg > 0) return Definiteness::indefinite;
  if (pos == a.dim()) return Definiteness::positive;
  if (neg == a.dim()) return Definiteness::negative;
  if (pos == 0 && neg == 0) return Definiteness::neutral;
  return Definiteness::mixed;
}

bool is_neutral(const KreinSpace& space, const Subspace& a) {
  check_member(space, a, "is_neutral");
  if (a.is_zero()) return true;
  return max_abs(indefinite_gram(space, a, a)) <= neutral_tol(a);
}

NeutralityRank neutrality_rank(const KreinSpace& space, const Subspace& a) {
  NeutralityRank r;
  r.neutral = is_neutral(space, a);
  r.maximal = r.neutral && a.dim() == space.negative_index();
  r.hyper_maximal = r.neutral && space.p() == space.q() && a.dim() == space.p();
  return r;
}

Subspace positive_part(const KreinSpace& space) { return spectral_part(space, true); }
Subspace negative_part(const KreinSpace& space) { return spectral_part(space, false); }

}  // namespace kreinrel
