#pragma once

#include "kreinrel/subspace.hpp"

namespace kreinrel {

// Finite-dimensional Krein space C^n with [f, g] = <f, J g>.
class KreinSpace {
 public:
  KreinSpace() = default;
  static KreinSpace hilbert(Index n);

  Index dim() const { return j_.rows(); }
  const Matrix& J() const { return j_; }
  Index p() const { return p_; }
  Index q() const { return q_; }
  Index negative_index() const { return std::min(p_, q_); }
  bool is_hilbert() const { return q_ == 0; }

 private:
  friend KreinSpace make_krein(const Matrix& j);
  Matrix j_;
  Index p_ = 0;
  Index q_ = 0;
};

// Validates J = J^H and J^2 = I and reads the signature off the spectrum.
KreinSpace make_krein(const Matrix& j);

bool same_space(const KreinSpace& a, const KreinSpace& b);

// The doubled space K = H x H with J_hat = [[0, -iJ], [iJ, 0]].
struct DoubledKrein {
  KreinSpace base;
  KreinSpace space;
  const Matrix& J_hat() const { return space.J(); }
};

Matrix j_hat(const Matrix& j);
DoubledKrein doubled(const KreinSpace& space);

cplx indefinite_inner(const KreinSpace& space, const Vector& f, const Vector& g);
Matrix indefinite_gram(const KreinSpace& space, const Subspace& a, const Subspace& b);

// The indefinite orthogonal companion A^[⊥].
Subspace ortho_companion(const KreinSpace& space, const Subspace& a);

enum class Definiteness { positive, negative, neutral, indefinite, mixed };
const char* to_string(Definiteness d);

// "mixed" means semidefinite but degenerate: one sign present together with isotropic directions.
Definiteness classify(const KreinSpace& space, const Subspace& a);

struct NeutralityRank {
  bool neutral = false;
  bool maximal = false;
  bool hyper_maximal = false;
};

bool is_neutral(const KreinSpace& space, const Subspace& a);
NeutralityRank neutrality_rank(const KreinSpace& space, const Subspace& a);

// Spectral subspaces of J for the eigenvalues +1 and -1.
Subspace positive_part(const KreinSpace& space);
Subspace negative_part(const KreinSpace& space);

}  // namespace kreinrel
