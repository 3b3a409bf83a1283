#pragma once

#include "kreinrel/extensions.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kreinrel {

// A boundary triple (L, Γ0, Γ1) for T+, with L = C^d. Γ acts on coordinates in a basis of T+.
class BoundaryTriple {
 public:
  const LinearRelation& parent() const { return parent_; }
  const LinearRelation& tplus() const { return tplus_; }
  const KreinSpace& space() const { return parent_.src(); }
  Index boundary_dim() const { return d_; }
  const Matrix& basis() const { return basis_; }
  const Matrix& gamma() const { return gamma_; }
  Matrix gamma0() const { return gamma_.topRows(d_); }
  Matrix gamma1() const { return gamma_.bottomRows(d_); }
  const LinearRelation& t0() const { return t0_; }
  const LinearRelation& t1() const { return t1_; }
  double green_residual() const { return green_residual_; }

  // Γ applied to vectors of T+ given as columns in the doubled space.
  Matrix boundary_values(const Matrix& vectors) const;
  // The operator Γ: K ⊇ T+ → L² as a matrix on the doubled space (zero on (T+)^⊥).
  Matrix gamma_on_k() const { return gamma_ * coord_; }

 private:
  friend BoundaryTriple validate_triple(const LinearRelation&, const Matrix&, const Matrix&);
  LinearRelation parent_;
  LinearRelation tplus_;
  Index d_ = 0;
  Matrix basis_;
  Matrix coord_;  // left inverse of basis_
  Matrix gamma_;
  LinearRelation t0_;
  LinearRelation t1_;
  double green_residual_ = 0;
};

// [f, g'] - [f', g] - (<Γ0 f̂, Γ1 ĝ> - <Γ1 f̂, Γ0 ĝ>) over the basis, as a max-abs residual.
double green_residual(const KreinSpace& space, const Matrix& basis, const Matrix& gamma);

// gamma is 2d × m and basis is 2n × m with columns spanning T+.
BoundaryTriple validate_triple(const LinearRelation& t, const Matrix& gamma, const Matrix& basis);

// Γ as a relation from (K, Ĵ) to (L², Ĵ∘), with A_* = dom Γ and S = ker Γ.
struct IsometricBoundaryPair {
  LinearRelation a_star;
  LinearRelation gamma_rel;
  LinearRelation kernel;
  Index boundary_dim = 0;
};

// Pair whose boundary map sends basis.col(k) to gamma.col(k).
IsometricBoundaryPair make_pair(const KreinSpace& space, const Matrix& basis, const Matrix& gamma);
IsometricBoundaryPair boundary_pair(const BoundaryTriple& triple);
// Γ restricted to a subrelation A of T+.
IsometricBoundaryPair restrict_pair(const BoundaryTriple& triple, const Subspace& a);

struct PairFlags {
  bool isometric = false;
  bool unitary = false;
};

PairFlags pair_isometry_check(const IsometricBoundaryPair& pair);

struct WeylValue {
  cplx z;
  LinearRelation relation;
  std::optional<Matrix> operator_form;
};

WeylValue weyl(const BoundaryTriple& triple, cplx z);
// Throws not_regular unless M(z) is an everywhere defined operator.
Matrix weyl_matrix(const BoundaryTriple& triple, cplx z);
// γ̂(z) = (Γ0 restricted to 𝔑̂_z(T+))^-1 as a 2n × d matrix; needs z ∈ ρ(T0).
Matrix gamma_hat(const BoundaryTriple& triple, cplx z);
Matrix gamma_field(const BoundaryTriple& triple, cplx z);

struct InverseBoundaryData {
  LinearRelation n;
  Subspace jn;
  Matrix g0_inv;  // L → Ĵ(N), 2n × d
  Matrix g1_inv;  // L → N, 2n × d
  Matrix beta;
};

InverseBoundaryData inverse_boundary(const BoundaryTriple& triple);

struct InverseIdentityReport {
  Index checked = 0;
  double jn_residual = 0;  // P_Ĵ(N) γ̂(z) - Γ0^(-1)
  double n_residual = 0;   // P_N γ̂(z) - Γ1^(-1) (M(z) - β)
};

InverseIdentityReport inverse_identities_check(const BoundaryTriple& triple, const std::vector<cplx>& grid);

// X acts on L² = L ⊕ L; the result is revalidated.
BoundaryTriple transform(const BoundaryTriple& triple, const Matrix& x);
// Residual of X^H (iĴ∘) X = iĴ∘.
double boundary_unitarity_residual(const Matrix& x);
Matrix beta_shift_matrix(const Matrix& beta);
Matrix transpose_matrix(Index d);
Matrix k_shift_matrix(const Matrix& k);
Matrix scaling_matrix(Index d, double kappa);
BoundaryTriple beta_shift(const BoundaryTriple& triple);
BoundaryTriple transposed(const BoundaryTriple& triple);

// T_Θ = Γ^-1(Θ) for a relation Θ in L.
LinearRelation t_theta(const BoundaryTriple& triple, const LinearRelation& theta);

struct GridReport {
  Index checked = 0;
  std::vector<cplx> skipped;
  double max_residual = 0;
};

// M(z)* = M(z̄) over conjugate grid pairs.
GridReport weyl_symmetry_check(const BoundaryTriple& triple, const std::vector<cplx>& grid);

struct ResolventIdentityReport {
  GridReport gamma_shift;     // γ(z) - γ(z0) = (z - z0)(T0 - zI)^-1 γ(z0)
  GridReport krein_naimark;   // (T1 - z)^-1 = (T0 - z)^-1 - γ(z) M(z)^-1 γ(z̄)+
  GridReport isometry;        // (z̄ - z0)[γ(z) l, γ(z0) l0] = <l, (M(z̄) - M(z0)) l0>
};

ResolventIdentityReport resolvent_identities_check(const BoundaryTriple& triple, const std::vector<cplx>& grid);

struct TransferReport {
  std::vector<cplx> omega;  // symmetric part of the grid where the Weyl families agree
  bool applicable[2] = {false, false};
  bool holds[2] = {true, true};
};

// Ω ∩ ρ(T_i) ∩ ρ(T'_i) = Ω ∩ ρ(T_i) ∩ ρ̂_s(T') = Ω ∩ ρ(T'_i) ∩ ρ̂_s(T) for i = 0, 1.
TransferReport ddttp_check(const BoundaryTriple& a, const BoundaryTriple& b, const std::vector<cplx>& grid);

// Distance between two Weyl values read as relations in L.
double weyl_distance(const WeylValue& a, const WeylValue& b);

struct KShiftReport {
  std::optional<Matrix> k;   // K with Γ'1 = Γ1 - K Γ0 on T+, when one exists
  double k_residual = 0;
  double n_residual = 0;     // ‖(Γ'1 - Γ1) restricted to N‖
};

// Both triples must be built on the same T.
KShiftReport k_shift_check(const BoundaryTriple& a, const BoundaryTriple& b);

}  // namespace kreinrel
