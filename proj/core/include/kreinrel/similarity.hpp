#pragma once

#include "kreinrel/boundary.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kreinrel {

// V = [[A, B], [C, D]] acting from H x H to H' x H'.
struct BlockUnitary {
  Matrix a;
  Matrix b;
  Matrix c;
  Matrix d;
  KreinSpace src;
  KreinSpace tgt;

  static BlockUnitary from_matrix(const Matrix& v, const KreinSpace& src, const KreinSpace& tgt);
  Matrix matrix() const;
  LinearRelation relation() const;
};

// Largest residual among A+D - C+B = I, AD+ - BC+ = I', A+C = C+A, AB+ = BA+, B+D = D+B, CD+ = DC+,
// where X+ = J X^H J'.
double vabcd_residual(const BlockUnitary& v);

// Ũ = diag(U, U).
BlockUnitary diagonal_lift(const Matrix& u, const KreinSpace& src, const KreinSpace& tgt);

// Residual of U^H J' U = J.
double krein_unitarity_residual(const Matrix& u, const KreinSpace& src, const KreinSpace& tgt);

// The triple Γ V^-1 for T' = V(T), with V a standard unitary matrix on the doubled spaces.
BoundaryTriple transport(const BoundaryTriple& triple, const Matrix& v, const KreinSpace& tgt);

// All maps are matrices between the doubled spaces, vanishing off their indicated domains.
struct MorphismData {
  Matrix tau;    // T → T'
  Matrix sigma;  // N → T'
  Matrix w0;     // N → N'
  Matrix w1;     // N → N'
  Matrix w01;    // Ĵ(N) → N'
  Matrix bmap;   // Ĵ'(T'0) → Ĵ(T0)
  Matrix e;      // on Ĵ'(T'0)
  Matrix e0;     // on Ĵ'(N')
  Matrix theta;  // on Ĵ'(T')
};

// Orthonormal frames of the pieces of K = T ⊕ N ⊕ Ĵ(N) ⊕ Ĵ(T) attached to a triple.
struct TripleFrames {
  Subspace t;
  Subspace n;
  Subspace jn;
  Subspace jt;
  Subspace t0;
  Subspace jt0;
  Subspace sigma;
  Matrix j_hat;
  Matrix gamma0;  // Γ0 on K
  Matrix gamma1;  // Γ1 on K
  InverseBoundaryData inv;
};

TripleFrames triple_frames(const BoundaryTriple& triple);

// V0 = Γ'^-1 Γ as a relation from K to K'.
LinearRelation v0(const BoundaryTriple& a, const BoundaryTriple& b);

struct V0OperatorPart {
  Matrix formula;    // Γ'0^(-1) Γ0 + Γ'1^(-1) (Γ1 - β' Γ0) on K
  LinearRelation canonical;
  double distance = 0;  // between the graph of the formula on T+ and the canonical operator part
};

V0OperatorPart v0_operator_part(const BoundaryTriple& a, const BoundaryTriple& b);

struct SigmaUnitaryReport {
  double gram_residual = 0;     // [(V0)s f, (V0)s g]' - [f, g] on Σ
  double inverse_residual = 0;  // displayed inverse composed with (V0)s on Σ
  double range_distance = 0;    // (V0)s(Σ) against Σ'
};

SigmaUnitaryReport sigma_unitary_check(const BoundaryTriple& a, const BoundaryTriple& b);

struct WMaps {
  Matrix w0;
  Matrix w1;
  double llp_residual = 0;      // [Γ0^(-1) l, Γ1^(-1) l'] - [Γ'0^(-1) l, Γ'1^(-1) l']' over a basis of L²
  double adjoint_residual = 0;  // w0^H w1 - I on N
};

WMaps w_maps(const BoundaryTriple& a, const BoundaryTriple& b);

struct MembershipReport {
  bool relation_route = false;  // Γ' = Γ V^-1
  double distance = 0;
  std::optional<bool> operator_route;  // ran((V0)s - V) ⊆ V(S) = S' and the domain condition
  bool agree() const { return !operator_route || *operator_route == relation_route; }
};

MembershipReport membership_check(const LinearRelation& v, const BoundaryTriple& a, const BoundaryTriple& b);
// v is a matrix from K to K'.
MembershipReport membership_check(const Matrix& v, const BoundaryTriple& a, const BoundaryTriple& b);
MembershipReport membership_check(const BlockUnitary& v, const BoundaryTriple& a, const BoundaryTriple& b);

// Coordinates are taken in the orthonormal frames of T, N and Ĵ'(T') from triple_frames.
Matrix tau_from_coordinates(const BoundaryTriple& a, const BoundaryTriple& b, const Matrix& coords);
Matrix sigma_from_coordinates(const BoundaryTriple& a, const BoundaryTriple& b, const Matrix& coords);
Matrix theta_from_coordinates(const BoundaryTriple& b, const Matrix& coords);

// (V0)s + τ P_T on T+, zero on the complement of T+.
Matrix build_v_from_tau(const BoundaryTriple& a, const BoundaryTriple& b, const Matrix& tau);

struct StandardV {
  BlockUnitary v;
  MorphismData data;
  double vabcd = 0;
  MembershipReport membership;
};

// V = (B^-1, 0; iĴ'E B^-1, Ĵ'B^H Ĵ) from ĴT0 ∔ T0 to Ĵ'T'0 ∔ T'0, for B: Ĵ'(T'0) → Ĵ(T0) and E Hermitian on Ĵ'(T'0).
Matrix assemble_standard_v(const BoundaryTriple& a, const BoundaryTriple& b, const Matrix& bmap, const Matrix& e);

// sigma and theta default to zero when empty.
StandardV build_standard_v(const BoundaryTriple& a, const BoundaryTriple& b, const Matrix& tau,
                           const Matrix& theta = Matrix(), const Matrix& sigma = Matrix());

// Reads τ, σ, B, E, Θ off a standard unitary V with V(T0) = T'0.
MorphismData extract_standard_parameters(const Matrix& v, const BoundaryTriple& a, const BoundaryTriple& b);

// p_V(z) = z² B + z (A - D) - C.
Matrix pencil(const BlockUnitary& v, cplx z);

struct WeylCriterion {
  cplx z;
  bool containment = false;     // 𝔑_z(A_*) ⊆ 𝔑_z(S ∔ V^-1(zI))
  bool weyl_equal = false;      // M_Γ(z) = M_Γ'(z)
  bool sufficiency_applies = false;  // S = T and z ∉ σ_p(T)
  std::optional<bool> pencil_agrees;  // ker p_V(z) = 𝔑_z(V^-1(zI))
  double weyl_gap = 0;
  // 𝔑_z(S ∔ V^-1(zI)) = 𝔑_z(V^-1(zI)) whenever S ∩ V^-1(zI) = {0} and z ∉ σ_p(S).
  bool reduction_applies = false;
  bool reduction_holds = true;

  // Necessity always; equivalence where sufficiency applies.
  bool consistent() const {
    const bool routes = sufficiency_applies ? containment == weyl_equal : (!weyl_equal || containment);
    return routes && pencil_agrees.value_or(true);
  }
};

WeylCriterion weyl_equality_criterion(const IsometricBoundaryPair& pa, const IsometricBoundaryPair& pb,
                                      const LinearRelation& v, cplx z);
WeylCriterion weyl_equality_criterion(const BoundaryTriple& a, const BoundaryTriple& b, const BlockUnitary& v, cplx z);

// ‖M(z) - M'(z)‖ when both are operators, the relation distance otherwise.
double weyl_discrepancy(const BoundaryTriple& a, const BoundaryTriple& b, cplx z);

struct SimilarityResult {
  std::optional<Matrix> unitary;  // U_total
  std::optional<cplx> witness;
  double witness_gap = 0;

  Matrix u;
  Matrix k;
  std::vector<cplx> omega;             // points used for the solve
  std::vector<cplx> skipped;           // not in ρ(T0) ∩ ρ(T'0)
  std::vector<cplx> t1_singular;       // in Ω but outside ρ(T1); recorded only
  double lsq_residual = 0;
  double gram_residual = 0;
  double t_distance = 0;
  double intertwining_residual = 0;    // U (T0 - z)^-1 - (T'0 - z)^-1 U
  double isometry_residual = 0;        // Step 3 identity on both triples
  double w_offdiag = 0;
  double k_gram_residual = 0;
  double bform_residual = 0;           // extracted B against the block form built from τ, σ, w0
  double e_cross = 0;                  // ‖P_Ĵ'(T') E P_Ĵ'(N')‖; zero when E = E0 ⊕ Θ
  double restricted_w_offdiag = 0;     // off-diagonal part of Ũ^-1 V for V rebuilt with E = E0 ⊕ Θ
  double final_distance = 0;
  std::vector<std::string> notes;
};

// Throws Error(hypothesis) when minimality, regularity or the U system fails.
SimilarityResult reconstruct_similarity(const BoundaryTriple& a, const BoundaryTriple& b,
                                        const std::vector<cplx>& grid);

struct WInvarianceReport {
  Index checked = 0;
  bool t_invariant = false;
  double t_distance = 0;
  double max_distance = 0;  // W(𝔑̂_z(T+)) against 𝔑̂_z(T+)
  std::vector<cplx> failed_points;
  bool passed() const { return t_invariant && failed_points.empty(); }
};

// W = Ũ^-1 V.
WInvarianceReport w_invariance_audit(const BoundaryTriple& a, const BoundaryTriple& b, const Matrix& u,
                                     const Matrix& v, const std::vector<cplx>& grid);

}  // namespace kreinrel
