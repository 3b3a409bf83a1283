#pragma once

#include "kreinrel/random.hpp"
#include "kreinrel/relation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kreinrel {

struct DefectNumbers {
  Index plus = 0;   // dim ker(𝔗* - iI)
  Index minus = 0;  // dim ker(𝔗* + iI)
  bool equal() const { return plus == minus; }
};

// Defect numbers of 𝔗 = JT; T must be symmetric.
DefectNumbers defect_numbers(const LinearRelation& t);

// 𝔑_{±i}(𝔗*) for 𝔗 = JT.
Subspace defect_space(const LinearRelation& t, cplx z);

// Σ = T+ ∩ T^⊥ as a subspace of the doubled space.
Subspace sigma_space(const LinearRelation& t);

struct NWitness {
  LinearRelation n;
  LinearRelation parent;
  LinearRelation t0;
};

struct NClassCheck {
  bool in_sigma = false;        // N ⊆ T+ ∩ T^⊥
  bool symmetric = false;
  bool range_plus = false;      // ran(𝔑 + iI) = 𝔑_i(𝔗*)
  bool range_minus = false;     // ran(𝔑 - iI) = 𝔑_{-i}(𝔗*)
  bool hyper_maximal = false;   // T ⊕ N hyper-maximal neutral in (K, Ĵ)
  std::optional<NWitness> witness;

  bool accepted() const { return witness.has_value(); }
  // First failed condition, empty when accepted.
  std::string failure() const;
};

NClassCheck n_class_check(const LinearRelation& t, const LinearRelation& n);

LinearRelation extend(const LinearRelation& t, const LinearRelation& n);
LinearRelation reduce(const LinearRelation& t, const LinearRelation& t0);
// N = {(f, f') ∈ T0 : Jf' + if ∈ 𝔑_i(𝔗*)}.
LinearRelation reduce_by_defect(const LinearRelation& t, const LinearRelation& t0);

// Random N ∈ 𝒩 from a random unitary 𝔑_i(𝔗*) → 𝔑_{-i}(𝔗*) run through the inverse Cayley transform.
NWitness sample_witness(const LinearRelation& t, Rng& rng);
// The same construction for a given unitary in the orthonormal bases of the two defect spaces.
NWitness witness_from_unitary(const LinearRelation& t, const Matrix& w);

struct SigmaDecomposition {
  Subspace sigma;
  Subspace n_part;
  Subspace jn_part;
  LinearRelation m_hat;   // 𝔑̂_i(𝔗*) ∔ 𝔑̂_{-i}(𝔗*)
  Subspace m_space;       // dom 𝔐̂
  Subspace defect_plus;   // 𝔑_i(𝔗*)
  Subspace defect_minus;  // 𝔑_{-i}(𝔗*)
};

SigmaDecomposition sigma_decompose(const LinearRelation& t, const LinearRelation& t0);

struct PropNAudit {
  Index dim_h = 0;
  Index d = 0;
  Index n = 0;       // defect number of N
  Index n_minus = 0;
  Index dim_n = 0;
  Index dim_t = 0;
  double tplus_split = 0;   // distance(T+, T ⊕ Σ)
  double sigma_split = 0;   // distance(Σ, N ⊕ Ĵ(N))
  double sigma_jm = 0;      // distance(Σ, J𝔐̂)
  double dom_resolvent_plus = 0;   // dom N vs (𝔗0 + iI)^-1 𝔑_i(𝔗*)
  double dom_resolvent_minus = 0;  // dom N vs (𝔗0 - iI)^-1 𝔑_{-i}(𝔗*)
  double dom_cayley = 0;           // dom N vs (C_𝔑 - I) 𝔑_i(𝔗*)
  // dom N lifted to {(-f, C_𝔑 f) : f ∈ 𝔑_i(𝔗*)} inside the external sum 𝔑_i(𝔗*) ⊕ 𝔑_{-i}(𝔗*), metric diag(1, -1).
  bool dom_hyper_maximal = false;
  double cayley_defect = 0;        // C_𝔑 𝔑_i(𝔗*) against 𝔑_{-i}(𝔗*)
  bool m_direct = false;           // 𝔑_i(𝔗*) ∩ 𝔑_{-i}(𝔗*) = {0}, so the metric lives on 𝔐 itself

  bool passed(double tol) const;
};

PropNAudit prop_n_audit(const LinearRelation& t, const LinearRelation& n);

// z ∈ δ(T): z non-real and neither z nor z̄ is an eigenvalue.
bool delta_membership(const LinearRelation& t, cplx z);
// ran(G - zI) ∩ ran(H - zI) = {0}.
bool o_membership(const LinearRelation& g, const LinearRelation& h, cplx z);
// z ∈ δ(T) and O(T, N) holds at z and z̄.
bool os_membership(const LinearRelation& t, const LinearRelation& n, cplx z);

struct Delta0Estimate {
  std::vector<cplx> points;
  Index witnesses = 0;
  bool approximate = true;
};

// Grid points in O_s(T, N) with z, z̄ ∉ σ_p(N) for every supplied witness.
Delta0Estimate delta0_estimate(const LinearRelation& t, const std::vector<NWitness>& witnesses,
                               const std::vector<cplx>& grid);

// No non-real grid eigenvalues and the defect spaces 𝔑_z(T+) over the grid span H.
bool simple_check(const LinearRelation& t, const std::vector<cplx>& grid);

// dom T + ran T = H.
bool has_property_p(const LinearRelation& t);

struct TheoremExReport {
  bool property_p = false;
  bool dense_domain = false;
  Index checked = 0;
  Index failures = 0;
  std::vector<cplx> failed_points;
};

// ρ(T0) ⊇ grid ∩ δ(T) for each supplied extension.
TheoremExReport theorem_ex_check(const LinearRelation& t, const std::vector<NWitness>& witnesses,
                                 const std::vector<cplx>& grid);

struct LemmaOsReport {
  Index checked = 0;
  Index failures = 0;
  std::vector<cplx> failed_points;
};

// C_* ∩ ρ(T0) = O_s(T, N) ∩ δ(N), pointwise on the grid.
LemmaOsReport lemma_os_check(const NWitness& w, const std::vector<cplx>& grid);

struct LemmaExNReport {
  bool property_p = false;
  bool dense_domain = false;
  bool is_operator = false;
  bool standard = false;
  std::vector<cplx> eigenvalues;  // grid points that are eigenvalues of N
  bool plus_i_formula_agrees = false;
  bool minus_i_formula_agrees = false;

  bool conclusion_holds() const { return is_operator && standard && eigenvalues.empty(); }
};

LemmaExNReport lemma_exn_check(const LinearRelation& t, const LinearRelation& n, const std::vector<cplx>& grid);

}  // namespace kreinrel
