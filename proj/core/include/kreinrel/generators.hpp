#pragma once

#include "kreinrel/boundary.hpp"

#include <cstdint>

namespace kreinrel {

struct InstanceSpec {
  std::uint64_t seed = 0;
  Index dim = 4;
  Index p = 2;
  Index q = 2;
  Index defect = 1;
  bool require_simple = false;
  bool require_property_p = false;

  // Throws input unless p + q = dim and defect <= dim.
  void validate() const;
};

// J = Q diag(I_p, -I_q) Q^H for a random unitary Q.
KreinSpace gen_space(Rng& rng, Index p, Index q);

// T inside a random hyper-maximal neutral subspace of (K, Ĵ), with dim T = dim H - d.
// Throws sampling_exhausted when the requested flags are not met within the retry budget.
LinearRelation gen_symmetric(const InstanceSpec& spec);
LinearRelation gen_symmetric(const KreinSpace& space, Index defect, Rng& rng);

// Γ0 = φ on Ĵ(N), Γ1 = ψ on N, zero on T, for a sampled N and a random isomorphism ψ: N → L.
BoundaryTriple gen_triple(const LinearRelation& t, std::uint64_t seed);
// The same construction on a prescribed N; an optional Hermitian shift K gives Γ'1 = Γ1 - K Γ0.
BoundaryTriple gen_triple(const LinearRelation& t, const LinearRelation& n, Rng& rng, bool shift = false);

// U = Π (I - A)(I + A)^-1 with A = J S, S skew-Hermitian, and Π a canonical identification of src and tgt.
Matrix gen_standard_unitary(std::uint64_t seed, const KreinSpace& src, const KreinSpace& tgt);
Matrix gen_standard_unitary(Rng& rng, const KreinSpace& src, const KreinSpace& tgt, double spread = 0.5);

// Columns ordered as the +1 eigenvectors of J followed by the -1 eigenvectors.
Matrix canonical_frame(const KreinSpace& space);

}  // namespace kreinrel
