#pragma once

#include "kreinrel/krein.hpp"

#include <optional>

namespace kreinrel {

// A linear relation from src to tgt, stored as its graph in src x tgt (domain block first).
class LinearRelation {
 public:
  LinearRelation() = default;
  LinearRelation(KreinSpace src, KreinSpace tgt, Subspace graph);

  const KreinSpace& src() const { return src_; }
  const KreinSpace& tgt() const { return tgt_; }
  const Subspace& graph() const { return graph_; }
  Index src_dim() const { return src_.dim(); }
  Index tgt_dim() const { return tgt_.dim(); }
  Index dim() const { return graph_.dim(); }
  bool is_endo() const;

 private:
  KreinSpace src_;
  KreinSpace tgt_;
  Subspace graph_;
};

struct RelationParts {
  Subspace dom;
  Subspace ran;
  Subspace ker;
  Subspace mul;
};

LinearRelation from_operator(const Matrix& m, const KreinSpace& src, const KreinSpace& tgt);
LinearRelation from_operator(const Matrix& m, const KreinSpace& space);
// Graph spanned by the pairs (dom.col(k), ran.col(k)).
LinearRelation from_pairs(const Matrix& dom, const Matrix& ran, const KreinSpace& src, const KreinSpace& tgt);
LinearRelation zero_relation(const KreinSpace& src, const KreinSpace& tgt);
// The relation a x b.
LinearRelation product_relation(const Subspace& a, const Subspace& b, const KreinSpace& src, const KreinSpace& tgt);
// The graph of z·I.
LinearRelation scalar_relation(const KreinSpace& space, cplx z);

Subspace domain(const LinearRelation& t);
Subspace range(const LinearRelation& t);
Subspace kernel(const LinearRelation& t);
Subspace multivalued_part(const LinearRelation& t);
RelationParts parts(const LinearRelation& t);
bool is_operator(const LinearRelation& t);

bool equal(const LinearRelation& a, const LinearRelation& b);
bool contains(const LinearRelation& a, const LinearRelation& b);
double distance(const LinearRelation& a, const LinearRelation& b);

LinearRelation inverse(const LinearRelation& t);
// T ∩ (L x tgt).
LinearRelation restrict(const LinearRelation& t, const Subspace& l);
// S R = {(f, h) : (f, g) ∈ R, (g, h) ∈ S}.
LinearRelation compose(const LinearRelation& s, const LinearRelation& r);
// T - zI.
LinearRelation shift(const LinearRelation& t, cplx z);
// {(f, M f') : (f, f') ∈ T}; M maps tgt into the new target space.
LinearRelation left_multiply(const Matrix& m, const LinearRelation& t, const KreinSpace& new_tgt);
// {(M f, f') : (f, f') ∈ T} for invertible M.
LinearRelation right_multiply(const LinearRelation& t, const Matrix& m, const KreinSpace& new_src);
// c·T = {(f, c f')}.
LinearRelation scale(const LinearRelation& t, cplx c);
// T(X) = {f' : (f, f') ∈ T, f ∈ X}.
Subspace apply(const LinearRelation& t, const Subspace& x);

struct ComponentwiseSum {
  LinearRelation relation;
  bool orthogonal = false;
};

ComponentwiseSum cw_sum(const LinearRelation& a, const LinearRelation& b);
// {(f, f' + g') : (f, f') ∈ A, (f, g') ∈ B}.
LinearRelation op_sum(const LinearRelation& a, const LinearRelation& b);
// T ∩ (H x mul(T)^⊥).
LinearRelation operator_part(const LinearRelation& t);

enum class Metric { krein, hilbert };

// Krein: T+ = {(g, g') : [f', g] = [f, g'] for all (f, f') ∈ T}; Hilbert: the same with J = I.
LinearRelation adjoint(const LinearRelation& t, Metric metric = Metric::krein);
bool is_symmetric(const LinearRelation& t, Metric metric = Metric::krein);
bool is_selfadjoint(const LinearRelation& t, Metric metric = Metric::krein);

// 𝔑_z(T) = ker(T - zI).
Subspace eigenspace(const LinearRelation& t, cplx z);
// 𝔑̂_z(T) = zI ∩ T.
LinearRelation graph_eigenspace(const LinearRelation& t, cplx z);

struct SpectralProbe {
  bool eigenvalue = false;
  bool regular_type = false;
  bool regular = false;
};

SpectralProbe spectral_probe(const LinearRelation& t, cplx z);

// Matrix of an everywhere defined single-valued relation.
Matrix operator_matrix(const LinearRelation& t);

struct Resolvent {
  LinearRelation relation;
  std::optional<Matrix> matrix;
};

// (T - zI)^-1; the matrix is filled only at regular points.
Resolvent resolvent(const LinearRelation& t, cplx z);
Matrix resolvent_matrix(const LinearRelation& t, cplx z);

// 𝔗 = J T as a relation in the Hilbert space C^n, and back.
LinearRelation hilbert_form(const LinearRelation& t);
LinearRelation krein_form(const LinearRelation& th, const KreinSpace& space);

// Cayley transform {(f' + i f, f' - i f)} of a relation, and its inverse, at relation level.
LinearRelation cayley_relation(const LinearRelation& th);
LinearRelation inverse_cayley_relation(const LinearRelation& c);
// Unitary matrix of the Cayley transform of a Hilbert self-adjoint relation.
Matrix cayley(const LinearRelation& t0h);
LinearRelation inverse_cayley(const Matrix& c);
// I + 2z(𝔗0 - zI)^-1.
Matrix vz_operator(const LinearRelation& t0h, cplx z);

// The angular operator of T0 as a map of K that vanishes on K- and sends K+ into K-.
Matrix angular_operator(const LinearRelation& t0, const LinearRelation& t);
// (I + K)(K+ restricted to 𝔑_i(𝔗*)), which should reproduce T0 ∩ T^⊥.
Subspace angular_reconstruction(const LinearRelation& t0, const LinearRelation& t);

}  // namespace kreinrel
