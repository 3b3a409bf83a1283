#include "kreinrel/extensions.hpp"

#include <cmath>

namespace kreinrel {

namespace {

const cplx I(0, 1);

void require_endo(const LinearRelation& t, const char* op) {
  if (!t.is_endo()) throw Error(ErrorKind::host_mismatch, std::string(op) + " needs a relation in one space");
}

LinearRelation hilbert_adjoint_form(const LinearRelation& t) { return adjoint(hilbert_form(t), Metric::hilbert); }

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

bool is_eigenvalue(const LinearRelation& t, cplx z) { return !eigenspace(t, z).is_zero(); }

double inclusion_residual(const Subspace& a, const Matrix& vectors) {
  if (vectors.cols() == 0) return 0.0;
  return spectral_norm(vectors - a.projector() * vectors) / std::max(1.0, spectral_norm(vectors));
}

}  // namespace

DefectNumbers defect_numbers(const LinearRelation& t) {
  require_endo(t, "defect_numbers");
  if (!is_symmetric(t)) throw Error(ErrorKind::not_symmetric, "defect_numbers: T is not symmetric");
  const LinearRelation ts = hilbert_adjoint_form(t);
  return {eigenspace(ts, I).dim(), eigenspace(ts, -I).dim()};
}

Subspace defect_space(const LinearRelation& t, cplx z) { return eigenspace(hilbert_adjoint_form(t), z); }

Subspace sigma_space(const LinearRelation& t) {
  require_endo(t, "sigma_space");
  return intersect(adjoint(t).graph(), complement(t.graph()));
}

std::string NClassCheck::failure() const {
  if (!in_sigma) return "N is not contained in T+ ∩ T^⊥";
  if (!symmetric) return "N is not symmetric";
  if (!range_plus) return "ran(𝔑 + iI) differs from 𝔑_i(𝔗*)";
  if (!range_minus) return "ran(𝔑 - iI) differs from 𝔑_{-i}(𝔗*)";
  if (!hyper_maximal) return "T ⊕ N is not hyper-maximal neutral";
  return "";
}

NClassCheck n_class_check(const LinearRelation& t, const LinearRelation& n) {
  require_endo(t, "n_class_check");
  if (!same_space(t.src(), n.src()) || !same_space(t.src(), n.tgt())) {
    throw Error(ErrorKind::host_mismatch, "n_class_check: T and N live in different spaces");
  }
  NClassCheck c;
  c.in_sigma = contains(sigma_space(t), n.graph());
  c.symmetric = is_symmetric(n);
  const LinearRelation nh = hilbert_form(n);
  const LinearRelation ts = hilbert_adjoint_form(t);
  c.range_plus = equal(range(shift(nh, -I)), eigenspace(ts, I));
  c.range_minus = equal(range(shift(nh, I)), eigenspace(ts, -I));
  const LinearRelation t0 = cw_sum(t, n).relation;
  c.hyper_maximal = neutrality_rank(doubled(t.src()).space, t0.graph()).hyper_maximal;
  if (c.in_sigma && c.symmetric && c.range_plus && c.range_minus && c.hyper_maximal) {
    c.witness = NWitness{n, t, t0};
  }
  return c;
}

LinearRelation extend(const LinearRelation& t, const LinearRelation& n) {
  const NClassCheck c = n_class_check(t, n);
  if (!c.accepted()) throw Error(ErrorKind::precondition, "extend: " + c.failure());
  if (!is_selfadjoint(c.witness->t0)) throw Error(ErrorKind::internal, "extend: T ⊕ N is not self-adjoint");
  return c.witness->t0;
}

LinearRelation reduce(const LinearRelation& t, const LinearRelation& t0) {
  require_endo(t, "reduce");
  if (!same_space(t.src(), t0.src()) || !t0.is_endo()) {
    throw Error(ErrorKind::host_mismatch, "reduce: T and T0 live in different spaces");
  }
  if (!is_selfadjoint(t0)) throw Error(ErrorKind::precondition, "reduce: T0 is not self-adjoint");
  if (!contains(t0, t)) throw Error(ErrorKind::precondition, "reduce: T0 does not extend T");
  LinearRelation n(t.src(), t.tgt(), intersect(t0.graph(), complement(t.graph())));
  const NClassCheck c = n_class_check(t, n);
  if (!c.accepted()) throw Error(ErrorKind::internal, "reduce: T0 ∩ T^⊥ fails the class check: " + c.failure());
  return n;
}

LinearRelation reduce_by_defect(const LinearRelation& t, const LinearRelation& t0) {
  const Index n = t.src_dim();
  Matrix m(n, 2 * n);
  m << I * Matrix::Identity(n, n), t.src().J();
  const Subspace members = preimage(m, defect_space(t, I));
  return LinearRelation(t0.src(), t0.tgt(), intersect(t0.graph(), members));
}

NWitness witness_from_unitary(const LinearRelation& t, const Matrix& w) {
  require_endo(t, "witness_from_unitary");
  const Matrix ep = defect_space(t, I).frame();
  const Matrix em = defect_space(t, -I).frame();
  if (ep.cols() != em.cols()) throw Error(ErrorKind::precondition, "witness_from_unitary: unequal defect numbers");
  if (w.rows() != ep.cols() || w.cols() != ep.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "witness_from_unitary: unitary does not match the defect number");
  }
  const KreinSpace h = KreinSpace::hilbert(t.src_dim());
  const Matrix cu = em * w;
  const LinearRelation nh = from_pairs((ep - cu) / (2.0 * I), (ep + cu) / 2.0, h, h);
  LinearRelation n = krein_form(nh, t.src());
  LinearRelation t0 = cw_sum(t, n).relation;
  return {std::move(n), t, std::move(t0)};
}

NWitness sample_witness(const LinearRelation& t, Rng& rng) {
  const Index d = defect_space(t, I).dim();
  return witness_from_unitary(t, rng.unitary(d));
}

SigmaDecomposition sigma_decompose(const LinearRelation& t, const LinearRelation& t0) {
  SigmaDecomposition s;
  const LinearRelation n = reduce(t, t0);
  s.n_part = n.graph();
  s.jn_part = image(j_hat(t.src().J()), n.graph());
  s.sigma = sigma_space(t);
  const LinearRelation ts = hilbert_adjoint_form(t);
  s.m_hat = cw_sum(graph_eigenspace(ts, I), graph_eigenspace(ts, -I)).relation;
  s.m_space = domain(s.m_hat);
  s.defect_plus = eigenspace(ts, I);
  s.defect_minus = eigenspace(ts, -I);
  return s;
}

bool PropNAudit::passed(double tol) const {
  return d + n == dim_h && n == n_minus && dim_n == d && dim_t == n && tplus_split <= tol && sigma_split <= tol &&
         sigma_jm <= tol && dom_resolvent_plus <= tol && dom_resolvent_minus <= tol && dom_cayley <= tol &&
         cayley_defect <= tol && dom_hyper_maximal;
}

PropNAudit prop_n_audit(const LinearRelation& t, const LinearRelation& n) {
  const NWitness w = [&] {
    const NClassCheck c = n_class_check(t, n);
    if (!c.accepted()) throw Error(ErrorKind::precondition, "prop_n_audit: " + c.failure());
    return *c.witness;
  }();
  const SigmaDecomposition s = sigma_decompose(t, w.t0);
  const Matrix& j = t.src().J();
  const Index dim = t.src_dim();

  PropNAudit a;
  a.dim_h = dim;
  a.d = defect_numbers(t).plus;
  const DefectNumbers dn = defect_numbers(n);
  a.n = dn.plus;
  a.n_minus = dn.minus;
  a.dim_n = n.dim();
  a.dim_t = t.dim();
  a.tplus_split = distance(adjoint(t).graph(), sum(t.graph(), s.sigma));
  a.sigma_split = distance(s.sigma, sum(s.n_part, s.jn_part));
  const Matrix diag_j = block_diag(Matrix::Identity(dim, dim), j);
  a.sigma_jm = distance(s.sigma, image(diag_j, s.m_hat.graph()));

  const Subspace dom_n = domain(n);
  const LinearRelation th0 = hilbert_form(w.t0);
  a.dom_resolvent_plus = distance(dom_n, apply(inverse(shift(th0, -I)), s.defect_plus));
  a.dom_resolvent_minus = distance(dom_n, apply(inverse(shift(th0, I)), s.defect_minus));
  const Matrix c = cayley(th0);
  a.dom_cayley = distance(dom_n, image(c - Matrix::Identity(dim, dim), s.defect_plus));

  const Index dp = s.defect_plus.dim(), dm = s.defect_minus.dim();
  a.m_direct = intersect(s.defect_plus, s.defect_minus).is_zero();
  const Matrix cf = c * s.defect_plus.frame();
  a.cayley_defect = inclusion_residual(s.defect_minus, cf);
  Matrix lift(dp + dm, dp);
  lift << -Matrix::Identity(dp, dp), s.defect_minus.frame().adjoint() * cf;
  Matrix jm = Matrix::Identity(dp + dm, dp + dm);
  jm.bottomRightCorner(dm, dm) *= -1.0;
  a.dom_hyper_maximal = neutrality_rank(make_krein(jm), span(lift)).hyper_maximal;
  return a;
}

bool delta_membership(const LinearRelation& t, cplx z) {
  require_endo(t, "delta_membership");
  if (is_real(z)) return false;
  return !is_eigenvalue(t, z) && !is_eigenvalue(t, std::conj(z));
}

bool o_membership(const LinearRelation& g, const LinearRelation& h, cplx z) {
  return intersect(range(shift(g, z)), range(shift(h, z))).is_zero();
}

bool os_membership(const LinearRelation& t, const LinearRelation& n, cplx z) {
  return delta_membership(t, z) && o_membership(t, n, z) && o_membership(t, n, std::conj(z));
}

Delta0Estimate delta0_estimate(const LinearRelation& t, const std::vector<NWitness>& witnesses,
                               const std::vector<cplx>& grid) {
  Delta0Estimate e;
  e.witnesses = static_cast<Index>(witnesses.size());
  for (const cplx z : grid) {
    if (is_real(z)) continue;
    bool keep = true;
    for (const NWitness& w : witnesses) {
      if (!os_membership(t, w.n, z) || is_eigenvalue(w.n, z) || is_eigenvalue(w.n, std::conj(z))) {
        keep = false;
        break;
      }
    }
    if (keep) e.points.push_back(z);
  }
  return e;
}

bool simple_check(const LinearRelation& t, const std::vector<cplx>& grid) {
  require_endo(t, "simple_check");
  const LinearRelation tp = adjoint(t);
  Subspace spanned = Subspace::zero(t.src_dim());
  for (const cplx z : grid) {
    if (is_real(z)) continue;
    if (is_eigenvalue(t, z)) return false;
    spanned = sum(spanned, eigenspace(tp, z));
  }
  return spanned.is_full();
}

bool has_property_p(const LinearRelation& t) { return sum(domain(t), range(t)).is_full(); }

TheoremExReport theorem_ex_check(const LinearRelation& t, const std::vector<NWitness>& witnesses,
                                 const std::vector<cplx>& grid) {
  TheoremExReport r;
  r.property_p = has_property_p(t);
  r.dense_domain = domain(t).is_full();
  std::vector<cplx> delta;
  for (const cplx z : grid) {
    if (delta_membership(t, z)) delta.push_back(z);
  }
  for (const NWitness& w : witnesses) {
    for (const cplx z : delta) {
      ++r.checked;
      if (!spectral_probe(w.t0, z).regular) {
        ++r.failures;
        r.failed_points.push_back(z);
      }
    }
  }
  return r;
}

LemmaOsReport lemma_os_check(const NWitness& w, const std::vector<cplx>& grid) {
  LemmaOsReport r;
  for (const cplx z : grid) {
    if (is_real(z)) continue;
    ++r.checked;
    const bool lhs = spectral_probe(w.t0, z).regular;
    const bool rhs = os_membership(w.parent, w.n, z) && delta_membership(w.n, z);
    if (lhs != rhs) {
      ++r.failures;
      r.failed_points.push_back(z);
    }
  }
  return r;
}

LemmaExNReport lemma_exn_check(const LinearRelation& t, const LinearRelation& n, const std::vector<cplx>& grid) {
  LemmaExNReport r;
  r.property_p = has_property_p(t);
  r.dense_domain = domain(t).is_full();
  r.is_operator = is_operator(n);
  for (const cplx z : grid) {
    if (is_eigenvalue(n, z)) r.eigenvalues.push_back(z);
    if (!r.standard && delta_membership(n, z)) r.standard = true;
  }
  const Subspace np = defect_space(t, I);
  const Subspace nm = defect_space(t, -I);
  const Subspace hp = positive_part(t.src());
  const Subspace hm = negative_part(t.src());
  const Subspace dom_n = domain(n);
  const Subspace plus_formula = intersect(dom_n, sum(intersect(hp, np), intersect(hm, nm)));
  const Subspace minus_formula = intersect(dom_n, sum(intersect(hp, nm), intersect(hm, np)));
  r.plus_i_formula_agrees = equal(plus_formula, eigenspace(n, I));
  r.minus_i_formula_agrees = equal(minus_formula, eigenspace(n, -I));
  return r;
}

}  // namespace kreinrel
