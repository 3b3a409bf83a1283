#include "kreinrel/similarity.hpp"

#include <algorithm>
#include <cmath>

namespace kreinrel {

namespace {

const cplx I(0, 1);
constexpr double kResidual = 1e-8;
constexpr double kWitness = 1e-7;

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// X+ = J X^H J' for X: H → H'.
Matrix kplus(const Matrix& x, const KreinSpace& src, const KreinSpace& tgt) {
  return src.J() * x.adjoint() * tgt.J();
}

// Inverse of the map P_to m restricted to from → to, as a matrix vanishing off to.
Matrix restricted_inverse(const Matrix& m, const Subspace& from, const Subspace& to, ErrorKind kind,
                          const char* what) {
  const Matrix core = to.frame().adjoint() * m * from.frame();
  if (core.rows() != core.cols()) throw Error(kind, std::string(what) + ": dimensions differ");
  if (core.rows() == 0) return Matrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Matrix> svd(core);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= 1e-10 * std::max(1.0, s(0))) throw Error(kind, std::string(what) + " is singular");
  return from.frame() * core.inverse() * to.frame().adjoint();
}

void require_same_boundary(const BoundaryTriple& a, const BoundaryTriple& b) {
  if (a.boundary_dim() != b.boundary_dim()) {
    throw Error(ErrorKind::dimension_mismatch, "boundary spaces differ: d = " + std::to_string(a.boundary_dim()) +
                                                   " vs " + std::to_string(b.boundary_dim()));
  }
}

double scale_of(const Matrix& m) { return 1.0 + max_abs(m); }

// Γ0 and Γ1 on K' applied through the displayed inverse maps.
Matrix v0s_formula(const TripleFrames& fa, const TripleFrames& fb) {
  return fb.inv.g0_inv * fa.gamma0 + fb.inv.g1_inv * (fa.gamma1 - fb.inv.beta * fa.gamma0);
}

Matrix v0s_inverse_formula(const TripleFrames& fa, const TripleFrames& fb) {
  return fa.inv.g0_inv * fb.gamma0 + fa.inv.g1_inv * (fb.gamma1 - fa.inv.beta * fb.gamma0);
}

// Matrix of an operator relation on its domain, zero on the complement of the domain.
std::optional<Matrix> operator_on_domain(const LinearRelation& v) {
  if (!is_operator(v)) return std::nullopt;
  const Matrix f = v.graph().frame();
  const Matrix top = f.topRows(v.src_dim());
  const Matrix bot = f.bottomRows(v.tgt_dim());
  return bot * top.completeOrthogonalDecomposition().pseudoInverse();
}

bool operator_route(const Matrix& v, const BoundaryTriple& a, const BoundaryTriple& b, const TripleFrames& fa,
                    const TripleFrames& fb) {
  const Subspace& tp = a.tplus().graph();
  const Subspace& tpb = b.tplus().graph();
  if (!equal(image(v, fa.t), fb.t)) return false;
  const Matrix diff = (v0s_formula(fa, fb) - v) * tp.frame();
  if (!contains(fb.t, span(diff))) return false;
  if (!equal(image(v, tp), tpb)) return false;
  const Subspace ker = span(null_space(v));
  return contains(fa.t, intersect(ker, tp));
}

}  // namespace

BlockUnitary BlockUnitary::from_matrix(const Matrix& v, const KreinSpace& src, const KreinSpace& tgt) {
  const Index n = src.dim(), m = tgt.dim();
  if (v.rows() != 2 * m || v.cols() != 2 * n) {
    throw Error(ErrorKind::dimension_mismatch, "block operator must be " + std::to_string(2 * m) + "x" +
                                                   std::to_string(2 * n));
  }
  return {v.topLeftCorner(m, n), v.topRightCorner(m, n), v.bottomLeftCorner(m, n), v.bottomRightCorner(m, n), src,
          tgt};
}

Matrix BlockUnitary::matrix() const {
  Matrix v(2 * a.rows(), 2 * a.cols());
  v << a, b, c, d;
  return v;
}

LinearRelation BlockUnitary::relation() const {
  return from_operator(matrix(), doubled(src).space, doubled(tgt).space);
}

double vabcd_residual(const BlockUnitary& v) {
  const KreinSpace& s = v.src;
  const KreinSpace& t = v.tgt;
  auto p = [&](const Matrix& x) { return kplus(x, s, t); };
  const Matrix in = Matrix::Identity(s.dim(), s.dim());
  const Matrix im = Matrix::Identity(t.dim(), t.dim());
  double r = max_abs(p(v.a) * v.d - p(v.c) * v.b - in);
  r = std::max(r, max_abs(v.a * p(v.d) - v.b * p(v.c) - im));
  r = std::max(r, max_abs(p(v.a) * v.c - p(v.c) * v.a));
  r = std::max(r, max_abs(v.a * p(v.b) - v.b * p(v.a)));
  r = std::max(r, max_abs(p(v.b) * v.d - p(v.d) * v.b));
  r = std::max(r, max_abs(v.c * p(v.d) - v.d * p(v.c)));
  return r;
}

BlockUnitary diagonal_lift(const Matrix& u, const KreinSpace& src, const KreinSpace& tgt) {
  const Matrix z = Matrix::Zero(u.rows(), u.cols());
  return {u, z, z, u, src, tgt};
}

double krein_unitarity_residual(const Matrix& u, const KreinSpace& src, const KreinSpace& tgt) {
  if (u.rows() != tgt.dim() || u.cols() != src.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "krein_unitarity_residual: U does not map src to tgt");
  }
  return max_abs(u.adjoint() * tgt.J() * u - src.J());
}

BoundaryTriple transport(const BoundaryTriple& triple, const Matrix& v, const KreinSpace& tgt) {
  if (v.rows() != 2 * tgt.dim() || v.cols() != 2 * triple.space().dim()) {
    throw Error(ErrorKind::dimension_mismatch, "transport: V does not map K to K'");
  }
  const LinearRelation t(tgt, tgt, image(v, triple.parent().graph()));
  return validate_triple(t, triple.gamma(), v * triple.basis());
}

TripleFrames triple_frames(const BoundaryTriple& triple) {
  TripleFrames f;
  const Index d = triple.boundary_dim();
  f.j_hat = j_hat(triple.space().J());
  f.inv = inverse_boundary(triple);
  f.t = triple.parent().graph();
  f.n = f.inv.n.graph();
  f.jn = f.inv.jn;
  f.jt = image(f.j_hat, f.t);
  f.t0 = triple.t0().graph();
  f.jt0 = image(f.j_hat, f.t0);
  f.sigma = sigma_space(triple.parent());
  const Matrix g = triple.gamma_on_k();
  f.gamma0 = g.topRows(d);
  f.gamma1 = g.bottomRows(d);
  return f;
}

LinearRelation v0(const BoundaryTriple& a, const BoundaryTriple& b) {
  require_same_boundary(a, b);
  return compose(inverse(boundary_pair(b).gamma_rel), boundary_pair(a).gamma_rel);
}

V0OperatorPart v0_operator_part(const BoundaryTriple& a, const BoundaryTriple& b) {
  require_same_boundary(a, b);
  const TripleFrames fa = triple_frames(a);
  const TripleFrames fb = triple_frames(b);
  V0OperatorPart out;
  out.formula = v0s_formula(fa, fb);
  out.canonical = operator_part(v0(a, b));
  const Matrix tp = a.tplus().graph().frame();
  const KreinSpace k = doubled(a.space()).space;
  const KreinSpace kp = doubled(b.space()).space;
  out.distance = distance(from_pairs(tp, out.formula * tp, k, kp), out.canonical);
  return out;
}

SigmaUnitaryReport sigma_unitary_check(const BoundaryTriple& a, const BoundaryTriple& b) {
  require_same_boundary(a, b);
  const TripleFrames fa = triple_frames(a);
  const TripleFrames fb = triple_frames(b);
  const Matrix f = v0s_formula(fa, fb);
  const Matrix g = v0s_inverse_formula(fa, fb);
  const Matrix s = fa.sigma.frame();
  const Matrix fs = f * s;
  const Matrix jp = j_hat(b.space().J());
  SigmaUnitaryReport r;
  r.gram_residual = max_abs(fs.adjoint() * jp * fs - s.adjoint() * fa.j_hat * s);
  r.inverse_residual = max_abs(g * fs - s);
  r.range_distance = distance(span(fs), fb.sigma);
  return r;
}

WMaps w_maps(const BoundaryTriple& a, const BoundaryTriple& b) {
  require_same_boundary(a, b);
  const TripleFrames fa = triple_frames(a);
  const TripleFrames fb = triple_frames(b);
  const Matrix jp = j_hat(b.space().J());
  const Matrix pn = fa.n.projector();
  WMaps w;
  w.w0 = jp * fb.inv.g0_inv * fa.gamma0 * fa.j_hat * pn;
  w.w1 = fb.inv.g1_inv * fa.gamma1 * pn;
  const Matrix lhs = fa.inv.g0_inv.adjoint() * fa.j_hat * fa.inv.g1_inv;
  const Matrix rhs = fb.inv.g0_inv.adjoint() * jp * fb.inv.g1_inv;
  w.llp_residual = max_abs(lhs - rhs);
  const Matrix fn = fa.n.frame();
  w.adjoint_residual = max_abs(fn.adjoint() * w.w0.adjoint() * w.w1 * fn - Matrix::Identity(fn.cols(), fn.cols()));
  return w;
}

MembershipReport membership_check(const LinearRelation& v, const BoundaryTriple& a, const BoundaryTriple& b) {
  require_same_boundary(a, b);
  const KreinSpace k = doubled(a.space()).space;
  const KreinSpace kp = doubled(b.space()).space;
  if (!same_space(v.src(), k) || !same_space(v.tgt(), kp)) {
    throw Error(ErrorKind::host_mismatch, "membership_check: V does not map K to K'");
  }
  MembershipReport r;
  const LinearRelation composed = compose(boundary_pair(a).gamma_rel, inverse(v));
  const LinearRelation& target = boundary_pair(b).gamma_rel;
  r.distance = distance(composed, target);
  r.relation_route = equal(composed, target);
  if (contains(domain(v), a.parent().graph())) {
    if (auto m = operator_on_domain(v)) {
      r.operator_route = operator_route(*m, a, b, triple_frames(a), triple_frames(b));
    }
  }
  return r;
}

MembershipReport membership_check(const Matrix& v, const BoundaryTriple& a, const BoundaryTriple& b) {
  require_same_boundary(a, b);
  const KreinSpace k = doubled(a.space()).space;
  const KreinSpace kp = doubled(b.space()).space;
  MembershipReport r;
  const LinearRelation vr = from_operator(v, k, kp);
  const LinearRelation composed = compose(boundary_pair(a).gamma_rel, inverse(vr));
  const LinearRelation& target = boundary_pair(b).gamma_rel;
  r.distance = distance(composed, target);
  r.relation_route = equal(composed, target);
  r.operator_route = operator_route(v, a, b, triple_frames(a), triple_frames(b));
  return r;
}

MembershipReport membership_check(const BlockUnitary& v, const BoundaryTriple& a, const BoundaryTriple& b) {
  return membership_check(v.matrix(), a, b);
}

Matrix tau_from_coordinates(const BoundaryTriple& a, const BoundaryTriple& b, const Matrix& coords) {
  const Subspace& t = a.parent().graph();
  const Subspace& tp = b.parent().graph();
  if (coords.rows() != tp.dim() || coords.cols() != t.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "tau coordinates must be " + std::to_string(tp.dim()) + "x" +
                                                   std::to_string(t.dim()));
  }
  return tp.frame() * coords * t.frame().adjoint();
}

Matrix sigma_from_coordinates(const BoundaryTriple& a, const BoundaryTriple& b, const Matrix& coords) {
  const Subspace n = reduce(a.parent(), a.t0()).graph();
  const Subspace& tp = b.parent().graph();
  if (coords.rows() != tp.dim() || coords.cols() != n.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "sigma coordinates must be " + std::to_string(tp.dim()) + "x" +
                                                   std::to_string(n.dim()));
  }
  return tp.frame() * coords * n.frame().adjoint();
}

Matrix theta_from_coordinates(const BoundaryTriple& b, const Matrix& coords) {
  const Subspace jt = image(j_hat(b.space().J()), b.parent().graph());
  if (coords.rows() != jt.dim() || coords.cols() != jt.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "Theta coordinates must be square of size " + std::to_string(jt.dim()));
  }
  return jt.frame() * coords * jt.frame().adjoint();
}

Matrix build_v_from_tau(const BoundaryTriple& a, const BoundaryTriple& b, const Matrix& tau) {
  require_same_boundary(a, b);
  const TripleFrames fa = triple_frames(a);
  const TripleFrames fb = triple_frames(b);
  if (tau.rows() != 2 * b.space().dim() || tau.cols() != 2 * a.space().dim()) {
    throw Error(ErrorKind::dimension_mismatch, "tau must map K to K'");
  }
  const Matrix t = tau * fa.t.projector();
  if (max_abs(t - fb.t.projector() * t) > kResidual * scale_of(t)) {
    throw Error(ErrorKind::precondition, "tau does not map T into T'");
  }
  if (numerical_rank(fb.t.frame().adjoint() * t * fa.t.frame()) != fb.t.dim()) {
    throw Error(ErrorKind::precondition, "tau is not surjective onto T'");
  }
  return (v0s_formula(fa, fb) + t) * a.tplus().graph().projector();
}

namespace {

Matrix bform(const TripleFrames& fa, const TripleFrames& fb, const Matrix& tau, const Matrix& sigma,
             const Matrix& w0) {
  const Matrix w0_inv = restricted_inverse(w0, fa.n, fb.n, ErrorKind::precondition, "w0");
  const Matrix pjt_b = fb.jt.projector();
  const Matrix& jh = fa.j_hat;
  const Matrix& jp = fb.j_hat;
  return jh * tau.adjoint() * jp * pjt_b + jh * sigma.adjoint() * jp * pjt_b + jh * w0_inv * jp * fb.jn.projector();
}

Matrix assemble(const TripleFrames& fa, const TripleFrames& fb, const Matrix& bmap, const Matrix& e) {
  const Matrix b_inv = restricted_inverse(bmap, fb.jt0, fa.jt0, ErrorKind::precondition, "B");
  return b_inv + I * fb.j_hat * e * b_inv + fb.j_hat * bmap.adjoint() * fa.j_hat * fa.t0.projector();
}

}  // namespace

Matrix assemble_standard_v(const BoundaryTriple& a, const BoundaryTriple& b, const Matrix& bmap, const Matrix& e) {
  require_same_boundary(a, b);
  const Index n2 = 2 * a.space().dim(), m2 = 2 * b.space().dim();
  if (bmap.rows() != n2 || bmap.cols() != m2) throw Error(ErrorKind::dimension_mismatch, "B must map K' to K");
  if (e.rows() != m2 || e.cols() != m2) throw Error(ErrorKind::dimension_mismatch, "E must act on K'");
  if (max_abs(e - e.adjoint()) > kResidual * scale_of(e)) throw Error(ErrorKind::not_selfadjoint, "E is not self-adjoint");
  return assemble(triple_frames(a), triple_frames(b), bmap, e);
}

StandardV build_standard_v(const BoundaryTriple& a, const BoundaryTriple& b, const Matrix& tau, const Matrix& theta,
                           const Matrix& sigma) {
  require_same_boundary(a, b);
  const TripleFrames fa = triple_frames(a);
  const TripleFrames fb = triple_frames(b);
  const Index n2 = 2 * a.space().dim(), m2 = 2 * b.space().dim();
  if (tau.rows() != m2 || tau.cols() != n2) throw Error(ErrorKind::dimension_mismatch, "tau must map K to K'");
  const Matrix th = theta.size() == 0 ? Matrix::Zero(m2, m2) : theta;
  const Matrix sg = sigma.size() == 0 ? Matrix::Zero(m2, n2) : sigma;
  if (th.rows() != m2 || th.cols() != m2) throw Error(ErrorKind::dimension_mismatch, "Theta must act on K'");
  if (sg.rows() != m2 || sg.cols() != n2) throw Error(ErrorKind::dimension_mismatch, "sigma must map K to K'");

  const Matrix pjt_b = fb.jt.projector();
  const Matrix pjn_b = fb.jn.projector();
  const Matrix& jp = fb.j_hat;

  MorphismData md;
  md.tau = tau * fa.t.projector();
  if (max_abs(md.tau - fb.t.projector() * md.tau) > kResidual * scale_of(md.tau)) {
    throw Error(ErrorKind::precondition, "tau does not map T into T'");
  }
  if (fa.t.dim() != fb.t.dim() || numerical_rank(fb.t.frame().adjoint() * md.tau * fa.t.frame()) != fb.t.dim()) {
    throw Error(ErrorKind::precondition, "tau is not a bijection T → T'");
  }
  md.sigma = sg * fa.n.projector();
  if (max_abs(md.sigma - fb.t.projector() * md.sigma) > kResidual * scale_of(md.sigma)) {
    throw Error(ErrorKind::precondition, "sigma does not map N into T'");
  }
  md.theta = pjt_b * th * pjt_b;
  if (max_abs(md.theta - th) > kResidual * scale_of(th)) {
    throw Error(ErrorKind::precondition, "Theta does not act in Ĵ'(T')");
  }
  if (max_abs(md.theta - md.theta.adjoint()) > kResidual * scale_of(md.theta)) {
    throw Error(ErrorKind::not_selfadjoint, "Theta is not self-adjoint");
  }
  const WMaps w = w_maps(a, b);
  md.w0 = w.w0;
  md.w1 = w.w1;
  md.w01 = fb.inv.g1_inv * (fa.inv.beta - fb.inv.beta) * fa.gamma0 * fa.jn.projector();
  md.bmap = bform(fa, fb, md.tau, md.sigma, md.w0);
  md.e0 = -I * jp * fb.inv.g1_inv * (fa.inv.beta - fb.inv.beta) * fb.gamma0 * pjn_b;
  md.e = md.e0 + md.theta;
  if (max_abs(md.e - md.e.adjoint()) > kResidual * scale_of(md.e)) {
    throw Error(ErrorKind::internal, "E is not self-adjoint");
  }
  const Matrix v = assemble(fa, fb, md.bmap, md.e);

  StandardV out;
  out.v = BlockUnitary::from_matrix(v, a.space(), b.space());
  out.data = md;
  out.vabcd = vabcd_residual(out.v);
  out.membership = membership_check(v, a, b);
  const double s = scale_of(v);
  if (out.vabcd > kResidual * s * s) {
    throw Error(ErrorKind::internal, "assembled V violates the block relations, residual " +
                                         std::to_string(out.vabcd));
  }
  if (!out.membership.relation_route || !out.membership.agree()) {
    throw Error(ErrorKind::internal, "assembled V is not in the solution set");
  }
  return out;
}

MorphismData extract_standard_parameters(const Matrix& v, const BoundaryTriple& a, const BoundaryTriple& b) {
  require_same_boundary(a, b);
  const TripleFrames fa = triple_frames(a);
  const TripleFrames fb = triple_frames(b);
  const Matrix& jh = fa.j_hat;
  const Matrix& jp = fb.j_hat;
  if (!equal(image(v, fa.t0), fb.t0)) throw Error(ErrorKind::precondition, "V does not map T0 onto T'0");
  MorphismData md;
  md.bmap = restricted_inverse(v, fa.jt0, fb.jt0, ErrorKind::precondition, "P V on Ĵ(T0)");
  const Matrix v12 = fb.t0.projector() * v * fa.jt0.projector();
  md.e = -I * jp * v12 * md.bmap;
  md.tau = v * fa.t.projector();
  const Matrix c = fa.jn.projector() * md.bmap * fb.jt.projector();
  md.sigma = jp * c.adjoint() * jh;
  md.theta = fb.jt.projector() * md.e * fb.jt.projector();
  md.e0 = fb.jn.projector() * md.e * fb.jn.projector();
  const Matrix w0_inv = jh * fa.jn.projector() * md.bmap * fb.jn.projector() * jp;
  md.w0 = restricted_inverse(w0_inv, fb.n, fa.n, ErrorKind::precondition, "w0^-1");
  md.w1 = fb.n.projector() * v * fa.n.projector();
  md.w01 = fb.n.projector() * v * fa.jn.projector();
  return md;
}

Matrix pencil(const BlockUnitary& v, cplx z) { return z * z * v.b + z * (v.a - v.d) - v.c; }

WeylCriterion weyl_equality_criterion(const IsometricBoundaryPair& pa, const IsometricBoundaryPair& pb,
                                      const LinearRelation& v, cplx z) {
  const KreinSpace& h = pa.a_star.src();
  const KreinSpace& hp = pb.a_star.src();
  WeylCriterion c;
  c.z = z;
  const Subspace pre = apply(inverse(v), scalar_relation(hp, z).graph());
  const LinearRelation r(h, h, sum(pa.kernel.graph(), pre));
  c.containment = contains(eigenspace(r, z), eigenspace(pa.a_star, z));

  const Subspace ma = apply(pa.gamma_rel, graph_eigenspace(pa.a_star, z).graph());
  const Subspace mb = apply(pb.gamma_rel, graph_eigenspace(pb.a_star, z).graph());
  c.weyl_gap = distance(ma, mb);
  c.weyl_equal = equal(ma, mb);

  const Subspace t = multivalued_part(adjoint(pa.gamma_rel));
  c.sufficiency_applies = equal(pa.kernel.graph(), t) && eigenspace(pa.kernel, z).is_zero();

  c.reduction_applies = intersect(pa.kernel.graph(), pre).is_zero() && eigenspace(pa.kernel, z).is_zero();
  if (c.reduction_applies) c.reduction_holds = equal(eigenspace(r, z), eigenspace(LinearRelation(h, h, pre), z));
  return c;
}

WeylCriterion weyl_equality_criterion(const BoundaryTriple& a, const BoundaryTriple& b, const BlockUnitary& v, cplx z) {
  const LinearRelation vr = v.relation();
  WeylCriterion c = weyl_equality_criterion(boundary_pair(a), boundary_pair(b), vr, z);
  const KreinSpace& h = a.space();
  const Subspace pre = apply(inverse(vr), scalar_relation(b.space(), z).graph());
  const Subspace direct = eigenspace(LinearRelation(h, h, pre), z);
  const Subspace ker = span(null_space(pencil(v, z)));
  c.pencil_agrees = equal(direct, ker);
  return c;
}

double weyl_discrepancy(const BoundaryTriple& a, const BoundaryTriple& b, cplx z) {
  const WeylValue wa = weyl(a, z);
  const WeylValue wb = weyl(b, z);
  if (wa.operator_form && wb.operator_form) return spectral_norm(*wa.operator_form - *wb.operator_form);
  return weyl_distance(wa, wb);
}

SimilarityResult reconstruct_similarity(const BoundaryTriple& a, const BoundaryTriple& b,
                                        const std::vector<cplx>& grid) {
  require_same_boundary(a, b);
  const KreinSpace& h = a.space();
  const KreinSpace& hp = b.space();
  if (h.dim() != hp.dim() || h.p() != hp.p()) {
    throw Error(ErrorKind::hypothesis, "the Krein spaces have different signatures, no standard unitary exists");
  }
  SimilarityResult r;

  for (const cplx z : grid) {
    const WeylValue wa = weyl(a, z);
    const WeylValue wb = weyl(b, z);
    double gap, bound;
    if (wa.operator_form && wb.operator_form) {
      gap = spectral_norm(*wa.operator_form - *wb.operator_form);
      bound = kWitness * (1.0 + spectral_norm(*wa.operator_form));
    } else {
      gap = weyl_distance(wa, wb);
      bound = kWitness;
    }
    if (gap > bound && gap > r.witness_gap) {
      r.witness = z;
      r.witness_gap = gap;
    }
  }
  if (r.witness) return r;

  std::vector<cplx> usable;
  for (const cplx z : grid) {
    if (spectral_probe(a.t0(), z).regular && spectral_probe(b.t0(), z).regular) {
      usable.push_back(z);
    } else {
      r.skipped.push_back(z);
    }
  }
  for (const cplx z : usable) {
    const bool has_conj = std::any_of(usable.begin(), usable.end(), [&](cplx w) { return std::abs(w - std::conj(z)) < 1e-14; });
    if (has_conj) {
      r.omega.push_back(z);
    } else {
      r.skipped.push_back(z);
    }
  }
  if (r.omega.empty()) throw Error(ErrorKind::hypothesis, "no grid point lies in ρ(T0) ∩ ρ(T'0)");
  for (const cplx z : r.omega) {
    if (!spectral_probe(a.t1(), z).regular || !spectral_probe(b.t1(), z).regular) r.t1_singular.push_back(z);
  }
  if (!r.t1_singular.empty()) r.notes.push_back("some points of Ω lie outside ρ(T1) ∩ ρ(T'1)");

  const Index n = h.dim(), d = a.boundary_dim();
  const Index cols = d * static_cast<Index>(r.omega.size());
  Matrix g(n, cols), gp(n, cols);
  for (std::size_t k = 0; k < r.omega.size(); ++k) {
    g.middleCols(static_cast<Index>(k) * d, d) = gamma_field(a, r.omega[k]);
    gp.middleCols(static_cast<Index>(k) * d, d) = gamma_field(b, r.omega[k]);
  }
  if (numerical_rank(g) != n || numerical_rank(gp) != n) {
    throw Error(ErrorKind::hypothesis, "the defect spaces over Ω do not span H (non-minimal realization)");
  }
  r.u = gp * g.completeOrthogonalDecomposition().pseudoInverse();
  r.lsq_residual = max_abs(r.u * g - gp) / scale_of(gp);
  if (r.lsq_residual > kResidual) {
    throw Error(ErrorKind::hypothesis, "the system γ'(z) = U γ(z) over Ω is inconsistent, residual " +
                                           std::to_string(r.lsq_residual));
  }
  const double us = scale_of(r.u);
  r.gram_residual = krein_unitarity_residual(r.u, h, hp);
  if (r.gram_residual > kResidual * us * us) {
    throw Error(ErrorKind::hypothesis, "the glued U is not a standard unitary, residual " +
                                           std::to_string(r.gram_residual));
  }
  const ResolventIdentityReport ra = resolvent_identities_check(a, r.omega);
  const ResolventIdentityReport rb = resolvent_identities_check(b, r.omega);
  r.isometry_residual = std::max(ra.isometry.max_residual, rb.isometry.max_residual);
  for (const cplx z : r.omega) {
    const Matrix lhs = r.u * resolvent_matrix(a.t0(), z);
    const Matrix rhs = resolvent_matrix(b.t0(), z) * r.u;
    r.intertwining_residual = std::max(r.intertwining_residual, max_abs(lhs - rhs));
  }

  const BlockUnitary ut = diagonal_lift(r.u, h, hp);
  const Matrix utm = ut.matrix();
  r.t_distance = distance(image(utm, a.parent().graph()), b.parent().graph());
  if (!(r.t_distance <= tolerance().angle_tol)) {
    throw Error(ErrorKind::hypothesis, "T' differs from Ũ(T), distance " + std::to_string(r.t_distance));
  }

  const TripleFrames fa = triple_frames(a);
  const TripleFrames fb = triple_frames(b);
  const MorphismData md = extract_standard_parameters(utm, a, b);
  r.bform_residual = max_abs(md.bmap - bform(fa, fb, md.tau, md.sigma, w_maps(a, b).w0));
  r.e_cross = spectral_norm(fb.jt.projector() * md.e * fb.jn.projector());
  const Matrix u_inv = h.J() * r.u.adjoint() * hp.J();
  const Matrix lift_inv = block_diag(u_inv, u_inv);
  const Matrix v = assemble(fa, fb, md.bmap, 0.5 * (md.e + md.e.adjoint()));
  const BlockUnitary wb = BlockUnitary::from_matrix(lift_inv * v, h, h);
  r.w_offdiag = std::max(spectral_norm(wb.b), spectral_norm(wb.c));
  r.k = wb.a;
  r.k_gram_residual = krein_unitarity_residual(r.k, h, h);
  if (r.w_offdiag > kResidual) r.notes.push_back("W = Ũ^-1 V has nonzero off-diagonal blocks");

  const Matrix e_split = md.e0 + 0.5 * (md.theta + md.theta.adjoint());
  const BlockUnitary wr = BlockUnitary::from_matrix(lift_inv * assemble(fa, fb, md.bmap, e_split), h, h);
  r.restricted_w_offdiag = std::max(spectral_norm(wr.b), spectral_norm(wr.c));
  if (r.e_cross > kResidual) r.notes.push_back("the recovered E is not of the form E0 ⊕ Θ");

  const Matrix total = r.u * r.k;
  const MembershipReport fin = membership_check(diagonal_lift(total, h, hp), a, b);
  r.final_distance = fin.distance;
  if (!(fin.distance < 1e-7)) {
    throw Error(ErrorKind::hypothesis, "Γ' = Γ Ũ^-1 fails for the recovered U, distance " +
                                           std::to_string(fin.distance));
  }
  r.unitary = total;
  return r;
}

WInvarianceReport w_invariance_audit(const BoundaryTriple& a, const BoundaryTriple& b, const Matrix& u,
                                     const Matrix& v, const std::vector<cplx>& grid) {
  const KreinSpace& h = a.space();
  if (u.cols() != h.dim() || u.rows() != b.space().dim()) {
    throw Error(ErrorKind::dimension_mismatch, "w_invariance_audit: U must map H to H'");
  }
  const Matrix u_inv = h.J() * u.adjoint() * b.space().J();
  const Matrix w = block_diag(u_inv, u_inv) * v;
  WInvarianceReport r;
  const Subspace& t = a.parent().graph();
  r.t_distance = distance(image(w, t), t);
  r.t_invariant = r.t_distance <= tolerance().angle_tol;
  for (const cplx z : grid) {
    if (!eigenspace(a.parent(), z).is_zero()) continue;
    ++r.checked;
    const Subspace nz = graph_eigenspace(a.tplus(), z).graph();
    const double dist = distance(image(w, nz), nz);
    r.max_distance = std::max(r.max_distance, dist);
    if (!(dist <= tolerance().angle_tol)) r.failed_points.push_back(z);
  }
  return r;
}

}  // namespace kreinrel
