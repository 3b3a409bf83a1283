#include "kreinrel/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace kreinrel {

namespace {

const cplx I(0, 1);
constexpr double kWeylMatch = 1e-8;

// iĴ∘ = [[0, I], [-I, 0]]: the Green form on L².
Matrix green_form(Index d) {
  Matrix s = Matrix::Zero(2 * d, 2 * d);
  s.topRightCorner(d, d) = Matrix::Identity(d, d);
  s.bottomLeftCorner(d, d) = -Matrix::Identity(d, d);
  return s;
}

Matrix invert_square(const Matrix& m, const char* what) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return Matrix(m.cols(), m.rows());
  if (m.rows() != m.cols() || s(s.size() - 1) <= 1e-10 * std::max(1.0, s(0))) {
    throw Error(ErrorKind::invalid_triple, std::string(what) + " is singular");
  }
  return svd.solve(Matrix::Identity(m.rows(), m.rows()));
}

bool in_grid(const std::vector<cplx>& grid, cplx z) {
  return std::any_of(grid.begin(), grid.end(), [&](cplx w) { return std::abs(w - z) <= 1e-14 * (1 + std::abs(z)); });
}

bool regular_type_sym(const LinearRelation& t, cplx z) {
  return eigenspace(t, z).is_zero() && eigenspace(t, std::conj(z)).is_zero();
}

}  // namespace

Matrix BoundaryTriple::boundary_values(const Matrix& vectors) const { return gamma_ * (coord_ * vectors); }

double green_residual(const KreinSpace& space, const Matrix& basis, const Matrix& gamma) {
  const Index d = gamma.rows() / 2;
  const Matrix lhs = basis.adjoint() * (I * j_hat(space.J())) * basis;
  const Matrix rhs = gamma.adjoint() * green_form(d) * gamma;
  return max_abs(lhs - rhs);
}

BoundaryTriple validate_triple(const LinearRelation& t, const Matrix& gamma, const Matrix& basis) {
  if (!t.is_endo()) throw Error(ErrorKind::host_mismatch, "validate_triple needs a relation in one space");
  require_finite(gamma, "gamma");
  require_finite(basis, "T+ basis");
  const Index n = t.src_dim();
  if (!is_symmetric(t)) throw Error(ErrorKind::not_symmetric, "validate_triple: T is not symmetric");
  const DefectNumbers dn = defect_numbers(t);
  if (!dn.equal()) throw Error(ErrorKind::invalid_triple, "T has unequal defect numbers");
  if (dn.plus == 0) throw Error(ErrorKind::invalid_triple, "T is self-adjoint, so the boundary space would be {0}");
  const Index d = dn.plus;

  BoundaryTriple b;
  b.parent_ = t;
  b.tplus_ = adjoint(t);
  b.d_ = d;
  const Index m = b.tplus_.dim();
  if (basis.rows() != 2 * n || basis.cols() != m) {
    throw Error(ErrorKind::dimension_mismatch, "T+ basis must be " + std::to_string(2 * n) + "x" + std::to_string(m) +
                                                   ", got " + std::to_string(basis.rows()) + "x" +
                                                   std::to_string(basis.cols()));
  }
  if (gamma.rows() != 2 * d || gamma.cols() != m) {
    throw Error(ErrorKind::dimension_mismatch, "gamma must be " + std::to_string(2 * d) + "x" + std::to_string(m) +
                                                   ", got " + std::to_string(gamma.rows()) + "x" +
                                                   std::to_string(gamma.cols()));
  }
  if (numerical_rank(basis) != m || !equal(span(basis), b.tplus_.graph())) {
    throw Error(ErrorKind::invalid_triple, "the supplied basis does not span T+");
  }
  if (numerical_rank(gamma) != 2 * d) throw Error(ErrorKind::invalid_triple, "gamma is not surjective onto L²");
  b.basis_ = basis;
  b.gamma_ = gamma;
  b.coord_ = basis.completeOrthogonalDecomposition().pseudoInverse();
  b.green_residual_ = green_residual(t.src(), basis, gamma);
  if (b.green_residual_ > 1e-10 * (1.0 + spectral_norm(gamma))) {
    throw Error(ErrorKind::invalid_triple, "Green identity fails, residual " + std::to_string(b.green_residual_));
  }
  b.t0_ = LinearRelation(t.src(), t.tgt(), span(basis * null_space(b.gamma0())));
  b.t1_ = LinearRelation(t.src(), t.tgt(), span(basis * null_space(b.gamma1())));
  if (!is_selfadjoint(b.t0_)) throw Error(ErrorKind::invalid_triple, "ker Γ0 is not self-adjoint");
  if (!is_selfadjoint(b.t1_)) throw Error(ErrorKind::invalid_triple, "ker Γ1 is not self-adjoint");
  if (!equal(intersect(b.t0_.graph(), b.t1_.graph()), t.graph())) {
    throw Error(ErrorKind::invalid_triple, "T0 ∩ T1 differs from T");
  }
  if (!equal(sum(b.t0_.graph(), b.t1_.graph()), b.tplus_.graph())) {
    throw Error(ErrorKind::invalid_triple, "T0 + T1 differs from T+");
  }
  return b;
}

IsometricBoundaryPair make_pair(const KreinSpace& space, const Matrix& basis, const Matrix& gamma) {
  if (basis.rows() != 2 * space.dim() || gamma.cols() != basis.cols() || gamma.rows() % 2 != 0) {
    throw Error(ErrorKind::dimension_mismatch, "make_pair: basis and gamma do not fit");
  }
  const Index d = gamma.rows() / 2;
  Matrix stacked(basis.rows() + gamma.rows(), basis.cols());
  stacked << basis, gamma;
  const KreinSpace k = doubled(space).space;
  const KreinSpace l = doubled(KreinSpace::hilbert(d)).space;
  IsometricBoundaryPair p;
  p.boundary_dim = d;
  p.gamma_rel = LinearRelation(k, l, span(stacked));
  p.a_star = LinearRelation(space, space, span(basis));
  const Matrix ker = gamma.rows() == 0 ? Matrix::Identity(basis.cols(), basis.cols()) : null_space(gamma);
  p.kernel = LinearRelation(space, space, span(basis * ker));
  return p;
}

IsometricBoundaryPair boundary_pair(const BoundaryTriple& triple) {
  return make_pair(triple.space(), triple.basis(), triple.gamma());
}

IsometricBoundaryPair restrict_pair(const BoundaryTriple& triple, const Subspace& a) {
  if (!contains(triple.tplus().graph(), a)) throw Error(ErrorKind::precondition, "restrict_pair: A is not inside T+");
  return make_pair(triple.space(), a.frame(), triple.boundary_values(a.frame()));
}

PairFlags pair_isometry_check(const IsometricBoundaryPair& pair) {
  const LinearRelation adj = adjoint(pair.gamma_rel);
  const LinearRelation inv = inverse(pair.gamma_rel);
  PairFlags f;
  f.isometric = contains(adj, inv);
  f.unitary = f.isometric && equal(adj, inv);
  return f;
}

WeylValue weyl(const BoundaryTriple& triple, cplx z) {
  const Index d = triple.boundary_dim();
  const KreinSpace l = KreinSpace::hilbert(d);
  const Matrix f = graph_eigenspace(triple.tplus(), z).graph().frame();
  const Matrix v = triple.boundary_values(f);
  WeylValue w{z, from_pairs(v.topRows(d), v.bottomRows(d), l, l), std::nullopt};
  if (w.relation.dim() == d && is_operator(w.relation)) w.operator_form = operator_matrix(w.relation);
  return w;
}

Matrix weyl_matrix(const BoundaryTriple& triple, cplx z) {
  WeylValue w = weyl(triple, z);
  if (!w.operator_form) throw Error(ErrorKind::not_regular, "M(z) is not an everywhere defined operator at this z");
  return *w.operator_form;
}

Matrix gamma_hat(const BoundaryTriple& triple, cplx z) {
  if (!spectral_probe(triple.t0(), z).regular) throw Error(ErrorKind::not_regular, "z is not in ρ(T0)");
  const Matrix f = graph_eigenspace(triple.tplus(), z).graph().frame();
  const Matrix g0 = triple.boundary_values(f).topRows(triple.boundary_dim());
  if (g0.rows() != g0.cols()) throw Error(ErrorKind::internal, "dim 𝔑_z(T+) differs from d at a regular point");
  return f * invert_square(g0, "Γ0 on the defect graph");
}

Matrix gamma_field(const BoundaryTriple& triple, cplx z) {
  return gamma_hat(triple, z).topRows(triple.space().dim());
}

InverseBoundaryData inverse_boundary(const BoundaryTriple& triple) {
  const Index d = triple.boundary_dim();
  InverseBoundaryData out;
  out.n = reduce(triple.parent(), triple.t0());
  out.jn = image(j_hat(triple.space().J()), out.n.graph());
  const Matrix fjn = out.jn.frame();
  const Matrix fn = out.n.graph().frame();
  out.g0_inv = fjn * invert_square(triple.boundary_values(fjn).topRows(d), "Γ0 restricted to Ĵ(N)");
  out.g1_inv = fn * invert_square(triple.boundary_values(fn).bottomRows(d), "Γ1 restricted to N");
  out.beta = triple.boundary_values(out.g0_inv).bottomRows(d);
  if (max_abs(out.beta - out.beta.adjoint()) > 1e-8 * (1.0 + max_abs(out.beta))) {
    throw Error(ErrorKind::invalid_triple, "β is not Hermitian");
  }
  return out;
}

InverseIdentityReport inverse_identities_check(const BoundaryTriple& triple, const std::vector<cplx>& grid) {
  const InverseBoundaryData inv = inverse_boundary(triple);
  const Index d = triple.boundary_dim();
  const Matrix pjn = inv.jn.projector();
  const Matrix pn = inv.n.graph().projector();
  InverseIdentityReport r;
  for (const cplx z : grid) {
    if (!spectral_probe(triple.t0(), z).regular) continue;
    ++r.checked;
    const Matrix gh = gamma_hat(triple, z);
    const Matrix m = triple.boundary_values(gh).bottomRows(d);
    r.jn_residual = std::max(r.jn_residual, max_abs(pjn * gh - inv.g0_inv));
    r.n_residual = std::max(r.n_residual, max_abs(pn * gh - inv.g1_inv * (m - inv.beta)));
  }
  return r;
}

double boundary_unitarity_residual(const Matrix& x) {
  if (x.rows() != x.cols() || x.rows() % 2 != 0) {
    throw Error(ErrorKind::dimension_mismatch, "boundary transform must be square of even size");
  }
  const Matrix s = green_form(x.rows() / 2);
  return max_abs(x.adjoint() * s * x - s);
}

BoundaryTriple transform(const BoundaryTriple& triple, const Matrix& x) {
  if (x.rows() != 2 * triple.boundary_dim()) {
    throw Error(ErrorKind::dimension_mismatch, "transform: X must be " + std::to_string(2 * triple.boundary_dim()) +
                                                   " square");
  }
  const double res = boundary_unitarity_residual(x);
  if (res > 1e-10 * (1.0 + max_abs(x) * max_abs(x))) {
    throw Error(ErrorKind::invalid_triple, "X does not preserve the boundary form, residual " + std::to_string(res));
  }
  return validate_triple(triple.parent(), x * triple.gamma(), triple.basis());
}

Matrix beta_shift_matrix(const Matrix& beta) { return k_shift_matrix(beta); }

Matrix transpose_matrix(Index d) { return green_form(d); }

Matrix k_shift_matrix(const Matrix& k) {
  const Index d = k.rows();
  Matrix x = Matrix::Identity(2 * d, 2 * d);
  x.bottomLeftCorner(d, d) = -k;
  return x;
}

Matrix scaling_matrix(Index d, double kappa) {
  Matrix x = Matrix::Zero(2 * d, 2 * d);
  x.topLeftCorner(d, d) = Matrix::Identity(d, d) / kappa;
  x.bottomRightCorner(d, d) = kappa * Matrix::Identity(d, d);
  return x;
}

BoundaryTriple beta_shift(const BoundaryTriple& triple) {
  const InverseBoundaryData inv = inverse_boundary(triple);
  return transform(triple, beta_shift_matrix(0.5 * (inv.beta + inv.beta.adjoint())));
}

BoundaryTriple transposed(const BoundaryTriple& triple) {
  return transform(triple, transpose_matrix(triple.boundary_dim()));
}

LinearRelation t_theta(const BoundaryTriple& triple, const LinearRelation& theta) {
  if (theta.src_dim() != triple.boundary_dim() || theta.tgt_dim() != triple.boundary_dim()) {
    throw Error(ErrorKind::dimension_mismatch, "t_theta: Θ does not live in the boundary space");
  }
  const Subspace coords = preimage(triple.gamma(), theta.graph());
  const LinearRelation& t = triple.parent();
  return LinearRelation(t.src(), t.tgt(), image(triple.basis(), coords));
}

GridReport weyl_symmetry_check(const BoundaryTriple& triple, const std::vector<cplx>& grid) {
  GridReport r;
  for (const cplx z : grid) {
    if (is_real(z) || !in_grid(grid, std::conj(z))) {
      r.skipped.push_back(z);
      continue;
    }
    ++r.checked;
    const WeylValue a = weyl(triple, z);
    const WeylValue b = weyl(triple, std::conj(z));
    double res;
    if (a.operator_form && b.operator_form) {
      res = max_abs(a.operator_form->adjoint() - *b.operator_form);
    } else {
      res = distance(adjoint(a.relation, Metric::hilbert), b.relation);
    }
    r.max_residual = std::max(r.max_residual, res);
  }
  return r;
}

ResolventIdentityReport resolvent_identities_check(const BoundaryTriple& triple, const std::vector<cplx>& grid) {
  ResolventIdentityReport r;
  const Matrix& j = triple.space().J();
  std::vector<cplx> regular;
  for (const cplx z : grid) {
    if (spectral_probe(triple.t0(), z).regular && spectral_probe(triple.t0(), std::conj(z)).regular) {
      regular.push_back(z);
    } else {
      r.gamma_shift.skipped.push_back(z);
      r.krein_naimark.skipped.push_back(z);
      r.isometry.skipped.push_back(z);
    }
  }
  for (const cplx z : regular) {
    const Matrix gz = gamma_field(triple, z);
    const Matrix r0 = resolvent_matrix(triple.t0(), z);
    for (const cplx z0 : regular) {
      if (z0 == z) continue;
      const Matrix gz0 = gamma_field(triple, z0);
      ++r.gamma_shift.checked;
      r.gamma_shift.max_residual =
          std::max(r.gamma_shift.max_residual, max_abs(gz - gz0 - (z - z0) * r0 * gz0));
      ++r.isometry.checked;
      const Matrix lhs = (std::conj(z) - z0) * gz.adjoint() * j * gz0;
      const Matrix rhs = weyl_matrix(triple, std::conj(z)) - weyl_matrix(triple, z0);
      r.isometry.max_residual = std::max(r.isometry.max_residual, max_abs(lhs - rhs));
    }
    if (!spectral_probe(triple.t1(), z).regular) {
      r.krein_naimark.skipped.push_back(z);
      continue;
    }
    ++r.krein_naimark.checked;
    const Matrix r1 = resolvent_matrix(triple.t1(), z);
    const Matrix m = weyl_matrix(triple, z);
    const Matrix gbar = gamma_field(triple, std::conj(z));
    const Matrix rhs = r0 - gz * m.fullPivLu().solve(gbar.adjoint() * j);
    r.krein_naimark.max_residual = std::max(r.krein_naimark.max_residual, max_abs(r1 - rhs));
  }
  return r;
}

double weyl_distance(const WeylValue& a, const WeylValue& b) { return distance(a.relation, b.relation); }

TransferReport ddttp_check(const BoundaryTriple& a, const BoundaryTriple& b, const std::vector<cplx>& grid) {
  if (a.boundary_dim() != b.boundary_dim()) throw Error(ErrorKind::dimension_mismatch, "boundary spaces differ");
  TransferReport r;
  std::vector<cplx> agree;
  for (const cplx z : grid) {
    if (weyl_distance(weyl(a, z), weyl(b, z)) <= kWeylMatch) agree.push_back(z);
  }
  for (const cplx z : agree) {
    if (in_grid(agree, std::conj(z))) r.omega.push_back(z);
  }
  for (int i = 0; i < 2; ++i) {
    const LinearRelation& ti = i == 0 ? a.t0() : a.t1();
    const LinearRelation& tpi = i == 0 ? b.t0() : b.t1();
    bool any_a = false, any_b = false;
    for (const cplx z : r.omega) {
      const bool ra = spectral_probe(ti, z).regular;
      const bool rb = spectral_probe(tpi, z).regular;
      any_a = any_a || ra;
      any_b = any_b || rb;
      const bool s1 = ra && rb;
      const bool s2 = ra && regular_type_sym(b.parent(), z);
      const bool s3 = rb && regular_type_sym(a.parent(), z);
      if (s1 != s2 || s1 != s3) r.holds[i] = false;
    }
    r.applicable[i] = any_a && any_b;
    if (!r.applicable[i]) r.holds[i] = true;
  }
  return r;
}

KShiftReport k_shift_check(const BoundaryTriple& a, const BoundaryTriple& b) {
  if (!equal(a.parent(), b.parent()) || a.boundary_dim() != b.boundary_dim()) {
    throw Error(ErrorKind::host_mismatch, "k_shift_check: triples belong to different relations");
  }
  const Index d = a.boundary_dim();
  const Matrix f = a.tplus().graph().frame();
  const Matrix va = a.boundary_values(f);
  const Matrix vb = b.boundary_values(f);
  const Matrix g0 = va.topRows(d);
  const Matrix diff = va.bottomRows(d) - vb.bottomRows(d);
  // K Γ0 = Γ1 - Γ'1 on T+.
  const Matrix k = g0.transpose().completeOrthogonalDecomposition().solve(diff.transpose()).transpose();
  KShiftReport r;
  r.k_residual = max_abs(k * g0 - diff);
  if (r.k_residual <= 1e-9 * (1.0 + max_abs(diff))) r.k = k;
  const LinearRelation n = reduce(a.parent(), a.t0());
  const Matrix fn = n.graph().frame();
  r.n_residual = max_abs(a.boundary_values(fn).bottomRows(d) - b.boundary_values(fn).bottomRows(d));
  return r;
}

}  // namespace kreinrel
