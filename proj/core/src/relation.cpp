#include "kreinrel/relation.hpp"

#include <cmath>

namespace kreinrel {

namespace {

const cplx I(0, 1);

void require_same(const KreinSpace& a, const KreinSpace& b, const char* op) {
  if (!same_space(a, b)) throw Error(ErrorKind::host_mismatch, std::string(op) + ": host spaces differ");
}

void require_endo(const LinearRelation& t, const char* op) {
  if (!t.is_endo()) throw Error(ErrorKind::host_mismatch, std::string(op) + " needs a relation in one space");
}

Matrix top(const LinearRelation& t) { return t.graph().frame().topRows(t.src_dim()); }
Matrix bottom(const LinearRelation& t) { return t.graph().frame().bottomRows(t.tgt_dim()); }

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// Graph under an invertible map of the doubled space.
Subspace transform_graph(const Matrix& m, const Subspace& g) { return image(m, g); }

}  // namespace

LinearRelation::LinearRelation(KreinSpace src, KreinSpace tgt, Subspace graph)
    : src_(std::move(src)), tgt_(std::move(tgt)), graph_(std::move(graph)) {
  if (graph_.ambient_dim() != src_.dim() + tgt_.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "graph lives in C^" + std::to_string(graph_.ambient_dim()) +
                                                   ", hosts need C^" + std::to_string(src_.dim() + tgt_.dim()));
  }
}

bool LinearRelation::is_endo() const { return same_space(src_, tgt_); }

LinearRelation from_operator(const Matrix& m, const KreinSpace& src, const KreinSpace& tgt) {
  if (m.rows() != tgt.dim() || m.cols() != src.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "operator is " + std::to_string(m.rows()) + "x" +
                                                   std::to_string(m.cols()) + ", hosts need " +
                                                   std::to_string(tgt.dim()) + "x" + std::to_string(src.dim()));
  }
  require_finite(m, "operator");
  Matrix g(src.dim() + tgt.dim(), src.dim());
  g << Matrix::Identity(src.dim(), src.dim()), m;
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
  return LinearRelation(src, tgt, Subspace::from_orthonormal(std::move(q)));
}

LinearRelation from_operator(const Matrix& m, const KreinSpace& space) { return from_operator(m, space, space); }

LinearRelation from_pairs(const Matrix& dom, const Matrix& ran, const KreinSpace& src, const KreinSpace& tgt) {
  if (dom.rows() != src.dim() || ran.rows() != tgt.dim() || dom.cols() != ran.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "from_pairs: pair blocks do not match the hosts");
  }
  Matrix g(src.dim() + tgt.dim(), dom.cols());
  g << dom, ran;
  return LinearRelation(src, tgt, span(g));
}

LinearRelation zero_relation(const KreinSpace& src, const KreinSpace& tgt) {
  return LinearRelation(src, tgt, Subspace::zero(src.dim() + tgt.dim()));
}

LinearRelation product_relation(const Subspace& a, const Subspace& b, const KreinSpace& src, const KreinSpace& tgt) {
  return LinearRelation(src, tgt, product(a, b));
}

LinearRelation scalar_relation(const KreinSpace& space, cplx z) {
  const Index n = space.dim();
  Matrix g(2 * n, n);
  g << Matrix::Identity(n, n), z * Matrix::Identity(n, n);
  g /= std::sqrt(1.0 + std::norm(z));
  return LinearRelation(space, space, Subspace::from_orthonormal(std::move(g)));
}

Subspace domain(const LinearRelation& t) { return span_cutoff(top(t), geometric_cutoff()); }

Subspace range(const LinearRelation& t) { return span_cutoff(bottom(t), geometric_cutoff()); }

Subspace kernel(const LinearRelation& t) {
  // Graph vectors whose second component vanishes; their first component has unit length.
  const Matrix k = kernel_cutoff(bottom(t), geometric_cutoff());
  if (k.cols() == 0) return Subspace::zero(t.src_dim());
  return span(top(t) * k);
}

Subspace multivalued_part(const LinearRelation& t) {
  const Matrix k = kernel_cutoff(top(t), geometric_cutoff());
  if (k.cols() == 0) return Subspace::zero(t.tgt_dim());
  return span(bottom(t) * k);
}

RelationParts parts(const LinearRelation& t) { return {domain(t), range(t), kernel(t), multivalued_part(t)}; }

bool is_operator(const LinearRelation& t) { return multivalued_part(t).is_zero(); }

bool equal(const LinearRelation& a, const LinearRelation& b) { return equal(a.graph(), b.graph()); }

bool contains(const LinearRelation& a, const LinearRelation& b) { return contains(a.graph(), b.graph()); }

double distance(const LinearRelation& a, const LinearRelation& b) { return distance(a.graph(), b.graph()); }

LinearRelation inverse(const LinearRelation& t) {
  Matrix g(t.graph().ambient_dim(), t.dim());
  g << bottom(t), top(t);
  return LinearRelation(t.tgt(), t.src(), Subspace::from_orthonormal(std::move(g)));
}

LinearRelation restrict(const LinearRelation& t, const Subspace& l) {
  if (l.ambient_dim() != t.src_dim()) throw Error(ErrorKind::dimension_mismatch, "restrict: subspace not in the domain space");
  return LinearRelation(t.src(), t.tgt(), intersect(t.graph(), product(l, Subspace::full(t.tgt_dim()))));
}

LinearRelation compose(const LinearRelation& s, const LinearRelation& r) {
  require_same(r.tgt(), s.src(), "compose");
  const Index nx = r.src_dim(), ny = r.tgt_dim(), nz = s.tgt_dim();
  const Subspace rr = product(r.graph(), Subspace::full(nz));
  const Subspace ss = product(Subspace::full(nx), s.graph());
  const Matrix f = intersect(rr, ss).frame();
  Matrix xz(nx + nz, f.cols());
  xz << f.topRows(nx), f.bottomRows(nz);
  (void)ny;
  return LinearRelation(r.src(), s.tgt(), span_cutoff(xz, geometric_cutoff()));
}

LinearRelation shift(const LinearRelation& t, cplx z) {
  require_endo(t, "shift");
  const Index n = t.src_dim();
  Matrix m = Matrix::Identity(2 * n, 2 * n);
  m.bottomLeftCorner(n, n) = -z * Matrix::Identity(n, n);
  return LinearRelation(t.src(), t.tgt(), transform_graph(m, t.graph()));
}

LinearRelation left_multiply(const Matrix& m, const LinearRelation& t, const KreinSpace& new_tgt) {
  if (m.cols() != t.tgt_dim() || m.rows() != new_tgt.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "left_multiply: matrix does not fit the target spaces");
  }
  const Matrix d = block_diag(Matrix::Identity(t.src_dim(), t.src_dim()), m);
  return LinearRelation(t.src(), new_tgt, image(d, t.graph()));
}

LinearRelation right_multiply(const LinearRelation& t, const Matrix& m, const KreinSpace& new_src) {
  if (m.rows() != t.src_dim() || m.cols() != new_src.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "right_multiply: matrix does not fit the source spaces");
  }
  // {(M f, f')} with f in dom T: preimage of T under diag(M, I).
  const Matrix d = block_diag(m, Matrix::Identity(t.tgt_dim(), t.tgt_dim()));
  return LinearRelation(new_src, t.tgt(), preimage(d, t.graph()));
}

LinearRelation scale(const LinearRelation& t, cplx c) {
  if (c == cplx(0)) return product_relation(domain(t), Subspace::zero(t.tgt_dim()), t.src(), t.tgt());
  return left_multiply(c * Matrix::Identity(t.tgt_dim(), t.tgt_dim()), t, t.tgt());
}

Subspace apply(const LinearRelation& t, const Subspace& x) { return range(restrict(t, x)); }

ComponentwiseSum cw_sum(const LinearRelation& a, const LinearRelation& b) {
  require_same(a.src(), b.src(), "cw_sum");
  require_same(a.tgt(), b.tgt(), "cw_sum");
  ComponentwiseSum out{LinearRelation(a.src(), a.tgt(), sum(a.graph(), b.graph())), false};
  out.orthogonal = overlap(a.graph(), b.graph()) <= tolerance().angle_tol;
  return out;
}

LinearRelation op_sum(const LinearRelation& a, const LinearRelation& b) {
  require_same(a.src(), b.src(), "op_sum");
  require_same(a.tgt(), b.tgt(), "op_sum");
  const Index nx = a.src_dim(), ny = a.tgt_dim();
  // Coordinates (f, f', g'): first copy of the target holds A's value, second holds B's.
  const Subspace aa = product(a.graph(), Subspace::full(ny));
  const Matrix bf = b.graph().frame();
  Matrix bb = Matrix::Zero(nx + 2 * ny, b.dim() + ny);
  bb.topLeftCorner(nx, b.dim()) = bf.topRows(nx);
  bb.block(nx, b.dim(), ny, ny) = Matrix::Identity(ny, ny);
  bb.bottomLeftCorner(ny, b.dim()) = bf.bottomRows(ny);
  const Matrix f = intersect(aa, Subspace::from_orthonormal(std::move(bb))).frame();
  Matrix out(nx + ny, f.cols());
  out << f.topRows(nx), f.middleRows(nx, ny) + f.bottomRows(ny);
  return LinearRelation(a.src(), a.tgt(), span_cutoff(out, geometric_cutoff()));
}

LinearRelation operator_part(const LinearRelation& t) {
  const Subspace m = complement(multivalued_part(t));
  return LinearRelation(t.src(), t.tgt(), intersect(t.graph(), product(Subspace::full(t.src_dim()), m)));
}

LinearRelation adjoint(const LinearRelation& t, Metric metric) {
  const Index ns = t.src_dim(), nt = t.tgt_dim();
  const Matrix js = metric == Metric::krein ? t.src().J() : Matrix::Identity(ns, ns);
  const Matrix jt = metric == Metric::krein ? t.tgt().J() : Matrix::Identity(nt, nt);
  // (g, g') ∈ T+ iff it is Euclidean-orthogonal to (-Jt f', Js f) for all (f, f') ∈ T.
  Matrix q = Matrix::Zero(nt + ns, ns + nt);
  q.topRightCorner(nt, nt) = -jt;
  q.bottomLeftCorner(ns, ns) = js;
  const Subspace rotated = Subspace::from_orthonormal(q * t.graph().frame());
  return LinearRelation(t.tgt(), t.src(), complement(rotated));
}

bool is_symmetric(const LinearRelation& t, Metric metric) {
  require_endo(t, "is_symmetric");
  return contains(adjoint(t, metric).graph(), t.graph());
}

bool is_selfadjoint(const LinearRelation& t, Metric metric) {
  require_endo(t, "is_selfadjoint");
  return equal(adjoint(t, metric).graph(), t.graph());
}

Subspace eigenspace(const LinearRelation& t, cplx z) {
  require_endo(t, "eigenspace");
  const Subspace g = intersect(t.graph(), scalar_relation(t.src(), z).graph());
  if (g.is_zero()) return Subspace::zero(t.src_dim());
  return span(g.frame().topRows(t.src_dim()));
}

LinearRelation graph_eigenspace(const LinearRelation& t, cplx z) {
  require_endo(t, "graph_eigenspace");
  return LinearRelation(t.src(), t.tgt(), intersect(t.graph(), scalar_relation(t.src(), z).graph()));
}

SpectralProbe spectral_probe(const LinearRelation& t, cplx z) {
  SpectralProbe p;
  p.eigenvalue = !eigenspace(t, z).is_zero();
  p.regular_type = !p.eigenvalue;
  p.regular = p.regular_type && range(shift(t, z)).dim() == t.tgt_dim();
  return p;
}

Matrix operator_matrix(const LinearRelation& t) {
  if (t.dim() != t.src_dim() || !is_operator(t)) {
    throw Error(ErrorKind::precondition, "relation is not an everywhere defined operator");
  }
  const Matrix f1 = top(t);
  const Matrix f2 = bottom(t);
  Eigen::FullPivLU<Matrix> lu(f1.transpose());
  if (lu.rank() < f1.rows()) throw Error(ErrorKind::precondition, "relation is not everywhere defined");
  return lu.solve(f2.transpose()).transpose();
}

Resolvent resolvent(const LinearRelation& t, cplx z) {
  Resolvent r{inverse(shift(t, z)), std::nullopt};
  if (spectral_probe(t, z).regular) r.matrix = operator_matrix(r.relation);
  return r;
}

Matrix resolvent_matrix(const LinearRelation& t, cplx z) {
  Resolvent r = resolvent(t, z);
  if (!r.matrix) {
    throw Error(ErrorKind::not_regular, "z = (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                                            ") is not a regular point");
  }
  return *r.matrix;
}

LinearRelation hilbert_form(const LinearRelation& t) {
  require_endo(t, "hilbert_form");
  const Index n = t.src_dim();
  const KreinSpace h = KreinSpace::hilbert(n);
  const Matrix d = block_diag(Matrix::Identity(n, n), t.tgt().J());
  return LinearRelation(h, h, Subspace::from_orthonormal(d * t.graph().frame()));
}

LinearRelation krein_form(const LinearRelation& th, const KreinSpace& space) {
  if (th.src_dim() != space.dim() || th.tgt_dim() != space.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "krein_form: relation and space differ in dimension");
  }
  const Index n = space.dim();
  const Matrix d = block_diag(Matrix::Identity(n, n), space.J());
  return LinearRelation(space, space, Subspace::from_orthonormal(d * th.graph().frame()));
}

LinearRelation cayley_relation(const LinearRelation& th) {
  require_endo(th, "cayley_relation");
  const Index n = th.src_dim();
  const Matrix id = Matrix::Identity(n, n);
  Matrix m(2 * n, 2 * n);
  m << I * id, id, -I * id, id;
  m /= std::sqrt(2.0);
  return LinearRelation(th.src(), th.tgt(), Subspace::from_orthonormal(m * th.graph().frame()));
}

LinearRelation inverse_cayley_relation(const LinearRelation& c) {
  require_endo(c, "inverse_cayley_relation");
  const Index n = c.src_dim();
  const Matrix id = Matrix::Identity(n, n);
  // (u, v) -> ((u - v)/(2i), (u + v)/2), rescaled to a unitary.
  Matrix m(2 * n, 2 * n);
  m << -I * id, I * id, id, id;
  m /= std::sqrt(2.0);
  return LinearRelation(c.src(), c.tgt(), Subspace::from_orthonormal(m * c.graph().frame()));
}

Matrix cayley(const LinearRelation& t0h) {
  if (!is_selfadjoint(t0h, Metric::hilbert)) {
    throw Error(ErrorKind::not_selfadjoint, "cayley: relation is not self-adjoint in the Hilbert metric");
  }
  return operator_matrix(cayley_relation(t0h));
}

LinearRelation inverse_cayley(const Matrix& c) {
  const KreinSpace h = KreinSpace::hilbert(c.rows());
  return inverse_cayley_relation(from_operator(c, h));
}

Matrix vz_operator(const LinearRelation& t0h, cplx z) {
  const Index n = t0h.src_dim();
  return Matrix::Identity(n, n) + 2.0 * z * resolvent_matrix(t0h, z);
}

Matrix angular_operator(const LinearRelation& t0, const LinearRelation& t) {
  require_endo(t0, "angular_operator");
  if (!is_selfadjoint(t0)) throw Error(ErrorKind::not_selfadjoint, "angular_operator: T0 is not self-adjoint");
  if (!contains(t0, t)) throw Error(ErrorKind::precondition, "angular_operator: T0 does not extend T");
  const Index n = t0.src_dim();
  const Matrix& j = t0.src().J();
  const Matrix c = cayley(hilbert_form(t0));
  const Matrix p_plus = 0.5 * (Matrix::Identity(2 * n, 2 * n) + j_hat(j));
  return block_diag(-c, j * c * j) * p_plus;
}

Subspace angular_reconstruction(const LinearRelation& t0, const LinearRelation& t) {
  const Index n = t0.src_dim();
  const Matrix k = angular_operator(t0, t);
  const Matrix e = eigenspace(adjoint(hilbert_form(t), Metric::hilbert), I).frame();
  Matrix lift(2 * n, e.cols());
  lift << e, I * t0.src().J() * e;
  return image(Matrix::Identity(2 * n, 2 * n) + k, span(lift));
}

}  // namespace kreinrel
