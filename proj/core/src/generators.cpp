#include "kreinrel/generators.hpp"

namespace kreinrel {

namespace {

const cplx I(0, 1);
constexpr int kRetries = 200;

}  // namespace

void InstanceSpec::validate() const {
  if (dim <= 0 || p < 0 || q < 0 || p + q != dim) {
    throw Error(ErrorKind::input, "signature (" + std::to_string(p) + ", " + std::to_string(q) +
                                      ") does not add up to dim " + std::to_string(dim));
  }
  if (defect < 0 || defect > dim) {
    throw Error(ErrorKind::input, "defect " + std::to_string(defect) + " exceeds dim " + std::to_string(dim));
  }
}

KreinSpace gen_space(Rng& rng, Index p, Index q) {
  const Index n = p + q;
  Vector diag(n);
  for (Index k = 0; k < n; ++k) diag(k) = k < p ? 1.0 : -1.0;
  const Matrix u = rng.unitary(n);
  Matrix j = u * diag.asDiagonal() * u.adjoint();
  j = 0.5 * (j + j.adjoint());
  return make_krein(j);
}

Matrix canonical_frame(const KreinSpace& space) {
  Matrix f(space.dim(), space.dim());
  const Subspace pos = positive_part(space);
  const Subspace neg = negative_part(space);
  f << pos.frame(), neg.frame();
  return f;
}

LinearRelation gen_symmetric(const KreinSpace& space, Index defect, Rng& rng) {
  const Index n = space.dim();
  const KreinSpace k = doubled(space).space;
  // A hyper-maximal neutral subspace is {x + W x : x ∈ K+} for a unitary W: K+ → K-.
  const Matrix kp = positive_part(k).frame();
  const Matrix km = negative_part(k).frame();
  const Matrix w = rng.unitary(n);
  const Matrix l = (kp + km * w) / std::sqrt(2.0);
  const Matrix coeff = rng.gaussian(n, n - defect);
  LinearRelation t(space, space, span(l * coeff));
  const DefectNumbers dn = defect_numbers(t);
  if (dn.plus != defect || dn.minus != defect) {
    throw Error(ErrorKind::internal, "generated relation has defect numbers (" + std::to_string(dn.plus) + ", " +
                                         std::to_string(dn.minus) + ")");
  }
  return t;
}

LinearRelation gen_symmetric(const InstanceSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const KreinSpace space = gen_space(rng, spec.p, spec.q);
  const std::vector<cplx> grid = default_grid();
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    LinearRelation t = gen_symmetric(space, spec.defect, rng);
    if (spec.require_simple && !simple_check(t, grid)) continue;
    if (spec.require_property_p && !has_property_p(t)) continue;
    return t;
  }
  throw Error(ErrorKind::sampling_exhausted, "no instance met the requested flags after " +
                                                 std::to_string(kRetries) + " draws");
}

BoundaryTriple gen_triple(const LinearRelation& t, const LinearRelation& n, Rng& rng, bool shift) {
  const Matrix jh = j_hat(t.src().J());
  const Matrix ft = t.graph().frame();
  const Matrix z = n.graph().frame();
  const Matrix y = jh * z;
  const Index d = z.cols();
  if (d == 0) throw Error(ErrorKind::invalid_triple, "T is self-adjoint, so the boundary space would be {0}");
  Matrix psi = rng.gaussian(d, d) + 2.0 * Matrix::Identity(d, d);
  // <φ(v), ψ(u)> = i [v, u] on Ĵ(N) x N.
  const Matrix pairing = I * y.adjoint() * jh * z;
  const Matrix phi = psi.adjoint().inverse() * pairing.adjoint();
  Matrix basis(ft.rows(), ft.cols() + 2 * d);
  basis << ft, z, y;
  Matrix gamma = Matrix::Zero(2 * d, basis.cols());
  gamma.block(0, ft.cols() + d, d, d) = phi;
  gamma.block(d, ft.cols(), d, d) = psi;
  if (shift) {
    Matrix x = Matrix::Identity(2 * d, 2 * d);
    x.bottomLeftCorner(d, d) = -rng.hermitian(d);
    gamma = x * gamma;
  }
  return validate_triple(t, gamma, basis);
}

BoundaryTriple gen_triple(const LinearRelation& t, std::uint64_t seed) {
  Rng rng(seed);
  const NWitness w = sample_witness(t, rng);
  return gen_triple(t, w.n, rng);
}

Matrix gen_standard_unitary(Rng& rng, const KreinSpace& src, const KreinSpace& tgt, double spread) {
  if (src.dim() != tgt.dim() || src.p() != tgt.p()) {
    throw Error(ErrorKind::precondition, "no standard unitary between spaces of different signature");
  }
  const Index n = src.dim();
  const Matrix pi = canonical_frame(tgt) * canonical_frame(src).adjoint();
  const Matrix id = Matrix::Identity(n, n);
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    const Matrix g = spread * rng.gaussian(n, n);
    const Matrix a = src.J() * (g - g.adjoint());
    Eigen::FullPivLU<Matrix> lu(id + a);
    if (!lu.isInvertible() || lu.rcond() < 1e-6) continue;
    const Matrix u = pi * (id - a) * lu.inverse();
    const double res = max_abs(u.adjoint() * tgt.J() * u - src.J());
    if (res > 1e-10 * (1.0 + max_abs(u) * max_abs(u))) {
      throw Error(ErrorKind::internal, "generated U does not preserve the indefinite Gram");
    }
    return u;
  }
  throw Error(ErrorKind::sampling_exhausted, "I + A stayed singular");
}

Matrix gen_standard_unitary(std::uint64_t seed, const KreinSpace& src, const KreinSpace& tgt) {
  Rng rng(seed);
  return gen_standard_unitary(rng, src, tgt);
}

}  // namespace kreinrel
