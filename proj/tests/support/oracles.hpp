#pragma once

#include "kreinrel/boundary.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <vector>

namespace kreinrel::testing {

using Rational = boost::multiprecision::cpp_rational;

// Rank over Q by exact Gaussian elimination.
inline Index exact_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return static_cast<Index>(rank);
}

// Rank over C of a Gaussian-integer matrix, read off its real form [[Re, -Im], [Im, Re]].
inline Index exact_complex_rank(const Matrix& m) {
  const Index r = m.rows(), c = m.cols();
  std::vector<std::vector<Rational>> real(2 * r, std::vector<Rational>(2 * c));
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < c; ++j) {
      const auto re = static_cast<long long>(std::llround(m(i, j).real()));
      const auto im = static_cast<long long>(std::llround(m(i, j).imag()));
      real[i][j] = re;
      real[i][c + j] = -im;
      real[r + i][j] = im;
      real[r + i][c + j] = re;
    }
  }
  return exact_rank(std::move(real)) / 2;
}

// The subspace {f(c) : c ∈ C^params}, for a linear parametrization f.
inline Subspace described(Index params, const std::function<Vector(const Vector&)>& f) {
  std::vector<Vector> cols;
  for (Index k = 0; k < params; ++k) cols.push_back(f(Vector::Unit(params, k)));
  return span(cols);
}

inline Vector vec(std::initializer_list<cplx> entries) {
  Vector v(static_cast<Index>(entries.size()));
  Index k = 0;
  for (cplx e : entries) v(k++) = e;
  return v;
}

// The four-dimensional example: J(c1, c2, c3, c4) = (c4, c3, c2, c1), T = {((c1, 0, 0, 0), (0, c1, 0, 0))}.
namespace c4 {

inline KreinSpace space() {
  Matrix j = Matrix::Zero(4, 4);
  for (Index k = 0; k < 4; ++k) j(k, 3 - k) = 1.0;
  return make_krein(j);
}

inline LinearRelation t() {
  return LinearRelation(space(), space(), described(1, [](const Vector& c) {
                          return vec({c(0), 0, 0, 0, 0, c(0), 0, 0});
                        }));
}

// T+ = {((c1, c2, c3, c4), (c5, c6, c7, c3))}, in the coordinates c1..c7.
inline Matrix tplus_basis() {
  Matrix b = Matrix::Zero(8, 7);
  for (Index k = 0; k < 4; ++k) b(k, k) = 1.0;
  b(4, 4) = 1.0;
  b(5, 5) = 1.0;
  b(6, 6) = 1.0;
  b(7, 2) = 1.0;
  return b;
}

// Γ0 = (c1 - c6, c2, c4), Γ1 = (c3, c7, c5) on the same coordinates.
inline Matrix gamma() {
  Matrix g = Matrix::Zero(6, 7);
  g(0, 0) = 1.0;
  g(0, 5) = -1.0;
  g(1, 1) = 1.0;
  g(2, 3) = 1.0;
  g(3, 2) = 1.0;
  g(4, 6) = 1.0;
  g(5, 4) = 1.0;
  return g;
}

inline BoundaryTriple triple() { return validate_triple(t(), gamma(), tplus_basis()); }

inline Subspace tplus() { return span(tplus_basis()); }

inline Subspace defect(cplx z) {
  return described(3, [z](const Vector& c) { return vec({c(0), c(1), z * c(2), c(2)}); });
}

inline Subspace t0() {
  return described(4, [](const Vector& c) { return vec({c(0), 0, c(1), 0, c(2), c(0), c(3), c(1)}); });
}

inline Subspace t1() {
  return described(4, [](const Vector& c) { return vec({c(0), c(1), 0, c(2), 0, c(3), 0, 0}); });
}

inline Subspace n() {
  return described(3, [](const Vector& c) { return vec({0, 0, c(2), 0, c(0), 0, c(1), c(2)}); });
}

inline Subspace jn() {
  return described(3, [](const Vector& c) { return vec({c(0), c(1), 0, c(2), 0, -c(0), 0, 0}); });
}

// Γ0^(-1)(c1, c2, c3) = ((c1/2, c2, 0, c3), (0, -c1/2, 0, 0)).
inline Matrix gamma0_inverse() {
  Matrix m = Matrix::Zero(8, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 1.0;
  m(3, 2) = 1.0;
  m(5, 0) = -0.5;
  return m;
}

// Γ1^(-1)(c1, c2, c3) = ((0, 0, c1, 0), (c3, 0, c2, c1)).
inline Matrix gamma1_inverse() {
  Matrix m = Matrix::Zero(8, 3);
  m(2, 0) = 1.0;
  m(4, 2) = 1.0;
  m(6, 1) = 1.0;
  m(7, 0) = 1.0;
  return m;
}

// M(z) read off N_z(T+) by hand: Γ0 = (c1 - z c2, c2, c4), Γ1 = (z c4, z² c4, z c1).
inline Matrix weyl(cplx z) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 2) = z;
  m(1, 2) = z * z;
  m(2, 0) = z;
  m(2, 1) = z * z;
  return m;
}

}  // namespace c4

}  // namespace kreinrel::testing
