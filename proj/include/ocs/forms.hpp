#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ocs/clifford.hpp"
#include "ocs/matrix.hpp"
#include "ocs/octonion.hpp"
#include "ocs/random.hpp"
#include "ocs/rational.hpp"

namespace ocs {

// A point of the quartics' domain: 16 x k, column j stacking the
// coordinates of x_j over those of y_j.
using MatrixPoint = RMatrix;

inline void check_matrix_point(const MatrixPoint& x) {
  if (x.rows() != 16 || x.cols() < 1)
    throw std::invalid_argument("point must be 16 x k with k >= 1");
}

inline Octonion top_octonion(const MatrixPoint& x, std::size_t col) {
  Octonion u;
  for (int i = 0; i < 8; ++i) u.c[i] = x(i, col);
  return u;
}

inline Octonion bottom_octonion(const MatrixPoint& x, std::size_t col) {
  Octonion u;
  for (int i = 0; i < 8; ++i) u.c[i] = x(8 + i, col);
  return u;
}

// |x|^2 |y|^2 - |(x,y)|^2 with (x,y) = sum_j conj(x_j) y_j. Nonnegative:
// it measures the failure of equality in Cauchy-Schwarz for the
// octonion-valued pairing.
inline Rational cs_eval_octonion(const MatrixPoint& x) {
  check_matrix_point(x);
  Rational nx(0), ny(0);
  Octonion pairing;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const Octonion xj = top_octonion(x, j);
    const Octonion yj = bottom_octonion(x, j);
    nx += norm_sq(xj);
    ny += norm_sq(yj);
    pairing = pairing + mul(conj(xj), yj);
  }
  return nx * ny - norm_sq(pairing);
}

inline Rational q_eval(const MatrixPoint& x) {
  const Rational t = frobenius_norm_sq(x);
  return cs_eval_octonion(x) + t * t / 4;
}

// Same value through the 16x16 side: (1/2)tr(XX^T)^2 minus the squared
// traces against S_0..S_8, and once more through the V_1 projector.
// The three expressions agree identically; a mismatch means the Clifford
// system and the multiplication table fell out of sync, so it throws.
inline Rational q_eval_matrix(const MatrixPoint& x,
                              const CliffordSystem& sys = clifford_system()) {
  check_matrix_point(x);
  const RMatrix xxt = x * x.transpose();
  const Rational t = xxt.trace();
  Rational sum_sq(0);
  for (int i = 0; i < 9; ++i) {
    const Rational tri = sp_inner(sys.S(i), xxt);
    sum_sq += tri * tri;
  }
  const Rational via_traces = t * t / 2 - sum_sq / 4;
  const Rational via_projector =
      t * t / 2 - sys.project_V_norm_sq(1, xxt) * 4;
  const Rational via_octonions = q_eval(x);
  if (via_traces != via_projector || via_traces != via_octonions)
    throw std::logic_error("quartic form expressions disagree");
  return via_traces;
}

// Orthogonal involution [[vI, R_u],[R_conj(u), -vI]] with |u|^2 + v^2 = 1.
struct SpinGenerator {
  Octonion u;
  Rational v;
  RMatrix matrix;
};

inline SpinGenerator spin_generator(const Octonion& u, const Rational& v) {
  if (norm_sq(u) + v * v != 1)
    throw std::invalid_argument("spin generator needs |u|^2 + v^2 = 1");
  RMatrix m(16, 16);
  const RMatrix ru = right_mult_matrix(u);
  for (int r = 0; r < 8; ++r) {
    m(r, r) = v;
    m(8 + r, 8 + r) = -v;
    for (int c = 0; c < 8; ++c) {
      m(r, 8 + c) = ru(r, c);
      m(8 + r, c) = ru(c, r);
    }
  }
  return SpinGenerator{u, v, std::move(m)};
}

// Stereographic image of a rational 8-vector m: u = 2m/(|m|^2+1),
// v = (|m|^2-1)/(|m|^2+1), an exact rational point of |u|^2 + v^2 = 1.
inline SpinGenerator rational_spin9_element(std::uint64_t seed) {
  Rng rng(seed);
  Octonion m;
  for (int i = 0; i < 8; ++i) m.c[i] = rng.rational(3, 2);
  const Rational n = norm_sq(m);
  Octonion u = rat(2) * m;
  for (int i = 0; i < 8; ++i) u.c[i] /= n + 1;
  return spin_generator(u, (n - 1) / (n + 1));
}

// Exact k x k orthogonal matrix: a random signed permutation times a few
// rotations with rational cosine/sine pairs from Pythagorean triples.
inline RMatrix rational_orthogonal(int k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("rational_orthogonal needs k >= 1");
  Rng rng(seed);
  const std::size_t n = static_cast<std::size_t>(k);
  RMatrix g(n, n);
  {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i)
      std::swap(perm[i - 1],
                perm[static_cast<std::size_t>(rng.uniform_int(0, i - 1))]);
    for (std::size_t i = 0; i < n; ++i)
      g(perm[i], i) = rng.uniform_int(0, 1) ? 1 : -1;
  }
  if (k == 1) return g;
  static const int triples[][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}};
  for (int rot = 0; rot < 2 * k; ++rot) {
    const std::size_t a = static_cast<std::size_t>(rng.uniform_int(0, k - 1));
    std::size_t b = static_cast<std::size_t>(rng.uniform_int(0, k - 2));
    if (b >= a) ++b;
    const int* t = triples[rng.uniform_int(0, 2)];
    const Rational c = rat(t[0], t[2]), s = rat(t[1], t[2]);
    for (std::size_t j = 0; j < n; ++j) {
      const Rational ga = g(a, j), gb = g(b, j);
      g(a, j) = c * ga - s * gb;
      g(b, j) = s * ga + c * gb;
    }
  }
  return g;
}

// grad q(X) = 2 tr(XX^T) X - sum_i tr(X^T S_i X) S_i X.
inline RMatrix gradient(const MatrixPoint& x,
                        const CliffordSystem& sys = clifford_system()) {
  check_matrix_point(x);
  const RMatrix xxt = x * x.transpose();
  RMatrix g = x * (xxt.trace() * 2);
  for (int i = 0; i < 9; ++i) {
    const Rational ui = sp_inner(sys.S(i), xxt);
    if (ui == 0) continue;
    const SignedPerm16& s = sys.S(i);
    for (int r = 0; r < 16; ++r) {
      const Rational coef = ui * s.sgn[r];
      for (std::size_t j = 0; j < x.cols(); ++j)
        g(s.row[r], j) -= coef * x(r, j);
    }
  }
  return g;
}

// Directional derivative of the gradient: linear and self-adjoint in Y.
inline RMatrix hessian_apply(const MatrixPoint& x, const RMatrix& y,
                             const CliffordSystem& sys = clifford_system()) {
  check_matrix_point(x);
  if (y.rows() != 16 || y.cols() != x.cols())
    throw std::invalid_argument("direction shape mismatch");
  const RMatrix xxt = x * x.transpose();
  const Rational t = xxt.trace();
  RMatrix h = x * (frobenius_inner(x, y) * 4) + y * (t * 2);
  for (int i = 0; i < 9; ++i) {
    const SignedPerm16& s = sys.S(i);
    const Rational ui = sp_inner(s, xxt);
    RMatrix sy(16, x.cols());
    Rational xsy(0);  // tr(X^T S_i Y) = <S_i X, Y> = <S_i Y, X>
    for (int r = 0; r < 16; ++r)
      for (std::size_t j = 0; j < x.cols(); ++j) {
        const Rational v = Rational(s.sgn[r]) * y(r, j);
        sy(s.row[r], j) = v;
        xsy += x(s.row[r], j) * v;
      }
    for (int r = 0; r < 16; ++r)
      for (std::size_t j = 0; j < x.cols(); ++j) {
        h(s.row[r], j) -= 2 * xsy * Rational(s.sgn[r]) * x(r, j);
        h(r, j) -= ui * sy(r, j);
      }
  }
  return h;
}

// Hessian in the column-major flattening vec(X)[16 c + r] = X(r, c),
// assembled from the structured expression: two rank-one families plus a
// block-diagonal multiplier term.
inline RMatrix hessian_matrix(const MatrixPoint& x,
                              const CliffordSystem& sys = clifford_system()) {
  check_matrix_point(x);
  const std::size_t k = x.cols();
  const std::size_t n = 16 * k;
  const RMatrix xxt = x * x.transpose();
  const Rational t = xxt.trace();

  std::vector<Rational> v(n);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < 16; ++r) v[16 * c + r] = x(r, c);

  RMatrix h(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (v[a] == 0) continue;
    const Rational va4 = v[a] * 4;
    for (std::size_t b = 0; b < n; ++b)
      if (v[b] != 0) h(a, b) += va4 * v[b];
  }
  for (std::size_t a = 0; a < n; ++a) h(a, a) += 2 * t;

  for (int i = 0; i < 9; ++i) {
    const SignedPerm16& s = sys.S(i);
    const Rational ui = sp_inner(s, xxt);
    std::vector<Rational> w(n);  // vec(S_i X)
    for (std::size_t c = 0; c < k; ++c)
      for (int r = 0; r < 16; ++r)
        w[16 * c + s.row[r]] = Rational(s.sgn[r]) * x(r, c);
    for (std::size_t a = 0; a < n; ++a) {
      if (w[a] == 0) continue;
      const Rational wa2 = w[a] * 2;
      for (std::size_t b = 0; b < n; ++b)
        if (w[b] != 0) h(a, b) -= wa2 * w[b];
    }
    if (ui == 0) continue;
    for (std::size_t c = 0; c < k; ++c)
      for (int r = 0; r < 16; ++r)
        h(16 * c + s.row[r], 16 * c + r) -= ui * s.sgn[r];
  }
  return h;
}

}  // namespace ocs
