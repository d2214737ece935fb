#pragma once

#include <array>
#include <cstdint>

#include "ocs/matrix.hpp"
#include "ocs/rational.hpp"

namespace ocs {

// The octonion product is encoded once, as the pattern of the right
// multiplication matrix [R_u]: entry (r, c) of [R_u] equals
// sgn[r][c] * u[idx[r][c]], and [R_u] acting on coordinates of v gives vu.
// Every other algebra fact (the e_i * e_j table, conjugation as transpose,
// the Clifford relations downstream) is derived from this pattern, and the
// consistency checks in algebra_checks.hpp pin it down.
struct RightMultTable {
  std::array<std::array<std::uint8_t, 8>, 8> idx;
  std::array<std::array<std::int8_t, 8>, 8> sgn;

  static const RightMultTable& canonical() {
    static const RightMultTable t = {
        {{{0, 1, 2, 3, 4, 5, 6, 7},
          {1, 0, 3, 2, 5, 4, 7, 6},
          {2, 3, 0, 1, 6, 7, 4, 5},
          {3, 2, 1, 0, 7, 6, 5, 4},
          {4, 5, 6, 7, 0, 1, 2, 3},
          {5, 4, 7, 6, 1, 0, 3, 2},
          {6, 7, 4, 5, 2, 3, 0, 1},
          {7, 6, 5, 4, 3, 2, 1, 0}}},
        {{{+1, -1, -1, -1, -1, -1, -1, -1},
          {+1, +1, +1, -1, +1, -1, -1, +1},
          {+1, -1, +1, +1, +1, +1, -1, -1},
          {+1, +1, -1, +1, +1, -1, +1, -1},
          {+1, -1, -1, -1, +1, +1, +1, +1},
          {+1, +1, -1, +1, -1, +1, -1, +1},
          {+1, +1, +1, -1, -1, +1, +1, -1},
          {+1, -1, +1, +1, -1, -1, +1, +1}}}};
    return t;
  }

  // Returns a copy with one sign flipped. Test hook for the algebra
  // verification path; never used to build the canonical algebra.
  RightMultTable with_flipped_sign(int r, int c) const {
    RightMultTable t = *this;
    t.sgn[r][c] = static_cast<std::int8_t>(-t.sgn[r][c]);
    return t;
  }
};

struct Octonion {
  std::array<Rational, 8> c{};

  static Octonion e(int i) {
    Octonion u;
    u.c[i] = 1;
    return u;
  }

  bool operator==(const Octonion& o) const { return c == o.c; }
};

inline Octonion operator+(const Octonion& a, const Octonion& b) {
  Octonion r;
  for (int i = 0; i < 8; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

inline Octonion operator-(const Octonion& a, const Octonion& b) {
  Octonion r;
  for (int i = 0; i < 8; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

inline Octonion operator*(const Rational& s, const Octonion& a) {
  Octonion r;
  for (int i = 0; i < 8; ++i) r.c[i] = s * a.c[i];
  return r;
}

// Coordinates as a column vector.
inline RMatrix coords(const Octonion& u) {
  RMatrix m(8, 1);
  for (int i = 0; i < 8; ++i) m(i, 0) = u.c[i];
  return m;
}

// [R_u] with [R_u] coords(v) = coords(v u).
inline RMatrix right_mult_matrix(const Octonion& u,
                                 const RightMultTable& t = RightMultTable::canonical()) {
  RMatrix m(8, 8);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c)
      m(r, c) = Rational(t.sgn[r][c]) * u.c[t.idx[r][c]];
  return m;
}

inline Octonion mul(const Octonion& a, const Octonion& b,
                    const RightMultTable& t = RightMultTable::canonical()) {
  Octonion r;
  for (int i = 0; i < 8; ++i) {
    Rational s(0);
    for (int c = 0; c < 8; ++c) {
      if (a.c[c] == 0) continue;
      s += Rational(t.sgn[i][c]) * b.c[t.idx[i][c]] * a.c[c];
    }
    r.c[i] = s;
  }
  return r;
}

inline Octonion conj(const Octonion& u) {
  Octonion r;
  r.c[0] = u.c[0];
  for (int i = 1; i < 8; ++i) r.c[i] = -u.c[i];
  return r;
}

inline Rational re(const Octonion& u) { return u.c[0]; }

// Euclidean pairing of coordinates; equals re(conj(u) * v).
inline Rational inner(const Octonion& u, const Octonion& v) {
  Rational s(0);
  for (int i = 0; i < 8; ++i) s += u.c[i] * v.c[i];
  return s;
}

inline Rational norm_sq(const Octonion& u) { return inner(u, u); }

}  // namespace ocs
