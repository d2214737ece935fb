#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ocs/matrix.hpp"
#include "ocs/octonion.hpp"
#include "ocs/rational.hpp"

namespace ocs {

// 16x16 signed permutation matrix: column c holds a single entry
// sgn[c] in {+1,-1} at row row[c]. Everything built from the nine
// generators below stays in this class, which keeps products, traces
// and Frobenius pairings integral and O(16).
struct SignedPerm16 {
  std::array<std::uint8_t, 16> row;
  std::array<std::int8_t, 16> sgn;

  static SignedPerm16 identity() {
    SignedPerm16 p;
    for (int c = 0; c < 16; ++c) {
      p.row[c] = static_cast<std::uint8_t>(c);
      p.sgn[c] = 1;
    }
    return p;
  }

  int entry(int r, int c) const { return row[c] == r ? sgn[c] : 0; }

  SignedPerm16 operator*(const SignedPerm16& b) const {
    SignedPerm16 r;
    for (int c = 0; c < 16; ++c) {
      r.row[c] = row[b.row[c]];
      r.sgn[c] = static_cast<std::int8_t>(b.sgn[c] * sgn[b.row[c]]);
    }
    return r;
  }

  SignedPerm16 transpose() const {
    SignedPerm16 r;
    for (int c = 0; c < 16; ++c) {
      r.row[row[c]] = static_cast<std::uint8_t>(c);
      r.sgn[row[c]] = sgn[c];
    }
    return r;
  }

  SignedPerm16 negate() const {
    SignedPerm16 r = *this;
    for (int c = 0; c < 16; ++c) r.sgn[c] = static_cast<std::int8_t>(-r.sgn[c]);
    return r;
  }

  int trace() const {
    int t = 0;
    for (int c = 0; c < 16; ++c)
      if (row[c] == c) t += sgn[c];
    return t;
  }

  bool operator==(const SignedPerm16& o) const {
    return row == o.row && sgn == o.sgn;
  }

  RMatrix to_matrix() const {
    RMatrix m(16, 16);
    for (int c = 0; c < 16; ++c) m(row[c], c) = sgn[c];
    return m;
  }
};

// tr(S^T Z) for a signed permutation S.
inline Rational sp_inner(const SignedPerm16& s, const RMatrix& z) {
  Rational t(0);
  for (int c = 0; c < 16; ++c) {
    if (s.sgn[c] > 0)
      t += z(s.row[c], c);
    else
      t -= z(s.row[c], c);
  }
  return t;
}

inline int sp_frobenius_inner(const SignedPerm16& a, const SignedPerm16& b) {
  int t = 0;
  for (int c = 0; c < 16; ++c)
    if (a.row[c] == b.row[c]) t += a.sgn[c] * b.sgn[c];
  return t;
}

// One product S_{j1} ... S_{jm} of generators taken in ascending index
// order, together with its index set and symmetry class: such a product
// is symmetric for |J| in {0,1,4} and skew for |J| in {2,3}.
struct CliffordMatrix {
  SignedPerm16 p;
  std::vector<int> subset;
  bool symmetric;
};

// The nine anticommuting symmetric involutions built from octonion right
// multiplication, plus the graded basis their ascending products span.
class CliffordSystem {
 public:
  explicit CliffordSystem(
      const RightMultTable& table = RightMultTable::canonical()) {
    for (int i = 0; i < 8; ++i) {
      SignedPerm16& s = S_[i];
      // Off-diagonal blocks are R_{e_i} and its transpose R_{conj(e_i)},
      // with the conjugate on the top-right. Putting it bottom-right
      // instead negates S_1..S_7 and flips the nine-fold product to +I;
      // this orientation is the one with S_0 S_1 ... S_8 = -I. Both give
      // the same spans V_0..V_4, so nothing downstream can tell them
      // apart; only the orientation pin differs.
      for (int c = 0; c < 8; ++c)
        for (int r = 0; r < 8; ++r) {
          if (table.idx[r][c] != i) continue;
          s.row[c] = static_cast<std::uint8_t>(8 + r);
          s.sgn[c] = table.sgn[r][c];
          s.row[8 + r] = static_cast<std::uint8_t>(c);
          s.sgn[8 + r] = table.sgn[r][c];
        }
    }
    S_[8] = SignedPerm16::identity();
    for (int c = 8; c < 16; ++c) S_[8].sgn[c] = -1;

    bases_.resize(5);
    for (int mask = 0; mask < 512; ++mask) {
      std::vector<int> subset;
      for (int i = 0; i < 9; ++i)
        if (mask & (1 << i)) subset.push_back(i);
      const int level = static_cast<int>(subset.size());
      if (level > 4) continue;
      SignedPerm16 p = SignedPerm16::identity();
      for (int i : subset) p = p * S_[i];
      const bool symmetric = level == 0 || level == 1 || level == 4;
      bases_[level].push_back(CliffordMatrix{p, subset, symmetric});
    }
  }

  const SignedPerm16& S(int i) const { return S_[i]; }

  // All products with |J| == level, 0 <= level <= 4. Each has squared
  // Frobenius norm 16.
  const std::vector<CliffordMatrix>& v_basis(int level) const {
    if (level < 0 || level > 4)
      throw std::invalid_argument("v_basis level out of range");
    return bases_[level];
  }

  // Orthogonal projection of a 16x16 matrix onto the span of the
  // level-|J| products.
  RMatrix project_V(int level, const RMatrix& z) const {
    if (z.rows() != 16 || z.cols() != 16)
      throw std::invalid_argument("project_V expects 16x16");
    RMatrix out(16, 16);
    for (const CliffordMatrix& e : v_basis(level)) {
      const Rational coef = sp_inner(e.p, z) / 16;
      if (coef == 0) continue;
      for (int c = 0; c < 16; ++c)
        out(e.p.row[c], c) += coef * e.p.sgn[c];
    }
    return out;
  }

  Rational project_V_norm_sq(int level, const RMatrix& z) const {
    Rational t(0);
    for (const CliffordMatrix& e : v_basis(level)) {
      const Rational coef = sp_inner(e.p, z);
      t += coef * coef;
    }
    return t / 16;
  }

 private:
  std::array<SignedPerm16, 9> S_;
  std::vector<std::vector<CliffordMatrix>> bases_;
};

inline const CliffordSystem& clifford_system() {
  static const CliffordSystem sys;
  return sys;
}

}  // namespace ocs
