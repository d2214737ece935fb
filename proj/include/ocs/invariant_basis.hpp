#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ocs/clifford.hpp"
#include "ocs/matrix.hpp"
#include "ocs/rational.hpp"

namespace ocs {

// Orthogonal (not normalized) basis element of one of the three pieces of
// the conjugation action on k x k matrices: span{I} (label 0), traceless
// symmetric (label +1), skew (label -1).
struct OkBasisElement {
  enum class Kind { kIdentity, kSymPair, kSkewPair, kDiagNested };
  Kind kind;
  int a = 0, b = 0;  // pair indices, or (m, unused) for the nested diagonal
  RMatrix entries;
  Rational norm_sq;
};

// Basis of U_j inside k x k matrices. Diagonal traceless part uses the
// nested family diag(1,...,1,-m,0,...,0) with squared norm m(m+1), so
// every norm stays rational and no orthonormalization is needed.
inline std::vector<OkBasisElement> u_basis(int k, int j) {
  if (k < 2) throw std::invalid_argument("u_basis needs k >= 2");
  std::vector<OkBasisElement> out;
  const std::size_t n = static_cast<std::size_t>(k);
  if (j == 0) {
    OkBasisElement e{OkBasisElement::Kind::kIdentity, 0, 0,
                     RMatrix::identity(n), Rational(k)};
    out.push_back(std::move(e));
  } else if (j == 1) {
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) {
        OkBasisElement e{OkBasisElement::Kind::kSymPair, a, b, RMatrix(n, n),
                         Rational(2)};
        e.entries(a, b) = 1;
        e.entries(b, a) = 1;
        out.push_back(std::move(e));
      }
    for (int m = 1; m < k; ++m) {
      OkBasisElement e{OkBasisElement::Kind::kDiagNested, m, 0, RMatrix(n, n),
                       Rational(m) * Rational(m + 1)};
      for (int i = 0; i < m; ++i) e.entries(i, i) = 1;
      e.entries(m, m) = -m;
      out.push_back(std::move(e));
    }
  } else if (j == -1) {
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) {
        OkBasisElement e{OkBasisElement::Kind::kSkewPair, a, b, RMatrix(n, n),
                         Rational(2)};
        e.entries(a, b) = 1;
        e.entries(b, a) = -1;
        out.push_back(std::move(e));
      }
  } else {
    throw std::invalid_argument("u_basis label must be 0, 1 or -1");
  }
  return out;
}

// The eight (level, label) pairs whose averaged squares span the invariant
// quartics; fixed column order used everywhere downstream.
struct LambdaPair {
  int level;  // |J| of the 16x16 side
  int label;  // O(k) piece: 0, 1, or -1
};

inline const std::vector<LambdaPair>& lambda_pairs() {
  static const std::vector<LambdaPair> pairs = {
      {0, 0}, {1, 0}, {4, 0}, {0, 1}, {1, 1}, {4, 1}, {2, -1}, {3, -1}};
  return pairs;
}

// Evaluates the averaged squares s_ij at 16 x k points. Holds the U_j
// bases so repeated evaluations at the same k share them.
class SEvaluator {
 public:
  SEvaluator(const CliffordSystem& sys, int k)
      : sys_(sys),
        k_(k),
        u0_(u_basis(k, 0)),
        u1_(u_basis(k, 1)),
        um1_(u_basis(k, -1)) {}

  int k() const { return k_; }

  // s_ij(X) = sum_E sum_F tr(X^T E X F)^2 / (|E|^2 |F|^2) over the
  // orthogonal bases of V_i and U_j. Equals the squared norm of the
  // component of X ox X in the (i, j) isotypic block.
  Rational s_eval(int level, int label, const RMatrix& x) const {
    check_point(x);
    Rational total(0);
    for (const CliffordMatrix& e : sys_.v_basis(level))
      total += f_sum(label, middle(e.p, x));
    return total / 16;
  }

  // All eight values in the fixed lambda order, sharing one X^T E X pass
  // per Clifford basis element.
  std::vector<Rational> s_eval_all(const RMatrix& x) const {
    check_point(x);
    std::vector<Rational> out(8);
    for (int level = 0; level <= 4; ++level)
      for (const CliffordMatrix& e : sys_.v_basis(level)) {
        const RMatrix m = middle(e.p, x);
        if (e.symmetric) {
          out[lambda_index(level, 0)] += f_sum(0, m);
          out[lambda_index(level, 1)] += f_sum(1, m);
        } else {
          out[lambda_index(level, -1)] += f_sum(-1, m);
        }
      }
    for (Rational& v : out) v /= 16;
    return out;
  }

  static int lambda_index(int level, int label) {
    const auto& pairs = lambda_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (pairs[i].level == level && pairs[i].label == label)
        return static_cast<int>(i);
    throw std::invalid_argument("pair outside the invariant family");
  }

 private:
  void check_point(const RMatrix& x) const {
    if (x.rows() != 16 || x.cols() != static_cast<std::size_t>(k_))
      throw std::invalid_argument("point must be 16 x k");
  }

  // X^T (E X) with E a signed permutation: E X is a signed row scatter.
  RMatrix middle(const SignedPerm16& e, const RMatrix& x) const {
    const std::size_t n = static_cast<std::size_t>(k_);
    RMatrix ex(16, n);
    for (int r = 0; r < 16; ++r) {
      const int target = e.row[r];
      if (e.sgn[r] > 0)
        for (std::size_t j = 0; j < n; ++j) ex(target, j) = x(r, j);
      else
        for (std::size_t j = 0; j < n; ++j) ex(target, j) = -x(r, j);
    }
    RMatrix m(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (int i = 0; i < 16; ++i) {
        const Rational& xia = x(i, a);
        if (xia == 0) continue;
        for (std::size_t b = 0; b < n; ++b) {
          const Rational& v = ex(i, b);
          if (v != 0) m(a, b) += xia * v;
        }
      }
    return m;
  }

  // sum_F tr(M F)^2 / |F|^2 over the U_label basis, with
  // tr(M F) = sum_{r,c} M(r,c) F(c,r) read off the sparse F patterns.
  Rational f_sum(int label, const RMatrix& m) const {
    Rational total(0);
    if (label == 0) {
      const Rational t = m.trace();
      total = t * t / u0_[0].norm_sq;
    } else if (label == 1) {
      for (const OkBasisElement& f : u1_) {
        Rational t;
        if (f.kind == OkBasisElement::Kind::kSymPair) {
          t = m(f.a, f.b) + m(f.b, f.a);
        } else {
          t = 0;
          for (int i = 0; i < f.a; ++i) t += m(i, i);
          t -= Rational(f.a) * m(f.a, f.a);
        }
        total += t * t / f.norm_sq;
      }
    } else {
      for (const OkBasisElement& f : um1_) {
        const Rational t = m(f.b, f.a) - m(f.a, f.b);
        total += t * t / f.norm_sq;
      }
    }
    return total;
  }

  const CliffordSystem& sys_;
  int k_;
  std::vector<OkBasisElement> u0_, u1_, um1_;
};

// Completeness check: the eight s_ij sum to |X|_F^4 for every X.
inline bool s_sum_check(const SEvaluator& ev, const RMatrix& x) {
  const std::vector<Rational> vals = ev.s_eval_all(x);
  Rational total(0);
  for (const Rational& v : vals) total += v;
  const Rational n2 = frobenius_norm_sq(x);
  return total == n2 * n2;
}

}  // namespace ocs
