#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ocs/forms.hpp"
#include "ocs/invariant_basis.hpp"
#include "ocs/lp.hpp"
#include "ocs/matrix.hpp"
#include "ocs/random.hpp"
#include "ocs/rational.hpp"

namespace ocs {

// Membership of the invariant quartics in the cone spanned by the eight
// squared-projection invariants s_ij reduces to a small rational linear
// program: evaluate everything at a short list of matrix points, ask for
// nonnegative multipliers lambda with A lambda = b, and certify the
// negative answer with a Farkas row. All arithmetic here is exact.

enum class ConeForm { kQuartic, kCauchySchwarz };

struct ConeProblem {
  int k = 0;
  ConeForm form = ConeForm::kQuartic;
  std::vector<MatrixPoint> points;
  RMatrix a;                 // points x 8, entries s_ij(X_l) in lambda order
  std::vector<Rational> b;   // form values at the points
  std::vector<Rational> n4;  // |X_l|^4, the cone expansion of the norm term
};

// The three evaluation points. For k >= 16 they are a fixed triple whose
// coefficient matrix has rank 3; for smaller k the same constructions are
// truncated to the available columns.
inline std::vector<MatrixPoint> evaluation_points(int k) {
  if (k < 1) throw std::invalid_argument("evaluation_points: k < 1");
  const std::size_t kk = static_cast<std::size_t>(k);
  std::vector<MatrixPoint> pts;
  MatrixPoint x1(16, kk);
  x1(0, 0) = 1;
  pts.push_back(x1);
  MatrixPoint x2(16, kk);
  for (std::size_t j = 0; j < std::min<std::size_t>(8, kk); ++j) {
    x2(j, j) = 1;
    x2(8 + j, j) = 1;
  }
  pts.push_back(x2);
  MatrixPoint x3(16, kk);
  for (std::size_t j = 0; j < std::min<std::size_t>(16, kk); ++j)
    x3(j, j) = 1;
  pts.push_back(x3);
  return pts;
}

inline Rational form_value(ConeForm form, const MatrixPoint& x) {
  return form == ConeForm::kQuartic ? q_eval(x) : cs_eval_octonion(x);
}

// Builds the reduced problem at the evaluation points. The points must
// expose three independent linear conditions on lambda; when truncation
// for small k loses rank, deterministic random points are appended.
inline ConeProblem cone_problem(int k, ConeForm form) {
  if (k < 2) throw std::invalid_argument("cone_problem: k < 2");
  const CliffordSystem& sys = clifford_system();
  SEvaluator eval(sys, k);
  ConeProblem p;
  p.k = k;
  p.form = form;
  p.points = evaluation_points(k);
  Rng rng(static_cast<std::uint64_t>(1000 + k));
  for (int attempt = 0;; ++attempt) {
    p.a = RMatrix(p.points.size(), 8);
    p.b.assign(p.points.size(), Rational(0));
    p.n4.assign(p.points.size(), Rational(0));
    for (std::size_t l = 0; l < p.points.size(); ++l) {
      const auto row = eval.s_eval_all(p.points[l]);
      for (std::size_t m = 0; m < 8; ++m) p.a(l, m) = row[m];
      p.b[l] = form_value(form, p.points[l]);
      const Rational t = frobenius_norm_sq(p.points[l]);
      p.n4[l] = t * t;
    }
    if (rank(p.a) >= 3) return p;
    if (attempt >= 32)
      throw std::logic_error("cone_problem: rank 3 not reached");
    p.points.push_back(
        random_rational_matrix(rng, 16, static_cast<std::size_t>(k), 2, 2));
  }
}

struct FarkasCheck {
  bool valid = false;
  std::vector<Rational> row;          // the multipliers being checked
  std::vector<Rational> product_row;  // row^T A, must be >= 0 entrywise
  Rational product_rhs;               // row^T b, must be < 0
};

// A valid row proves A lambda = b has no nonnegative solution: it exhibits
// a linear functional nonnegative on the cone but negative on the target.
inline FarkasCheck farkas_verify(const ConeProblem& p,
                                 const std::vector<Rational>& row) {
  if (row.size() != p.a.rows())
    throw std::invalid_argument("farkas_verify: row length mismatch");
  FarkasCheck out;
  out.row = row;
  out.product_row.assign(p.a.cols(), Rational(0));
  out.product_rhs = 0;
  for (std::size_t c = 0; c < p.a.cols(); ++c)
    for (std::size_t r = 0; r < p.a.rows(); ++r)
      out.product_row[c] += row[r] * p.a(r, c);
  for (std::size_t r = 0; r < p.a.rows(); ++r)
    out.product_rhs += row[r] * p.b[r];
  out.valid = out.product_rhs < 0;
  for (const auto& v : out.product_row)
    if (v < 0) out.valid = false;
  return out;
}

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> lambda;  // nonnegative solution when feasible
  FarkasCheck farkas;            // verified certificate when infeasible
};

// Decides cone membership exactly. Exactly one of the two certificates is
// produced, and the Farkas branch is re-verified before returning.
inline FeasibilityResult feasibility_solve(const ConeProblem& p) {
  if (rank(p.a) < 3)
    throw std::invalid_argument("feasibility_solve: rank-deficient system");
  const std::vector<Rational> zero_cost(p.a.cols(), Rational(0));
  const LpSolution s = lp_solve(p.a, p.b, zero_cost);
  FeasibilityResult out;
  if (s.status == LpSolution::Status::kOptimal) {
    out.feasible = true;
    out.lambda = s.x;
    for (std::size_t r = 0; r < p.a.rows(); ++r) {
      Rational lhs = 0;
      for (std::size_t c = 0; c < p.a.cols(); ++c)
        lhs += p.a(r, c) * out.lambda[c];
      if (lhs != p.b[r])
        throw std::logic_error("feasibility_solve: solution check failed");
    }
    return out;
  }
  if (s.status != LpSolution::Status::kInfeasible)
    throw std::logic_error("feasibility_solve: unexpected LP status");
  out.feasible = false;
  out.farkas = farkas_verify(p, s.farkas);
  if (!out.farkas.valid)
    throw std::logic_error("feasibility_solve: certificate check failed");
  return out;
}

// Checks a claimed decomposition twice over: as the exact linear system at
// the problem's points, and as a polynomial identity sampled at random
// rational matrices. Both must hold.
inline bool verify_decomposition(const ConeProblem& p,
                                 const std::vector<Rational>& lambda,
                                 std::size_t num_points = 100,
                                 std::uint64_t seed = 0) {
  if (lambda.size() != 8)
    throw std::invalid_argument("verify_decomposition: need 8 multipliers");
  for (const auto& v : lambda)
    if (v < 0) return false;
  for (std::size_t r = 0; r < p.a.rows(); ++r) {
    Rational lhs = 0;
    for (std::size_t c = 0; c < 8; ++c) lhs += p.a(r, c) * lambda[c];
    if (lhs != p.b[r]) return false;
  }
  const CliffordSystem& sys = clifford_system();
  SEvaluator eval(sys, p.k);
  Rng rng(seed);
  for (std::size_t i = 0; i < num_points; ++i) {
    const MatrixPoint x = random_rational_matrix(
        rng, 16, static_cast<std::size_t>(p.k), 2, 2);
    const auto s = eval.s_eval_all(x);
    Rational rhs = 0;
    for (std::size_t m = 0; m < 8; ++m) rhs += lambda[m] * s[m];
    if (form_value(p.form, x) != rhs) return false;
  }
  return true;
}

// Largest gamma with cs = sum lambda_m s_m + gamma |X|^4 over lambda >= 0.
// Parseval makes |X|^4 itself a cone element, so the quartic form
// cs + |X|^4/4 is a nonnegative combination of the s_m exactly when
// gamma + 1/4 >= 0. The LP is solved exactly with gamma split in sign.
inline Rational sos_min_invariant(int k) {
  const ConeProblem p = cone_problem(k, ConeForm::kCauchySchwarz);
  const std::size_t rows = p.a.rows();
  RMatrix a(rows, 10);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < 8; ++c) a(r, c) = p.a(r, c);
    a(r, 8) = p.n4[r];
    a(r, 9) = -p.n4[r];
  }
  std::vector<Rational> cost(10, Rational(0));
  cost[8] = -1;
  cost[9] = 1;
  const LpSolution s = lp_solve(a, p.b, cost);
  if (s.status == LpSolution::Status::kUnbounded)
    throw std::logic_error("sos_min_invariant: unbounded relaxation");
  if (s.status != LpSolution::Status::kOptimal)
    throw std::logic_error("sos_min_invariant: reduced LP infeasible");
  return -s.objective;
}

inline Rational sos_min_formula(int k) { return rat(-2 * (k - 1), 8 + 7 * k); }

// Ratio of the unexplained part of the sharp bound: the form's maximum on
// the unit sphere is 1/2, its minimum 1/4, and the best cone certificate
// proves only 1/4 + sos_min. A gap above 2 means the certificate misses
// more than the whole max-min spread.
inline Rational gap_invariant(int k) { return 1 - 4 * sos_min_invariant(k); }

inline Rational gap_formula(int k) { return rat(15 * k, 8 + 7 * k); }

}  // namespace ocs
