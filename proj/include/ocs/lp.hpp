#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ocs/matrix.hpp"
#include "ocs/rational.hpp"

namespace ocs {

// Exact rational solver for min c^T x subject to A x = b, x >= 0.
// Two-phase tableau simplex with Bland's rule, so it terminates on every
// input. On infeasible problems it returns a Farkas row y with
// y^T A >= 0 and y^T b < 0 certifying emptiness.
struct LpSolution {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status;
  std::vector<Rational> x;       // optimal vertex when kOptimal
  std::vector<Rational> farkas;  // certificate row when kInfeasible
  Rational objective;
};

namespace lp_detail {

class Tableau {
 public:
  // cols: variable columns only; rhs kept separately.
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), t_((rows + 1) * (cols + 1)) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
  Rational& rhs(std::size_t r) { return t_[r * (cols_ + 1) + cols_]; }
  // cost row stored last; reduced costs and (negated) objective value
  Rational& cost(std::size_t c) { return t_[rows_ * (cols_ + 1) + c]; }
  Rational& obj() { return t_[rows_ * (cols_ + 1) + cols_]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const Rational inv = 1 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) t_[pr * (cols_ + 1) + c] *= inv;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const Rational f = t_[r * (cols_ + 1) + pc];
      if (f == 0) continue;
      for (std::size_t c = 0; c <= cols_; ++c)
        t_[r * (cols_ + 1) + c] -= f * t_[pr * (cols_ + 1) + c];
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> t_;
};

// Runs simplex on the tableau (cost row already reduced w.r.t. the given
// basis). allowed(c) limits entering columns. Returns false on unbounded.
template <typename Allowed>
bool bland_iterate(Tableau& t, std::vector<std::size_t>& basis,
                   const Allowed& allowed) {
  for (;;) {
    std::size_t enter = t.cols();
    for (std::size_t c = 0; c < t.cols(); ++c)
      if (allowed(c) && t.cost(c) < 0) {
        enter = c;
        break;  // Bland: smallest eligible index
      }
    if (enter == t.cols()) return true;
    std::size_t leave = t.rows();
    Rational best;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (t.at(r, enter) <= 0) continue;
      const Rational ratio = t.rhs(r) / t.at(r, enter);
      if (leave == t.rows() || ratio < best ||
          (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == t.rows()) return false;
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
}

}  // namespace lp_detail

inline LpSolution lp_solve(const RMatrix& a, const std::vector<Rational>& b,
                           const std::vector<Rational>& c) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m || c.size() != n)
    throw std::invalid_argument("lp_solve shape mismatch");

  // Flip rows to make the right-hand side nonnegative, remembering signs
  // so the Farkas row can be mapped back to the original orientation.
  std::vector<int> flip(m, 1);
  lp_detail::Tableau t(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    if (b[r] < 0) flip[r] = -1;
    for (std::size_t cc = 0; cc < n; ++cc)
      t.at(r, cc) = flip[r] * a(r, cc);
    t.at(r, n + r) = 1;  // artificial
    t.rhs(r) = flip[r] * b[r];
  }

  // Phase 1: minimize the sum of artificials. Reduced costs of that
  // objective against the artificial basis are the negated row sums.
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    basis[r] = n + r;
    for (std::size_t cc = 0; cc < n; ++cc) t.cost(cc) -= t.at(r, cc);
    t.obj() -= t.rhs(r);
  }
  const bool phase1_bounded = lp_detail::bland_iterate(
      t, basis, [](std::size_t) { return true; });
  if (!phase1_bounded) throw std::logic_error("phase 1 cannot be unbounded");

  LpSolution out;
  if (t.obj() != 0) {
    // Infeasible. Multipliers y = c_B^T B^{-1} sit in the artificial
    // columns of the cost row: reduced cost there is 1 - y_r. This y has
    // y^T A' <= 0 and y^T b' > 0 for the flipped system, so the original
    // system's certificate is -flip .* y.
    out.status = LpSolution::Status::kInfeasible;
    out.farkas.resize(m);
    for (std::size_t r = 0; r < m; ++r)
      out.farkas[r] = -flip[r] * (1 - t.cost(n + r));
    out.objective = 0;
    return out;
  }

  // Drive any zero-level artificials out of the basis where possible;
  // rows where no original column can pivot are redundant and harmless
  // because the artificial there is barred from re-entering.
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) continue;
    for (std::size_t cc = 0; cc < n; ++cc)
      if (t.at(r, cc) != 0) {
        t.pivot(r, cc);
        basis[r] = cc;
        break;
      }
  }

  // Phase 2 over the original columns only: install the real objective
  // reduced against the current basis.
  for (std::size_t cc = 0; cc <= n + m; ++cc) {
    Rational v = cc < n ? c[cc] : Rational(0);
    if (cc == n + m) v = 0;
    (cc == n + m ? t.obj() : t.cost(cc)) = v;
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] >= n) continue;
    const Rational cb = c[basis[r]];
    if (cb == 0) continue;
    for (std::size_t cc = 0; cc < n + m; ++cc) t.cost(cc) -= cb * t.at(r, cc);
    t.obj() -= cb * t.rhs(r);
  }
  const bool bounded = lp_detail::bland_iterate(
      t, basis, [n](std::size_t cc) { return cc < n; });
  if (!bounded) {
    out.status = LpSolution::Status::kUnbounded;
    return out;
  }
  out.status = LpSolution::Status::kOptimal;
  out.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) out.x[basis[r]] = t.rhs(r);
  out.objective = -t.obj();
  return out;
}

}  // namespace ocs
