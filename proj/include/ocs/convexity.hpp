#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

#include "ocs/forms.hpp"
#include "ocs/matrix.hpp"
#include "ocs/random.hpp"
#include "ocs/rational.hpp"

namespace ocs {

// Convexity of the quartic form is a theorem; everything here is a
// regression harness for the implementation. A failed check therefore
// signals a bug in the algebra, never new mathematics.

struct ConvexityReport {
  int k = 0;
  std::size_t num_samples = 0;
  double min_hessian_eig = 0.0;
  double min_midpoint_slack = 0.0;
  bool window_ok = false;
};

// The normalized ratio (8/3) q / |X|^4, exact. The two-sided bound
// 0 <= cs <= |X|^4 / 4 pins it to [2/3, 4/3]; both endpoints are hit.
inline Rational normalized_window_ratio(const MatrixPoint& x) {
  const Rational t = frobenius_norm_sq(x);
  if (t == 0) throw std::invalid_argument("window ratio needs X != 0");
  return rat(8, 3) * q_eval(x) / (t * t);
}

// Analytic window plus a sampling sanity pass. The ratio is invariant
// under scaling, so random rational points stand in for unit-norm ones.
inline bool blekherman_window_check(int k, std::size_t num_samples = 1000,
                                    std::uint64_t seed = 0) {
  if (k < 1) throw std::invalid_argument("blekherman_window_check: k < 1");
  const Rational lo = rat(2, 3), hi = rat(4, 3);
  // Endpoint witnesses: a top-half point has cs = 0, and the stacked
  // identity (both halves for k >= 2) saturates cs = |X|^4 / 4.
  MatrixPoint bottom_free(16, static_cast<std::size_t>(k));
  bottom_free(0, 0) = 1;
  if (normalized_window_ratio(bottom_free) != lo) return false;
  MatrixPoint saturating(16, static_cast<std::size_t>(k));
  saturating(0, 0) = 1;
  if (k >= 2) {
    saturating(8, 1) = 1;
    if (normalized_window_ratio(saturating) != hi) return false;
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < num_samples; ++i) {
    const MatrixPoint x = random_rational_matrix(
        rng, 16, static_cast<std::size_t>(k), 3, 2);
    const Rational r = normalized_window_ratio(x);
    if (r < lo || hi < r) return false;
  }
  return true;
}

// Minimum eigenvalue of the exact Hessian at scaled-to-unit-norm samples.
// tol is relative to each sample's Hessian Frobenius norm; any eigenvalue
// below -tol*|H| would refute the proven convexity, so it throws.
inline ConvexityReport hessian_psd_sample(int k, std::size_t num_points,
                                          double tol = 1e-8,
                                          std::uint64_t seed = 0) {
  if (tol <= 0) throw std::invalid_argument("hessian_psd_sample: tol <= 0");
  const std::size_t n = 16 * static_cast<std::size_t>(k);
  ConvexityReport report;
  report.k = k;
  report.num_samples = num_points;
  report.min_hessian_eig = 0.0;
  Rng rng(seed);
  for (std::size_t i = 0; i < num_points; ++i) {
    const MatrixPoint x = random_rational_matrix(
        rng, 16, static_cast<std::size_t>(k), 3, 2);
    const RMatrix h = hessian_matrix(x);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c)
        if (h(r, c) != h(c, r))
          throw std::logic_error("hessian_psd_sample: asymmetric Hessian");
    // H is quadratic in X, so H at X/|X| is H(X)/|X|^2.
    const double scale = 1.0 / rat_double(frobenius_norm_sq(x));
    Eigen::MatrixXd hd(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        hd(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            rat_double(h(r, c)) * scale;
    const double hnorm = hd.norm();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        hd, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol * hnorm)
      throw std::logic_error(
          "hessian_psd_sample: convexity refuted by sample; "
          "this indicates an implementation bug");
    if (i == 0 || min_eig < report.min_hessian_eig)
      report.min_hessian_eig = min_eig;
  }
  return report;
}

// Minimum of (q(X) + q(Y))/2 - q((X+Y)/2) over random rational pairs,
// computed exactly. Convexity makes every slack nonnegative.
inline Rational midpoint_convexity_sample(int k, std::size_t num_pairs,
                                          std::uint64_t seed = 0) {
  Rng rng(seed);
  Rational min_slack;
  bool first = true;
  for (std::size_t i = 0; i < num_pairs; ++i) {
    const MatrixPoint x = random_rational_matrix(
        rng, 16, static_cast<std::size_t>(k), 3, 2);
    const MatrixPoint y = random_rational_matrix(
        rng, 16, static_cast<std::size_t>(k), 3, 2);
    const MatrixPoint mid = (x + y) * rat(1, 2);
    const Rational slack =
        (q_eval(x) + q_eval(y)) * rat(1, 2) - q_eval(mid);
    if (first || slack < min_slack) {
      min_slack = slack;
      first = false;
    }
  }
  return first ? Rational(0) : min_slack;
}

inline ConvexityReport convexity_report(int k, std::size_t num_points = 100,
                                        std::size_t num_pairs = 1000,
                                        double tol = 1e-8,
                                        std::uint64_t seed = 0) {
  ConvexityReport report = hessian_psd_sample(k, num_points, tol, seed);
  report.min_midpoint_slack =
      rat_double(midpoint_convexity_sample(k, num_pairs, seed + 1));
  report.window_ok = blekherman_window_check(k, num_pairs, seed + 2);
  return report;
}

}  // namespace ocs
