#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ocs/random.hpp"
#include "ocs/rational.hpp"

namespace ocs {

// Generic sum-of-squares machinery for small explicit forms (at most six
// variables, degree at most six): exact form construction, a dual barrier
// SDP for the sphere lower bound, and multistart sphere optimization.
// The big invariant forms never come through here; their cone problem is
// handled exactly elsewhere.

struct DenseForm {
  int n = 0;       // number of variables
  int degree = 0;  // even total degree 2d
  std::map<std::vector<int>, Rational> coeffs;
};

inline void check_dense_form(const DenseForm& f) {
  if (f.n < 1 || f.n > 6)
    throw std::invalid_argument("form must have 1..6 variables");
  if (f.degree < 2 || f.degree > 6 || f.degree % 2 != 0)
    throw std::invalid_argument("form degree must be 2, 4, or 6");
  for (const auto& [expo, coeff] : f.coeffs) {
    if (expo.size() != static_cast<std::size_t>(f.n))
      throw std::invalid_argument("exponent vector length mismatch");
    int sum = 0;
    for (int e : expo) {
      if (e < 0) throw std::invalid_argument("negative exponent");
      sum += e;
    }
    if (sum != f.degree)
      throw std::invalid_argument("exponent vector does not match degree");
    (void)coeff;
  }
}

inline double form_eval(const DenseForm& f, const Eigen::VectorXd& x) {
  double total = 0;
  for (const auto& [expo, coeff] : f.coeffs) {
    double term = rat_double(coeff);
    for (int i = 0; i < f.n; ++i)
      for (int e = 0; e < expo[static_cast<std::size_t>(i)]; ++e)
        term *= x[i];
    total += term;
  }
  return total;
}

inline Eigen::VectorXd form_gradient(const DenseForm& f,
                                     const Eigen::VectorXd& x) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(f.n);
  for (const auto& [expo, coeff] : f.coeffs) {
    const double c = rat_double(coeff);
    for (int i = 0; i < f.n; ++i) {
      const int ei = expo[static_cast<std::size_t>(i)];
      if (ei == 0) continue;
      double term = c * ei;
      for (int j = 0; j < f.n; ++j) {
        const int ej = expo[static_cast<std::size_t>(j)] - (j == i ? 1 : 0);
        for (int e = 0; e < ej; ++e) term *= x[j];
      }
      g[i] += term;
    }
  }
  return g;
}

// x^2 y^4 + x^4 y^2 - 3 x^2 y^2 z^2 + z^6: nonnegative, not a sum of
// squares, and the classic small witness that the sphere SOS bound can
// miss the true minimum.
inline DenseForm motzkin_form() {
  DenseForm f;
  f.n = 3;
  f.degree = 6;
  f.coeffs[{2, 4, 0}] = 1;
  f.coeffs[{4, 2, 0}] = 1;
  f.coeffs[{2, 2, 2}] = -3;
  f.coeffs[{0, 0, 6}] = 1;
  return f;
}

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

inline void check_graph(const Graph& g) {
  if (g.n < 1 || g.n > 6)
    throw std::invalid_argument("graph must have 1..6 vertices");
  std::vector<std::vector<bool>> seen(
      static_cast<std::size_t>(g.n),
      std::vector<bool>(static_cast<std::size_t>(g.n), false));
  for (const auto& [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.n || v >= g.n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    if (seen[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)])
      throw std::invalid_argument("duplicate edge");
    seen[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
    seen[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = true;
  }
}

// sum x_i^4 + 2 sum_{ij in E} x_i^2 x_j^2; its sphere minimum is the
// reciprocal of the independence number.
inline DenseForm stable_set_form(const Graph& g) {
  check_graph(g);
  DenseForm f;
  f.n = g.n;
  f.degree = 4;
  for (int i = 0; i < g.n; ++i) {
    std::vector<int> expo(static_cast<std::size_t>(g.n), 0);
    expo[static_cast<std::size_t>(i)] = 4;
    f.coeffs[expo] = 1;
  }
  for (const auto& [u, v] : g.edges) {
    std::vector<int> expo(static_cast<std::size_t>(g.n), 0);
    expo[static_cast<std::size_t>(u)] = 2;
    expo[static_cast<std::size_t>(v)] = 2;
    f.coeffs[expo] = 2;
  }
  return f;
}

// Exhaustive independence number; the vertex count is tiny by contract.
inline int independence_number(const Graph& g) {
  check_graph(g);
  int best = 0;
  for (unsigned mask = 0; mask < (1u << g.n); ++mask) {
    bool independent = true;
    for (const auto& [u, v] : g.edges)
      if ((mask >> u & 1u) && (mask >> v & 1u)) {
        independent = false;
        break;
      }
    if (independent) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

// All exponent vectors of total degree d in n variables, lexicographically
// descending: (d,0,...,0) first, (0,...,0,d) last.
inline std::vector<std::vector<int>> monomials(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  const auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<std::size_t>(pos)] = e;
      self(self, pos + 1, left - e);
    }
  };
  if (n >= 1) rec(rec, 0, d);
  return out;
}

struct SdpResult {
  double gamma = 0;
  Eigen::MatrixXd gram;  // over the degree-d monomial basis, symmetric
  double primal_dual_gap = 0;
  double residual = 0;
  std::vector<std::vector<int>> basis;  // monomials indexing gram
  std::vector<double> dual_y;           // feasible pseudo-moment vector
  double dual_objective = 0;            // certified upper bound on gamma*
};

namespace dense_detail {

inline double double_factorial(int k) {
  double out = 1;
  for (; k > 1; k -= 2) out *= k;
  return out;
}

// Exact moments of monomials under the uniform sphere measure: the
// interior dual start point. Odd exponents integrate to zero.
inline double sphere_moment(const std::vector<int>& expo, int n) {
  int total = 0;
  for (int e : expo) {
    if (e % 2 != 0) return 0;
    total += e;
  }
  double num = 1;
  for (int e : expo) num *= double_factorial(e - 1);
  double den = 1;
  for (int j = 0; j < total / 2; ++j) den *= n + 2 * j;
  return num / den;
}

inline double multinomial(int d, const std::vector<int>& beta) {
  double out = 1;
  int left = d;
  for (int b : beta) {
    for (int i = 1; i <= b; ++i) out *= static_cast<double>(left - b + i) / i;
    left -= b;
  }
  return out;
}

}  // namespace dense_detail

// Largest gamma with p - gamma |x|^{2d} a sum of squares, via a barrier
// method on the dual moment problem
//     min p.y  subject to  c.y = 1,  M(y) >= 0,
// where M(y) is the moment matrix and c expands |x|^{2d}. At a central
// point, Q = M(y)^{-1}/t is exactly primal feasible with value -nu/t for
// the equality multiplier nu, and the duality gap is basis_size/t, so the
// returned bracket [gamma, p.y] is certified by the iterate itself.
inline SdpResult sos_lower_bound(const DenseForm& p, double tol = 1e-6) {
  check_dense_form(p);
  if (tol <= 0) throw std::invalid_argument("sos_lower_bound: tol <= 0");
  const int d = p.degree / 2;
  const std::vector<std::vector<int>> basis = monomials(p.n, d);
  const std::vector<std::vector<int>> cons = monomials(p.n, p.degree);
  const int nb = static_cast<int>(basis.size());
  const int mc = static_cast<int>(cons.size());
  if (nb > 40)
    throw std::invalid_argument("sos_lower_bound: monomial basis too large");

  std::map<std::vector<int>, int> cons_index;
  for (int m = 0; m < mc; ++m) cons_index[cons[static_cast<std::size_t>(m)]] = m;
  // pairs[m]: basis index pairs (i <= j) with basis_i + basis_j = cons_m.
  std::vector<std::vector<std::pair<int, int>>> pairs(
      static_cast<std::size_t>(mc));
  for (int i = 0; i < nb; ++i)
    for (int j = i; j < nb; ++j) {
      std::vector<int> sum(static_cast<std::size_t>(p.n));
      for (int v = 0; v < p.n; ++v)
        sum[static_cast<std::size_t>(v)] =
            basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] +
            basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)];
      pairs[static_cast<std::size_t>(cons_index.at(sum))].emplace_back(i, j);
    }

  // The limiting moment matrix is singular whenever p - gamma |x|^{2d} has
  // sphere zeros, so the Newton systems grow ill-conditioned as t rises.
  // Extended precision buys the headroom to reach t ~ basis_size/tol.
  using Ld = long double;
  using MatLd = Eigen::Matrix<Ld, Eigen::Dynamic, Eigen::Dynamic>;
  using VecLd = Eigen::Matrix<Ld, Eigen::Dynamic, 1>;

  VecLd pvec = VecLd::Zero(mc);
  for (const auto& [expo, coeff] : p.coeffs)
    pvec[cons_index.at(expo)] = static_cast<Ld>(rat_double(coeff));
  VecLd cvec = VecLd::Zero(mc);
  for (int m = 0; m < mc; ++m) {
    const auto& expo = cons[static_cast<std::size_t>(m)];
    bool all_even = true;
    std::vector<int> half(static_cast<std::size_t>(p.n));
    for (int v = 0; v < p.n; ++v) {
      if (expo[static_cast<std::size_t>(v)] % 2 != 0) all_even = false;
      half[static_cast<std::size_t>(v)] =
          expo[static_cast<std::size_t>(v)] / 2;
    }
    if (all_even)
      cvec[m] = static_cast<Ld>(dense_detail::multinomial(d, half));
  }

  const auto moment_matrix = [&](const VecLd& y) {
    MatLd m = MatLd::Zero(nb, nb);
    for (int mm = 0; mm < mc; ++mm)
      for (const auto& [i, j] : pairs[static_cast<std::size_t>(mm)]) {
        m(i, j) += y[mm];
        if (i != j) m(j, i) += y[mm];
      }
    return m;
  };

  VecLd y(mc);
  for (int m = 0; m < mc; ++m)
    y[m] = static_cast<Ld>(
        dense_detail::sphere_moment(cons[static_cast<std::size_t>(m)], p.n));

  const auto barrier_value = [&](const VecLd& yy, Ld t, bool* ok) -> Ld {
    const MatLd m = moment_matrix(yy);
    const Eigen::LLT<MatLd> llt(m);
    if (llt.info() != Eigen::Success) {
      *ok = false;
      return 0;
    }
    *ok = true;
    Ld logdet = 0;
    for (int i = 0; i < nb; ++i) logdet += std::log(llt.matrixL()(i, i));
    return t * pvec.dot(yy) - 2 * logdet;
  };

  // At a centered iterate the bracket width is exactly basis_size/t, so
  // t never needs to exceed this target; stopping there keeps the Newton
  // systems inside the well-conditioned range.
  const Ld t_target =
      static_cast<Ld>(nb) / (Ld(0.9) * static_cast<Ld>(tol));
  Ld t = 1;
  Ld nu = 0;
  for (int outer = 0; outer < 80; ++outer) {
    bool centered = false;
    for (int inner = 0; inner < 80; ++inner) {
      const MatLd m = moment_matrix(y);
      const Eigen::LLT<MatLd> llt(m);
      if (llt.info() != Eigen::Success)
        throw std::runtime_error("sos_lower_bound: iterate left the cone");
      const MatLd w = llt.solve(MatLd::Identity(nb, nb));
      VecLd g(mc);
      for (int mm = 0; mm < mc; ++mm) {
        Ld s = 0;
        for (const auto& [i, j] : pairs[static_cast<std::size_t>(mm)])
          s += (i == j) ? w(i, i) : 2 * w(i, j);
        g[mm] = s;
      }
      const VecLd grad = t * pvec - g;
      MatLd hess(mc, mc);
      for (int mm = 0; mm < mc; ++mm) {
        MatLd u = MatLd::Zero(nb, nb);
        for (const auto& [i, j] : pairs[static_cast<std::size_t>(mm)]) {
          u += w.col(i) * w.row(j);
          if (i != j) u += w.col(j) * w.row(i);
        }
        for (int ll = 0; ll < mc; ++ll) {
          Ld s = 0;
          for (const auto& [a, b] : pairs[static_cast<std::size_t>(ll)])
            s += (a == b) ? u(a, a) : u(a, b) + u(b, a);
          hess(ll, mm) = s;
        }
      }
      MatLd kkt = MatLd::Zero(mc + 1, mc + 1);
      kkt.topLeftCorner(mc, mc) = hess;
      kkt.topRightCorner(mc, 1) = cvec;
      kkt.bottomLeftCorner(1, mc) = cvec.transpose();
      VecLd rhs = VecLd::Zero(mc + 1);
      rhs.head(mc) = -grad;
      const VecLd sol = kkt.fullPivLu().solve(rhs);
      const VecLd dy = sol.head(mc);
      nu = sol[mc];
      const Ld decrement_sq = dy.dot(hess * dy);
      if (decrement_sq <= 1e-20L) {
        centered = true;
        break;
      }
      bool ok = false;
      const Ld f0 = barrier_value(y, t, &ok);
      if (!ok) throw std::runtime_error("sos_lower_bound: lost feasibility");
      Ld step = 1;
      bool moved = false;
      while (step >= 1e-16L) {
        const VecLd yn = y + step * dy;
        bool okn = false;
        const Ld fn = barrier_value(yn, t, &okn);
        if (okn && fn <= f0 + Ld(0.25) * step * grad.dot(dy)) {
          y = yn;
          moved = true;
          break;
        }
        step /= 2;
      }
      if (!moved) {
        // Roundoff floor: the step no longer improves the barrier, so the
        // iterate is as centered as the precision allows.
        centered = decrement_sq <= 1e-8L;
        break;
      }
    }
    // Exit on the measured certificate rather than the worst-case barrier
    // bound: the bracket [gamma, p.y] and the Gram residual are what the
    // result promises, and they tighten long before the bound does.
    {
      const MatLd m = moment_matrix(y);
      const Eigen::LLT<MatLd> llt(m);
      if (llt.info() == Eigen::Success) {
        const MatLd w = llt.solve(MatLd::Identity(nb, nb));
        const MatLd gram = (w + w.transpose()) / (2 * t);
        const Ld gamma = -nu / t;
        const Ld dual_objective = pvec.dot(y);
        const Ld gap = std::abs(dual_objective - gamma);
        Ld residual = 0;
        for (int mm = 0; mm < mc; ++mm) {
          Ld s = 0;
          for (const auto& [i, j] : pairs[static_cast<std::size_t>(mm)])
            s += (i == j) ? gram(i, i) : 2 * gram(i, j);
          residual = std::max(std::abs(s + gamma * cvec[mm] - pvec[mm]),
                              residual);
        }
        if (gap <= tol && residual <= tol &&
            std::abs(cvec.dot(y) - 1) <= 1e-9L) {
          SdpResult out;
          out.gamma = static_cast<double>(gamma);
          out.gram = gram.cast<double>();
          out.basis = basis;
          out.dual_y.resize(static_cast<std::size_t>(mc));
          for (int mm = 0; mm < mc; ++mm)
            out.dual_y[static_cast<std::size_t>(mm)] =
                static_cast<double>(y[mm]);
          out.dual_objective = static_cast<double>(dual_objective);
          out.primal_dual_gap = static_cast<double>(gap);
          out.residual = static_cast<double>(residual);
          return out;
        }
      }
    }
    if (!centered || t >= t_target) break;
    t = std::min(t * 8, t_target);
  }
  throw std::runtime_error(
      "sos_lower_bound: failed to reach the requested tolerance");
}

struct SphereExtrema {
  double min = 0;
  double max = 0;
  Eigen::VectorXd argmin;
  Eigen::VectorXd argmax;
};

namespace dense_detail {

// Projected gradient descent on the unit sphere with backtracking; value
// accuracy is what matters downstream, and near any minimum the value
// error shrinks at least like the fourth power of the distance.
inline double sphere_descend(const DenseForm& f, Eigen::VectorXd x,
                             double sign, Eigen::VectorXd* arg) {
  x.normalize();
  double fx = sign * form_eval(f, x);
  double step = 1.0;
  for (int iter = 0; iter < 2000; ++iter) {
    Eigen::VectorXd g = sign * form_gradient(f, x);
    g -= g.dot(x) * x;
    const double gn = g.squaredNorm();
    if (gn < 1e-26) break;
    bool moved = false;
    while (step >= 1e-16) {
      Eigen::VectorXd xn = (x - step * g).normalized();
      const double fn = sign * form_eval(f, xn);
      if (fn <= fx - 1e-4 * step * gn) {
        x = xn;
        fx = fn;
        moved = true;
        break;
      }
      step /= 2;
    }
    if (!moved) break;
    step = std::min(step * 2, 1e3);
  }
  *arg = x;
  return sign * fx;
}

}  // namespace dense_detail

// Multistart local optimization over the unit sphere. Starts cover all
// coordinate points, subset indicators (the stable-set optima), sign
// patterns, and random directions.
inline SphereExtrema sphere_extrema(const DenseForm& f,
                                    std::size_t num_random_starts = 48,
                                    std::uint64_t seed = 0) {
  check_dense_form(f);
  std::vector<Eigen::VectorXd> starts;
  for (unsigned mask = 1; mask < (1u << f.n); ++mask) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(f.n);
    for (int i = 0; i < f.n; ++i)
      if (mask >> i & 1u) x[i] = 1;
    starts.push_back(x);
  }
  for (unsigned signs = 0; signs < (1u << (f.n - 1)); ++signs) {
    Eigen::VectorXd x = Eigen::VectorXd::Ones(f.n);
    for (int i = 0; i + 1 < f.n; ++i)
      if (signs >> i & 1u) x[i + 1] = -1;
    starts.push_back(x);
  }
  Rng rng(seed);
  for (std::size_t s = 0; s < num_random_starts; ++s) {
    Eigen::VectorXd x(f.n);
    for (int i = 0; i < f.n; ++i) x[i] = 2 * rng.real01() - 1;
    if (x.norm() < 1e-9) x[0] = 1;
    starts.push_back(x);
  }
  SphereExtrema out;
  bool first = true;
  for (const auto& start : starts) {
    Eigen::VectorXd arg_lo, arg_hi;
    const double lo = dense_detail::sphere_descend(f, start, +1, &arg_lo);
    const double hi = dense_detail::sphere_descend(f, start, -1, &arg_hi);
    if (first || lo < out.min) {
      out.min = lo;
      out.argmin = arg_lo;
    }
    if (first || hi > out.max) {
      out.max = hi;
      out.argmax = arg_hi;
    }
    first = false;
  }
  return out;
}

// (p_max - gamma) / (p_max - p_min); at least 1 up to solver tolerance.
// Throws when the form is constant on the sphere, where the ratio is 0/0.
inline double gap_estimate(const DenseForm& f, double tol = 1e-6,
                           std::uint64_t seed = 0) {
  const SphereExtrema ext = sphere_extrema(f, 48, seed);
  const double spread = ext.max - ext.min;
  if (spread <= 1e-8 * std::max(1.0, std::abs(ext.max)))
    throw std::domain_error("gap undefined: form is constant on the sphere");
  const SdpResult sdp = sos_lower_bound(f, tol);
  return (ext.max - sdp.gamma) / spread;
}

// Text format: one term per line, `coefficient e_1 ... e_n`, with `#`
// comments. The variable count comes from the first term line.
inline DenseForm parse_form_text(std::istream& in) {
  DenseForm f;
  std::string line;
  int lineno = 0;
  bool have_first = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string coeff_text;
    if (!(ls >> coeff_text)) continue;
    Rational coeff;
    try {
      coeff = rat_parse(coeff_text);
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " +
                               e.what());
    }
    std::vector<int> expo;
    int e = 0;
    while (ls >> e) {
      if (e < 0)
        throw std::runtime_error("line " + std::to_string(lineno) +
                                 ": negative exponent");
      expo.push_back(e);
    }
    if (!ls.eof())
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": malformed exponent");
    if (expo.empty())
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": missing exponents");
    if (!have_first) {
      f.n = static_cast<int>(expo.size());
      f.degree = 0;
      for (int v : expo) f.degree += v;
      have_first = true;
    }
    if (static_cast<int>(expo.size()) != f.n)
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": expected " + std::to_string(f.n) +
                               " exponents");
    int sum = 0;
    for (int v : expo) sum += v;
    if (sum != f.degree)
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": degree mismatch (form is degree " +
                               std::to_string(f.degree) + ")");
    f.coeffs[expo] += coeff;
  }
  if (!have_first) throw std::runtime_error("line 1: empty form file");
  for (auto it = f.coeffs.begin(); it != f.coeffs.end();)
    it = it->second == 0 ? f.coeffs.erase(it) : std::next(it);
  try {
    check_dense_form(f);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("line 1: ") + e.what());
  }
  return f;
}

// Graph format: `n m` on the first line, then m lines `u v` with
// zero-based vertices.
inline Graph parse_graph_text(std::istream& in) {
  Graph g;
  std::string line;
  int lineno = 0;
  long m = -1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (m < 0) {
      if (!(ls >> g.n >> m) || g.n < 1 || m < 0) {
        std::istringstream probe(line);
        std::string any;
        if (!(probe >> any)) {
          m = -1;
          continue;  // blank line before the header
        }
        throw std::runtime_error("line " + std::to_string(lineno) +
                                 ": expected `n m` header");
      }
      continue;
    }
    int u = 0, v = 0;
    if (!(ls >> u)) continue;
    if (!(ls >> v))
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": expected `u v` edge");
    g.edges.emplace_back(u, v);
  }
  if (m < 0) throw std::runtime_error("line 1: empty graph file");
  if (static_cast<long>(g.edges.size()) != m)
    throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(m) + " edges, found " +
                             std::to_string(g.edges.size()));
  try {
    check_graph(g);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("line 1: ") + e.what());
  }
  return g;
}

}  // namespace ocs
