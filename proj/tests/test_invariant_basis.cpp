#include "ocs/invariant_basis.hpp"

#include <gtest/gtest.h>

#include "ocs/random.hpp"

namespace ocs {
namespace {

long binom(int n, int r) {
  long v = 1;
  for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
  return v;
}

TEST(UBasis, SizesAndShapes) {
  EXPECT_EQ(u_basis(2, 0).size(), 1u);
  EXPECT_EQ(u_basis(2, 1).size(), 2u);
  EXPECT_EQ(u_basis(2, -1).size(), 1u);
  EXPECT_EQ(u_basis(3, -1).size(), 3u);
  EXPECT_EQ(u_basis(17, 1).size(), 152u);
  EXPECT_EQ(u_basis(17, -1).size(), 136u);
  EXPECT_THROW(u_basis(1, 0), std::invalid_argument);
  EXPECT_THROW(u_basis(3, 2), std::invalid_argument);
}

TEST(UBasis, NormsAndStructure) {
  for (int k : {2, 3, 5, 17}) {
    for (int j : {0, 1, -1}) {
      for (const OkBasisElement& f : u_basis(k, j)) {
        EXPECT_EQ(frobenius_norm_sq(f.entries), f.norm_sq);
        if (j == 1) {
          EXPECT_EQ(f.entries.transpose(), f.entries);
          EXPECT_EQ(f.entries.trace(), 0);
        }
        if (j == -1)
          EXPECT_EQ(f.entries.transpose(),
                    f.entries * Rational(-1));
      }
    }
  }
  for (const OkBasisElement& f : u_basis(3, -1)) EXPECT_EQ(f.norm_sq, 2);
}

TEST(UBasis, PairwiseOrthogonalWithinAndAcrossPieces) {
  const int k = 5;
  std::vector<OkBasisElement> all;
  for (int j : {0, 1, -1})
    for (OkBasisElement& f : u_basis(k, j)) all.push_back(std::move(f));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      EXPECT_EQ(frobenius_inner(all[i].entries, all[j].entries), 0);
  EXPECT_EQ(all.size(), static_cast<std::size_t>(k) * k);
}

TEST(Lambda, PairOrderAndGeneratorCounts) {
  const auto& pairs = lambda_pairs();
  ASSERT_EQ(pairs.size(), 8u);
  EXPECT_EQ(pairs[0].level, 0);
  EXPECT_EQ(pairs[5].level, 4);
  EXPECT_EQ(pairs[5].label, 1);
  EXPECT_EQ(pairs[7].level, 3);
  EXPECT_EQ(pairs[7].label, -1);
  const int k = 17;
  long total = 0;
  for (const LambdaPair& p : pairs) {
    const long count =
        binom(9, p.level) * static_cast<long>(u_basis(k, p.label).size());
    total += count;
  }
  // Levels 0,1,4 pair with the symmetric pieces, 2,3 with the skew piece:
  // (1+9+126)*(1+152) + (36+84)*136 = 37128.
  EXPECT_EQ(total, 37128);
}

// Independent evaluation of s_ij through dense projections instead of the
// basis double sum: project X^T E X onto each piece and take squared norms.
Rational s_eval_dense(const CliffordSystem& sys, int level, int label, int k,
                      const RMatrix& x) {
  Rational total(0);
  const RMatrix xt = x.transpose();
  for (const CliffordMatrix& e : sys.v_basis(level)) {
    const RMatrix m = xt * (e.p.to_matrix() * x);
    const RMatrix mt = m.transpose();
    if (label == 0) {
      const Rational t = m.trace();
      total += t * t / k;
    } else if (label == 1) {
      RMatrix sym = (m + mt) * rat(1, 2);
      const Rational t = m.trace() / k;
      for (int i = 0; i < k; ++i) sym(i, i) -= t;
      total += frobenius_norm_sq(sym);
    } else {
      total += frobenius_norm_sq((m - mt) * rat(1, 2));
    }
  }
  return total / 16;
}

TEST(SEval, MatchesDenseProjectionFormula) {
  const CliffordSystem& sys = clifford_system();
  Rng rng(31);
  for (int k : {2, 3}) {
    SEvaluator ev(sys, k);
    for (int trial = 0; trial < 3; ++trial) {
      const RMatrix x = random_rational_matrix(rng, 16, k);
      for (const LambdaPair& p : lambda_pairs())
        EXPECT_EQ(ev.s_eval(p.level, p.label, x),
                  s_eval_dense(sys, p.level, p.label, k, x))
            << "k=" << k << " pair (" << p.level << "," << p.label << ")";
    }
  }
}

TEST(SEval, AllMatchesIndividual) {
  const CliffordSystem& sys = clifford_system();
  Rng rng(32);
  for (int k : {2, 5}) {
    SEvaluator ev(sys, k);
    const RMatrix x = random_rational_matrix(rng, 16, k);
    const std::vector<Rational> all = ev.s_eval_all(x);
    const auto& pairs = lambda_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i)
      EXPECT_EQ(all[i], ev.s_eval(pairs[i].level, pairs[i].label, x));
  }
}

TEST(SEval, ValuesAreNonnegative) {
  const CliffordSystem& sys = clifford_system();
  Rng rng(33);
  SEvaluator ev(sys, 3);
  for (int trial = 0; trial < 5; ++trial) {
    const RMatrix x = random_rational_matrix(rng, 16, 3);
    for (const Rational& v : ev.s_eval_all(x)) EXPECT_GE(v, 0);
  }
}

TEST(SEval, SumRecoversFourthPowerOfNorm) {
  const CliffordSystem& sys = clifford_system();
  Rng rng(34);
  for (int k : {2, 3, 5}) {
    SEvaluator ev(sys, k);
    for (int trial = 0; trial < 5; ++trial)
      EXPECT_TRUE(s_sum_check(ev, random_rational_matrix(rng, 16, k)));
  }
}

TEST(SEval, SingleEntryPoint) {
  // X with one unit entry: X^T X has a single 1, so the identity piece
  // contributes 1/(16 k) and the whole sum is 1.
  const CliffordSystem& sys = clifford_system();
  const int k = 2;
  SEvaluator ev(sys, k);
  RMatrix x(16, k);
  x(0, 0) = 1;
  EXPECT_EQ(ev.s_eval(0, 0, x), rat(1, 16 * k));
  EXPECT_TRUE(s_sum_check(ev, x));
}

}  // namespace
}  // namespace ocs
