#include "ocs/certificate.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "ocs/certificate_json.hpp"
#include "ocs/rational.hpp"

namespace ocs {
namespace {

std::vector<Rational> rats(const std::vector<const char*>& texts) {
  std::vector<Rational> out;
  for (const char* t : texts) out.push_back(rat_parse(t));
  return out;
}

TEST(ConeProblem, PinnedCoefficientMatrixK16) {
  const ConeProblem p = cone_problem(16, ConeForm::kQuartic);
  ASSERT_EQ(p.a.rows(), 3u);
  const std::vector<std::vector<const char*>> expect = {
      {"1/256", "1/256", "14/256", "15/256", "15/256", "210/256", "0", "0"},
      {"1", "1", "0", "1", "1", "140", "56", "56"},
      {"1", "0", "0", "0", "9", "126", "36", "84"},
  };
  for (std::size_t r = 0; r < 3; ++r) {
    const auto row = rats(expect[r]);
    for (std::size_t c = 0; c < 8; ++c)
      EXPECT_EQ(p.a(r, c), row[c]) << "entry (" << r << "," << c << ")";
  }
  EXPECT_EQ(p.b, rats({"1/4", "64", "128"}));
  EXPECT_EQ(p.n4, rats({"1", "256", "256"}));
}

TEST(ConeProblem, PinnedCoefficientMatrixK17) {
  const ConeProblem p = cone_problem(17, ConeForm::kQuartic);
  ASSERT_EQ(p.a.rows(), 3u);
  const std::vector<std::vector<const char*>> expect = {
      {"1/272", "1/272", "14/272", "1/17", "1/17", "14/17", "0", "0"},
      {"16/17", "16/17", "0", "18/17", "18/17", "140", "56", "56"},
      {"16/17", "0", "0", "1/17", "9", "126", "36", "84"},
  };
  for (std::size_t r = 0; r < 3; ++r) {
    const auto row = rats(expect[r]);
    for (std::size_t c = 0; c < 8; ++c)
      EXPECT_EQ(p.a(r, c), row[c]) << "entry (" << r << "," << c << ")";
  }
  EXPECT_EQ(p.b, rats({"1/4", "64", "128"}));
}

TEST(ConeProblem, CauchySchwarzTargetsAndParseval) {
  for (int k : {16, 17, 20}) {
    const ConeProblem p = cone_problem(k, ConeForm::kCauchySchwarz);
    EXPECT_EQ(p.b[0], 0) << "k=" << k;
    EXPECT_EQ(p.b[1], 0) << "k=" << k;
    EXPECT_EQ(p.b[2], 64) << "k=" << k;
    // Row sums recover |X|^4: the eight invariants resolve the norm.
    for (std::size_t r = 0; r < p.a.rows(); ++r) {
      Rational sum = 0;
      for (std::size_t c = 0; c < 8; ++c) sum += p.a(r, c);
      EXPECT_EQ(sum, p.n4[r]) << "k=" << k << " row " << r;
    }
  }
}

TEST(ConeProblem, SmallKReachesRankThree) {
  for (int k = 2; k <= 15; ++k) {
    const ConeProblem p = cone_problem(k, ConeForm::kQuartic);
    EXPECT_GE(rank(p.a), 3u) << "k=" << k;
    EXPECT_GE(p.points.size(), 3u);
    EXPECT_EQ(p.a.rows(), p.points.size());
  }
}

TEST(Farkas, PinnedRowCertifiesK17) {
  const ConeProblem p = cone_problem(17, ConeForm::kQuartic);
  const FarkasCheck chk = farkas_verify(p, rats({"252", "3", "-2"}));
  EXPECT_TRUE(chk.valid);
  EXPECT_EQ(chk.product_row,
            rats({"127/68", "15/4", "441/34", "304/17", "0", "6384/17", "96",
                  "0"}));
  EXPECT_EQ(chk.product_rhs, -1);
}

TEST(Farkas, RejectsNonCertificate) {
  const ConeProblem p = cone_problem(17, ConeForm::kQuartic);
  const FarkasCheck chk = farkas_verify(p, rats({"1", "0", "0"}));
  EXPECT_FALSE(chk.valid);
  EXPECT_EQ(chk.product_rhs, rat(1, 4));
}

TEST(Feasibility, PinnedLambdaSolvesK16) {
  const ConeProblem p = cone_problem(16, ConeForm::kQuartic);
  const auto lambda = rats({"0", "0", "0", "0", "64/15", "0", "0", "16/15"});
  for (std::size_t r = 0; r < 3; ++r) {
    Rational lhs = 0;
    for (std::size_t c = 0; c < 8; ++c) lhs += p.a(r, c) * lambda[c];
    EXPECT_EQ(lhs, p.b[r]) << "row " << r;
  }
  EXPECT_TRUE(verify_decomposition(p, lambda, 20, 5));
}

TEST(Feasibility, SolverFindsDecompositionAtK16) {
  const ConeProblem p = cone_problem(16, ConeForm::kQuartic);
  const FeasibilityResult res = feasibility_solve(p);
  ASSERT_TRUE(res.feasible);
  ASSERT_EQ(res.lambda.size(), 8u);
  for (const auto& v : res.lambda) EXPECT_GE(v, 0);
  EXPECT_TRUE(verify_decomposition(p, res.lambda, 20, 11));
}

TEST(Feasibility, SolverRefutesAtK17) {
  const ConeProblem p = cone_problem(17, ConeForm::kQuartic);
  const FeasibilityResult res = feasibility_solve(p);
  ASSERT_FALSE(res.feasible);
  EXPECT_TRUE(res.farkas.valid);
  for (const auto& v : res.farkas.product_row) EXPECT_GE(v, 0);
  EXPECT_LT(res.farkas.product_rhs, 0);
}

TEST(Feasibility, DichotomyOverCertifiedRange) {
  for (int k = 16; k <= 24; ++k) {
    const ConeProblem p = cone_problem(k, ConeForm::kQuartic);
    const FeasibilityResult res = feasibility_solve(p);
    EXPECT_EQ(res.feasible, k == 16) << "k=" << k;
    if (res.feasible)
      EXPECT_TRUE(verify_decomposition(p, res.lambda, 10, 3));
    else
      EXPECT_TRUE(res.farkas.valid) << "k=" << k;
  }
}

TEST(VerifyDecomposition, RejectsWrongMultipliers) {
  const ConeProblem p = cone_problem(16, ConeForm::kQuartic);
  // Right linear system, wrong polynomial: swapping the two active
  // multipliers keeps neither the system nor the identity.
  const auto wrong = rats({"0", "0", "0", "0", "16/15", "0", "0", "64/15"});
  EXPECT_FALSE(verify_decomposition(p, wrong, 10, 1));
  // Negative multipliers are not a cone decomposition at all.
  const auto negative =
      rats({"-1", "0", "0", "0", "64/15", "0", "0", "16/15"});
  EXPECT_FALSE(verify_decomposition(p, negative, 10, 1));
}

TEST(VerifyDecomposition, EvaluationSpanHasRankThree) {
  // Why three points suffice: as functions of X the eight invariants span
  // only a three-dimensional space, so a rank-3 point evaluation already
  // determines the polynomial identity. Checked at many random points.
  for (int k : {2, 3, 5, 8, 16, 17}) {
    SEvaluator eval(clifford_system(), k);
    Rng rng(99);
    RMatrix m(30, 8);
    for (std::size_t i = 0; i < 30; ++i) {
      const auto x =
          random_rational_matrix(rng, 16, static_cast<std::size_t>(k), 2, 2);
      const auto s = eval.s_eval_all(x);
      for (std::size_t c = 0; c < 8; ++c) m(i, c) = s[c];
    }
    EXPECT_EQ(rank(m), 3u) << "k=" << k;
  }
}

TEST(VerifyDecomposition, DistinctVerticesAllRepresentTheForm) {
  // Below the threshold the multiplier polytope is not a single point;
  // every vertex is a genuine decomposition because of the rank-3 span.
  const ConeProblem p = cone_problem(8, ConeForm::kQuartic);
  std::vector<Rational> cmax(8, Rational(0)), cmin(8, Rational(0));
  cmax[0] = -1;
  cmin[0] = 1;
  const LpSolution hi = lp_solve(p.a, p.b, cmax);
  const LpSolution lo = lp_solve(p.a, p.b, cmin);
  ASSERT_EQ(hi.status, LpSolution::Status::kOptimal);
  ASSERT_EQ(lo.status, LpSolution::Status::kOptimal);
  ASSERT_NE(hi.x, lo.x);
  EXPECT_TRUE(verify_decomposition(p, hi.x, 15, 21));
  EXPECT_TRUE(verify_decomposition(p, lo.x, 15, 22));
}

TEST(VerifyDecomposition, MultiplierPolytopeIsAPointAtSixteen) {
  // At the boundary k the decomposition is unique: maximizing and
  // minimizing any coordinate over the polytope gives the same vertex.
  const ConeProblem p = cone_problem(16, ConeForm::kQuartic);
  const auto pinned = rats({"0", "0", "0", "0", "64/15", "0", "0", "16/15"});
  for (std::size_t m = 0; m < 8; ++m) {
    std::vector<Rational> cmax(8, Rational(0)), cmin(8, Rational(0));
    cmax[m] = -1;
    cmin[m] = 1;
    const LpSolution hi = lp_solve(p.a, p.b, cmax);
    const LpSolution lo = lp_solve(p.a, p.b, cmin);
    ASSERT_EQ(hi.status, LpSolution::Status::kOptimal);
    ASSERT_EQ(lo.status, LpSolution::Status::kOptimal);
    EXPECT_EQ(hi.x[m], pinned[m]) << "coordinate " << m;
    EXPECT_EQ(lo.x[m], pinned[m]) << "coordinate " << m;
  }
}

TEST(SosMin, MatchesClosedFormAcrossRange) {
  for (int k = 2; k <= 24; ++k)
    EXPECT_EQ(sos_min_invariant(k), sos_min_formula(k)) << "k=" << k;
}

TEST(SosMin, ThresholdAtOneQuarter) {
  EXPECT_EQ(sos_min_invariant(16), rat(-1, 4));
  for (int k = 16; k <= 24; ++k) {
    const bool sos = feasibility_solve(cone_problem(k, ConeForm::kQuartic))
                         .feasible;
    EXPECT_EQ(sos, sos_min_invariant(k) >= rat(-1, 4)) << "k=" << k;
  }
}

TEST(Gap, MatchesClosedFormAndCrossesTwoAtSeventeen) {
  for (int k = 2; k <= 24; ++k) {
    const Rational g = gap_invariant(k);
    EXPECT_EQ(g, gap_formula(k)) << "k=" << k;
    EXPECT_EQ(g > 2, k >= 17) << "k=" << k;
  }
  // The ratio is increasing in k and approaches 15/7 from below.
  for (int k = 2; k < 24; ++k)
    EXPECT_LT(gap_formula(k), gap_formula(k + 1));
  EXPECT_LT(gap_formula(24), rat(15, 7));
}

TEST(Json, CertificateShapeAndRoundTrip) {
  const nlohmann::json sos = certificate_json(16);
  EXPECT_EQ(sos["k"], 16);
  EXPECT_EQ(sos["verdict"], "sos");
  ASSERT_TRUE(sos["certificate"].contains("lambda"));
  ASSERT_EQ(sos["A"].size(), 3u);
  ASSERT_EQ(sos["A"][0].size(), 8u);
  EXPECT_EQ(sos["A"][0][2], "7/128");  // 14/256 in lowest terms
  EXPECT_EQ(sos["b"], (nlohmann::json{"1/4", "64", "128"}));
  EXPECT_EQ(sos["lambda_order"][6], (nlohmann::json{2, -1}));
  // Claimed multipliers must satisfy the emitted system.
  const ConeProblem p = cone_problem(16, ConeForm::kQuartic);
  std::vector<Rational> lambda;
  for (const auto& s : sos["certificate"]["lambda"])
    lambda.push_back(rat_parse(s.get<std::string>()));
  EXPECT_TRUE(verify_decomposition(p, lambda, 5, 9));

  const nlohmann::json ref = certificate_json(17);
  EXPECT_EQ(ref["verdict"], "not_sos");
  ASSERT_TRUE(ref["certificate"].contains("farkas_row"));
  const ConeProblem p17 = cone_problem(17, ConeForm::kQuartic);
  std::vector<Rational> row;
  for (const auto& s : ref["certificate"]["farkas_row"])
    row.push_back(rat_parse(s.get<std::string>()));
  EXPECT_TRUE(farkas_verify(p17, row).valid);
  EXPECT_LT(rat_parse(ref["certificate"]["product_rhs"].get<std::string>()),
            0);
}

}  // namespace
}  // namespace ocs
