#include "ocs/clifford.hpp"

#include <gtest/gtest.h>

#include "ocs/random.hpp"

namespace ocs {
namespace {

TEST(Clifford, GeneratorsAreSymmetricInvolutions) {
  const CliffordSystem& sys = clifford_system();
  for (int i = 0; i < 9; ++i) {
    EXPECT_EQ(sys.S(i).transpose(), sys.S(i)) << "S_" << i;
    EXPECT_EQ(sys.S(i) * sys.S(i), SignedPerm16::identity()) << "S_" << i;
  }
}

TEST(Clifford, GeneratorsAnticommute) {
  const CliffordSystem& sys = clifford_system();
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j)
      EXPECT_EQ(sys.S(i) * sys.S(j), (sys.S(j) * sys.S(i)).negate())
          << "i=" << i << " j=" << j;
}

TEST(Clifford, FullProductIsMinusIdentity) {
  const CliffordSystem& sys = clifford_system();
  SignedPerm16 p = SignedPerm16::identity();
  for (int i = 0; i < 9; ++i) p = p * sys.S(i);
  EXPECT_EQ(p, SignedPerm16::identity().negate());
}

TEST(Clifford, PinnedGenerators) {
  const CliffordSystem& sys = clifford_system();
  // S_0 swaps the two halves; S_8 is diag(I, -I).
  const RMatrix s0 = sys.S(0).to_matrix();
  const RMatrix s8 = sys.S(8).to_matrix();
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      EXPECT_EQ(s0(r, 8 + c), r == c ? 1 : 0);
      EXPECT_EQ(s0(8 + r, c), r == c ? 1 : 0);
      EXPECT_EQ(s0(r, c), 0);
      EXPECT_EQ(s0(8 + r, 8 + c), 0);
      EXPECT_EQ(s8(r, c), r == c ? 1 : 0);
      EXPECT_EQ(s8(8 + r, 8 + c), r == c ? -1 : 0);
      EXPECT_EQ(s8(r, 8 + c), 0);
      EXPECT_EQ(s8(8 + r, c), 0);
    }
}

TEST(Clifford, BasisSizes) {
  const CliffordSystem& sys = clifford_system();
  const std::size_t expected[5] = {1, 9, 36, 84, 126};
  std::size_t total = 0;
  for (int level = 0; level <= 4; ++level) {
    EXPECT_EQ(sys.v_basis(level).size(), expected[level]) << "level " << level;
    total += sys.v_basis(level).size();
  }
  EXPECT_EQ(total, 256u);
  EXPECT_THROW(sys.v_basis(5), std::invalid_argument);
}

TEST(Clifford, ProductsHaveStatedSymmetryClass) {
  const CliffordSystem& sys = clifford_system();
  for (int level = 0; level <= 4; ++level)
    for (const CliffordMatrix& e : sys.v_basis(level)) {
      const bool expect_sym = level == 0 || level == 1 || level == 4;
      EXPECT_EQ(e.symmetric, expect_sym);
      if (expect_sym)
        EXPECT_EQ(e.p.transpose(), e.p);
      else
        EXPECT_EQ(e.p.transpose(), e.p.negate());
      EXPECT_EQ(sp_frobenius_inner(e.p, e.p), 16);
    }
}

// The 256 products form an orthogonal basis of all 16x16 matrices.
TEST(Clifford, ProductsArePairwiseOrthogonal) {
  const CliffordSystem& sys = clifford_system();
  std::vector<const CliffordMatrix*> all;
  for (int level = 0; level <= 4; ++level)
    for (const CliffordMatrix& e : sys.v_basis(level)) all.push_back(&e);
  ASSERT_EQ(all.size(), 256u);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      ASSERT_EQ(sp_frobenius_inner(all[i]->p, all[j]->p), 0)
          << "pair " << i << "," << j;
}

TEST(Clifford, ProjectorFixesOwnLevelAndKillsOthers) {
  const CliffordSystem& sys = clifford_system();
  const RMatrix s3 = sys.S(3).to_matrix();
  EXPECT_EQ(sys.project_V(1, s3), s3);
  EXPECT_TRUE(sys.project_V(2, s3).is_zero());
  const RMatrix s25 = (sys.S(2) * sys.S(5)).to_matrix();
  EXPECT_EQ(sys.project_V(2, s25), s25);
  EXPECT_TRUE(sys.project_V(1, s25).is_zero());
  EXPECT_TRUE(sys.project_V(4, s25).is_zero());
}

TEST(Clifford, ProjectorsResolveTheIdentityMap) {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const RMatrix z = random_rational_matrix(rng, 16, 16);
    const CliffordSystem& sys = clifford_system();
    RMatrix total(16, 16);
    for (int level = 0; level <= 4; ++level) {
      const RMatrix p = sys.project_V(level, z);
      EXPECT_EQ(sys.project_V(level, p), p) << "level " << level;
      EXPECT_EQ(frobenius_norm_sq(p), sys.project_V_norm_sq(level, z));
      total = total + p;
    }
    EXPECT_EQ(total, z);
  }
}

}  // namespace
}  // namespace ocs
