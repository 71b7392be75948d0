#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>

#include "gaugewalk/error.hpp"
#include "gaugewalk/gauge.hpp"

using namespace gaugewalk;
using namespace gaugewalk::gauge;

namespace {

// Smallest positive |det| over all 2x2 integer bases with entries in
// [-bound, bound] whose vectors commute under F.
std::int64_t brute_min_det2(const HomogeneousField& F, int bound) {
  std::int64_t best = 0;
  for (int a = -bound; a <= bound; ++a)
    for (int b = -bound; b <= bound; ++b)
      for (int c = -bound; c <= bound; ++c)
        for (int d = -bound; d <= bound; ++d) {
          const std::int64_t det = std::llabs(static_cast<std::int64_t>(a) * d - static_cast<std::int64_t>(b) * c);
          if (det == 0 || (best && det >= best)) continue;
          if (commutation_phase(F, {a, b}, {c, d}).is_zero()) best = det;
        }
  return best;
}

}  // namespace

TEST(Rational, TwoDimensionalSevenths) {
  HomogeneousField F(2);
  F.set(0, 1, Angle::turns(3, 7));
  const RationalAnalysis r = rational_analysis(F);
  EXPECT_EQ(r.q1, 7);
  EXPECT_EQ(r.q2, 7);
  EXPECT_EQ(r.q3, 7);
  EXPECT_EQ(std::llabs(determinant(r.basis)), 7);
  EXPECT_EQ(r.holonomy.size(), 7u);
  EXPECT_EQ(brute_min_det2(F, 7), 7);
  EXPECT_TRUE(commutation_phase(F, r.basis[0], r.basis[1]).is_zero());
}

TEST(Rational, ZeroField) {
  const RationalAnalysis r = rational_analysis(HomogeneousField(2));
  EXPECT_EQ(r.q1, 1);
  EXPECT_EQ(r.q2, 1);
  EXPECT_EQ(r.q3, 1);
  ASSERT_EQ(r.holonomy.size(), 1u);
  EXPECT_TRUE(r.holonomy[0].is_zero());
}

TEST(Rational, ThreeDimensional) {
  HomogeneousField F(3);
  F.set(0, 1, Angle::turns(1, 2));
  F.set(0, 2, Angle::turns(1, 3));
  F.set(1, 2, Angle::turns(1, 5));
  const RationalAnalysis r = rational_analysis(F);
  EXPECT_EQ(r.q1, 30);
  EXPECT_EQ(r.q3, 30);
  EXPECT_LE(r.q2, 900);
  EXPECT_LE(r.q1, r.q2 * r.q2);
  EXPECT_EQ(std::llabs(determinant(r.basis)), r.q2);
  for (std::size_t i = 0; i < r.basis.size(); ++i)
    for (std::size_t j = 0; j < r.basis.size(); ++j) EXPECT_TRUE(commutation_phase(F, r.basis[i], r.basis[j]).is_zero());

  // No commuting basis with small entries beats the reported minimum.
  ASSERT_TRUE(r.minimal_search_complete);
  const int b = 2;
  std::int64_t best = 0;
  std::vector<std::int64_t> v(9);
  for (long code = 0; code < 1953125L; ++code) {
    long c = code;
    for (auto& e : v) {
      e = c % (2 * b + 1) - b;
      c /= 2 * b + 1;
    }
    const std::vector<std::vector<std::int64_t>> B{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}};
    const std::int64_t det = std::llabs(determinant(B));
    if (det == 0 || (best && det >= best)) continue;
    if (commutation_phase(F, B[0], B[1]).is_zero() && commutation_phase(F, B[0], B[2]).is_zero() &&
        commutation_phase(F, B[1], B[2]).is_zero())
      best = det;
  }
  if (best) EXPECT_GE(best, r.minimal_index);
  EXPECT_EQ(std::llabs(determinant(r.minimal_basis)), r.minimal_index);
}

TEST(Rational, IrrationalRejected) {
  HomogeneousField F(2);
  F.set(0, 1, Angle::radians(1.0));
  try {
    rational_analysis(F);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotRational);
  }
}
