#include <gtest/gtest.h>

#include "../support/generators.hpp"
#include "../support/seed.hpp"
#include "gaugewalk/error.hpp"
#include "gaugewalk/forms.hpp"
#include "gaugewalk/gauge.hpp"

using namespace gaugewalk;
using namespace gaugewalk::forms;

namespace {

DiscreteForm landau(const LatticeWindow& w, const Angle& B) {
  DiscreteForm A(w, 1);
  for (std::size_t x = 0; x < w.size(); ++x)
    if (A.has_cell(x, 2)) A.set(x, 2, B.scaled(w.coord(x, 0)));
  return A;
}

}  // namespace

TEST(Forms, MaskHelpers) {
  EXPECT_EQ(masks_of_degree(3, 2), (std::vector<Mask>{3, 5, 6}));
  EXPECT_EQ(permutation_sign({0, 1}), 1);
  EXPECT_EQ(permutation_sign({1, 0}), -1);
  EXPECT_EQ(permutation_sign({2, 0, 1}), 1);
  EXPECT_EQ(permutation_sign({1, 1}), 0);
  EXPECT_EQ(axes_of(mask_of({0, 2})), (std::vector<int>{0, 2}));
}

TEST(Forms, OpenCellsShrink) {
  DiscreteForm f(LatticeWindow({3, 3}, Boundary::open), 1);
  const auto& w = f.window();
  EXPECT_TRUE(f.has_cell(w.index({1, 2}), 1));
  EXPECT_FALSE(f.has_cell(w.index({2, 2}), 1));
  EXPECT_THROW(f.set(w.index({2, 0}), 1, Angle::turns(1, 2)), Error);
  EXPECT_THROW(DiscreteForm(w, 3), Error);
}

TEST(Forms, PermutedAccessCarriesSign) {
  DiscreteForm F(LatticeWindow({3, 3}, Boundary::torus), 2);
  F.set(0, 3, Angle::turns(1, 5));
  EXPECT_EQ(F.component(0, {0, 1}), Angle::turns(1, 5));
  EXPECT_EQ(F.component(0, {1, 0}), Angle::turns(4, 5));
  EXPECT_EQ(F.component(0, {1, 1}), Angle::turns(0, 1));
}

TEST(Forms, DerivativeOfLinearFunction) {
  LatticeWindow w({5, 5}, Boundary::open);
  DiscreteForm f(w, 0);
  for (std::size_t x = 0; x < w.size(); ++x) f.set(x, 0, Angle::radians(0.3 * w.coord(x, 0)));
  const DiscreteForm df = exterior_derivative(f);
  df.for_each_cell([&](std::size_t, Mask m, const Angle& v) {
    EXPECT_NEAR(circular_distance(v, Angle::radians(m == 1 ? 0.3 : 0.0)), 0.0, 1e-14);
  });
}

TEST(Forms, DerivativeOfLandauPotential) {
  LatticeWindow w({6, 6}, Boundary::open);
  const DiscreteForm F = exterior_derivative(landau(w, Angle::turns(1, 3)));
  int cells = 0;
  F.for_each_cell([&](std::size_t, Mask, const Angle& v) {
    EXPECT_EQ(v, Angle::turns(1, 3));
    ++cells;
  });
  EXPECT_EQ(cells, 25);
}

TEST(Forms, DerivativeTwiceVanishesExactly) {
  auto rng = gwtest::engine(11);
  LatticeWindow w({4, 4, 4}, Boundary::torus);
  const DiscreteForm A = gwtest::random_form(rng, w, 1, true);
  const DiscreteForm ddA = exterior_derivative(exterior_derivative(A));
  ddA.for_each_cell([](std::size_t, Mask, const Angle& v) { EXPECT_TRUE(v.exact() && v.is_zero()); });
}

TEST(Forms, TopFormHasNoDerivative) {
  DiscreteForm F(LatticeWindow({3, 3}, Boundary::torus), 2);
  EXPECT_THROW(exterior_derivative(F), Error);
  EXPECT_TRUE(check_closed(F, 0.0));
}

TEST(Forms, ClosedExamples) {
  auto rng = gwtest::engine(12);
  LatticeWindow t5({5, 5}, Boundary::torus);
  EXPECT_TRUE(check_closed(exterior_derivative(gwtest::random_form(rng, t5, 1, false)), 1e-12));

  LatticeWindow w3({4, 4, 4}, Boundary::open);
  DiscreteForm F(w3, 2);
  F.set(w3.index({1, 1, 1}), 3, Angle::radians(0.1));
  EXPECT_FALSE(check_closed(F, 1e-9));

  EXPECT_TRUE(check_closed(constant_two_form(LatticeWindow({6, 6}, Boundary::open), 0, 1, Angle::turns(3, 7)), 0.0));
}

TEST(Forms, SolveOnTorusConstantField) {
  LatticeWindow w({3, 3}, Boundary::torus);
  const DiscreteForm F = constant_two_form(w, 0, 1, Angle::turns(1, 3));
  const DiscreteForm A = solve_potential(F);
  EXPECT_TRUE(exactly_equal(exterior_derivative(A), F));
  EXPECT_TRUE(A.exact());
}

TEST(Forms, SolveZeroField) {
  LatticeWindow w({4, 5}, Boundary::open);
  const DiscreteForm A = solve_potential(DiscreteForm(w, 2));
  EXPECT_EQ(max_norm(A), 0.0);
}

TEST(Forms, SolveIsTreeGauged) {
  auto rng = gwtest::engine(13);
  LatticeWindow w({6, 6}, Boundary::open);
  const DiscreteForm Ap = gwtest::random_form(rng, w, 1, false);
  const DiscreteForm F = exterior_derivative(Ap);
  const DiscreteForm A = solve_potential(F);
  EXPECT_LE(max_distance(exterior_derivative(A), F), 1e-12);
  for (std::size_t x = 0; x < w.size(); ++x) {
    if (A.has_cell(x, 1)) EXPECT_TRUE(A.link(x, 0).is_zero());
    if (w.coord(x, 0) == 0 && A.has_cell(x, 2)) EXPECT_TRUE(A.link(x, 1).is_zero());
  }
  const auto eq = gauge::gauge_equivalence(gauge::TranslationSystem(A), gauge::TranslationSystem(Ap));
  EXPECT_TRUE(eq.equivalent);
}

TEST(Forms, SolveRejectsOpenField) {
  LatticeWindow w({4, 4, 4}, Boundary::open);
  DiscreteForm F(w, 2);
  F.set(w.index({1, 1, 1}), 3, Angle::radians(0.1));
  try {
    solve_potential(F);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotClosed);
  }
}

TEST(Forms, SolveRejectsUnquantizedTorusFlux) {
  LatticeWindow w({3, 3}, Boundary::torus);
  try {
    solve_potential(constant_two_form(w, 0, 1, Angle::turns(1, 5)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FluxNotQuantized);
  }
  EXPECT_TRUE(flux_violation(constant_two_form(w, 0, 1, Angle::turns(1, 5))).has_value());
  EXPECT_FALSE(flux_violation(constant_two_form(w, 0, 1, Angle::turns(1, 3))).has_value());
}

TEST(Forms, SolveMixedBoundary) {
  auto rng = gwtest::engine(14);
  LatticeWindow w({4, 5, 3}, {Boundary::torus, Boundary::open, Boundary::torus});
  const DiscreteForm F = exterior_derivative(gwtest::random_form(rng, w, 1, true));
  EXPECT_TRUE(exactly_equal(exterior_derivative(solve_potential(F)), F));
}

TEST(Forms, ArithmeticAndNegation) {
  auto rng = gwtest::engine(15);
  LatticeWindow w({3, 4}, Boundary::torus);
  const DiscreteForm a = gwtest::random_form(rng, w, 1, true);
  const DiscreteForm b = gwtest::random_form(rng, w, 1, true);
  EXPECT_TRUE(exactly_equal((a + b) - b, a));
  EXPECT_EQ(max_norm(a + a.negated()), 0.0);
  EXPECT_FALSE(a.to_float().exact());
}
