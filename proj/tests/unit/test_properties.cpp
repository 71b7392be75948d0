#include <gtest/gtest.h>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "../support/seed.hpp"
#include "gaugewalk/forms.hpp"
#include "gaugewalk/gauge.hpp"
#include "gaugewalk/spectral.hpp"
#include "gaugewalk/walk.hpp"

using namespace gaugewalk;
using forms::DiscreteForm;
using gauge::TranslationSystem;
using gwtest::Rng;

namespace {

Boundary any_boundary(Rng& rng) { return gwtest::coin_flip(rng) ? Boundary::torus : Boundary::open; }

}  // namespace

TEST(Property, DerivativeSquaredVanishes) {
  auto rng = gwtest::engine(101);
  for (int trial = 0; trial < 60; ++trial) {
    const int dims = gwtest::uniform_int(rng, 2, 4);
    const LatticeWindow w = gwtest::random_window(rng, dims, 2, dims == 4 ? 3 : 5, any_boundary(rng));
    const int degree = gwtest::uniform_int(rng, 0, dims - 2);
    const bool exact = gwtest::coin_flip(rng);
    const DiscreteForm dd = forms::exterior_derivative(forms::exterior_derivative(gwtest::random_form(rng, w, degree, exact)));
    if (exact) dd.for_each_cell([](std::size_t, forms::Mask, const Angle& v) { ASSERT_TRUE(v.exact() && v.is_zero()); });
    else EXPECT_LE(forms::max_norm(dd), 1e-12);
  }
}

TEST(Property, ExactnessRoundTrip) {
  auto rng = gwtest::engine(102);
  for (int trial = 0; trial < 40; ++trial) {
    const int dims = gwtest::uniform_int(rng, 2, 4);
    const LatticeWindow w = gwtest::random_window(rng, dims, 2, dims == 4 ? 4 : 6, Boundary::open);
    const DiscreteForm F = forms::exterior_derivative(gwtest::random_form(rng, w, 1, false));
    EXPECT_LE(forms::max_distance(forms::exterior_derivative(forms::solve_potential(F)), F), 1e-12);
  }
}

TEST(Property, PlaquettesGaugeInvariant) {
  auto rng = gwtest::engine(103);
  for (int trial = 0; trial < 40; ++trial) {
    const LatticeWindow w = gwtest::random_window(rng, gwtest::uniform_int(rng, 2, 3), 2, 5, any_boundary(rng));
    const bool exact = gwtest::coin_flip(rng);
    const TranslationSystem T = gwtest::random_system(rng, w, exact);
    const TranslationSystem G = gauge::apply_gauge(T, gwtest::random_gauge(rng, w, exact));
    if (exact) EXPECT_TRUE(forms::exactly_equal(gauge::plaquette_field(T), gauge::plaquette_field(G)));
    else EXPECT_LE(forms::max_distance(gauge::plaquette_field(T), gauge::plaquette_field(G)), 1e-12);
  }
}

TEST(Property, PotentialEquivalenceRoundTrip) {
  auto rng = gwtest::engine(104);
  for (int trial = 0; trial < 30; ++trial) {
    const LatticeWindow w = gwtest::random_window(rng, gwtest::uniform_int(rng, 2, 3), 2, 5, Boundary::open);
    const TranslationSystem T0 = gwtest::random_system(rng, w, false);
    const TranslationSystem T(forms::solve_potential(gauge::plaquette_field(T0)));
    const TranslationSystem Tg = gauge::apply_gauge(T0, gwtest::random_gauge(rng, w, false));
    const gauge::Equivalence eq = gauge::gauge_equivalence(T, Tg);
    ASSERT_TRUE(eq.equivalent) << eq.reason;
    EXPECT_LE(forms::max_distance(gauge::apply_gauge(T, *eq.witness).potential(), Tg.potential()), 1e-9);
  }
}

TEST(Property, TorusEquivalenceNeedsHolonomy) {
  auto rng = gwtest::engine(105);
  for (int trial = 0; trial < 30; ++trial) {
    const LatticeWindow w = gwtest::random_window(rng, 2, 2, 5, Boundary::torus);
    const TranslationSystem T = gwtest::random_system(rng, w, true);
    const TranslationSystem G = gauge::apply_gauge(T, gwtest::random_gauge(rng, w, true));
    EXPECT_TRUE(gauge::gauge_equivalence(T, G).equivalent);
    // A constant shift of one axis keeps the plaquettes and moves a holonomy.
    DiscreteForm A = G.potential();
    const Angle c = Angle::turns(1, 2 * w.extent(0));
    for (std::size_t x = 0; x < w.size(); ++x) A.set(x, 1, A.link(x, 0) + c);
    const TranslationSystem H(A);
    EXPECT_TRUE(forms::exactly_equal(gauge::plaquette_field(H), gauge::plaquette_field(T)));
    EXPECT_FALSE(gauge::gauge_equivalence(T, H).equivalent);
  }
}

TEST(Property, DualCommutation) {
  auto rng = gwtest::engine(106);
  for (int trial = 0; trial < 20; ++trial) {
    const int s = gwtest::uniform_int(rng, 2, 4);
    gauge::HomogeneousField F(s);
    for (int a = 0; a < s; ++a)
      for (int b = a + 1; b < s; ++b) F.set(a, b, gwtest::random_angle(rng, true, 9));
    const LatticeWindow w(std::vector<int>(s, s == 4 ? 3 : 4), Boundary::open);
    const TranslationSystem S = gauge::dual_translations(F, w), T = gauge::homogeneous_system(F, w);
    for (std::size_t x = 0; x < w.size(); ++x) {
      bool interior = true;
      for (int a = 0; a < s; ++a) interior = interior && w.coord(x, a) <= w.extent(a) - 3;
      if (!interior) continue;
      for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) ASSERT_TRUE(gauge::commutator_phase(S, T, a, b, x).is_zero());
    }
    EXPECT_TRUE(forms::exactly_equal(gauge::plaquette_field(S), gauge::plaquette_field(T).negated()));
  }
}

TEST(Property, RationalBounds) {
  auto rng = gwtest::engine(107);
  for (int trial = 0; trial < 30; ++trial) {
    const int s = gwtest::uniform_int(rng, 2, 4);
    gauge::HomogeneousField F(s);
    for (int a = 0; a < s; ++a)
      for (int b = a + 1; b < s; ++b) F.set(a, b, gwtest::random_angle(rng, true, 8));
    const gauge::RationalAnalysis r = gauge::rational_analysis(F);
    EXPECT_EQ(r.q1, r.q3);
    EXPECT_EQ(static_cast<std::int64_t>(r.holonomy.size()), r.q3);
    std::int64_t bound = 1;
    for (int i = 1; i < s; ++i) bound *= r.q1;
    EXPECT_LE(r.q2, bound);
    EXPECT_LE(r.q1, r.q2 * r.q2);
    if (s == 2) EXPECT_EQ(r.q2, r.q1);
  }
}

TEST(Property, CoupledOperatorsAreUnitary) {
  auto rng = gwtest::engine(108);
  for (int trial = 0; trial < 25; ++trial) {
    const int s = gwtest::uniform_int(rng, 1, 2);
    const LatticeWindow w = gwtest::random_window(rng, s, 2, 5, Boundary::torus);
    const int d = gwtest::uniform_int(rng, 1, 3);
    const walk::WalkDecomposition dec = gwtest::random_decomposition(rng, s, d, 6);
    const walk::CoupledWalk cw = walk::minimal_couple(dec, gwtest::random_system(rng, w, false));
    EXPECT_LE(walk::unitarity_residual(cw.to_matrix(0)), 1e-10);
  }
}

TEST(Property, MatrixMatchesStep) {
  auto rng = gwtest::engine(109);
  for (int trial = 0; trial < 25; ++trial) {
    const LatticeWindow w = gwtest::random_window(rng, 2, 2, 5, Boundary::torus);
    const int d = gwtest::uniform_int(rng, 1, 3);
    const walk::CoupledWalk cw =
        walk::minimal_couple(gwtest::random_decomposition(rng, 2, d, 6), gwtest::random_system(rng, w, false));
    const walk::Vector psi = gwtest::random_state(rng, cw.state_size());
    EXPECT_LE((cw.to_matrix(0) * psi - cw.step(psi, 0)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Property, MagneticPhasesAreTimeIndependent) {
  auto rng = gwtest::engine(110);
  const LatticeWindow space = gwtest::random_window(rng, 2, 3, 5, Boundary::open);
  const LatticeWindow st = space.with_time(6, Boundary::open);
  // Purely magnetic: A_0 = 0 and the same spatial potential in every slice.
  DiscreteForm A(st, 1);
  const DiscreteForm As = gwtest::random_form(rng, space, 1, true);
  for (std::size_t x = 0; x < st.size(); ++x) {
    Site y = st.coords(x);
    y.erase(y.begin());
    const std::size_t sx = space.index(y);
    for (int a = 0; a < 2; ++a)
      if (A.has_cell(x, forms::Mask{2u} << a)) A.set(x, forms::Mask{2u} << a, As.link(sx, a));
  }
  EXPECT_TRUE(forms::check_closed(forms::exterior_derivative(A), 0.0));
  const walk::CoupledWalk cw = walk::minimal_couple(gwtest::random_decomposition(rng, 2, 2, 4), TranslationSystem(A));
  for (long t = 0; t < 5; ++t)
    for (std::size_t x = 0; x < space.size(); ++x)
      for (int a = 0; a < 2; ++a)
        if (space.coord(x, a) <= space.extent(a) - 2) EXPECT_EQ(cw.space_phase(t, x, a), cw.space_phase(0, x, a));
}

TEST(Property, GaugeCovarianceOfEvolution) {
  auto rng = gwtest::engine(111);
  for (int trial = 0; trial < 20; ++trial) {
    const LatticeWindow w = gwtest::random_window(rng, 2, 2, 6, Boundary::torus);
    const int d = gwtest::uniform_int(rng, 1, 3);
    const walk::WalkDecomposition dec = gwtest::random_decomposition(rng, 2, d, 6);
    const TranslationSystem T = gwtest::random_system(rng, w, false);
    const gauge::GaugeTransform g = gwtest::random_gauge(rng, w, false);
    const walk::CoupledWalk a = walk::minimal_couple(dec, T), b = walk::minimal_couple(dec, gauge::apply_gauge(T, g));
    walk::Vector V(a.state_size());
    for (std::size_t x = 0; x < w.size(); ++x)
      for (int c = 0; c < d; ++c) V(x * d + c) = g.chi.value(x).phase();
    walk::Vector psi = gwtest::random_state(rng, a.state_size());
    walk::Vector phi = V.cwiseProduct(psi);
    for (long t = 0; t < 10; ++t) {
      psi = a.step(psi, t);
      phi = b.step(phi, t);
      EXPECT_LE((V.cwiseProduct(psi) - phi).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(Property, OrderingSensitivity) {
  const LatticeWindow w({6, 6}, Boundary::open);
  walk::WalkDecomposition d12, d21;
  d12.factors = {walk::Subshift{2}, walk::Subshift{1}};
  d21.factors = {walk::Subshift{1}, walk::Subshift{2}};
  auto rng = gwtest::engine(112);
  for (int trial = 0; trial < 10; ++trial) {
    double B = gwtest::uniform_real(rng, 0.2, kPi - 0.2);
    gauge::HomogeneousField F(2);
    F.set(0, 1, Angle::radians(B));
    const TranslationSystem T = gauge::homogeneous_system(F, w);
    const walk::WalkEquivalence eq =
        walk::walk_gauge_equivalence(walk::minimal_couple(d12, T), walk::minimal_couple(d21, T), 0);
    EXPECT_FALSE(eq.equivalent);
    EXPECT_GT(eq.defect, 0.01);
  }
}

TEST(Property, BlochUnitarityAndPeriodicity) {
  auto rng = gwtest::engine(113);
  walk::WalkDecomposition dec;
  dec.factors = {walk::Coin::hadamard(), walk::Subshift{1}, walk::Coin::hadamard(), walk::Subshift{2}};
  for (int trial = 0; trial < 30; ++trial) {
    const int q = gwtest::uniform_int(rng, 1, 9);
    int p = gwtest::uniform_int(rng, 0, q);
    while (std::gcd(p, q) != 1) p = gwtest::uniform_int(rng, 0, q);
    const double k1 = gwtest::uniform_real(rng, 0, kTwoPi), k2 = gwtest::uniform_real(rng, 0, kTwoPi);
    const auto a = spectral::bloch_matrix(dec, p, q, k1, k2);
    const auto b = spectral::bloch_matrix(dec, p + q, q, k1, k2);
    EXPECT_LE(walk::unitarity_residual(a.entries), 1e-10);
    std::vector<gwtest::cplx> ea, eb;
    for (const auto& e : spectral::unitary_eigenvalues(a.entries)) ea.push_back(e.value);
    for (const auto& e : spectral::unitary_eigenvalues(b.entries)) eb.push_back(e.value);
    EXPECT_LE(gwtest::multiset_distance(ea, eb), 1e-10);
  }
}

TEST(Property, DeltaGammaIdentity) {
  auto rng = gwtest::engine(114);
  for (int trial = 0; trial < 40; ++trial) {
    const LatticeWindow w = gwtest::random_window(rng, gwtest::uniform_int(rng, 1, 3), 2, 5, any_boundary(rng));
    const int degree = gwtest::uniform_int(rng, 0, 1);
    const DiscreteForm f = gwtest::random_form(rng, w, degree, gwtest::coin_flip(rng));
    const DiscreteForm back = forms::discretize(forms::continuize(f, degree, gwtest::uniform_int(rng, 1, 16)), degree);
    EXPECT_EQ(forms::max_distance(back, f), 0.0);
  }
}

TEST(Property, DiscretizationIntertwinesDerivative) {
  auto rng = gwtest::engine(115);
  for (int trial = 0; trial < 20; ++trial) {
    const LatticeWindow w = gwtest::random_window(rng, gwtest::uniform_int(rng, 1, 3), 2, 5, Boundary::open);
    std::vector<double> c(w.dims());
    for (double& v : c) v = gwtest::uniform_real(rng, -2, 2);
    const double c0 = gwtest::uniform_real(rng, -1, 1);
    const int m = gwtest::uniform_int(rng, 1, 16);
    const auto f = forms::sample_function(w, m, [&](const std::vector<double>& p) {
      double v = c0;
      for (std::size_t a = 0; a < p.size(); ++a) v += c[a] * p[a];
      return v;
    });
    const auto df = forms::sample_one_form(w, m, [&](int a, const std::vector<double>&) { return c[a]; });
    EXPECT_LE(forms::max_distance(forms::exterior_derivative(forms::discretize(f, 0)), forms::discretize(df, 1)), 1e-10);
  }
}
