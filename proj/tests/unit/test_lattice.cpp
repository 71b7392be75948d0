#include <gtest/gtest.h>

#include "gaugewalk/error.hpp"
#include "gaugewalk/lattice.hpp"

using gaugewalk::Boundary;
using gaugewalk::LatticeWindow;

TEST(Lattice, IndexRoundTrip) {
  LatticeWindow w({3, 4, 5}, Boundary::open);
  EXPECT_EQ(w.size(), 60u);
  EXPECT_EQ(w.stride(0), 1u);
  EXPECT_EQ(w.stride(1), 3u);
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_EQ(w.index(w.coords(i)), i);
}

TEST(Lattice, OpenAndTorusSteps) {
  LatticeWindow open({4, 4}, Boundary::open);
  EXPECT_FALSE(open.step(open.index({3, 1}), 0, +1).has_value());
  EXPECT_FALSE(open.step(open.index({0, 1}), 0, -1).has_value());
  EXPECT_EQ(*open.step(open.index({1, 1}), 1, +1), open.index({1, 2}));
  LatticeWindow torus({4, 4}, Boundary::torus);
  EXPECT_EQ(*torus.step(torus.index({3, 1}), 0, +1), torus.index({0, 1}));
  EXPECT_TRUE(torus.is_wrap_link(torus.index({3, 1}), 0));
  EXPECT_EQ(torus.index({-1, 5}), torus.index({3, 1}));
  EXPECT_THROW(open.index({4, 0}), gaugewalk::Error);
}

TEST(Lattice, MixedBoundariesAndOrigin) {
  LatticeWindow w({5, 3}, {Boundary::open, Boundary::torus}, {-2, 0});
  EXPECT_TRUE(w.any_periodic());
  EXPECT_FALSE(w.all_periodic());
  EXPECT_EQ(w.position(w.index({2, 0}), 0), 0.0);
  EXPECT_EQ(w.position(w.index({0, 0}), 0), -2.0);
}

TEST(Lattice, Labels) {
  LatticeWindow w({4, 4}, Boundary::open);
  EXPECT_EQ(w.label(0), 1);
  EXPECT_EQ(w.axis_of(2), 1);
  EXPECT_THROW(w.axis_of(0), gaugewalk::Error);
  const LatticeWindow st = w.with_time(3, Boundary::open);
  EXPECT_TRUE(st.has_time());
  EXPECT_EQ(st.dims(), 3);
  EXPECT_EQ(st.space_dims(), 2);
  EXPECT_EQ(st.axis_of(0), 0);
  EXPECT_EQ(st.axis_of(2), 2);
  EXPECT_EQ(st.spatial(), w);
}
