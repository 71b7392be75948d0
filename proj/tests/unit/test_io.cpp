#include <gtest/gtest.h>

#include "../support/generators.hpp"
#include "../support/seed.hpp"
#include "gaugewalk/error.hpp"
#include "gaugewalk/io.hpp"

using namespace gaugewalk;

TEST(Io, WindowRoundTrip) {
  LatticeWindow w({3, 4}, {Boundary::torus, Boundary::open}, {-1, 2});
  EXPECT_EQ(io::window_from_json(io::window_to_json(w)), w);
  LatticeWindow t = LatticeWindow({5}, Boundary::open).with_time(3, Boundary::open);
  EXPECT_EQ(io::window_from_json(io::window_to_json(t)), t);
}

TEST(Io, FormRoundTripExactAndFloat) {
  auto rng = gwtest::engine(51);
  LatticeWindow w({3, 3, 2}, Boundary::torus);
  for (int degree = 0; degree <= 3; ++degree)
    for (bool exact : {true, false}) {
      const forms::DiscreteForm f = gwtest::random_form(rng, w, degree, exact);
      const forms::DiscreteForm g = io::form_from_json(io::form_to_json(f));
      if (exact) EXPECT_TRUE(forms::exactly_equal(f, g));
      else EXPECT_EQ(forms::max_distance(f, g), 0.0);
    }
}

TEST(Io, SystemRoundTrip) {
  auto rng = gwtest::engine(52);
  LatticeWindow w({4, 3}, Boundary::open);
  const gauge::TranslationSystem T = gwtest::random_system(rng, w, true);
  const gauge::TranslationSystem U = io::system_from_json(io::system_to_json(T));
  EXPECT_TRUE(forms::exactly_equal(T.potential(), U.potential()));
  const gauge::TranslationSystem bare = io::system_from_json(io::form_to_json(T.potential()));
  EXPECT_TRUE(forms::exactly_equal(T.potential(), bare.potential()));
}

TEST(Io, ParseErrors) {
  auto code = [](const std::string& text) {
    try {
      io::form_from_json(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  EXPECT_EQ(code("{"), ErrorCode::ParseError);
  EXPECT_EQ(code(R"({"degree":1})"), ErrorCode::ParseError);
}

TEST(Io, RationalJson) {
  gauge::HomogeneousField F(2);
  F.set(0, 1, Angle::turns(2, 5));
  const std::string j = io::rational_to_json(gauge::rational_analysis(F));
  EXPECT_NE(j.find("\"q1\": 5"), std::string::npos);
  EXPECT_NE(j.find("\"holonomy\""), std::string::npos);
}

TEST(Io, MatrixBinaryRoundTrip) {
  auto rng = gwtest::engine(53);
  const walk::Matrix M = gwtest::random_unitary(rng, 6);
  LatticeWindow w({3}, Boundary::torus);
  const std::string bin = io::matrix_to_binary(M, w, 2);
  EXPECT_EQ(bin.rfind("GWMATRIX ", 0), 0u);
  const walk::Matrix back = io::matrix_from_binary(bin);
  EXPECT_EQ((back - M).cwiseAbs().maxCoeff(), 0.0);
  const std::string js = io::matrix_to_json(M, w, 2);
  EXPECT_NE(js.find("column-major"), std::string::npos);
}

TEST(Io, FormatDouble) {
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_double(1.0), "1");
}
