#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace gaugewalk {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;

/// Element of R/2piZ. Either an exact rational multiple of a full turn
/// (num/den, 0 <= num < den) or a float canonicalized into [0, 2pi).
class Angle {
 public:
  Angle() = default;

  static Angle turns(std::int64_t num, std::int64_t den);
  static Angle radians(double value);

  bool exact() const noexcept { return exact_; }
  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  /// Canonical representative in [0, 2pi).
  double value() const noexcept;
  /// Representative in (-pi, pi].
  double centered() const noexcept;
  std::complex<double> phase() const noexcept;

  Angle operator-() const;
  Angle operator+(const Angle& other) const;
  Angle operator-(const Angle& other) const;
  Angle& operator+=(const Angle& other) { return *this = *this + other; }
  Angle& operator-=(const Angle& other) { return *this = *this - other; }
  Angle scaled(std::int64_t k) const;

  Angle to_float() const { return radians(value()); }

  bool is_zero(double tol = 0.0) const;

  /// Representation identity: same mode and same stored value.
  friend bool operator==(const Angle& a, const Angle& b) noexcept;

 private:
  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double value_ = 0.0;
};

double circular_distance(const Angle& a, const Angle& b);
bool approx_equal(const Angle& a, const Angle& b, double tol);

/// num/den of 2pi as text, or the float value with 17 significant digits.
std::string to_string(const Angle& a);
std::ostream& operator<<(std::ostream& os, const Angle& a);

}  // namespace gaugewalk
