#include "gaugewalk/angle.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "gaugewalk/error.hpp"

namespace gaugewalk {

namespace {

// Denominators above this are promoted to float mode.
constexpr __int128 kMaxDen = static_cast<__int128>(1) << 62;

std::int64_t floor_mod(__int128 a, __int128 m) {
  __int128 r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Angle make_exact(__int128 num, __int128 den) {
  if (den > kMaxDen) {
    return Angle::radians(kTwoPi * (static_cast<double>(num) / static_cast<double>(den)));
  }
  const std::int64_t n = floor_mod(num, den);
  return Angle::turns(n, static_cast<std::int64_t>(den));
}

}  // namespace

Angle Angle::turns(std::int64_t num, std::int64_t den) {
  if (den == 0) raise(ErrorCode::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Angle a;
  a.exact_ = true;
  std::int64_t n = floor_mod(num, den);
  const std::int64_t g = std::gcd(n, den);
  a.num_ = g == 0 ? 0 : n / g;
  a.den_ = g == 0 ? 1 : den / g;
  if (a.num_ == 0) a.den_ = 1;
  a.value_ = kTwoPi * (static_cast<double>(a.num_) / static_cast<double>(a.den_));
  return a;
}

Angle Angle::radians(double value) {
  Angle a;
  a.exact_ = false;
  a.num_ = 0;
  a.den_ = 1;
  if (!std::isfinite(value)) raise(ErrorCode::InvalidArgument, "non-finite angle");
  double v = std::fmod(value, kTwoPi);
  if (v < 0.0) v += kTwoPi;
  if (v >= kTwoPi) v = 0.0;
  a.value_ = v;
  return a;
}

double Angle::value() const noexcept { return value_; }

double Angle::centered() const noexcept {
  if (exact_) {
    if (2 * num_ > den_) {
      return kTwoPi * (static_cast<double>(num_ - den_) / static_cast<double>(den_));
    }
    return value_;
  }
  return value_ > kPi ? value_ - kTwoPi : value_;
}

std::complex<double> Angle::phase() const noexcept {
  if (exact_) {
    if (num_ == 0) return {1.0, 0.0};
    if (den_ == 2) return {-1.0, 0.0};
    if (den_ == 4) return num_ == 1 ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
  }
  return std::polar(1.0, value_);
}

Angle Angle::operator-() const {
  if (exact_) return turns(-num_, den_);
  return radians(-value_);
}

Angle Angle::operator+(const Angle& other) const {
  if (exact_ && other.exact_) {
    const __int128 g = gcd128(den_, other.den_);
    const __int128 den = static_cast<__int128>(den_ / g) * other.den_;
    const __int128 num = static_cast<__int128>(num_) * (other.den_ / g) +
                         static_cast<__int128>(other.num_) * (den_ / g);
    const __int128 r = gcd128(num % den, den);
    if (r > 1) return make_exact(num / r, den / r);
    return make_exact(num, den);
  }
  return radians(value_ + other.value_);
}

Angle Angle::operator-(const Angle& other) const { return *this + (-other); }

Angle Angle::scaled(std::int64_t k) const {
  if (exact_) return make_exact(static_cast<__int128>(num_) * k, den_);
  return radians(value_ * static_cast<double>(k));
}

bool Angle::is_zero(double tol) const {
  if (exact_) return num_ == 0;
  return std::min(value_, kTwoPi - value_) <= tol;
}

bool operator==(const Angle& a, const Angle& b) noexcept {
  if (a.exact_ != b.exact_) return false;
  if (a.exact_) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.value_ == b.value_;
}

double circular_distance(const Angle& a, const Angle& b) {
  if (a.exact() && b.exact()) {
    const Angle d = a - b;
    if (d.exact()) {
      const std::int64_t n = std::min(d.num(), d.den() - d.num());
      return kTwoPi * (static_cast<double>(n) / static_cast<double>(d.den()));
    }
  }
  const double d = std::fabs(a.value() - b.value());
  return std::min(d, kTwoPi - d);
}

bool approx_equal(const Angle& a, const Angle& b, double tol) {
  if (a.exact() && b.exact()) return a == b;
  return circular_distance(a, b) <= tol;
}

std::string to_string(const Angle& a) {
  if (a.exact()) {
    if (a.num() == 0) return "0";
    return "2pi*" + std::to_string(a.num()) + "/" + std::to_string(a.den());
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", a.value());
  return buf;
}

std::ostream& operator<<(std::ostream& os, const Angle& a) { return os << to_string(a); }

}  // namespace gaugewalk
