#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>

namespace siegelcy {

/// Element of Z[zeta], zeta a primitive 8th root of unity, stored as
/// c0 + c1*zeta + c2*zeta^2 + c3*zeta^3 with zeta^4 = -1.
class CycInt8 {
public:
  using value_type = std::int64_t;

  constexpr CycInt8() noexcept = default;
  constexpr CycInt8(value_type c0) noexcept : c_{c0, 0, 0, 0} {}
  constexpr CycInt8(value_type c0, value_type c1, value_type c2, value_type c3) noexcept
      : c_{c0, c1, c2, c3} {}

  /// zeta^k for any integer k.
  static constexpr CycInt8 zeta_pow(std::int64_t k) noexcept {
    auto r = static_cast<int>(((k % 8) + 8) % 8);
    CycInt8 z;
    if (r < 4)
      z.c_[r] = 1;
    else
      z.c_[r - 4] = -1;
    return z;
  }
  static constexpr CycInt8 zeta() noexcept { return zeta_pow(1); }

  constexpr value_type operator[](std::size_t i) const noexcept { return c_[i]; }
  constexpr const std::array<value_type, 4>& coeffs() const noexcept { return c_; }

  constexpr bool is_zero() const noexcept {
    return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
  }
  /// True when the value lies in Z (all zeta-coordinates vanish).
  constexpr bool is_rational_integer() const noexcept {
    return c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
  }

  constexpr CycInt8& operator+=(const CycInt8& o) noexcept {
    for (std::size_t i = 0; i < 4; ++i) c_[i] += o.c_[i];
    return *this;
  }
  constexpr CycInt8& operator-=(const CycInt8& o) noexcept {
    for (std::size_t i = 0; i < 4; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  constexpr CycInt8& operator*=(const CycInt8& o) noexcept { return *this = *this * o; }

  friend constexpr CycInt8 operator+(CycInt8 a, const CycInt8& b) noexcept { return a += b; }
  friend constexpr CycInt8 operator-(CycInt8 a, const CycInt8& b) noexcept { return a -= b; }
  friend constexpr CycInt8 operator-(const CycInt8& a) noexcept {
    return {-a.c_[0], -a.c_[1], -a.c_[2], -a.c_[3]};
  }

  friend constexpr CycInt8 operator*(const CycInt8& a, const CycInt8& b) noexcept {
    std::array<value_type, 4> r{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < 4; ++j) {
        const value_type p = a.c_[i] * b.c_[j];
        if (i + j < 4)
          r[i + j] += p;
        else
          r[i + j - 4] -= p;
      }
    }
    return {r[0], r[1], r[2], r[3]};
  }

  /// Multiplication by zeta^k is a signed rotation of the coordinates.
  constexpr CycInt8 times_zeta_pow(std::int64_t k) const noexcept {
    auto r = static_cast<std::size_t>(((k % 8) + 8) % 8);
    CycInt8 out;
    for (std::size_t i = 0; i < 4; ++i) {
      std::size_t j = i + r;
      value_type v = c_[i];
      while (j >= 4) {
        j -= 4;
        v = -v;
      }
      out.c_[j] += v;
    }
    return out;
  }

  friend constexpr bool operator==(const CycInt8&, const CycInt8&) noexcept = default;

  std::complex<long double> to_complex() const {
    constexpr long double s = std::numbers::sqrt2_v<long double> / 2;
    const std::complex<long double> z{s, s};
    std::complex<long double> acc = 0, p = 1;
    for (std::size_t i = 0; i < 4; ++i) {
      acc += static_cast<long double>(c_[i]) * p;
      p *= z;
    }
    return acc;
  }

  friend std::ostream& operator<<(std::ostream& os, const CycInt8& a) {
    return os << '(' << a.c_[0] << ',' << a.c_[1] << ',' << a.c_[2] << ',' << a.c_[3] << ')';
  }

private:
  std::array<value_type, 4> c_{};
};

}  // namespace siegelcy
