#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegelcy {

/// Genus-2 theta characteristic m = (a1 a2 ; b1 b2) over F2.
struct Char {
  std::uint8_t a1 = 0, a2 = 0, b1 = 0, b2 = 0;

  constexpr Char() = default;
  constexpr Char(int a1_, int a2_, int b1_, int b2_)
      : a1(static_cast<std::uint8_t>(a1_ & 1)), a2(static_cast<std::uint8_t>(a2_ & 1)),
        b1(static_cast<std::uint8_t>(b1_ & 1)), b2(static_cast<std::uint8_t>(b2_ & 1)) {}

  /// 8a1 + 4a2 + 2b1 + b2; the canonical ordering key.
  constexpr int code() const noexcept { return 8 * a1 + 4 * a2 + 2 * b1 + b2; }
  static constexpr Char from_code(int c) { return Char((c >> 3) & 1, (c >> 2) & 1, (c >> 1) & 1, c & 1); }

  constexpr std::array<int, 2> a() const noexcept { return {a1, a2}; }
  constexpr std::array<int, 2> b() const noexcept { return {b1, b2}; }

  friend constexpr Char operator+(const Char& x, const Char& y) noexcept {
    return Char(x.a1 ^ y.a1, x.a2 ^ y.a2, x.b1 ^ y.b1, x.b2 ^ y.b2);
  }
  friend constexpr bool operator==(const Char& x, const Char& y) noexcept { return x.code() == y.code(); }
  friend constexpr auto operator<=>(const Char& x, const Char& y) noexcept { return x.code() <=> y.code(); }

  /// "a1a2b1b2", e.g. "1001".
  std::string digits() const {
    return {char('0' + a1), char('0' + a2), char('0' + b1), char('0' + b2)};
  }
  /// "[a1a2;b1b2]"
  std::string to_string() const {
    return std::string("[") + char('0' + a1) + char('0' + a2) + ';' + char('0' + b1) + char('0' + b2) + ']';
  }
};

enum class Parity { Even = 0, Odd = 1 };

constexpr Parity parity(const Char& m) noexcept {
  return ((m.a1 * m.b1 + m.a2 * m.b2) & 1) ? Parity::Odd : Parity::Even;
}
constexpr bool is_even(const Char& m) noexcept { return parity(m) == Parity::Even; }

inline std::vector<Char> all_chars() {
  std::vector<Char> v;
  for (int c = 0; c < 16; ++c) v.push_back(Char::from_code(c));
  return v;
}

/// The ten even characteristics in ascending code order.
inline std::vector<Char> enumerate_even() {
  std::vector<Char> v;
  for (const auto& m : all_chars())
    if (is_even(m)) v.push_back(m);
  return v;
}

inline std::vector<Char> enumerate_odd() {
  std::vector<Char> v;
  for (const auto& m : all_chars())
    if (!is_even(m)) v.push_back(m);
  return v;
}

/// Sorted sets of 4 and 6 distinct characteristics.
using Quadruple = std::array<Char, 4>;
using Sextuple = std::array<Char, 6>;

namespace detail {

template <std::size_t K>
std::array<Char, K> sorted_distinct_even(std::array<Char, K> s, const char* what) {
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument(std::string(what) + ": repeated characteristic");
  for (const auto& m : s)
    if (!is_even(m)) throw std::invalid_argument(std::string(what) + ": odd characteristic " + m.to_string());
  return s;
}

}  // namespace detail

/// All four 3-subsets have even sum. Throws on repeated or odd entries.
inline bool is_syzygetic(const Quadruple& q) {
  const Quadruple s = detail::sorted_distinct_even(q, "is_syzygetic");
  for (std::size_t skip = 0; skip < 4; ++skip) {
    Char sum;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != skip) sum = sum + s[i];
    if (!is_even(sum)) return false;
  }
  return true;
}

/// {(00;00), (00;10), (00;01), (00;11)}
inline Quadruple standard_quadruple() {
  return detail::sorted_distinct_even(Quadruple{Char(0, 0, 0, 0), Char(0, 0, 1, 0), Char(0, 0, 0, 1), Char(0, 0, 1, 1)},
                                      "standard_quadruple");
}

/// The 15 syzygetic quadruples, lexicographic in code order.
inline std::vector<Quadruple> syzygetic_quadruples() {
  const auto ev = enumerate_even();
  std::vector<Quadruple> out;
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j)
      for (std::size_t k = j + 1; k < ev.size(); ++k)
        for (std::size_t l = k + 1; l < ev.size(); ++l) {
          Quadruple q{ev[i], ev[j], ev[k], ev[l]};
          if (is_syzygetic(q)) out.push_back(q);
        }
  return out;
}

inline Sextuple complement_sextuple(const Quadruple& q) {
  if (!is_syzygetic(q)) throw std::invalid_argument("complement_sextuple: quadruple is not syzygetic");
  Sextuple s{};
  std::size_t n = 0;
  for (const auto& m : enumerate_even())
    if (std::find(q.begin(), q.end(), m) == q.end()) s[n++] = m;
  return s;
}

/// The quadruple whose complement is s. Throws if s is not such a complement.
inline Quadruple defining_quadruple(const Sextuple& s) {
  const Sextuple t = detail::sorted_distinct_even(s, "defining_quadruple");
  Quadruple q{};
  std::size_t n = 0;
  for (const auto& m : enumerate_even())
    if (std::find(t.begin(), t.end(), m) == t.end()) q[n++] = m;
  if (!is_syzygetic(q)) throw std::invalid_argument("sextuple is not complementary to a syzygetic quadruple");
  return q;
}

inline Sextuple standard_sextuple() { return complement_sextuple(standard_quadruple()); }

/// The 15 complementary sextuples, in the order of syzygetic_quadruples().
inline std::vector<Sextuple> complementary_sextuples() {
  std::vector<Sextuple> out;
  for (const auto& q : syzygetic_quadruples()) out.push_back(complement_sextuple(q));
  return out;
}

/// 4x4 matrix over F2, row-major, with 2x2 blocks (A B; C D).
class Mat4F2 {
public:
  constexpr Mat4F2() = default;
  /// Entries are reduced mod 2 (negative values allowed).
  template <class Int>
  static Mat4F2 from_rows(const std::array<std::array<Int, 4>, 4>& rows) {
    Mat4F2 m;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m.set(i, j, static_cast<int>(((rows[i][j] % 2) + 2) % 2));
    return m;
  }
  /// Bit 4*i + j holds entry (i, j).
  static constexpr Mat4F2 from_bits(std::uint16_t bits) {
    Mat4F2 m;
    m.bits_ = bits;
    return m;
  }
  static constexpr Mat4F2 identity() { return from_bits(0x8421); }

  constexpr int operator()(std::size_t i, std::size_t j) const noexcept { return (bits_ >> (4 * i + j)) & 1; }
  constexpr void set(std::size_t i, std::size_t j, int v) noexcept {
    const auto bit = static_cast<std::uint16_t>(1U << (4 * i + j));
    bits_ = static_cast<std::uint16_t>((v & 1) ? (bits_ | bit) : (bits_ & ~bit));
  }
  constexpr std::uint16_t bits() const noexcept { return bits_; }

  friend constexpr Mat4F2 operator*(const Mat4F2& x, const Mat4F2& y) noexcept {
    Mat4F2 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        int s = 0;
        for (std::size_t k = 0; k < 4; ++k) s ^= x(i, k) & y(k, j);
        r.set(i, j, s);
      }
    return r;
  }
  constexpr Mat4F2 transpose() const noexcept {
    Mat4F2 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) r.set(i, j, (*this)(j, i));
    return r;
  }
  friend constexpr bool operator==(const Mat4F2&, const Mat4F2&) noexcept = default;
  friend constexpr auto operator<=>(const Mat4F2&, const Mat4F2&) noexcept = default;

  /// tM J M = J with J = (0 E; E 0) (signs are irrelevant mod 2).
  constexpr bool is_symplectic() const noexcept {
    const Mat4F2 j = from_bits(0x2184);
    return transpose() * j * *this == j;
  }

private:
  std::uint16_t bits_ = 0;
};

/// Affine action M{m} of Sp(4,F2) on characteristics:
/// a' = D a - C b + (C tD)_0,  b' = -B a + A b + (A tB)_0  (mod 2).
/// This is the placement of the diagonal corrections that preserves parity
/// and matches the theta transformation formula.
inline Char sp4f2_act(const Mat4F2& m, const Char& c) {
  if (!m.is_symplectic()) throw std::invalid_argument("sp4f2_act: matrix is not symplectic mod 2");
  auto blk = [&](int bi, int bj, int i, int j) { return m(2 * bi + i, 2 * bj + j); };
  const auto a = c.a();
  const auto b = c.b();
  std::array<int, 2> na{}, nb{};
  for (int i = 0; i < 2; ++i) {
    int x = 0, y = 0, cd = 0, ab = 0;
    for (int k = 0; k < 2; ++k) {
      x += blk(1, 1, i, k) * a[k] + blk(1, 0, i, k) * b[k];
      y += blk(0, 1, i, k) * a[k] + blk(0, 0, i, k) * b[k];
      cd += blk(1, 0, i, k) * blk(1, 1, i, k);
      ab += blk(0, 0, i, k) * blk(0, 1, i, k);
    }
    na[i] = (x + cd) & 1;
    nb[i] = (y + ab) & 1;
  }
  return Char(na[0], na[1], nb[0], nb[1]);
}

/// All 720 elements of Sp(4,F2), found by exhaustive search over 2^16 matrices.
inline const std::vector<Mat4F2>& sp4f2_group() {
  static const std::vector<Mat4F2> group = [] {
    std::vector<Mat4F2> g;
    for (std::uint32_t bits = 0; bits < (1U << 16); ++bits) {
      const auto m = Mat4F2::from_bits(static_cast<std::uint16_t>(bits));
      if (m.is_symplectic()) g.push_back(m);
    }
    return g;
  }();
  return group;
}

template <std::size_t K>
std::array<Char, K> act_on_set(const Mat4F2& m, const std::array<Char, K>& s) {
  std::array<Char, K> r{};
  for (std::size_t i = 0; i < K; ++i) r[i] = sp4f2_act(m, s[i]);
  std::sort(r.begin(), r.end());
  return r;
}

/// Orbit of q under the induced action of Sp(4,F2) on 4-sets.
inline std::set<Quadruple> quadruple_orbit(const Quadruple& q) {
  if (!is_syzygetic(q)) throw std::invalid_argument("quadruple_orbit: quadruple is not syzygetic");
  const Quadruple s = detail::sorted_distinct_even(q, "quadruple_orbit");
  std::set<Quadruple> orbit;
  for (const auto& m : sp4f2_group()) orbit.insert(act_on_set(m, s));
  return orbit;
}

/// Number of Sp(4,F2) elements fixing q as a set.
inline std::size_t quadruple_stabilizer_order(const Quadruple& q) {
  const Quadruple s = detail::sorted_distinct_even(q, "quadruple_stabilizer_order");
  std::size_t n = 0;
  for (const auto& m : sp4f2_group())
    if (act_on_set(m, s) == s) ++n;
  return n;
}

/// Sign of the permutation M induces on the six odd characteristics
/// (the sign character under Sp(4,F2) = S6).
inline int odd_permutation_sign(const Mat4F2& m) {
  const auto odd = enumerate_odd();
  std::array<int, 6> perm{};
  for (std::size_t i = 0; i < 6; ++i) {
    const Char img = sp4f2_act(m, odd[i]);
    perm[i] = static_cast<int>(std::find(odd.begin(), odd.end(), img) - odd.begin());
  }
  int sign = 1;
  std::array<bool, 6> seen{};
  for (std::size_t i = 0; i < 6; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace siegelcy
