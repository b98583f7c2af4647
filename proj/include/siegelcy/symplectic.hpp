#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "chargeom.hpp"

namespace siegelcy {

using Mat2 = std::array<std::array<std::int64_t, 2>, 2>;
using Mat4 = std::array<std::array<std::int64_t, 4>, 4>;

namespace detail {

inline Mat4 mul4(const Mat4& x, const Mat4& y) {
  Mat4 r{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < 4; ++j) r[i][j] += x[i][k] * y[k][j];
    }
  return r;
}

inline Mat4 transpose4(const Mat4& x) {
  Mat4 r{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r[i][j] = x[j][i];
  return r;
}

inline constexpr Mat4 kJ{{{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}}};

inline std::int64_t mod(std::int64_t v, std::int64_t l) { return ((v % l) + l) % l; }

}  // namespace detail

inline Mat2 mat2_mul(const Mat2& x, const Mat2& y) {
  return {{{x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]},
           {x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]}}};
}
inline Mat2 mat2_transpose(const Mat2& x) { return {{{x[0][0], x[1][0]}, {x[0][1], x[1][1]}}}; }
inline std::int64_t mat2_det(const Mat2& x) { return x[0][0] * x[1][1] - x[0][1] * x[1][0]; }

/// tM I M = I with I = (0 -E; E 0).
inline bool is_symplectic(const Mat4& m) {
  return detail::mul4(detail::mul4(detail::transpose4(m), detail::kJ), m) == detail::kJ;
}

/// Integral symplectic 4x4 matrix (A B; C D). Validated on construction.
class SpMat {
public:
  SpMat() : m_{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}} {}
  explicit SpMat(const Mat4& m) : m_(m) {
    if (!is_symplectic(m_)) throw std::invalid_argument("matrix is not symplectic");
  }
  static SpMat from_blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d) {
    Mat4 m{};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        m[i][j] = a[i][j];
        m[i][j + 2] = b[i][j];
        m[i + 2][j] = c[i][j];
        m[i + 2][j + 2] = d[i][j];
      }
    return SpMat(m);
  }

  static SpMat identity() { return SpMat(); }
  /// I = (0 -E; E 0), Z -> -Z^{-1}.
  static SpMat full_inversion() { return SpMat(detail::kJ); }
  /// (E S; 0 E), Z -> Z + S. S must be symmetric.
  static SpMat translation(const Mat2& s) { return from_blocks(kE, s, kO, kE); }
  /// (E 0; C E). C must be symmetric.
  static SpMat lower_translation(const Mat2& c) { return from_blocks(kE, kO, c, kE); }
  /// (tU 0; 0 U^{-1}), Z -> Z[U] = tU Z U. det U = +-1.
  static SpMat unimodular(const Mat2& u) {
    const std::int64_t det = mat2_det(u);
    if (det != 1 && det != -1) throw std::invalid_argument("unimodular: det U must be +-1");
    const Mat2 inv{{{det * u[1][1], -det * u[0][1]}, {-det * u[1][0], det * u[0][0]}}};
    return from_blocks(mat2_transpose(u), kO, kO, inv);
  }
  /// Inversion in the first variable only.
  static SpMat partial_inversion() {
    return from_blocks({{{0, 0}, {0, 1}}}, {{{-1, 0}, {0, 0}}}, {{{1, 0}, {0, 0}}}, {{{0, 0}, {0, 1}}});
  }

  const Mat4& rows() const noexcept { return m_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }
  Mat2 A() const { return block(0, 0); }
  Mat2 B() const { return block(0, 2); }
  Mat2 C() const { return block(2, 0); }
  Mat2 D() const { return block(2, 2); }

  friend SpMat operator*(const SpMat& x, const SpMat& y) {
    SpMat r;
    r.m_ = detail::mul4(x.m_, y.m_);
    return r;
  }
  /// M^{-1} = (tD -tB; -tC tA).
  SpMat inverse() const {
    const Mat2 a = mat2_transpose(D()), d = mat2_transpose(A());
    Mat2 b = mat2_transpose(B()), c = mat2_transpose(C());
    for (auto& row : b)
      for (auto& v : row) v = -v;
    for (auto& row : c)
      for (auto& v : row) v = -v;
    return from_blocks(a, b, c, d);
  }
  SpMat negated() const {
    SpMat r = *this;
    for (auto& row : r.m_)
      for (auto& v : row) v = -v;
    return r;
  }
  Mat4F2 mod2() const { return Mat4F2::from_rows(m_); }

  bool is_identity() const { return *this == SpMat(); }
  bool is_plus_minus_identity() const { return is_identity() || negated().is_identity(); }

  friend bool operator==(const SpMat&, const SpMat&) = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < 4; ++i) {
      if (i) s += "; ";
      for (std::size_t j = 0; j < 4; ++j) s += (j ? " " : "") + std::to_string(m_[i][j]);
    }
    return s + "]";
  }

  static constexpr Mat2 kE{{{1, 0}, {0, 1}}};
  static constexpr Mat2 kO{{{0, 0}, {0, 0}}};

private:
  Mat2 block(std::size_t r, std::size_t c) const {
    return {{{m_[r][c], m_[r][c + 1]}, {m_[r + 1][c], m_[r + 1][c + 1]}}};
  }
  Mat4 m_;
};

/// C tD = (alpha beta; beta gamma).
inline Mat2 c_times_dt(const SpMat& m) { return mat2_mul(m.C(), mat2_transpose(m.D())); }

/// Congruence subgroups of Sp(4,Z) used in the checks.
struct SubgroupTag {
  enum class Kind {
    Full,         ///< Sp(4,Z)
    Principal,    ///< kernel of reduction mod l
    Igusa,        ///< Gamma[l,2l]: Gamma[l] with A tB, C tD having diagonals = 0 mod 2l
    Hecke0,       ///< C = 0 mod l
    GammaN,       ///< Gamma[2] with alpha + beta + gamma = 0 mod 4
    Hecke0N,      ///< Hecke0(2) with trivial character of the standard sextuple product
  };
  Kind kind = Kind::Full;
  int level = 1;

  static SubgroupTag full() { return {Kind::Full, 1}; }
  static SubgroupTag principal(int l) { return {Kind::Principal, l}; }
  static SubgroupTag igusa(int l) { return {Kind::Igusa, l}; }
  static SubgroupTag hecke0(int l) { return {Kind::Hecke0, l}; }
  static SubgroupTag gamma_n() { return {Kind::GammaN, 2}; }
  static SubgroupTag hecke0_n() { return {Kind::Hecke0N, 2}; }

  std::string name() const {
    switch (kind) {
      case Kind::Full: return "Gamma2";
      case Kind::Principal: return "Gamma2[" + std::to_string(level) + "]";
      case Kind::Igusa: return "Gamma2[" + std::to_string(level) + "," + std::to_string(2 * level) + "]";
      case Kind::Hecke0: return "Gamma2,0[" + std::to_string(level) + "]";
      case Kind::GammaN: return "Gamma_n";
      case Kind::Hecke0N: return "Gamma2,0[2]_n";
    }
    return "?";
  }
  friend bool operator==(const SubgroupTag&, const SubgroupTag&) = default;
};

namespace detail {

inline bool congruent_identity(const SpMat& m, std::int64_t l) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (mod(m(i, j) - (i == j ? 1 : 0), l) != 0) return false;
  return true;
}

inline bool c_zero_mod(const SpMat& m, std::int64_t l) {
  for (const auto& row : m.C())
    for (auto v : row)
      if (mod(v, l) != 0) return false;
  return true;
}

}  // namespace detail

/// (-1)^{(alpha+beta+gamma)/2} for M in Gamma2,0[2], with C tD = (alpha beta; beta gamma).
inline int theta_character(const SpMat& m) {
  if (!detail::c_zero_mod(m, 2)) throw std::invalid_argument("theta_character: matrix is not in Gamma2,0[2]");
  const Mat2 cd = c_times_dt(m);
  const std::int64_t s = cd[0][0] + cd[0][1] + cd[1][1];
  if (detail::mod(s, 2) != 0) throw std::logic_error("theta_character: alpha+beta+gamma is odd");
  return detail::mod(s / 2, 2) == 0 ? 1 : -1;
}

/// Character of the standard sextuple product on Gamma2,0[2]: the theta
/// character times the sign character of Sp(4,F2) = S6, the latter read off
/// from the permutation of the six odd characteristics.
inline int sextuple_character(const SpMat& m) { return theta_character(m) * odd_permutation_sign(m.mod2()); }

inline bool subgroup_membership(const SpMat& m, const SubgroupTag& tag) {
  using K = SubgroupTag::Kind;
  switch (tag.kind) {
    case K::Full: return true;
    case K::Principal: return detail::congruent_identity(m, tag.level);
    case K::Igusa: {
      if (!detail::congruent_identity(m, tag.level)) return false;
      const Mat2 ab = mat2_mul(m.A(), mat2_transpose(m.B()));
      const Mat2 cd = c_times_dt(m);
      const std::int64_t l2 = 2 * static_cast<std::int64_t>(tag.level);
      return detail::mod(ab[0][0], l2) == 0 && detail::mod(ab[1][1], l2) == 0 && detail::mod(cd[0][0], l2) == 0 &&
             detail::mod(cd[1][1], l2) == 0;
    }
    case K::Hecke0: return detail::c_zero_mod(m, tag.level);
    case K::GammaN: {
      if (!detail::congruent_identity(m, 2)) return false;
      const Mat2 cd = c_times_dt(m);
      return detail::mod(cd[0][0] + cd[0][1] + cd[1][1], 4) == 0;
    }
    case K::Hecke0N: return detail::c_zero_mod(m, 2) && sextuple_character(m) == 1;
  }
  return false;
}

/// Generators used for random words. For tags inside Gamma[l] the generators
/// are level-l versions (translations by lS, lower translations by lC,
/// unimodular U = E mod l), all of which are words in the basic generators.
inline std::vector<SpMat> sampling_generators(const SubgroupTag& tag) {
  using K = SubgroupTag::Kind;
  auto sym = [](std::int64_t a, std::int64_t b, std::int64_t c) { return Mat2{{{a, b}, {b, c}}}; };
  std::vector<SpMat> g;
  auto add_pm = [&](const SpMat& x) {
    g.push_back(x);
    g.push_back(x.inverse());
  };
  std::int64_t upper = 1, lower = 1;
  bool level_unimodular = false;
  switch (tag.kind) {
    case K::Full: break;
    case K::Hecke0: lower = tag.level; break;
    case K::Hecke0N: lower = 2; break;
    case K::Principal:
    case K::Igusa:
      upper = lower = tag.level;
      level_unimodular = true;
      break;
    case K::GammaN:
      upper = lower = 2;
      level_unimodular = true;
      break;
  }
  for (const auto& s : {sym(1, 0, 0), sym(0, 1, 0), sym(0, 0, 1)}) {
    Mat2 su = s, sl = s;
    for (auto& row : su)
      for (auto& v : row) v *= upper;
    for (auto& row : sl)
      for (auto& v : row) v *= lower;
    add_pm(SpMat::translation(su));
    add_pm(SpMat::lower_translation(sl));
  }
  if (tag.kind == K::Full) {
    add_pm(SpMat::full_inversion());
    add_pm(SpMat::partial_inversion());
  }
  if (level_unimodular) {
    const std::int64_t l = upper;
    add_pm(SpMat::unimodular({{{1, l}, {0, 1}}}));
    add_pm(SpMat::unimodular({{{1, 0}, {l, 1}}}));
    if (l <= 2) g.push_back(SpMat::unimodular({{{-1, 0}, {0, 1}}}));
  } else {
    g.push_back(SpMat::unimodular({{{0, 1}, {1, 0}}}));
    add_pm(SpMat::unimodular({{{1, 1}, {0, 1}}}));
    g.push_back(SpMat::unimodular({{{-1, 0}, {0, 1}}}));
  }
  return g;
}

/// Deterministic pseudo-random element of the tagged subgroup: a random word
/// of the given length in sampling_generators(tag), without immediate
/// backtracking, rejected until it satisfies the membership predicate and is
/// not +-identity. word_length 0 gives the identity.
inline SpMat sample_element(const SubgroupTag& tag, int word_length, std::uint64_t seed, int budget = 20000) {
  if (word_length < 0) throw std::invalid_argument("sample_element: negative word length");
  if (word_length == 0) return SpMat::identity();
  const auto gens = sampling_generators(tag);
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(word_length));
  for (int attempt = 0; attempt < budget; ++attempt) {
    SpMat w;
    std::size_t prev = gens.size();
    for (int k = 0; k < word_length; ++k) {
      std::size_t i;
      do {
        i = static_cast<std::size_t>(rng() % gens.size());
      } while (prev < gens.size() && gens[i] * gens[prev] == SpMat::identity());
      w = w * gens[i];
      prev = i;
    }
    if (w.is_plus_minus_identity()) continue;
    if (subgroup_membership(w, tag)) return w;
  }
  throw std::runtime_error("sample_element: sampling budget exhausted for " + tag.name() +
                           "; try a larger word_length");
}

}  // namespace siegelcy
