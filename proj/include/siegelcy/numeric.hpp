#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "chargeom.hpp"
#include "qseries.hpp"
#include "symplectic.hpp"

namespace siegelcy {

using cplx = std::complex<long double>;

/// Z = (z0 z1; z1 z2) with positive definite imaginary part.
struct SiegelPoint {
  cplx z0, z1, z2;

  SiegelPoint(cplx a, cplx b, cplx c) : z0(a), z1(b), z2(c) {
    if (!(z0.imag() > 0 && z0.imag() * z2.imag() - z1.imag() * z1.imag() > 0))
      throw std::invalid_argument("SiegelPoint: imaginary part is not positive definite");
  }

  static SiegelPoint diag(cplx t1, cplx t2) { return {t1, 0, t2}; }

  /// Smallest eigenvalue of Im Z.
  long double lambda_min() const {
    const long double a = z0.imag(), b = z1.imag(), c = z2.imag();
    return (a + c) / 2 - std::sqrt((a - c) * (a - c) / 4 + b * b);
  }

  SiegelPoint scaled(long double k) const { return {k * z0, k * z1, k * z2}; }
  SiegelPoint translated(const Mat2& s) const {
    return {z0 + static_cast<long double>(s[0][0]), z1 + static_cast<long double>(s[0][1]),
            z2 + static_cast<long double>(s[1][1])};
  }
};

struct EvalResult {
  cplx value;
  long double tail_bound = 0;
};

namespace detail {

using CMat2 = std::array<std::array<cplx, 2>, 2>;

inline CMat2 to_cmat(const SiegelPoint& z) { return {{{z.z0, z.z1}, {z.z1, z.z2}}}; }

inline CMat2 cmul(const CMat2& x, const CMat2& y) {
  CMat2 r{};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return r;
}

inline CMat2 cadd(const CMat2& x, const CMat2& y) {
  return {{{x[0][0] + y[0][0], x[0][1] + y[0][1]}, {x[1][0] + y[1][0], x[1][1] + y[1][1]}}};
}

inline CMat2 from_int(const Mat2& m) {
  return {{{cplx(static_cast<long double>(m[0][0])), cplx(static_cast<long double>(m[0][1]))},
           {cplx(static_cast<long double>(m[1][0])), cplx(static_cast<long double>(m[1][1]))}}};
}

inline cplx cdet(const CMat2& x) { return x[0][0] * x[1][1] - x[0][1] * x[1][0]; }

inline CMat2 cinv(const CMat2& x) {
  const cplx d = cdet(x);
  return {{{x[1][1] / d, -x[0][1] / d}, {-x[1][0] / d, x[0][0] / d}}};
}

/// Sum over k > r of 8k exp(-pi lambda (k - 1/2)^2): bounds the lattice points
/// outside the box of radius r, each of which has |h|^2 >= (k - 1/2)^2.
inline long double shell_tail(long double lambda, int r) {
  long double s = 0;
  for (int k = r + 1;; ++k) {
    const long double t = 8.0L * k * std::exp(-std::numbers::pi_v<long double> * lambda * (k - 0.5L) * (k - 0.5L));
    s += t;
    if (t < 1e-40L * (s + 1e-300L) || t < 1e-300L) break;
  }
  return s;
}

inline int radius_for(long double lambda, long double tol) {
  for (int r = 1; r <= 400; ++r)
    if (shell_tail(lambda, r) < tol) return r;
  throw std::runtime_error("theta_eval: imaginary part too small for a lattice radius <= 400");
}

}  // namespace detail

/// M Z = (A Z + B)(C Z + D)^-1 and det(C Z + D).
inline std::pair<SiegelPoint, cplx> act_on_point(const SpMat& m, const SiegelPoint& z) {
  using namespace detail;
  const CMat2 zc = to_cmat(z);
  const CMat2 num = cadd(cmul(from_int(m.A()), zc), from_int(m.B()));
  const CMat2 den = cadd(cmul(from_int(m.C()), zc), from_int(m.D()));
  const CMat2 w = cmul(num, cinv(den));
  // symmetrise against rounding
  const cplx off = (w[0][1] + w[1][0]) / 2.0L;
  return {SiegelPoint(w[0][0], off, w[1][1]), cdet(den)};
}

/// theta[m](Z) = sum_g exp(pi i (Z[h] + b.h)), h = g + a/2, summed over the
/// box |g|_inf <= R with R chosen so the Gaussian tail is below tol.
inline EvalResult theta_eval(const Char& m, const SiegelPoint& z, long double tol = 1e-12L) {
  if (!(tol > 0)) throw std::invalid_argument("theta_eval: tol must be positive");
  const long double lambda = z.lambda_min();
  const int r = detail::radius_for(lambda, tol);
  const cplx ipi(0, std::numbers::pi_v<long double>);
  cplx s = 0;
  for (int g1 = -r; g1 <= r; ++g1)
    for (int g2 = -r; g2 <= r; ++g2) {
      const long double h1 = g1 + m.a1 / 2.0L, h2 = g2 + m.a2 / 2.0L;
      const cplx q = z.z0 * (h1 * h1) + 2.0L * z.z1 * (h1 * h2) + z.z2 * (h2 * h2);
      s += std::exp(ipi * (q + cplx(m.b1 * h1 + m.b2 * h2)));
    }
  return {s, detail::shell_tail(lambda, r)};
}

/// Sum of coeff * q0^n0 q1^n1 q2^n2 with q0 = e((z0+z1)/8), q1 = e(-z1/8), q2 = e((z2+z1)/8).
inline cplx series_eval(const QSeries& s, const SiegelPoint& z) {
  const cplx two_pi_i_8(0, 2 * std::numbers::pi_v<long double> / 8);
  cplx acc = 0;
  for (const auto& t : s.terms()) {
    const cplx arg = static_cast<long double>(t.e.n0) * (z.z0 + z.z1) - static_cast<long double>(t.e.n1) * z.z1 +
                     static_cast<long double>(t.e.n2) * (z.z2 + z.z1);
    acc += t.c.to_complex() * std::exp(two_pi_i_8 * arg);
  }
  return acc;
}

/// Bound on the theta terms a truncation at n drops: lattice points with
/// 4|h|^2 > n, enumerated inside the evaluation box plus the shell tail.
inline long double dropped_term_bound(const Char& m, const SiegelPoint& z, std::int64_t n) {
  const long double lambda = z.lambda_min();
  const int r = detail::radius_for(lambda, 1e-30L);
  long double s = detail::shell_tail(lambda, r);
  for (int g1 = -r; g1 <= r; ++g1)
    for (int g2 = -r; g2 <= r; ++g2) {
      const long double x = 2 * g1 + m.a1, y = 2 * g2 + m.a2;
      if (x * x + y * y <= n) continue;
      s += std::exp(-std::numbers::pi_v<long double> * lambda * (x * x + y * y) / 4);
    }
  return s;
}

/// |theta_eval - q-expansion at Z|. Throws if the terms dropped by the
/// truncation cannot be certified below `certify`.
inline long double series_numeric_consistency(const Char& m, const SiegelPoint& z, std::int64_t n,
                                              long double certify = 1e-8L) {
  const long double dropped = dropped_term_bound(m, z, n);
  if (dropped > certify)
    throw std::invalid_argument("series_numeric_consistency: dropped terms bounded only by " + std::to_string(dropped));
  const cplx lattice = theta_eval(m, z, 1e-18L).value;
  return std::abs(lattice - series_eval(theta_qexp(m, n), z));
}

struct ModulusCheck {
  long double lhs = 0, rhs = 0;
  bool ok = false;
};

/// |theta[M{m}](MZ)| against |det(CZ+D)|^(1/2) |theta[m](Z)|.
inline ModulusCheck transform_modulus_check(const SpMat& mat, const Char& m, const SiegelPoint& z,
                                            long double tol = 1e-8L) {
  const auto [mz, det] = act_on_point(mat, z);
  ModulusCheck r;
  r.lhs = std::abs(theta_eval(sp4f2_act(mat.mod2(), m), mz, 1e-16L).value);
  r.rhs = std::sqrt(std::abs(det)) * std::abs(theta_eval(m, z, 1e-16L).value);
  r.ok = std::abs(r.lhs - r.rhs) <= tol * std::max<long double>(1, r.rhs);
  return r;
}

/// Forms whose transformation law is measured numerically.
enum class FormKind { Theta, T, F1, F2, F3, F4, F5, F6 };

inline std::string to_string(FormKind k) {
  static const char* names[] = {"Theta", "T", "F1", "F2", "F3", "F4", "F5", "F6"};
  return names[static_cast<int>(k)];
}

/// T has weight 3, the rest weight 2.
inline int form_weight(FormKind k) { return k == FormKind::T ? 3 : 2; }

inline SubgroupTag form_domain(FormKind k) {
  switch (k) {
    case FormKind::Theta: return SubgroupTag::hecke0(2);
    case FormKind::T: return SubgroupTag::gamma_n();
    default: return SubgroupTag::principal(2);
  }
}

/// Value of the form at Z from lattice sums.
inline cplx form_eval(FormKind k, const SiegelPoint& z) {
  auto th = [&](int a1, int a2, int b1, int b2, const SiegelPoint& p) {
    return theta_eval(Char(a1, a2, b1, b2), p, 1e-18L).value;
  };
  switch (k) {
    case FormKind::Theta:
    case FormKind::F6: return th(0, 0, 0, 1, z) * th(0, 0, 0, 0, z) * th(0, 0, 1, 0, z) * th(0, 0, 1, 1, z);
    case FormKind::T: {
      cplx p = 1;
      for (const auto& m : standard_sextuple()) p *= theta_eval(m, z, 1e-18L).value;
      return p;
    }
    default: break;
  }
  const SiegelPoint z2 = z.scaled(2);
  const std::array<cplx, 4> f{th(0, 0, 0, 0, z2), th(1, 0, 0, 0, z2), th(0, 1, 0, 0, z2), th(1, 1, 0, 0, z2)};
  std::array<cplx, 4> s;
  for (std::size_t i = 0; i < 4; ++i) s[i] = f[i] * f[i];
  switch (k) {
    case FormKind::F1: return s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3];
    case FormKind::F2: return s[0] * s[1] + s[2] * s[3];
    case FormKind::F3: return s[0] * s[2] + s[1] * s[3];
    case FormKind::F4: return s[0] * s[3] + s[1] * s[2];
    default: return f[0] * f[1] * f[2] * f[3];
  }
}

/// Character value the law predicts: the theta character for Theta and F6,
/// trivial for T on Gamma_n and for F1..F5 on the principal level-2 group.
inline int predicted_character(FormKind k, const SpMat& m) {
  return k == FormKind::Theta || k == FormKind::F6 ? theta_character(m) : 1;
}

struct CharacterMeasurement {
  cplx ratio;
  /// +1 or -1 when the ratio is within 1e-6 of it, else 0.
  int sign = 0;
};

/// form(MZ) / (det(CZ+D)^k form(Z)).
inline CharacterMeasurement character_law_check(FormKind k, const SpMat& m, const SiegelPoint& z) {
  if (!subgroup_membership(m, form_domain(k)))
    throw std::invalid_argument("character_law_check: matrix outside " + form_domain(k).name());
  const auto [mz, det] = act_on_point(m, z);
  const cplx denom = std::pow(det, form_weight(k)) * form_eval(k, z);
  CharacterMeasurement r{form_eval(k, mz) / denom, 0};
  if (std::abs(r.ratio - 1.0L) < 1e-6L) r.sign = 1;
  if (std::abs(r.ratio + 1.0L) < 1e-6L) r.sign = -1;
  return r;
}

/// form(Z + S) / form(Z) for an integral symmetric S.
inline CharacterMeasurement translation_ratio(FormKind k, const Mat2& s, const SiegelPoint& z) {
  CharacterMeasurement r{form_eval(k, z.translated(s)) / form_eval(k, z), 0};
  if (std::abs(r.ratio - 1.0L) < 1e-6L) r.sign = 1;
  if (std::abs(r.ratio + 1.0L) < 1e-6L) r.sign = -1;
  return r;
}

struct DiagonalValues {
  long double t = 0, theta1111 = 0;
};

/// |T| and |theta[1111]| at diag(t1, t2).
inline DiagonalValues diagonal_vanishing_check(cplx t1, cplx t2) {
  const SiegelPoint z = SiegelPoint::diag(t1, t2);
  return {std::abs(form_eval(FormKind::T, z)), std::abs(theta_eval(Char(1, 1, 1, 1), z, 1e-18L).value)};
}

/// A seeded point with real parts in [-1/2, 1/2] and Im Z having smallest
/// eigenvalue at least 1/2.
inline SiegelPoint sample_point(std::uint64_t seed, long double scale = 1) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
  std::uniform_real_distribution<long double> re(-0.5L, 0.5L), diag(0.8L, 1.6L), off(-0.3L, 0.3L);
  const long double a = diag(rng), b = diag(rng), c = off(rng);
  return {cplx(re(rng), scale * a), cplx(re(rng), scale * c), cplx(re(rng), scale * b)};
}

}  // namespace siegelcy
