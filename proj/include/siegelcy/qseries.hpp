#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chargeom.hpp"
#include "exact/cyclotomic.hpp"
#include "symplectic.hpp"

namespace siegelcy {

/// Exponents of q0^n0 q1^n1 q2^n2 on the level-8 grid, where
/// q0 = e(z0+z1)/8, q1 = e(-z1)/8, q2 = e(z2+z1)/8 and e(x) = exp(2 pi i x).
/// The index matrix T satisfies (8 t0, 16 t1, 8 t2) = (n0, n0+n2-n1, n2).
struct ExpTriple {
  std::int64_t n0 = 0, n1 = 0, n2 = 0;

  constexpr std::int64_t weight() const noexcept { return n0 + n2; }
  constexpr std::int64_t operator[](int axis) const { return axis == 0 ? n0 : axis == 1 ? n1 : n2; }

  friend constexpr ExpTriple operator+(const ExpTriple& a, const ExpTriple& b) noexcept {
    return {a.n0 + b.n0, a.n1 + b.n1, a.n2 + b.n2};
  }
  /// Ordered by (n0, n2, n1).
  friend constexpr auto operator<=>(const ExpTriple& a, const ExpTriple& b) noexcept {
    if (auto c = a.n0 <=> b.n0; c != 0) return c;
    if (auto c = a.n2 <=> b.n2; c != 0) return c;
    return a.n1 <=> b.n1;
  }
  friend constexpr bool operator==(const ExpTriple&, const ExpTriple&) noexcept = default;
};

/// 4 n0 n2 >= (n0 + n2 - n1)^2, i.e. T is positive semi-definite.
constexpr bool koecher_admissible(const ExpTriple& e) noexcept {
  const std::int64_t off = e.n0 + e.n2 - e.n1;
  return e.n0 >= 0 && e.n2 >= 0 && 4 * e.n0 * e.n2 >= off * off;
}

/// Truncated power series in (q0, q1, q2) with coefficients in Z[zeta8].
/// Terms with n0 + n2 above the truncation bound are unknown and never stored.
class QSeries {
public:
  struct Term {
    ExpTriple e;
    CycInt8 c;
    friend bool operator==(const Term&, const Term&) = default;
  };

  /// Bound used for series known exactly (finite sums such as constants).
  static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;

  QSeries() = default;
  explicit QSeries(std::int64_t truncation) : trunc_(truncation) {
    if (truncation < 0) throw std::invalid_argument("QSeries: negative truncation");
  }

  static QSeries constant(const CycInt8& c, std::int64_t truncation = kExact) {
    QSeries s(truncation);
    if (!c.is_zero()) s.terms_.push_back({{0, 0, 0}, c});
    return s;
  }
  static QSeries one(std::int64_t truncation = kExact) { return constant(CycInt8(1), truncation); }

  /// Terms in any order; repeated exponents are summed, terms beyond the bound dropped.
  static QSeries from_terms(std::vector<Term> terms, std::int64_t truncation) {
    QSeries s(truncation);
    for (const auto& t : terms)
      if (t.e.n0 < 0 || t.e.n1 < 0 || t.e.n2 < 0) throw std::invalid_argument("QSeries: negative exponent");
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.e < b.e; });
    for (const auto& t : terms) {
      if (t.e.weight() > truncation) continue;
      if (!s.terms_.empty() && s.terms_.back().e == t.e)
        s.terms_.back().c += t.c;
      else
        s.terms_.push_back(t);
    }
    s.drop_zeros();
    return s;
  }

  std::int64_t truncation() const noexcept { return trunc_; }
  bool is_exact() const noexcept { return trunc_ >= kExact; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  CycInt8 coefficient(const ExpTriple& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const Term& t, const ExpTriple& x) { return t.e < x; });
    return (it != terms_.end() && it->e == e) ? it->c : CycInt8();
  }

  QSeries truncated(std::int64_t n) const {
    if (n >= trunc_) return *this;
    QSeries s(n);
    for (const auto& t : terms_)
      if (t.e.weight() <= n) s.terms_.push_back(t);
    return s;
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) { return combine(a, b, 1); }
  friend QSeries operator-(const QSeries& a, const QSeries& b) { return combine(a, b, -1); }
  friend QSeries operator-(const QSeries& a) { return a.scaled(CycInt8(-1)); }
  QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
  QSeries& operator-=(const QSeries& o) { return *this = *this - o; }
  QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

  QSeries scaled(const CycInt8& k) const {
    QSeries s(trunc_);
    if (k.is_zero()) return s;
    s.terms_.reserve(terms_.size());
    for (const auto& t : terms_) s.terms_.push_back({t.e, t.c * k});
    s.drop_zeros();
    return s;
  }

  friend QSeries operator*(const QSeries& a, const QSeries& b) { return multiply(a, b); }

  QSeries pow(unsigned n) const {
    QSeries r = one(trunc_), base = *this;
    while (n) {
      if (n & 1U) r = r * base;
      n >>= 1U;
      if (n) base = base * base;
    }
    return r;
  }

  /// Exact equality of bound and terms.
  friend bool operator==(const QSeries&, const QSeries&) = default;

  /// Equal as far as both are known (up to the smaller truncation).
  friend bool agree(const QSeries& a, const QSeries& b) {
    const std::int64_t n = std::min(a.trunc_, b.trunc_);
    return a.truncated(n).terms_ == b.truncated(n).terms_;
  }

  /// Largest absolute value of any integer coordinate of any coefficient.
  std::int64_t max_abs_coordinate() const {
    std::int64_t m = 0;
    for (const auto& t : terms_)
      for (auto v : t.c.coeffs()) m = std::max(m, v < 0 ? -v : v);
    return m;
  }

  /// Each exponent triple multiplied by k (used for Z -> kZ).
  QSeries exponents_scaled(std::int64_t k) const {
    if (k <= 0) throw std::invalid_argument("exponents_scaled: factor must be positive");
    QSeries s(is_exact() ? kExact : trunc_ * k);
    for (const auto& t : terms_) s.terms_.push_back({{t.e.n0 * k, t.e.n1 * k, t.e.n2 * k}, t.c});
    return s;
  }

  /// Apply an exponent map; the result is re-sorted. The caller supplies the
  /// new truncation bound.
  template <class F>
  QSeries remapped(F&& f, std::int64_t new_trunc) const {
    std::vector<Term> v;
    v.reserve(terms_.size());
    for (const auto& t : terms_) v.push_back({f(t.e), t.c});
    return from_terms(std::move(v), new_trunc);
  }

  std::string to_string(std::size_t max_terms = 8) const {
    std::ostringstream os;
    std::size_t k = 0;
    for (const auto& t : terms_) {
      if (k++ == max_terms) {
        os << " + ...";
        break;
      }
      if (k > 1) os << " + ";
      os << t.c << "*q^(" << t.e.n0 << ',' << t.e.n1 << ',' << t.e.n2 << ')';
    }
    if (terms_.empty()) os << '0';
    os << " [n0+n2 <= " << (is_exact() ? std::string("exact") : std::to_string(trunc_)) << ']';
    return os.str();
  }

private:
  void drop_zeros() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term& t) { return t.c.is_zero(); }),
                 terms_.end());
  }

  static QSeries combine(const QSeries& a, const QSeries& b, int sign) {
    QSeries s(std::min(a.trunc_, b.trunc_));
    s.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    const auto bound = s.trunc_;
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->e < j->e)) {
        if (i->e.weight() <= bound) s.terms_.push_back(*i);
        ++i;
      } else if (i == a.terms_.end() || j->e < i->e) {
        if (j->e.weight() <= bound) s.terms_.push_back({j->e, sign > 0 ? j->c : -j->c});
        ++j;
      } else {
        if (i->e.weight() <= bound) s.terms_.push_back({i->e, sign > 0 ? i->c + j->c : i->c - j->c});
        ++i;
        ++j;
      }
    }
    s.drop_zeros();
    return s;
  }

  static QSeries multiply(const QSeries& a, const QSeries& b) {
    QSeries s(std::min(a.trunc_, b.trunc_));
    if (a.is_zero() || b.is_zero()) return s;
    std::int64_t w = 0, m1 = 0;
    auto extent = [](const QSeries& x, std::int64_t& wmax, std::int64_t& n1max) {
      wmax = n1max = 0;
      for (const auto& t : x.terms_) {
        wmax = std::max(wmax, t.e.weight());
        n1max = std::max(n1max, t.e.n1);
      }
    };
    std::int64_t wa, wb, ma, mb;
    extent(a, wa, ma);
    extent(b, wb, mb);
    w = std::min(s.trunc_, wa + wb);
    m1 = ma + mb;
    const auto d0 = static_cast<std::size_t>(w + 1), d1 = static_cast<std::size_t>(m1 + 1);
    std::vector<CycInt8> buf(d0 * d0 * d1);
    std::vector<char> used(d0 * d0 * d1, 0);
    for (const auto& x : a.terms_) {
      if (x.e.weight() > w) continue;
      for (const auto& y : b.terms_) {
        const ExpTriple e = x.e + y.e;
        if (e.weight() > w) continue;
        const std::size_t idx =
            (static_cast<std::size_t>(e.n0) * d0 + static_cast<std::size_t>(e.n2)) * d1 + static_cast<std::size_t>(e.n1);
        buf[idx] += x.c * y.c;
        used[idx] = 1;
      }
    }
    for (std::size_t n0 = 0; n0 < d0; ++n0)
      for (std::size_t n2 = 0; n2 < d0; ++n2)
        for (std::size_t n1 = 0; n1 < d1; ++n1) {
          const std::size_t idx = (n0 * d0 + n2) * d1 + n1;
          if (used[idx] && !buf[idx].is_zero())
            s.terms_.push_back({{static_cast<std::int64_t>(n0), static_cast<std::int64_t>(n1),
                                 static_cast<std::int64_t>(n2)},
                                buf[idx]});
        }
    return s;
  }

  std::int64_t trunc_ = kExact;
  std::vector<Term> terms_;
};

/// Theta constant theta[m] on the level-8 grid, summed exactly over
/// x = 2 g1 + a1, y = 2 g2 + a2 with x^2 + y^2 <= N.
inline QSeries theta_qexp(const Char& m, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("theta_qexp: N must be nonnegative");
  std::vector<QSeries::Term> terms;
  const auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n))) + 1;
  for (std::int64_t x = -r; x <= r; ++x) {
    if (((x % 2) + 2) % 2 != m.a1) continue;
    for (std::int64_t y = -r; y <= r; ++y) {
      if (((y % 2) + 2) % 2 != m.a2) continue;
      if (x * x + y * y > n) continue;
      terms.push_back({{x * x, (x - y) * (x - y), y * y}, CycInt8::zeta_pow(2 * (m.b1 * x + m.b2 * y))});
    }
  }
  return QSeries::from_terms(std::move(terms), n);
}

/// Theta constant of the second kind f_a(Z) = theta[a;0](2Z).
inline QSeries second_kind_qexp(int a1, int a2, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("second_kind_qexp: N must be nonnegative");
  // Doubled exponents have even weight, so an odd bound loses nothing.
  return theta_qexp(Char(a1, a2, 0, 0), n / 2)
      .remapped([](const ExpTriple& e) { return ExpTriple{2 * e.n0, 2 * e.n1, 2 * e.n2}; }, n);
}

/// Minimal exponent of q_axis over the support.
inline std::int64_t vanishing_order(const QSeries& s, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("vanishing_order: axis must be 0, 1 or 2");
  if (s.is_zero()) throw std::invalid_argument("vanishing_order: series is zero up to its truncation");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& t : s.terms()) best = std::min(best, t.e[axis]);
  return best;
}

/// Z -> Z + S: each term picks up zeta8^(n0 s0 + (n0+n2-n1) s1 + n2 s2).
inline QSeries translate_action(const QSeries& s, const Mat2& sm) {
  if (sm[0][1] != sm[1][0]) throw std::invalid_argument("translate_action: S must be symmetric");
  std::vector<QSeries::Term> v;
  v.reserve(s.size());
  for (const auto& t : s.terms()) {
    const std::int64_t k = t.e.n0 * sm[0][0] + (t.e.n0 + t.e.n2 - t.e.n1) * sm[0][1] + t.e.n2 * sm[1][1];
    v.push_back({t.e, t.c.times_zeta_pow(k)});
  }
  return QSeries::from_terms(std::move(v), s.truncation());
}

namespace detail {

/// Index remap T -> U T tU on the level-8 grid, via P = 16 T.
inline ExpTriple unimodular_remap(const ExpTriple& e, const Mat2& u) {
  const std::int64_t p00 = 2 * e.n0, p01 = e.n0 + e.n2 - e.n1, p11 = 2 * e.n2;
  // (U P tU)_ij = sum_kl U_ik P_kl U_jl
  auto entry = [&](std::size_t i, std::size_t j) {
    return u[i][0] * (p00 * u[j][0] + p01 * u[j][1]) + u[i][1] * (p01 * u[j][0] + p11 * u[j][1]);
  };
  const std::int64_t q00 = entry(0, 0), q01 = entry(0, 1), q11 = entry(1, 1);
  const std::int64_t n0 = q00 / 2, n2 = q11 / 2;
  return {n0, n0 + n2 - q01, n2};
}

inline Mat2 inverse_unimodular(const Mat2& u) {
  const std::int64_t det = mat2_det(u);
  return {{{det * u[1][1], -det * u[0][1]}, {-det * u[1][0], det * u[0][0]}}};
}

}  // namespace detail

/// Largest N' such that every admissible exponent triple of weight <= N'
/// comes, under T -> U T tU, from a triple of weight <= n.
inline std::int64_t unimodular_truncation(const Mat2& u, std::int64_t n) {
  if (n >= QSeries::kExact) return n;
  const Mat2 inv = detail::inverse_unimodular(u);
  std::int64_t good = -1;
  for (std::int64_t w = 0; w <= n; ++w) {
    for (std::int64_t n0 = 0; n0 <= w; ++n0) {
      const std::int64_t n2 = w - n0;
      for (std::int64_t n1 = 0; n1 <= 2 * w; ++n1) {
        const ExpTriple e{n0, n1, n2};
        if (!koecher_admissible(e)) continue;
        if (detail::unimodular_remap(e, inv).weight() > n) return good;
      }
    }
    good = w;
  }
  return good;
}

/// Z -> Z[U] = tU Z U. The coefficient of T moves to U T tU; the known range
/// shrinks to unimodular_truncation(U, N).
inline QSeries unimodular_action(const QSeries& s, const Mat2& u) {
  const std::int64_t det = mat2_det(u);
  if (det != 1 && det != -1) throw std::invalid_argument("unimodular_action: det U must be +-1");
  const std::int64_t n = unimodular_truncation(u, s.truncation());
  return s.remapped([&](const ExpTriple& e) { return detail::unimodular_remap(e, u); }, n);
}

/// z1 -> -z1: (n0, n1, n2) -> (n0, 2(n0+n2) - n1, n2).
inline QSeries negate_offdiag(const QSeries& s) {
  for (const auto& t : s.terms())
    if (t.e.n1 > 2 * t.e.weight()) throw std::invalid_argument("negate_offdiag: term outside the Koecher range");
  return s.remapped([](const ExpTriple& e) { return ExpTriple{e.n0, 2 * e.weight() - e.n1, e.n2}; },
                    s.truncation());
}

inline bool koecher_check(const QSeries& s) {
  return std::all_of(s.terms().begin(), s.terms().end(),
                     [](const QSeries::Term& t) { return koecher_admissible(t.e); });
}

/// The four theta constants of the second kind, ordered a = (0,0), (1,0), (0,1), (1,1).
inline std::array<Char, 4> second_kind_chars() {
  return {Char(0, 0, 0, 0), Char(1, 0, 0, 0), Char(0, 1, 0, 0), Char(1, 1, 0, 0)};
}

// --- series cache -----------------------------------------------------------

/// Writes "# char a1 a2 b1 b2 N n" followed by one "n0 n1 n2 c0 c1 c2 c3" line per term.
inline void write_series(std::ostream& os, const Char& m, const QSeries& s) {
  os << "# char " << int(m.a1) << ' ' << int(m.a2) << ' ' << int(m.b1) << ' ' << int(m.b2) << " N "
     << s.truncation() << '\n';
  for (const auto& t : s.terms()) {
    os << t.e.n0 << ' ' << t.e.n1 << ' ' << t.e.n2;
    for (auto c : t.c.coeffs()) os << ' ' << c;
    os << '\n';
  }
}

struct CachedSeries {
  Char m;
  QSeries series;
};

inline CachedSeries read_series(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("series cache: empty input");
  std::istringstream hs(line);
  std::string hash, tag, ntag;
  int a1, a2, b1, b2;
  std::int64_t n;
  if (!(hs >> hash >> tag >> a1 >> a2 >> b1 >> b2 >> ntag >> n) || hash != "#" || tag != "char" || ntag != "N")
    throw std::runtime_error("series cache: malformed header '" + line + "'");
  std::vector<QSeries::Term> terms;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    QSeries::Term t;
    std::array<std::int64_t, 4> c{};
    if (!(ls >> t.e.n0 >> t.e.n1 >> t.e.n2 >> c[0] >> c[1] >> c[2] >> c[3]))
      throw std::runtime_error("series cache: malformed line " + std::to_string(lineno));
    t.c = CycInt8(c[0], c[1], c[2], c[3]);
    terms.push_back(t);
  }
  return {Char(a1, a2, b1, b2), QSeries::from_terms(std::move(terms), n)};
}

/// theta_qexp through an on-disk cache; an empty directory disables caching.
inline QSeries theta_qexp_cached(const Char& m, std::int64_t n, const std::filesystem::path& dir) {
  if (dir.empty()) return theta_qexp(m, n);
  const auto file = dir / ("theta_" + m.digits() + "_N" + std::to_string(n) + ".txt");
  if (std::ifstream in{file}) {
    auto c = read_series(in);
    if (c.m == m && c.series.truncation() == n) return c.series;
  }
  QSeries s = theta_qexp(m, n);
  std::filesystem::create_directories(dir);
  std::ofstream out(file);
  if (!out) throw std::runtime_error("series cache: cannot write " + file.string());
  write_series(out, m, s);
  return s;
}

}  // namespace siegelcy
