#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact/membership.hpp"
#include "exact/mpoly.hpp"
#include "exact/rational.hpp"
#include "exact/ratfn.hpp"
#include "exact/threeform.hpp"

namespace siegelcy {

/// The threefold as the intersection of a quartic and a quadric in P^5.
struct Presentation {
  std::vector<std::string> coords;
  MPoly quartic;
  MPoly quadric;
  std::vector<MPoly> generators() const { return {quartic, quadric}; }
};

namespace detail {

inline std::vector<std::string> coord_names(const std::string& prefix) {
  std::vector<std::string> v;
  for (int i = 0; i < 6; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

inline MPoly sq(const MPoly& p) { return p * p; }

}  // namespace detail

inline Presentation y_presentation() {
  std::vector<MPoly> y;
  for (const auto& n : detail::coord_names("y")) y.push_back(var(n));
  const MPoly quartic = y[5].pow(4) - y[0] * y[1] * y[2] * (y[0] + y[1] + y[2] + y[3] + y[4]);
  const MPoly quadric = MPoly(2) * y[5] * y[5] - (y[0] * y[1] + y[0] * y[2] + y[1] * y[2] - y[3] * y[4]);
  return {detail::coord_names("y"), quartic, quadric};
}

inline Presentation x_presentation() {
  using detail::sq;
  std::vector<MPoly> x;
  for (const auto& n : detail::coord_names("x")) x.push_back(var(n));
  const MPoly quartic = MPoly(16) * x[4].pow(4) + sq(x[0]) * sq(x[4]) + sq(x[1]) * sq(x[2]) + sq(x[1]) * sq(x[3]) +
                        sq(x[2]) * sq(x[3]) - x[0] * x[1] * x[2] * x[3] -
                        MPoly(4) * sq(x[4]) * (sq(x[1]) + sq(x[2]) + sq(x[3]));
  const MPoly quadric =
      sq(x[5]) - (sq(x[0]) - MPoly(4) * sq(x[1]) - MPoly(4) * sq(x[2]) - MPoly(4) * sq(x[3]) + MPoly(32) * sq(x[4]));
  return {detail::coord_names("x"), quartic, quadric};
}

/// The integer matrix taking (x0..x4) to (y0..y4); y5 = x5.
inline const std::vector<std::vector<std::int64_t>>& xy_change_matrix() {
  static const std::vector<std::vector<std::int64_t>> m{
      {1, -2, -2, 2, 0}, {1, -2, 2, -2, 0}, {1, 2, 2, 2, 0}, {-1, 2, -2, -2, -8}, {-1, 2, -2, -2, 8}};
  return m;
}

/// The full 6x6 change y = M x, extended by y5 = x5.
inline QMatrix xy_change_matrix6() {
  QMatrix m(6, 6);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) m(i, j) = xy_change_matrix()[i][j];
  m(5, 5) = 1;
  return m;
}

/// Substitute from[i] = sum_j m(i,j) to[j] into p.
inline MPoly linear_substitute(const MPoly& p, const QMatrix& m, const std::vector<std::string>& from,
                               const std::vector<std::string>& to) {
  std::map<std::string, MPoly> a;
  for (std::size_t i = 0; i < from.size(); ++i) {
    MPoly img;
    for (std::size_t j = 0; j < to.size(); ++j)
      if (m(i, j) != 0) img += MPoly(m(i, j)) * var(to[j]);
    a[from[i]] = img;
  }
  return p.substitute(a);
}

struct CoordinateChangeReport {
  /// Substituted y-quadric = quadric_scalar * x-quadric.
  std::optional<Rational> quadric_scalar;
  std::optional<MembershipCertificate> quartic_forward;
  std::optional<MembershipCertificate> quadric_inverse;
  std::optional<MembershipCertificate> quartic_inverse;
  Rational determinant;
  bool ok() const {
    return quadric_scalar && *quadric_scalar != 0 && quartic_forward && quadric_inverse && quartic_inverse &&
           determinant != 0;
  }
};

/// Bidirectional ideal membership under y = M x.
inline CoordinateChangeReport coordinate_change_check() {
  const Presentation py = y_presentation(), px = x_presentation();
  const QMatrix m = xy_change_matrix6();
  CoordinateChangeReport r;
  r.determinant = m.determinant();

  const MPoly q2 = linear_substitute(py.quadric, m, py.coords, px.coords);
  const Rational s = q2.coefficient({{"x5", 2}});
  if (s != 0 && q2 == px.quadric.scaled(s)) r.quadric_scalar = s;
  r.quartic_forward = graded_membership(linear_substitute(py.quartic, m, py.coords, px.coords), px.generators());

  const QMatrix inv = m.inverse();
  r.quadric_inverse = graded_membership(linear_substitute(px.quadric, inv, px.coords, py.coords), py.generators());
  r.quartic_inverse = graded_membership(linear_substitute(px.quartic, inv, px.coords, py.coords), py.generators());
  return r;
}

/// x_i -> sign[i] * x_{perm[i]}, as a substitution on polynomials. On points
/// the same data is the matrix with entry sign[i] at (i, perm[i]).
struct SignedMonomialMap {
  std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
  std::array<int, 6> sign{1, 1, 1, 1, 1, 1};

  static SignedMonomialMap identity() { return {}; }
  static SignedMonomialMap signs(std::initializer_list<int> flipped) {
    SignedMonomialMap g;
    for (int i : flipped) g.sign[static_cast<std::size_t>(i)] = -1;
    return g;
  }
  static SignedMonomialMap swap(int i, int j, std::initializer_list<int> flipped = {}) {
    SignedMonomialMap g = signs(flipped);
    std::swap(g.perm[static_cast<std::size_t>(i)], g.perm[static_cast<std::size_t>(j)]);
    return g;
  }

  /// Composition as maps on points: (a*b)(x) = a(b(x)).
  friend SignedMonomialMap operator*(const SignedMonomialMap& a, const SignedMonomialMap& b) {
    SignedMonomialMap c;
    for (std::size_t i = 0; i < 6; ++i) {
      const auto pi = static_cast<std::size_t>(a.perm[i]);
      c.perm[i] = b.perm[pi];
      c.sign[i] = a.sign[i] * b.sign[pi];
    }
    return c;
  }

  SignedMonomialMap inverse() const {
    SignedMonomialMap r;
    for (std::size_t i = 0; i < 6; ++i) {
      const auto pi = static_cast<std::size_t>(perm[i]);
      r.perm[pi] = static_cast<int>(i);
      r.sign[pi] = sign[i];
    }
    return r;
  }

  bool is_identity() const { return *this == identity(); }
  bool is_minus_identity() const {
    return perm == identity().perm && std::all_of(sign.begin(), sign.end(), [](int s) { return s < 0; });
  }

  QMatrix matrix() const {
    QMatrix m(6, 6);
    for (std::size_t i = 0; i < 6; ++i) m(i, static_cast<std::size_t>(perm[i])) = sign[i];
    return m;
  }

  MPoly apply(const MPoly& p, const std::vector<std::string>& coords) const {
    std::map<std::string, MPoly> a;
    for (std::size_t i = 0; i < 6; ++i) a[coords[i]] = MPoly(sign[i]) * var(coords[static_cast<std::size_t>(perm[i])]);
    return p.substitute(a);
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < 6; ++i) {
      if (i) s += " ";
      s += "x" + std::to_string(i) + "->" + (sign[i] < 0 ? "-" : "") + "x" + std::to_string(perm[i]);
    }
    return s + "]";
  }

  auto operator<=>(const SignedMonomialMap&) const = default;
};

/// Named generators of the symmetry group: transpositions of x1, x2, x3 with
/// the x5 sign change, sign changes of two of x1, x2, x3, and the x4 sign change.
inline std::vector<std::pair<std::string, SignedMonomialMap>> symmetry_generators() {
  return {
      {"swap_x1_x2_flip_x5", SignedMonomialMap::swap(1, 2, {5})},
      {"swap_x2_x3_flip_x5", SignedMonomialMap::swap(2, 3, {5})},
      {"flip_x1_x2", SignedMonomialMap::signs({1, 2})},
      {"flip_x2_x3", SignedMonomialMap::signs({2, 3})},
      {"flip_x4", SignedMonomialMap::signs({4})},
  };
}

inline std::vector<SignedMonomialMap> symmetry_generator_maps() {
  std::vector<SignedMonomialMap> g;
  for (const auto& [n, m] : symmetry_generators()) g.push_back(m);
  return g;
}

/// Closure under composition, sorted. Throws past `bound` elements.
inline std::vector<SignedMonomialMap> group_closure(const std::vector<SignedMonomialMap>& gens,
                                                    std::size_t bound = 10000) {
  std::set<SignedMonomialMap> g{SignedMonomialMap::identity()};
  std::vector<SignedMonomialMap> frontier{SignedMonomialMap::identity()};
  while (!frontier.empty()) {
    std::vector<SignedMonomialMap> next;
    for (const auto& e : frontier)
      for (const auto& s : gens) {
        const auto c = s * e;
        if (g.insert(c).second) {
          if (g.size() > bound) throw std::runtime_error("group_closure: more than " + std::to_string(bound) + " elements");
          next.push_back(c);
        }
      }
    frontier = std::move(next);
  }
  return {g.begin(), g.end()};
}

/// Order of the image in PGL(6): the group order divided by |group ∩ {I, -I}|.
inline std::size_t projective_order(const std::vector<SignedMonomialMap>& group) {
  const bool has_minus = std::any_of(group.begin(), group.end(), [](const auto& g) { return g.is_minus_identity(); });
  return has_minus ? group.size() / 2 : group.size();
}

struct Invariance {
  bool invariant = false;
  /// g(p) = sign * p for quartic and quadric; 0 if not proportional.
  std::array<int, 2> signs{0, 0};
};

inline Invariance equation_invariance(const SignedMonomialMap& g, const Presentation& p) {
  Invariance r;
  const auto gens = p.generators();
  for (std::size_t k = 0; k < 2; ++k) {
    const MPoly img = g.apply(gens[k], p.coords);
    if (img == gens[k])
      r.signs[k] = 1;
    else if (img == -gens[k])
      r.signs[k] = -1;
  }
  r.invariant = r.signs[0] != 0 && r.signs[1] != 0;
  return r;
}

/// Chart coordinates u_i = x_i / x4 on the affine piece x4 = 1.
inline const std::vector<std::string>& omega_chart() {
  static const std::vector<std::string> c{"u0", "u1", "u2", "u3", "u5"};
  return c;
}

/// The Calabi-Yau form x4^4 / ((x1 x2 x3 - 2 x0 x4^2) x5) d(x1/x4) d(x2/x4) d(x3/x4),
/// written in the chart x4 = 1.
inline ThreeForm omega_form() {
  const MPoly den = (var("u1") * var("u2") * var("u3") - MPoly(2) * var("u0")) * var("u5");
  return ThreeForm(omega_chart(), RatFn(MPoly(1), den), {"u1", "u2", "u3"});
}

/// Sign s with g^* omega = s * omega. Requires g to fix x4 up to sign and to
/// preserve both equations. Throws if the pullback is not +-omega.
inline int omega_pullback_sign(const SignedMonomialMap& g) {
  if (g.perm[4] != 4) throw std::invalid_argument("omega_pullback_sign: map must fix the x4 axis");
  if (!equation_invariance(g, x_presentation()).invariant)
    throw std::invalid_argument("omega_pullback_sign: map does not preserve the equations");
  ChartMap m{omega_chart(), {}};
  auto name = [](int i) { return i == 5 ? std::string("u5") : "u" + std::to_string(i); };
  for (int i : {0, 1, 2, 3, 5}) {
    const auto k = static_cast<std::size_t>(i);
    m.images[name(i)] = RatFn(MPoly(g.sign[k] * g.sign[4]) * var(name(g.perm[k])));
  }
  const ThreeForm w = omega_form();
  const ThreeForm pulled = w.pullback(m).form;
  if (pulled == w) return 1;
  if (pulled == -w) return -1;
  throw std::logic_error("omega_pullback_sign: pullback is not proportional to omega");
}

struct StabilizerReport {
  std::size_t candidates = 0;
  std::size_t preserving = 0;
  std::vector<SignedMonomialMap> stabilizer;
  /// Stabilizer elements that flip x4.
  std::vector<SignedMonomialMap> x4_flipping;
};

/// Among permutations of x1, x2, x3 combined with arbitrary sign changes of
/// x1..x5: those preserving both equations, and among them those fixing omega.
inline StabilizerReport omega_stabilizer() {
  StabilizerReport r;
  const Presentation px = x_presentation();
  std::array<int, 3> p{1, 2, 3};
  do {
    for (int mask = 0; mask < 32; ++mask) {
      SignedMonomialMap g;
      g.perm[1] = p[0];
      g.perm[2] = p[1];
      g.perm[3] = p[2];
      for (int b = 0; b < 5; ++b)
        if (mask >> b & 1) g.sign[static_cast<std::size_t>(b + 1)] = -1;
      ++r.candidates;
      if (!equation_invariance(g, px).invariant) continue;
      ++r.preserving;
      if (omega_pullback_sign(g) == 1) {
        r.stabilizer.push_back(g);
        if (g.sign[4] < 0) r.x4_flipping.push_back(g);
      }
    }
  } while (std::next_permutation(p.begin(), p.end()));
  std::sort(r.stabilizer.begin(), r.stabilizer.end());
  return r;
}

/// A curve on the threefold, in y-coordinates: ideal generators and a
/// polynomial parametrization in t, u.
struct CurveRep {
  std::string name;
  std::vector<MPoly> ideal;
  std::array<MPoly, 6> param;
};

inline CurveRep quadric_curve() {
  const MPoly y0 = var("y0"), y1 = var("y1"), y2 = var("y2"), y3 = var("y3"), y4 = var("y4"), y5 = var("y5");
  const MPoly t = var("t"), u = var("u");
  return {"quadric", {y0 + y4, y1 + y4, y3 - y4, y2 * y4 + y5 * y5}, {-t * t, -t * t, -u * u, t * t, t * t, t * u}};
}

inline CurveRep line_curve() {
  return {"line", {var("y0"), var("y2"), var("y3"), var("y5")}, {MPoly(), var("t"), MPoly(), MPoly(), var("u"), MPoly()}};
}

inline std::map<std::string, MPoly> param_assignment(const CurveRep& c) {
  std::map<std::string, MPoly> a;
  const auto names = detail::coord_names("y");
  for (std::size_t i = 0; i < 6; ++i) a[names[i]] = c.param[i];
  return a;
}

struct CurveCheck {
  bool param_in_ideal = false;
  bool contained = false;
  bool singular = false;
  std::string offending;
  bool ok() const { return param_in_ideal && contained && singular; }
};

/// Parametrization satisfies the ideal; both equations lie in the ideal; all
/// 2x2 minors of the Jacobian of (quartic, quadric) vanish along the curve.
inline CurveCheck curve_checks(const CurveRep& c, const Presentation& p = y_presentation()) {
  CurveCheck r;
  const auto a = param_assignment(c);
  r.param_in_ideal = true;
  for (const auto& g : c.ideal)
    if (!g.substitute(a).is_zero()) {
      r.param_in_ideal = false;
      r.offending = g.to_string();
    }
  r.contained = true;
  for (const auto& e : p.generators())
    if (!graded_membership(e, c.ideal)) {
      r.contained = false;
      if (r.offending.empty()) r.offending = e.to_string();
    }
  std::array<std::vector<MPoly>, 2> grad;
  for (std::size_t k = 0; k < 2; ++k)
    for (const auto& v : p.coords) grad[k].push_back(p.generators()[k].derivative(v).substitute(a));
  r.singular = true;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) {
      const MPoly minor = grad[0][i] * grad[1][j] - grad[0][j] * grad[1][i];
      if (!minor.is_zero()) {
        r.singular = false;
        if (r.offending.empty()) r.offending = minor.to_string();
      }
    }
  return r;
}

/// Rank of the Jacobian of (quartic, quadric) at a rational point.
inline std::size_t jacobian_rank_at(const std::array<Rational, 6>& pt, const Presentation& p = y_presentation()) {
  std::map<std::string, MPoly> a;
  for (std::size_t i = 0; i < 6; ++i) a[p.coords[i]] = MPoly(pt[i]);
  QMatrix j(2, 6);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 6; ++i) j(k, i) = p.generators()[k].derivative(p.coords[i]).substitute(a).constant_term();
  return j.rank();
}

inline bool on_variety(const std::array<Rational, 6>& pt, const Presentation& p) {
  std::map<std::string, MPoly> a;
  for (std::size_t i = 0; i < 6; ++i) a[p.coords[i]] = MPoly(pt[i]);
  return p.quartic.substitute(a).is_zero() && p.quadric.substitute(a).is_zero();
}

namespace detail {

/// Image of a y-curve under a map given in x-coordinates: points move by
/// B = M A M^-1, ideal generators pull back along B^-1.
inline CurveRep transport_curve(const CurveRep& c, const SignedMonomialMap& g, const QMatrix& m, const QMatrix& minv) {
  const QMatrix b = m * g.matrix() * minv;
  const QMatrix binv = m * g.inverse().matrix() * minv;
  const auto ys = coord_names("y");
  CurveRep out{c.name, {}, {}};
  for (std::size_t i = 0; i < 6; ++i) {
    MPoly s;
    for (std::size_t j = 0; j < 6; ++j)
      if (b(i, j) != 0) s += MPoly(b(i, j)) * c.param[j];
    out.param[i] = s;
  }
  for (const auto& f : c.ideal) out.ideal.push_back(linear_substitute(f, binv, ys, ys));
  return out;
}

inline bool same_curve(const CurveRep& a, const CurveRep& b) {
  const auto pa = param_assignment(a), pb = param_assignment(b);
  for (const auto& f : b.ideal)
    if (!f.substitute(pa).is_zero()) return false;
  for (const auto& f : a.ideal)
    if (!f.substitute(pb).is_zero()) return false;
  return true;
}

}  // namespace detail

/// The union of the orbits of the representatives under the group.
inline std::vector<CurveRep> curve_family(const std::vector<SignedMonomialMap>& group,
                                          const std::vector<CurveRep>& reps) {
  const QMatrix m = xy_change_matrix6(), minv = m.inverse();
  std::vector<CurveRep> out;
  for (const auto& c : reps)
    for (const auto& g : group) {
      CurveRep img = detail::transport_curve(c, g, m, minv);
      if (std::none_of(out.begin(), out.end(), [&](const CurveRep& k) { return detail::same_curve(k, img); }))
        out.push_back(std::move(img));
    }
  return out;
}

/// Orbit decomposition of `curves` (indices into it). Throws if some image is
/// not among the given curves.
inline std::vector<std::vector<std::size_t>> curve_orbits(const std::vector<SignedMonomialMap>& group,
                                                          const std::vector<CurveRep>& curves) {
  const QMatrix m = xy_change_matrix6(), minv = m.inverse();
  std::vector<int> orbit_of(curves.size(), -1);
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (orbit_of[i] >= 0) continue;
    std::set<std::size_t> orb;
    for (const auto& g : group) {
      const CurveRep img = detail::transport_curve(curves[i], g, m, minv);
      std::size_t k = 0;
      while (k < curves.size() && !detail::same_curve(curves[k], img)) ++k;
      if (k == curves.size()) throw std::runtime_error("curve_orbits: image of " + curves[i].name + " is not in the list");
      orb.insert(k);
    }
    for (auto k : orb) orbit_of[k] = static_cast<int>(orbits.size());
    orbits.emplace_back(orb.begin(), orb.end());
  }
  return orbits;
}

/// Jacobian of G = (g1g2/g3 + g3/(g1g2), g1g3/g2 + g2/(g1g3), g2g3/g1 + g1/(g2g3))
/// against factor * (g3^2-g1^2g2^2)(g2^2-g1^2g3^2)(g1^2-g2^2g3^2)/(g1g2g3)^4.
/// The closed form has factor 4.
inline bool jacobian_identity_check(int factor = 4) {
  const RatFn g1 = RatFn::variable("g1"), g2 = RatFn::variable("g2"), g3 = RatFn::variable("g3");
  const RatFn G1 = g1 * g2 / g3 + g3 / (g1 * g2);
  const RatFn G2 = g1 * g3 / g2 + g2 / (g1 * g3);
  const RatFn G3 = g2 * g3 / g1 + g1 / (g2 * g3);
  const RatFn closed = RatFn(factor) * (g3 * g3 - g1 * g1 * g2 * g2) * (g2 * g2 - g1 * g1 * g3 * g3) *
                       (g1 * g1 - g2 * g2 * g3 * g3) / (g1 * g2 * g3).pow(4);
  return rational_jacobian({G1, G2, G3}, {"g1", "g2", "g3"}) == closed;
}

struct HomogeneousJacobianReport {
  /// c with W = c * f4^4 * J, if proportional by a constant.
  std::optional<Rational> factor;
  MPoly w;
  /// f4^6 * J as a polynomial.
  MPoly f4_6_j;
};

/// Symbols: f1..f4 and d<i>f<j> for the partial of f_j in z_i, i = 0..2.
inline std::string partial_symbol(int i, int j) { return "d" + std::to_string(i) + "f" + std::to_string(j); }

namespace detail {

inline MPoly det4(const std::array<std::array<MPoly, 4>, 4>& a) {
  MPoly d;
  for (std::size_t c = 0; c < 4; ++c) {
    std::array<std::array<const MPoly*, 3>, 3> minor{};
    for (std::size_t r = 1; r < 4; ++r) {
      std::size_t k = 0;
      for (std::size_t cc = 0; cc < 4; ++cc)
        if (cc != c) minor[r - 1][k++] = &a[r][cc];
    }
    const MPoly term = a[0][c] * det3(minor);
    d += c % 2 ? -term : term;
  }
  return d;
}

}  // namespace detail

/// Expands W(f1..f4) and f4^6 J(f1/f4, f2/f4, f3/f4) over the 16 symbols and
/// finds the constant c with W = c f4^4 J.
inline HomogeneousJacobianReport homogeneous_jacobian_identity() {
  std::array<std::array<MPoly, 4>, 4> a;
  for (int j = 1; j <= 4; ++j) {
    a[0][static_cast<std::size_t>(j - 1)] = var("f" + std::to_string(j));
    for (int i = 0; i < 3; ++i)
      a[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(j - 1)] = var(partial_symbol(i, j));
  }
  HomogeneousJacobianReport r;
  r.w = detail::det4(a);
  // d_i (f_j/f4) = n_ij / f4^2 with n_ij = d_i f_j f4 - f_j d_i f4.
  std::array<std::array<MPoly, 3>, 3> n;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) n[i][j] = a[i + 1][j] * a[0][3] - a[0][j] * a[i + 1][3];
  std::array<std::array<const MPoly*, 3>, 3> np{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) np[i][j] = &n[i][j];
  r.f4_6_j = detail::det3(np);
  // W = c f4^4 J  <=>  W f4^2 = c f4^6 J
  const MPoly lhs = r.w * a[0][3].pow(2);
  if (!r.f4_6_j.is_zero()) {
    const auto& [mono, coef] = *r.f4_6_j.terms().begin();
    std::map<std::string, int> m;
    for (std::size_t k = 0; k < mono.size(); ++k) m[r.f4_6_j.vars()[k]] = mono[k];
    const Rational c = lhs.coefficient(m) / coef;
    if (lhs == r.f4_6_j.scaled(c)) r.factor = c;
  }
  return r;
}

/// Evaluate W and f4^4 J at integer values of the 16 symbols (f4 != 0).
inline std::pair<Rational, Rational> homogeneous_jacobian_at(const std::map<std::string, Rational>& values) {
  const auto r = homogeneous_jacobian_identity();
  std::map<std::string, MPoly> a;
  for (const auto& [k, v] : values) a[k] = MPoly(v);
  const Rational w = r.w.substitute(a).constant_term();
  const Rational f4 = values.at("f4");
  const Rational j6 = r.f4_6_j.substitute(a).constant_term();
  return {w, j6 / (f4 * f4)};
}

/// An affine chart of a blow-up of C^3 with coordinates z1, z2, z3.
struct BlowupChart {
  std::string name;
  /// z as functions of the chart variables.
  ChartMap to_z;
  /// Chart variables as functions of z.
  std::map<std::string, RatFn> from_z;
  /// Expected pullback of dz1 dz2 dz3.
  ThreeForm expected;
  /// Sign changes of (z1, z2, z3) generating the local group.
  std::vector<std::array<int, 3>> group;
};

inline BlowupChart blowup_case1() {
  const RatFn w1 = RatFn::variable("w1"), z1 = RatFn::variable("z1"), z2 = RatFn::variable("z2"),
              z3 = RatFn::variable("z3");
  BlowupChart c;
  c.name = "blowup_line";
  c.to_z = {{"w1", "z2", "z3"}, {{"z1", w1 * z2}, {"z2", z2}, {"z3", z3}}};
  c.from_z = {{"w1", z1 / z2}, {"z2", z2}, {"z3", z3}};
  c.expected = ThreeForm({"w1", "z2", "z3"}, z2, {"w1", "z2", "z3"});
  c.group = {{-1, -1, 1}};
  return c;
}

inline BlowupChart blowup_case3() {
  const RatFn u1 = RatFn::variable("u1"), z1 = RatFn::variable("z1"), z2 = RatFn::variable("z2"),
              z3 = RatFn::variable("z3");
  BlowupChart c;
  c.name = "blowup_twice";
  c.to_z = {{"u1", "z2", "z3"}, {{"z1", u1 * z2 * z3}, {"z2", z2}, {"z3", z3}}};
  c.from_z = {{"u1", z1 / (z2 * z3)}, {"z2", z2}, {"z3", z3}};
  c.expected = ThreeForm({"u1", "z2", "z3"}, z2 * z3, {"u1", "z2", "z3"});
  c.group = {{-1, -1, 1}, {-1, 1, -1}, {1, -1, -1}};
  return c;
}

struct BlowupReport {
  bool form_matches = false;
  std::string pulled;
  /// Induced action on the chart variables: each generator as signs, nullopt
  /// if some chart variable is not sent to +- itself.
  std::vector<std::optional<std::array<int, 3>>> induced;
  /// The closure of the induced signs.
  std::set<std::array<int, 3>> induced_group;
};

inline BlowupReport blowup_chart_check(const BlowupChart& c) {
  BlowupReport r;
  const ThreeForm dz({"z1", "z2", "z3"}, RatFn(1), {"z1", "z2", "z3"});
  const ThreeForm pulled = dz.pullback(c.to_z).form;
  r.form_matches = pulled == c.expected;
  r.pulled = pulled.to_string();
  const auto& cv = c.to_z.target_vars;
  for (const auto& h : c.group) {
    std::map<std::string, RatFn> hz;
    const std::array<std::string, 3> zs{"z1", "z2", "z3"};
    for (std::size_t k = 0; k < 3; ++k) hz[zs[k]] = RatFn(h[k]) * c.to_z.images.at(zs[k]);
    std::array<int, 3> s{};
    bool ok = true;
    for (std::size_t k = 0; k < 3; ++k) {
      const RatFn img = c.from_z.at(cv[k]).substitute(hz);
      const RatFn v = RatFn::variable(cv[k]);
      if (img == v)
        s[k] = 1;
      else if (img == -v)
        s[k] = -1;
      else
        ok = false;
    }
    r.induced.push_back(ok ? std::optional(s) : std::nullopt);
  }
  std::set<std::array<int, 3>> g{{1, 1, 1}};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& a : std::set(g))
      for (const auto& s : r.induced)
        if (s && g.insert({a[0] * (*s)[0], a[1] * (*s)[1], a[2] * (*s)[2]}).second) grew = true;
  }
  r.induced_group = g;
  return r;
}

/// The displayed chain-rule identity z2 dz1 dz2 dz3 = dw1 dz2 dz3 in the line chart.
inline bool printed_chart_identity_holds() {
  const BlowupChart c = blowup_case1();
  const ThreeForm lhs({"z1", "z2", "z3"}, RatFn::variable("z2"), {"z1", "z2", "z3"});
  return lhs.pullback(c.to_z).form == ThreeForm({"w1", "z2", "z3"}, RatFn(1), {"w1", "z2", "z3"});
}

}  // namespace siegelcy
