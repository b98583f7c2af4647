#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chargeom.hpp"
#include "exact/mpoly.hpp"
#include "qseries.hpp"
#include "variety.hpp"

namespace siegelcy {

/// Symbol for a theta constant, e.g. "th0011" for a = (0,0), b = (1,1).
inline std::string theta_symbol(const Char& m) { return "th" + m.digits(); }
inline MPoly theta_var(const Char& m) { return var(theta_symbol(m)); }

/// Symbol for the second-kind constant f_a, numbered 1..4 in the order 00, 10, 01, 11.
inline std::string f_symbol(int a1, int a2) { return "f" + std::to_string(1 + a1 + 2 * a2); }

/// Twice the weight of every named symbol, so theta constants count 1.
inline const std::map<std::string, int>& symbol_weights() {
  static const std::map<std::string, int> w = [] {
    std::map<std::string, int> m;
    for (const auto& c : all_chars()) m[theta_symbol(c)] = 1;
    for (int i = 1; i <= 4; ++i) m["f" + std::to_string(i)] = 1;
    for (int i = 0; i <= 5; ++i) m["y" + std::to_string(i)] = 4;
    for (int i = 1; i <= 6; ++i) m["F" + std::to_string(i)] = 4;
    m["Theta"] = 4;
    m["T"] = 6;
    m["chi5"] = 10;
    return m;
  }();
  return w;
}

/// The product of the theta series over a complementary sextuple.
/// Throws unless s is the complement of a syzygetic quadruple.
inline QSeries sextuple_form(const Sextuple& s, std::int64_t n) {
  defining_quadruple(s);
  QSeries p = QSeries::one();
  for (const auto& m : s) p = p * theta_qexp(m, n);
  return p.truncated(n);
}

/// Every named series at one truncation: the 16 theta constants, f1..f4,
/// y0..y5, F1..F6, Theta, T (standard sextuple) and chi5.
class FormRegistry {
public:
  explicit FormRegistry(std::int64_t n, const std::optional<std::filesystem::path>& cache = std::nullopt) : n_(n) {
    if (n < 4) throw std::invalid_argument("FormRegistry: truncation must be at least 4");
    auto th = [&](int a1, int a2, int b1, int b2) -> const QSeries& {
      return forms_.at(theta_symbol(Char(a1, a2, b1, b2)));
    };
    for (const auto& m : all_chars())
      forms_[theta_symbol(m)] = cache ? theta_qexp_cached(m, n, *cache) : theta_qexp(m, n);

    std::array<QSeries, 4> f;
    for (int a = 0; a < 4; ++a) {
      f[a] = second_kind_qexp(a & 1, a >> 1, n);
      forms_[f_symbol(a & 1, a >> 1)] = f[a];
    }

    const QSeries y0 = th(0, 0, 1, 1).pow(4);
    forms_["y0"] = y0;
    forms_["y1"] = th(0, 0, 0, 1).pow(4);
    forms_["y2"] = th(0, 0, 0, 0).pow(4);
    forms_["y3"] = -th(1, 0, 0, 0).pow(4) - y0;
    forms_["y4"] = -th(1, 0, 0, 1).pow(4) - y0;
    const QSeries theta = th(0, 0, 0, 1) * th(0, 0, 0, 0) * th(0, 0, 1, 0) * th(0, 0, 1, 1);
    forms_["Theta"] = theta;
    forms_["y5"] = theta;

    const std::array<QSeries, 4> sq{f[0] * f[0], f[1] * f[1], f[2] * f[2], f[3] * f[3]};
    forms_["F1"] = sq[0] * sq[0] + sq[1] * sq[1] + sq[2] * sq[2] + sq[3] * sq[3];
    forms_["F2"] = sq[0] * sq[1] + sq[2] * sq[3];
    forms_["F3"] = sq[0] * sq[2] + sq[1] * sq[3];
    forms_["F4"] = sq[0] * sq[3] + sq[1] * sq[2];
    forms_["F5"] = f[0] * f[1] * f[2] * f[3];
    forms_["F6"] = theta;

    const QSeries t = sextuple_form(standard_sextuple(), n);
    forms_["T"] = t;
    forms_["chi5"] = t * theta;
  }

  std::int64_t truncation() const noexcept { return n_; }
  const std::map<std::string, QSeries>& forms() const noexcept { return forms_; }

  const QSeries& get(const std::string& name) const {
    auto it = forms_.find(name);
    if (it == forms_.end()) throw std::invalid_argument("unknown form: " + name);
    return it->second;
  }

  /// Evaluate a polynomial in the registry symbols.
  QSeries evaluate(const MPoly& p) const {
    return p.evaluate<QSeries>(forms_, [](const Rational& c) { return QSeries::constant(CycInt8(to_int64(c))); });
  }

private:
  std::int64_t n_;
  std::map<std::string, QSeries> forms_;
};

inline FormRegistry build_generators(std::int64_t n,
                                     const std::optional<std::filesystem::path>& cache = std::nullopt) {
  return FormRegistry(n, cache);
}

/// A polynomial identity between named forms, lhs = rhs.
struct Relation {
  std::string id;
  std::string label;
  MPoly lhs;
  MPoly rhs;
};

namespace detail {

inline MPoly y(int i) { return var("y" + std::to_string(i)); }
inline MPoly F(int i) { return var("F" + std::to_string(i)); }
inline MPoly th(int a1, int a2, int b1, int b2) { return theta_var(Char(a1, a2, b1, b2)); }
inline MPoly c(int k) { return MPoly(k); }

inline MPoly igusa_quadratic_form() { return y(0) * y(1) + y(0) * y(2) + y(1) * y(2) - y(3) * y(4); }
inline MPoly igusa_linear_sum() { return y(0) + y(1) + y(2) + y(3) + y(4); }

inline MPoly runge_rhs(int c4) {
  auto sq = [](const MPoly& p) { return p * p; };
  return -sq(F(1)) * sq(F(5)) + F(1) * F(2) * F(3) * F(4) - sq(F(2)) * sq(F(3)) - sq(F(2)) * sq(F(4)) +
         c(c4) * sq(F(2)) * sq(F(5)) - sq(F(3)) * sq(F(4)) + c(4) * sq(F(3)) * sq(F(5)) +
         c(4) * sq(F(4)) * sq(F(5));
}

inline MPoly f6_rhs(int c32) {
  return F(1) * F(1) - c(4) * F(2) * F(2) - c(4) * F(3) * F(3) - c(4) * F(4) * F(4) + c(c32) * F(5) * F(5);
}

/// Right side of the classical relation; flip negates the x = (1,1) term.
inline MPoly classical_rhs(const Char& m, bool flip) {
  MPoly r;
  for (int x1 = 0; x1 <= 1; ++x1)
    for (int x2 = 0; x2 <= 1; ++x2) {
      int sign = (m.b1 * x1 + m.b2 * x2) % 2 ? -1 : 1;
      if (flip && x1 == 1 && x2 == 1) sign = -sign;
      r += c(sign) * var(f_symbol(m.a1 ^ x1, m.a2 ^ x2)) * var(f_symbol(x1, x2));
    }
  return r;
}

inline MPoly ten_theta_product() {
  MPoly p(1);
  for (const auto& m : enumerate_even()) p *= theta_var(m);
  return p;
}

}  // namespace detail

/// All ring relations checked on q-expansions.
inline std::vector<Relation> ring_relations() {
  using namespace detail;
  std::vector<Relation> r;
  r.push_back({"igusa_quartic", "Igusa quartic relation", igusa_quadratic_form().pow(2),
               c(4) * y(0) * y(1) * y(2) * igusa_linear_sum()});
  r.push_back({"igusa_product", "Igusa theta product relation",
               c(2) * (th(0, 0, 0, 1) * th(0, 0, 0, 0) * th(0, 0, 1, 0) * th(0, 0, 1, 1)).pow(2),
               igusa_quadratic_form()});
  r.push_back({"gamma_quartic", "quartic relation for the level group", y(5).pow(4),
               y(0) * y(1) * y(2) * igusa_linear_sum()});
  r.push_back({"gamma_quadric", "quadric relation for the level group", c(2) * y(5).pow(2), igusa_quadratic_form()});
  for (const auto& m : all_chars())
    r.push_back({"classical_" + m.digits(), "classical relation, theta squares via second-kind constants",
                 theta_var(m).pow(2), classical_rhs(m, false)});
  r.push_back({"runge_quartic", "Runge quartic relation", c(16) * F(5).pow(4), runge_rhs(4)});
  r.push_back({"f6_quadric", "quadric relation for F6", F(6).pow(2), f6_rhs(32)});
  r.push_back({"chi5_product", "chi5 as T times Theta and as the ten-theta product", var("T") * var("Theta"),
               ten_theta_product()});
  r.push_back({"chi5_registry", "chi5 as T times Theta and as the ten-theta product", var("chi5"),
               ten_theta_product()});
  return r;
}

/// Copies of relations with one coefficient or sign perturbed. None of them holds.
inline std::vector<Relation> planted_mutations() {
  using namespace detail;
  std::vector<Relation> r;
  r.push_back({"mutant_igusa_quartic_4to5", "Igusa quartic relation", igusa_quadratic_form().pow(2),
               c(5) * y(0) * y(1) * y(2) * igusa_linear_sum()});
  r.push_back({"mutant_igusa_product_2to3", "Igusa theta product relation",
               c(3) * (th(0, 0, 0, 1) * th(0, 0, 0, 0) * th(0, 0, 1, 0) * th(0, 0, 1, 1)).pow(2),
               igusa_quadratic_form()});
  r.push_back({"mutant_gamma_quartic_1to2", "quartic relation for the level group", y(5).pow(4),
               c(2) * y(0) * y(1) * y(2) * igusa_linear_sum()});
  r.push_back({"mutant_gamma_quadric_sign", "quadric relation for the level group", c(2) * y(5).pow(2),
               y(0) * y(1) + y(0) * y(2) + y(1) * y(2) + y(3) * y(4)});
  r.push_back({"mutant_classical_1001_sign", "classical relation, theta squares via second-kind constants",
               theta_var(Char(1, 0, 0, 1)).pow(2), classical_rhs(Char(1, 0, 0, 1), true)});
  r.push_back({"mutant_runge_quartic_16to15", "Runge quartic relation", c(15) * F(5).pow(4), runge_rhs(4)});
  r.push_back({"mutant_f6_quadric_32to31", "quadric relation for F6", F(6).pow(2), f6_rhs(31)});
  return r;
}

/// Truncation at which every planted perturbation is visible: the lowest
/// term of F5^4 has weight 32.
inline constexpr std::int64_t kMutationTruncation = 32;

inline Relation find_relation(const std::string& id) {
  for (const auto& list : {ring_relations(), planted_mutations()})
    for (const auto& r : list)
      if (r.id == id) return r;
  throw std::invalid_argument("unknown relation: " + id);
}

/// Both sides carry the same declared weight and are weight-homogeneous.
/// A zero side is compatible with any weight.
inline bool weight_consistent(const Relation& r) {
  if (r.lhs.is_zero() || r.rhs.is_zero()) {
    const MPoly& other = r.lhs.is_zero() ? r.rhs : r.lhs;
    return other.is_zero() || other.weighted_degree(symbol_weights()).has_value();
  }
  const auto wl = r.lhs.weighted_degree(symbol_weights());
  const auto wr = r.rhs.weighted_degree(symbol_weights());
  return wl && wr && *wl == *wr;
}

/// lhs - rhs on the registry's expansions.
inline QSeries relation_residual(const Relation& r, const FormRegistry& reg) {
  return reg.evaluate(r.lhs - r.rhs);
}

inline QSeries verify_identity(const std::string& id, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("verify_identity: truncation must be at least 2");
  const Relation r = find_relation(id);
  return relation_residual(r, FormRegistry(std::max<std::int64_t>(n, 4))).truncated(n);
}

/// Vanishing orders of the Calabi-Yau form along q0 = 0, q1 = 0, q2 = 0.
struct BoundaryOrders {
  std::array<int, 3> k{};
  auto operator<=>(const BoundaryOrders&) const = default;
  std::string to_string() const {
    return "(" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]) + ")";
  }
};

/// Sum of the level-8 theta orders over the sextuple, per axis.
inline std::array<int, 3> sextuple_order_sums(const Sextuple& s) {
  std::array<int, 3> sum{};
  for (const auto& m : s) {
    sum[0] += m.a1;
    sum[1] += m.a1 + m.a2 - 2 * m.a1 * m.a2;
    sum[2] += m.a2;
  }
  return sum;
}

/// k = (order sum)/2 - 1 per axis, cross-checked against the orders
/// measured on the product series. Throws std::logic_error on a mismatch.
inline BoundaryOrders boundary_orders(const Sextuple& s, std::int64_t n = 12) {
  const auto sums = sextuple_order_sums(s);
  const QSeries t = sextuple_form(s, n);
  BoundaryOrders b;
  for (int axis = 0; axis < 3; ++axis) {
    const auto measured = vanishing_order(t, axis);
    if (measured != sums[axis] || sums[axis] % 2 != 0)
      throw std::logic_error("boundary_orders: formula and series disagree on axis " + std::to_string(axis));
    b.k[axis] = sums[axis] / 2 - 1;
  }
  return b;
}

/// Boundary orders of all 15 sextuples, in the order of complementary_sextuples().
inline std::vector<std::pair<Sextuple, BoundaryOrders>> boundary_distribution(std::int64_t n = 12) {
  std::vector<std::pair<Sextuple, BoundaryOrders>> out;
  for (const auto& s : complementary_sextuples()) out.emplace_back(s, boundary_orders(s, n));
  return out;
}

inline std::map<BoundaryOrders, int> boundary_counts(const std::vector<std::pair<Sextuple, BoundaryOrders>>& d) {
  std::map<BoundaryOrders, int> c;
  for (const auto& [s, b] : d) ++c[b];
  return c;
}

/// On the level-4 grid the sextuple product involves only even powers of
/// q_axis, i.e. every level-8 exponent on that axis is divisible by 4.
/// Requires k_axis = 1.
inline bool q_parity_check(const Sextuple& s, int axis, std::int64_t n = 12) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("q_parity_check: axis must be 0, 1 or 2");
  if (boundary_orders(s, n).k[axis] != 1) throw std::invalid_argument("q_parity_check: needs k = 1 on this axis");
  const QSeries t = sextuple_form(s, n);
  return std::all_of(t.terms().begin(), t.terms().end(), [&](const QSeries::Term& x) { return x.e[axis] % 4 == 0; });
}

/// F_i -> sign[i] * F_{image[i]} on F1..F5, zero-based images.
struct SignedPermutation {
  std::array<int, 5> image{0, 1, 2, 3, 4};
  std::array<int, 5> sign{1, 1, 1, 1, 1};
  bool operator==(const SignedPermutation&) const = default;
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < 5; ++i) {
      if (i) s += ",";
      s += (sign[i] < 0 ? "-F" : "F") + std::to_string(image[i] + 1);
    }
    return s + ")";
  }
};

/// A generator substitution Z -> Z + S or Z -> tU Z U with the action on F1..F5 as printed.
struct GeneratorAction {
  std::string name;
  bool translation;
  Mat2 m;
  SignedPermutation printed;
};

inline std::vector<GeneratorAction> runge_generator_actions() {
  auto sp = [](std::array<int, 5> image, std::array<int, 5> sign) { return SignedPermutation{image, sign}; };
  return {
      {"translation_S00", true, {{{1, 0}, {0, 0}}}, sp({0, 1, 2, 3, 4}, {1, -1, 1, -1, 1})},
      {"translation_S01", true, {{{0, 1}, {1, 0}}}, sp({0, 1, 2, 3, 4}, {1, 1, 1, 1, -1})},
      {"translation_S11", true, {{{0, 0}, {0, 1}}}, sp({0, 1, 2, 3, 4}, {1, 1, -1, -1, 1})},
      {"unimodular_swap", false, {{{0, 1}, {1, 0}}}, sp({0, 2, 1, 3, 4}, {1, 1, 1, 1, 1})},
      {"unimodular_shear", false, {{{1, 1}, {0, 1}}}, sp({0, 1, 3, 2, 4}, {1, 1, 1, 1, 1})},
  };
}

/// Smallest input truncation whose image under Z -> tU Z U is known through n.
inline std::int64_t unimodular_input_truncation(const Mat2& u, std::int64_t n) {
  std::int64_t in = n;
  while (unimodular_truncation(u, in) < n) ++in;
  return in;
}

/// F1..F5 at truncation n, built directly from the second-kind constants.
inline std::array<QSeries, 5> runge_forms(std::int64_t n) {
  std::array<QSeries, 4> f;
  for (int a = 0; a < 4; ++a) f[a] = second_kind_qexp(a & 1, a >> 1, n);
  const std::array<QSeries, 4> sq{f[0] * f[0], f[1] * f[1], f[2] * f[2], f[3] * f[3]};
  return {sq[0] * sq[0] + sq[1] * sq[1] + sq[2] * sq[2] + sq[3] * sq[3], sq[0] * sq[1] + sq[2] * sq[3],
          sq[0] * sq[2] + sq[1] * sq[3], sq[0] * sq[3] + sq[1] * sq[2], f[0] * f[1] * f[2] * f[3]};
}

/// The signed permutation the substitution actually induces on F1..F5,
/// compared through truncation n; nullopt if some image is not +-F_j.
inline std::optional<SignedPermutation> measure_action(const GeneratorAction& g, std::int64_t n) {
  const std::int64_t in = g.translation ? n : unimodular_input_truncation(g.m, n);
  const auto big = runge_forms(in);
  std::array<QSeries, 5> ref;
  for (std::size_t j = 0; j < 5; ++j) ref[j] = big[j].truncated(n);
  SignedPermutation out;
  for (std::size_t i = 0; i < 5; ++i) {
    const QSeries img = (g.translation ? translate_action(big[i], g.m) : unimodular_action(big[i], g.m)).truncated(n);
    bool found = false;
    for (std::size_t j = 0; j < 5 && !found; ++j)
      for (int s : {1, -1})
        if (img == ref[j].scaled(CycInt8(s))) {
          out.image[i] = static_cast<int>(j);
          out.sign[i] = s;
          found = true;
          break;
        }
    if (!found) return std::nullopt;
  }
  return out;
}

/// The printed matrix with its x1 and x2 columns exchanged. On expansions
/// (y0..y4) = M' (F1..F5); the printed matrix is still a coordinate change of
/// the variety because its equations are symmetric in x1, x2.
inline std::vector<std::vector<std::int64_t>> series_change_matrix() {
  auto m = xy_change_matrix();
  for (auto& row : m) std::swap(row[1], row[2]);
  return m;
}

/// (y_i - sum_j M_ij F_{j+1}) for i = 0..4 on the registry's expansions.
inline std::array<QSeries, 5> change_matrix_residuals(const FormRegistry& reg,
                                                      const std::vector<std::vector<std::int64_t>>& m) {
  std::array<QSeries, 5> out;
  for (std::size_t i = 0; i < 5; ++i) {
    QSeries s = reg.get("y" + std::to_string(i));
    for (std::size_t j = 0; j < 5; ++j) s = s - reg.get("F" + std::to_string(j + 1)).scaled(CycInt8(m[i][j]));
    out[i] = s;
  }
  return out;
}

}  // namespace siegelcy
