#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratfn.hpp"

namespace siegelcy {

namespace detail {

/// Partial derivatives of f = N/D with respect to vars, as polynomial numerators
/// over the shared denominator D^2 (or D when D is 1).
struct Gradient {
  std::vector<MPoly> numerators;
  MPoly denominator;
};

inline Gradient gradient(const RatFn& f, const std::vector<std::string>& vars) {
  Gradient g;
  const MPoly& n = f.num();
  const MPoly& d = f.den();
  const bool poly = d == MPoly(1);
  for (const auto& v : vars) {
    if (poly)
      g.numerators.push_back(n.derivative(v));
    else
      g.numerators.push_back(n.derivative(v) * d - n * d.derivative(v));
  }
  g.denominator = poly ? MPoly(1) : d * d;
  return g;
}

inline MPoly det3(const std::array<std::array<const MPoly*, 3>, 3>& m) {
  const auto& a = m;
  return *a[0][0] * (*a[1][1] * *a[2][2] - *a[1][2] * *a[2][1]) -
         *a[0][1] * (*a[1][0] * *a[2][2] - *a[1][2] * *a[2][0]) +
         *a[0][2] * (*a[1][0] * *a[2][1] - *a[1][1] * *a[2][0]);
}

}  // namespace detail

/// det(d maps[i] / d vars[j]) for a map between three-dimensional charts.
/// Variables other than `vars` occurring in the maps are treated as constants.
inline RatFn rational_jacobian(const std::array<RatFn, 3>& maps, const std::array<std::string, 3>& vars) {
  const std::vector<std::string> v(vars.begin(), vars.end());
  std::array<detail::Gradient, 3> rows{detail::gradient(maps[0], v), detail::gradient(maps[1], v),
                                       detail::gradient(maps[2], v)};
  std::array<std::array<const MPoly*, 3>, 3> m{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = &rows[i].numerators[j];
  MPoly den = rows[0].denominator * rows[1].denominator * rows[2].denominator;
  return RatFn(detail::det3(m), std::move(den));
}

/// A chart substitution: each source chart variable is sent to a rational
/// function of the target chart variables.
struct ChartMap {
  std::vector<std::string> target_vars;
  std::map<std::string, RatFn> images;

  /// this ∘ inner: first apply `inner` (whose source is this map's target).
  ChartMap after(const ChartMap& inner) const {
    ChartMap c;
    c.target_vars = inner.target_vars;
    for (const auto& [v, f] : images) c.images.emplace(v, f.substitute(inner.images));
    return c;
  }
};

/// Rational differential 3-form sum c_{abc} dv_a ∧ dv_b ∧ dv_c over a chart,
/// stored with strictly increasing index triples.
class ThreeForm {
public:
  using Wedge = std::array<std::size_t, 3>;

  ThreeForm() = default;
  explicit ThreeForm(std::vector<std::string> chart_vars) : vars_(std::move(chart_vars)) {}

  /// coefficient * d(w0) ∧ d(w1) ∧ d(w2), normalised to sorted order.
  ThreeForm(std::vector<std::string> chart_vars, RatFn coefficient, const std::array<std::string, 3>& wedge)
      : vars_(std::move(chart_vars)) {
    Wedge idx{};
    for (std::size_t k = 0; k < 3; ++k) idx[k] = index_of(wedge[k]);
    add_term(idx, std::move(coefficient));
  }

  const std::vector<std::string>& chart_vars() const noexcept { return vars_; }
  const std::map<Wedge, RatFn>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Coefficient of dv_a ∧ dv_b ∧ dv_c in the given order (sign applied).
  RatFn coefficient(const std::array<std::string, 3>& wedge) const {
    Wedge idx{};
    for (std::size_t k = 0; k < 3; ++k) idx[k] = index_of(wedge[k]);
    const int s = sort_with_sign(idx);
    if (s == 0) return {};
    auto it = terms_.find(idx);
    if (it == terms_.end()) return {};
    return s > 0 ? it->second : -it->second;
  }

  void add_term(Wedge idx, RatFn c) {
    const int s = sort_with_sign(idx);
    if (s == 0 || c.is_zero()) return;
    if (s < 0) c = -c;
    auto [it, inserted] = terms_.try_emplace(idx, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  ThreeForm scaled(const RatFn& f) const {
    ThreeForm r(vars_);
    for (const auto& [w, c] : terms_) r.add_term(w, c * f);
    return r;
  }
  friend ThreeForm operator-(const ThreeForm& a) { return a.scaled(RatFn(-1)); }

  struct Pullback;
  inline Pullback pullback(const ChartMap& map) const;

  /// Comparison goes through variable names, so charts listed in different
  /// orders compare equal when they describe the same form.
  friend bool operator==(const ThreeForm& a, const ThreeForm& b) {
    const auto ca = a.by_names(), cb = b.by_names();
    if (ca.size() != cb.size()) return false;
    for (const auto& [n, c] : ca) {
      auto it = cb.find(n);
      if (it == cb.end() || !(it->second == c)) return false;
    }
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ") d" + vars_[w[0]] + "^d" + vars_[w[1]] + "^d" + vars_[w[2]];
    }
    return s;
  }

private:
  std::map<std::array<std::string, 3>, RatFn> by_names() const {
    std::map<std::array<std::string, 3>, RatFn> out;
    for (const auto& [w, c] : terms_) {
      std::array<std::string, 3> n{vars_[w[0]], vars_[w[1]], vars_[w[2]]};
      int sign = 1;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2 - i; ++j)
          if (n[j] > n[j + 1]) {
            std::swap(n[j], n[j + 1]);
            sign = -sign;
          }
      out.emplace(n, sign > 0 ? c : -c);
    }
    return out;
  }

  std::size_t index_of(const std::string& v) const {
    auto it = std::find(vars_.begin(), vars_.end(), v);
    if (it == vars_.end()) throw std::invalid_argument("not a chart variable: " + v);
    return static_cast<std::size_t>(it - vars_.begin());
  }

  /// Sorts in place; returns the permutation sign, or 0 on a repeated index.
  static int sort_with_sign(Wedge& w) {
    int sign = 1;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2 - i; ++j)
        if (w[j] > w[j + 1]) {
          std::swap(w[j], w[j + 1]);
          sign = -sign;
        }
    if (w[0] == w[1] || w[1] == w[2]) return 0;
    return sign;
  }

  std::vector<std::string> vars_;
  std::map<Wedge, RatFn> terms_;
};

struct ThreeForm::Pullback {
  ThreeForm form;
  /// Some term of the original form pulled back to zero (vanishing Jacobian minors).
  bool degenerate = false;
};

inline ThreeForm::Pullback ThreeForm::pullback(const ChartMap& map) const {
  Pullback out{ThreeForm(map.target_vars), false};
  const auto& tv = map.target_vars;
  std::map<std::size_t, detail::Gradient> grads;
  auto grad_of = [&](std::size_t src) -> const detail::Gradient& {
    auto it = grads.find(src);
    if (it != grads.end()) return it->second;
    auto img = map.images.find(vars_[src]);
    if (img == map.images.end()) throw std::invalid_argument("chart map lacks image of " + vars_[src]);
    return grads.emplace(src, detail::gradient(img->second, tv)).first->second;
  };
  for (const auto& [w, c] : terms_) {
    const RatFn coef = c.substitute(map.images);
    const auto& g0 = grad_of(w[0]);
    const auto& g1 = grad_of(w[1]);
    const auto& g2 = grad_of(w[2]);
    const MPoly den = g0.denominator * g1.denominator * g2.denominator;
    bool any = false;
    for (std::size_t p = 0; p < tv.size(); ++p)
      for (std::size_t q = p + 1; q < tv.size(); ++q)
        for (std::size_t r = q + 1; r < tv.size(); ++r) {
          std::array<std::array<const MPoly*, 3>, 3> m{{{&g0.numerators[p], &g0.numerators[q], &g0.numerators[r]},
                                                        {&g1.numerators[p], &g1.numerators[q], &g1.numerators[r]},
                                                        {&g2.numerators[p], &g2.numerators[q], &g2.numerators[r]}}};
          MPoly minor = detail::det3(m);
          if (minor.is_zero()) continue;
          any = true;
          out.form.add_term({p, q, r}, coef * RatFn(std::move(minor), den));
        }
    if (!any) out.degenerate = true;
  }
  return out;
}

}  // namespace siegelcy
