#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace siegelcy {

/// Exponent vector aligned with a polynomial's sorted variable list.
using Monomial = std::vector<int>;

/// Sparse multivariate polynomial with named variables.
///
/// The variable list is kept sorted; binary operations on polynomials with
/// different variable lists first embed both into the union. No zero
/// coefficient is ever stored.
template <class C>
class basic_mpoly {
public:
  using coefficient_type = C;
  using term_map = std::map<Monomial, C>;

  basic_mpoly() = default;
  basic_mpoly(int c) : basic_mpoly(C(c)) {}
  basic_mpoly(const C& c) {
    if (c != 0) terms_.emplace(Monomial{}, c);
  }

  static basic_mpoly variable(const std::string& name) {
    basic_mpoly p;
    p.vars_ = {name};
    p.terms_.emplace(Monomial{1}, C(1));
    return p;
  }

  /// Build from explicit terms over the given variables (any order, no duplicates).
  static basic_mpoly from_terms(std::vector<std::string> vars,
                                const std::vector<std::pair<Monomial, C>>& terms) {
    std::vector<std::size_t> order(vars.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vars[a] < vars[b]; });
    basic_mpoly p;
    for (auto i : order) p.vars_.push_back(vars[i]);
    if (std::adjacent_find(p.vars_.begin(), p.vars_.end()) != p.vars_.end())
      throw std::invalid_argument("duplicate variable name");
    for (const auto& [m, c] : terms) {
      if (m.size() != vars.size()) throw std::invalid_argument("monomial length mismatch");
      Monomial sorted(m.size());
      for (std::size_t k = 0; k < order.size(); ++k) sorted[k] = m[order[k]];
      p.add_term(sorted, c);
    }
    return p;
  }

  const std::vector<std::string>& vars() const noexcept { return vars_; }
  const term_map& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
  }
  C constant_term() const {
    for (const auto& [m, c] : terms_)
      if (total(m) == 0) return c;
    return C(0);
  }

  /// Index of a variable in vars(), or -1.
  int var_index(const std::string& name) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
    if (it == vars_.end() || *it != name) return -1;
    return static_cast<int>(it - vars_.begin());
  }

  /// Variables that occur with a positive exponent in some term.
  std::vector<std::string> support_vars() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (const auto& [m, c] : terms_)
        if (m[i] > 0) {
          out.push_back(vars_[i]);
          break;
        }
    return out;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, total(m));
    return d;
  }
  int degree_in(const std::string& name) const {
    const int i = var_index(name);
    if (i < 0) return terms_.empty() ? -1 : 0;
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const int d = total(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const auto& t) { return total(t.first) == d; });
  }

  /// Weighted homogeneity; variables missing from `weights` count as weight 0.
  /// Returns the common weight, or nullopt.
  std::optional<int> weighted_degree(const std::map<std::string, int>& weights) const {
    std::optional<int> w;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = weights.find(vars_[i]);
        if (it != weights.end()) s += it->second * m[i];
      }
      if (w && *w != s) return std::nullopt;
      w = s;
    }
    return w.value_or(0);
  }

  /// Coefficient of the monomial given as {variable: exponent}.
  C coefficient(const std::map<std::string, int>& mono) const {
    Monomial m(vars_.size(), 0);
    for (const auto& [v, e] : mono) {
      const int i = var_index(v);
      if (i < 0) {
        if (e == 0) continue;
        return C(0);
      }
      m[i] = e;
    }
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  /// Same polynomial re-expressed over a superset of its variables.
  basic_mpoly embedded(const std::vector<std::string>& superset) const {
    if (superset == vars_) return *this;
    std::vector<int> pos(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::lower_bound(superset.begin(), superset.end(), vars_[i]);
      if (it == superset.end() || *it != vars_[i])
        throw std::invalid_argument("variable " + vars_[i] + " missing from superset");
      pos[i] = static_cast<int>(it - superset.begin());
    }
    basic_mpoly p;
    p.vars_ = superset;
    for (const auto& [m, c] : terms_) {
      Monomial e(superset.size(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) e[pos[i]] = m[i];
      p.terms_.emplace(std::move(e), c);
    }
    return p;
  }

  /// Drop variables that do not occur.
  basic_mpoly pruned() const { return embedded_subset(support_vars()); }

  basic_mpoly& operator+=(const basic_mpoly& o) { return accumulate(o, C(1)); }
  basic_mpoly& operator-=(const basic_mpoly& o) { return accumulate(o, C(-1)); }
  basic_mpoly& operator*=(const basic_mpoly& o) { return *this = *this * o; }

  friend basic_mpoly operator+(basic_mpoly a, const basic_mpoly& b) { return a += b; }
  friend basic_mpoly operator-(basic_mpoly a, const basic_mpoly& b) { return a -= b; }
  friend basic_mpoly operator-(basic_mpoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }

  friend basic_mpoly operator*(const basic_mpoly& a, const basic_mpoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    auto u = union_vars(a.vars_, b.vars_);
    const basic_mpoly x = a.embedded(u), y = b.embedded(u);
    basic_mpoly r;
    r.vars_ = std::move(u);
    Monomial e(r.vars_.size());
    for (const auto& [mx, cx] : x.terms_)
      for (const auto& [my, cy] : y.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = mx[i] + my[i];
        r.add_term(e, cx * cy);
      }
    return r;
  }

  basic_mpoly scaled(const C& s) const {
    if (s == 0) return {};
    basic_mpoly r = *this;
    for (auto& [m, c] : r.terms_) c *= s;
    return r;
  }

  basic_mpoly pow(unsigned n) const {
    basic_mpoly result(1), base = *this;
    while (n) {
      if (n & 1U) result *= base;
      n >>= 1U;
      if (n) base *= base;
    }
    return result;
  }

  basic_mpoly derivative(const std::string& name) const {
    const int i = var_index(name);
    basic_mpoly r;
    r.vars_ = vars_;
    if (i < 0) return r;
    for (const auto& [m, c] : terms_) {
      if (m[i] == 0) continue;
      Monomial e = m;
      --e[i];
      r.add_term(e, c * C(m[i]));
    }
    return r;
  }

  /// Substitute every variable by a polynomial. Throws naming the first
  /// variable that occurs in the polynomial but has no assignment.
  basic_mpoly substitute(const std::map<std::string, basic_mpoly>& assignment) const {
    return evaluate<basic_mpoly>(assignment, [](const C& c) { return basic_mpoly(c); });
  }

  /// Evaluate into any commutative ring R given values for the variables and a
  /// map from coefficients into R.
  template <class R, class Lift>
  R evaluate(const std::map<std::string, R>& values, Lift lift) const {
    std::vector<const R*> val(vars_.size(), nullptr);
    std::vector<std::vector<R>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      int maxe = 0;
      for (const auto& [m, c] : terms_) maxe = std::max(maxe, m[i]);
      if (maxe == 0) continue;
      auto it = values.find(vars_[i]);
      if (it == values.end()) throw std::invalid_argument("unassigned variable: " + vars_[i]);
      powers[i].push_back(it->second);
      for (int k = 1; k < maxe; ++k) powers[i].push_back(powers[i].back() * it->second);
    }
    R acc = lift(C(0));
    for (const auto& [m, c] : terms_) {
      R t = lift(c);
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) t = t * powers[i][m[i] - 1];
      acc = acc + t;
    }
    return acc;
  }

  /// Largest monomial dividing every term, as exponents over vars().
  Monomial monomial_content() const {
    if (terms_.empty()) return Monomial(vars_.size(), 0);
    Monomial g = terms_.begin()->first;
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], m[i]);
    return g;
  }
  /// Divide by a monomial over vars() that divides every term.
  basic_mpoly divided_by_monomial(const Monomial& g) const {
    basic_mpoly r;
    r.vars_ = vars_;
    for (const auto& [m, c] : terms_) {
      Monomial e = m;
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] -= g[i];
        if (e[i] < 0) throw std::invalid_argument("monomial does not divide polynomial");
      }
      r.terms_.emplace(std::move(e), c);
    }
    return r;
  }

  friend bool operator==(const basic_mpoly& a, const basic_mpoly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    const auto u = union_vars(a.vars_, b.vars_);
    return a.embedded(u).terms_ == b.embedded(u).terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::ostringstream cs;
      cs << c;
      std::string coef = cs.str();
      const bool neg = !coef.empty() && coef.front() == '-';
      if (neg) coef.erase(0, 1);
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      bool any = false;
      if (coef != "1" || total(m) == 0) {
        os << coef;
        any = true;
      }
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        os << (any ? "*" : "") << vars_[i];
        if (m[i] > 1) os << '^' << m[i];
        any = true;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const basic_mpoly& p) { return os << p.to_string(); }

  static std::vector<std::string> union_vars(const std::vector<std::string>& a,
                                             const std::vector<std::string>& b) {
    if (a == b) return a;
    std::vector<std::string> u;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return u;
  }

  static int total(const Monomial& m) {
    int s = 0;
    for (int e : m) s += e;
    return s;
  }

private:
  basic_mpoly& accumulate(const basic_mpoly& o, const C& sign) {
    if (o.is_zero()) return *this;
    if (vars_ != o.vars_) {
      auto u = union_vars(vars_, o.vars_);
      *this = embedded(u);
      const basic_mpoly y = o.embedded(u);
      for (const auto& [m, c] : y.terms_) add_term(m, sign * c);
      return *this;
    }
    for (const auto& [m, c] : o.terms_) add_term(m, sign * c);
    return *this;
  }

  void add_term(const Monomial& m, const C& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  basic_mpoly embedded_subset(const std::vector<std::string>& subset) const {
    basic_mpoly r;
    r.vars_ = subset;
    std::vector<int> idx;
    for (const auto& v : subset) idx.push_back(var_index(v));
    for (const auto& [m, c] : terms_) {
      Monomial e(subset.size());
      for (std::size_t k = 0; k < idx.size(); ++k) e[k] = m[idx[k]];
      r.terms_.emplace(std::move(e), c);
    }
    return r;
  }

  std::vector<std::string> vars_;
  term_map terms_;
};

using MPoly = basic_mpoly<Rational>;

inline MPoly var(const std::string& name) { return MPoly::variable(name); }

/// All exponent vectors of total degree d in n variables, lexicographically descending.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial cur(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
  };
  rec(0, d);
  return out;
}

}  // namespace siegelcy
