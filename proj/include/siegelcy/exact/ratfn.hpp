#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpoly.hpp"

namespace siegelcy {

/// Quotient of two polynomials. Not kept in lowest terms: only common monomial
/// factors are cancelled and the denominator is made monic in its leading
/// term. Equality is decided by cross-multiplication.
class RatFn {
public:
  RatFn() : num_(), den_(1) {}
  RatFn(int c) : num_(c), den_(1) {}
  RatFn(const Rational& c) : num_(c), den_(1) {}
  RatFn(MPoly p) : num_(std::move(p)), den_(1) {}
  RatFn(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
  }

  static RatFn variable(const std::string& name) { return RatFn(MPoly::variable(name)); }

  const MPoly& num() const noexcept { return num_; }
  const MPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }

  friend RatFn operator+(const RatFn& a, const RatFn& b) {
    if (a.den_ == b.den_) return RatFn(a.num_ + b.num_, a.den_);
    return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFn operator-(const RatFn& a) { return RatFn(-a.num_, a.den_); }
  friend RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }
  friend RatFn operator*(const RatFn& a, const RatFn& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_ == b.num_ && !a.den_.is_constant()) return RatFn(a.num_, b.den_);
    if (b.den_ == a.num_ && !b.den_.is_constant()) return RatFn(b.num_, a.den_);
    return RatFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return a * RatFn(b.den_, b.num_);
  }
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }

  RatFn pow(unsigned n) const { return RatFn(num_.pow(n), den_.pow(n)); }

  RatFn derivative(const std::string& v) const {
    if (den_.is_constant()) return RatFn(num_.derivative(v), den_);
    return RatFn(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
  }

  /// Substitute each variable by a rational function. Uses one common
  /// denominator per variable so that numerator and denominator images share it.
  RatFn substitute(const std::map<std::string, RatFn>& assignment) const {
    std::map<std::string, int> maxdeg;
    for (const MPoly* p : {&num_, &den_})
      for (const auto& v : p->support_vars()) maxdeg[v] = std::max(maxdeg[v], p->degree_in(v));
    auto image = [&](const MPoly& p) {
      MPoly acc;
      for (const auto& [m, c] : p.terms()) {
        MPoly t(c);
        // Every assigned variable contributes den^(maxdeg - exponent), also
        // when it is absent from this particular polynomial.
        for (const auto& [v, md] : maxdeg) {
          const int i = p.var_index(v);
          const int e = i < 0 ? 0 : m[static_cast<std::size_t>(i)];
          auto it = assignment.find(v);
          if (it == assignment.end()) throw std::invalid_argument("unassigned variable: " + v);
          const auto& a = it->second;
          if (e > 0) t *= a.num_.pow(static_cast<unsigned>(e));
          if (md > e && a.den_ != MPoly(1)) t *= a.den_.pow(static_cast<unsigned>(md - e));
        }
        acc += t;
      }
      return acc;
    };
    MPoly n = image(num_), d = image(den_);
    return RatFn(std::move(n), std::move(d));
  }

  /// Evaluate at rational values; throws if the denominator vanishes.
  Rational evaluate(const std::map<std::string, Rational>& values) const {
    auto lift = [](const Rational& c) { return c; };
    const Rational d = den_.evaluate<Rational>(values, lift);
    if (d == 0) throw std::domain_error("denominator vanishes at evaluation point");
    return num_.evaluate<Rational>(values, lift) / d;
  }

  friend bool operator==(const RatFn& a, const RatFn& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  std::string to_string() const {
    if (den_ == MPoly(1)) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = MPoly(1);
      return;
    }
    const auto u = MPoly::union_vars(num_.vars(), den_.vars());
    num_ = num_.embedded(u);
    den_ = den_.embedded(u);
    Monomial g = num_.monomial_content();
    const Monomial h = den_.monomial_content();
    bool any = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = std::min(g[i], h[i]);
      any = any || g[i] > 0;
    }
    if (any) {
      num_ = num_.divided_by_monomial(g);
      den_ = den_.divided_by_monomial(g);
    }
    const Rational lead = den_.terms().rbegin()->second;
    if (lead != 1) {
      num_ = num_.scaled(1 / lead);
      den_ = den_.scaled(1 / lead);
    }
    num_ = num_.pruned();
    den_ = den_.pruned();
  }

  MPoly num_;
  MPoly den_;
};

}  // namespace siegelcy
