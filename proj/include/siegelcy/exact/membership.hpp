#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mpoly.hpp"
#include "rational.hpp"

namespace siegelcy {

/// f = sum multipliers[i] * gens[i].
struct MembershipCertificate {
  std::vector<MPoly> multipliers;

  MPoly expand(const std::vector<MPoly>& gens) const {
    MPoly acc;
    for (std::size_t i = 0; i < gens.size(); ++i) acc += multipliers[i] * gens[i];
    return acc;
  }
};

/// Decide membership of a homogeneous f in the ideal spanned by homogeneous
/// generators, working only in the graded piece of degree deg f.
inline std::optional<MembershipCertificate> graded_membership(const MPoly& f,
                                                              const std::vector<MPoly>& gens) {
  if (!f.is_homogeneous()) throw std::invalid_argument("graded_membership: f is not homogeneous");
  for (const auto& g : gens)
    if (!g.is_homogeneous())
      throw std::invalid_argument("graded_membership: generator " + g.to_string() + " is not homogeneous");

  MembershipCertificate cert;
  cert.multipliers.assign(gens.size(), MPoly());
  if (f.is_zero()) return cert;

  std::vector<std::string> vars = f.vars();
  for (const auto& g : gens) vars = MPoly::union_vars(vars, g.vars());
  const int d = f.total_degree();

  const auto target_monos = monomials_of_degree(vars.size(), d);
  std::map<Monomial, std::size_t> row_of;
  for (std::size_t i = 0; i < target_monos.size(); ++i) row_of.emplace(target_monos[i], i);

  struct Column {
    std::size_t gen;
    Monomial mono;
  };
  std::vector<Column> columns;
  std::vector<MPoly> products;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    const int di = gens[i].total_degree();
    if (di > d) continue;
    const MPoly gi = gens[i].embedded(vars);
    for (const auto& m : monomials_of_degree(vars.size(), d - di)) {
      columns.push_back({i, m});
      products.push_back(gi * MPoly::from_terms(vars, {{m, Rational(1)}}));
    }
  }
  if (columns.empty()) return std::nullopt;

  QMatrix a(target_monos.size(), columns.size());
  for (std::size_t j = 0; j < products.size(); ++j) {
    const MPoly pj = products[j].embedded(vars);
    for (const auto& [m, c] : pj.terms()) a(row_of.at(m), j) = c;
  }
  std::vector<Rational> b(target_monos.size());
  const MPoly fe = f.embedded(vars);
  for (const auto& [m, c] : fe.terms()) b[row_of.at(m)] = c;

  auto x = solve_linear(std::move(a), std::move(b));
  if (!x) return std::nullopt;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if ((*x)[j] == 0) continue;
    cert.multipliers[columns[j].gen] += MPoly::from_terms(vars, {{columns[j].mono, (*x)[j]}});
  }
  return cert;
}

}  // namespace siegelcy
