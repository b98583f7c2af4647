// One line per acceptance criterion with the measured values, the elapsed
// time and its limit. Exits nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "siegelcy/siegelcy.hpp"

using namespace siegelcy;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  double limit_s;
  std::function<Outcome()> body;
};

constexpr double kNumericTol = 1e-8;
constexpr double kDiagonalTol = 1e-10;

Outcome chars_counts() {
  const auto even = enumerate_even().size();
  const auto quads = syzygetic_quadruples().size();
  const auto orbit = quadruple_orbit(standard_quadruple()).size();
  const auto order = sp4f2_group().size();
  std::ostringstream d;
  d << "even=" << even << " quadruples=" << quads << " orbit=" << orbit << " |Sp(4,F2)|=" << order;
  return {even == 10 && quads == 15 && orbit == 15 && order == 720, d.str()};
}

Outcome theta_orders() {
  int agree = 0;
  for (const auto& m : enumerate_even()) {
    const QSeries s = theta_qexp(m, 12);
    agree += vanishing_order(s, 0) == m.a1;
    agree += vanishing_order(s, 1) == m.a1 + m.a2 - 2 * m.a1 * m.a2;
    agree += vanishing_order(s, 2) == m.a2;
  }
  return {agree == 30, std::to_string(agree) + "/30 (characteristic, axis) orders match at N=12"};
}

Outcome boundary_table() {
  const auto dist = boundary_distribution(12);
  const auto counts = boundary_counts(dist);
  const std::map<BoundaryOrders, int> want{
      {{{0, 0, 0}}, 8}, {{{1, 1, 1}}, 1}, {{{0, 0, 1}}, 2}, {{{0, 1, 0}}, 2}, {{{1, 0, 0}}, 2}};
  bool order_one = true, parity = true;
  int axes = 0;
  for (const auto& [s, b] : dist)
    for (int axis = 0; axis < 3; ++axis) {
      order_one = order_one && (b.k[axis] == 0 || b.k[axis] == 1);
      if (b.k[axis] == 1) {
        ++axes;
        parity = parity && q_parity_check(s, axis, 12);
      }
    }
  std::ostringstream d;
  for (const auto& [b, c] : counts) d << b.to_string() << "x" << c << " ";
  d << "k in {0,1}: " << (order_one ? "yes" : "no") << ", q-parity on " << axes << " axes: " << (parity ? "yes" : "no");
  return {counts == want && order_one && parity && axes > 0, d.str()};
}

Outcome ring_relations_16() {
  const FormRegistry reg(16);
  int zero = 0, total = 0;
  std::string bad;
  for (const auto& r : ring_relations()) {
    ++total;
    if (relation_residual(r, reg).is_zero())
      ++zero;
    else
      bad += " " + r.id;
  }
  return {zero == total, std::to_string(zero) + "/" + std::to_string(total) + " relations vanish at N=16" + bad};
}

Outcome printed_actions() {
  int exact = 0;
  std::string diffs;
  for (const auto& g : runge_generator_actions()) {
    const auto m = measure_action(g, 12);
    if (m && *m == g.printed)
      ++exact;
    else
      diffs += " " + g.name + ": printed " + g.printed.to_string() + " measured " + (m ? m->to_string() : "none");
  }
  return {exact == 5, std::to_string(exact) + "/5 actions match exactly;" + diffs};
}

Outcome numeric_laws() {
  int modulus = 0, theta_char = 0, t_law = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const SpMat g = sample_element(SubgroupTag::full(), 6, s);
    const auto evens = enumerate_even();
    modulus += transform_modulus_check(g, evens[s % evens.size()], sample_point(s), kNumericTol).ok;
    const SpMat h = sample_element(SubgroupTag::hecke0(2), 4, s);
    theta_char += character_law_check(FormKind::Theta, h, sample_point(s + 100)).sign == theta_character(h);
    const SpMat n = sample_element(SubgroupTag::gamma_n(), 4, s);
    t_law += character_law_check(FormKind::T, n, sample_point(s + 200)).sign == 1;
  }
  const int c2222 = character_law_check(FormKind::Theta, SpMat::lower_translation({{{2, 2}, {2, 2}}}), sample_point(3)).sign;
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<long double> re(-0.5L, 0.5L), im(0.7L, 2.0L);
  long double diag = 0;
  for (int k = 0; k < 5; ++k) diag = std::max(diag, diagonal_vanishing_check(cplx(re(rng), im(rng)), cplx(re(rng), im(rng))).t);
  long double dual = 0;
  for (const auto& m : enumerate_even())
    dual = std::max(dual, series_numeric_consistency(m, SiegelPoint::diag(cplx(0, 3), cplx(0, 3)), 12));
  std::ostringstream d;
  d << "modulus " << modulus << "/20, Theta character " << theta_char << "/20, T weight 3 " << t_law
    << "/20, C=(2 2;2 2) sign " << c2222 << ", max |T| on diagonal " << static_cast<double>(diag)
    << ", series vs lattice " << static_cast<double>(dual);
  return {modulus == 20 && theta_char == 20 && t_law == 20 && c2222 == -1 && diag < kDiagonalTol && dual < kNumericTol,
          d.str()};
}

Outcome variety_checks() {
  const bool change = coordinate_change_check().ok();
  const auto g = group_closure(symmetry_generator_maps());
  const auto px = x_presentation();
  bool fixed = true;
  for (const auto& e : g) {
    const auto r = equation_invariance(e, px);
    fixed = fixed && r.invariant && r.signs == std::array<int, 2>{1, 1};
  }
  bool omega = omega_pullback_sign(SignedMonomialMap::signs({4, 5})) == 1;
  for (const auto& [name, e] : symmetry_generators())
    if (name != "flip_x4") omega = omega && omega_pullback_sign(e) == 1;
  const auto fam = curve_family(g, {quadric_curve(), line_curve()});
  bool curves = fam.size() == 15;
  for (const auto& c : fam) curves = curves && curve_checks(c).ok();
  std::vector<std::size_t> sizes;
  for (const auto& o : curve_orbits(g, fam)) sizes.push_back(o.size());
  std::sort(sizes.begin(), sizes.end());
  std::ostringstream d;
  d << "membership " << (change ? "yes" : "no") << ", group order " << g.size() << (fixed ? " fixing" : " NOT fixing")
    << " both equations, omega signs +1: " << (omega ? "yes" : "no") << ", curves " << fam.size()
    << (curves ? " all pass" : " with failures") << ", orbits";
  for (auto s : sizes) d << " " << s;
  return {change && g.size() == 48 && fixed && omega && curves && sizes == std::vector<std::size_t>{3, 12}, d.str()};
}

Outcome symbolic_identities() {
  const bool rational = jacobian_identity_check();
  const auto h = homogeneous_jacobian_identity();
  const bool printed = h.factor && *h.factor == 1;
  std::ostringstream d;
  d << "rational Jacobian " << (rational ? "exact" : "MISMATCH") << "; W = c*f4^4*J over " << h.w.vars().size()
    << " symbols with c = " << (h.factor ? h.factor->str() : "none") << " (required c = 1)";
  return {rational && printed, d.str()};
}

Outcome blowups() {
  const auto r1 = blowup_chart_check(blowup_case1());
  const auto r3 = blowup_chart_check(blowup_case3());
  const std::set<std::array<int, 3>> line{{1, 1, 1}, {1, -1, 1}};
  const std::set<std::array<int, 3>> twice{{1, 1, 1}, {1, -1, 1}, {1, 1, -1}, {1, -1, -1}};
  std::ostringstream d;
  d << "line chart " << r1.pulled << ", induced group order " << r1.induced_group.size() << "; twice chart "
    << r3.pulled << ", induced group order " << r3.induced_group.size();
  return {r1.form_matches && r3.form_matches && r1.induced_group == line && r3.induced_group == twice, d.str()};
}

Outcome mutations() {
  const FormRegistry reg(kMutationTruncation);
  int detected = 0;
  for (const auto& r : planted_mutations()) detected += !relation_residual(r, reg).is_zero();
  detected += !jacobian_identity_check(1);
  return {detected == 8, std::to_string(detected) + "/8 planted mutations detected at N=" +
                             std::to_string(kMutationTruncation)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "characteristic combinatorics", 1, chars_counts},
      {2, "theta vanishing multiplicities", 5, theta_orders},
      {3, "boundary order table, order one, q-parity", 30, boundary_table},
      {4, "ring relations through N=16", 120, ring_relations_16},
      {5, "printed substitution actions on F1..F5", 10, printed_actions},
      {6, "numeric transformation laws", 60, numeric_laws},
      {7, "variety, symmetry group, omega, singular curves", 30, variety_checks},
      {8, "rational and homogeneous Jacobian identities", 10, symbolic_identities},
      {9, "blow-up chart pullbacks and induced actions", 1, blowups},
      {10, "falsification controls", 120, mutations},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt < c.limit_s;
    const bool ok = o.ok && in_time;
    failed += !ok;
    std::printf("%s  criterion %d: %s | %s | %.3f s (limit %.0f s)%s\n", ok ? "PASS" : "FAIL", c.number,
                c.title.c_str(), o.detail.c_str(), dt, c.limit_s, in_time ? "" : " TIMEOUT");
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
