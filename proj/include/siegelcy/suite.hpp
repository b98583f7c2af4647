#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <future>
#include <memory>
#include <optional>
#include <thread>

#include "chargeom.hpp"
#include "modforms.hpp"
#include "numeric.hpp"
#include "qseries.hpp"
#include "report.hpp"
#include "symplectic.hpp"
#include "variety.hpp"

namespace siegelcy {

inline const std::vector<std::string>& suite_selectors() {
  static const std::vector<std::string> s{"chars", "series", "relations", "boundary", "variety", "numeric", "all"};
  return s;
}

using CheckTask = std::function<CheckRecord()>;

namespace detail {

inline std::string sextuple_id(const Sextuple& s) {
  std::string r;
  for (const auto& m : s) {
    if (!r.empty()) r += "-";
    r += m.digits();
  }
  return r;
}

inline ojson k_json(const BoundaryOrders& b) { return ojson::array({b.k[0], b.k[1], b.k[2]}); }

inline ojson perm_json(const SignedPermutation& p) { return p.to_string(); }

inline std::string rational_str(const Rational& r) { return r.str(); }

inline void chars_tasks(std::vector<CheckTask>& t) {
  t.push_back([] {
    const auto n = enumerate_even().size();
    return CheckRecord{"chars.even_count", "ten even characteristics", pass_if(n == 10), {{"even", n}}};
  });
  t.push_back([] {
    const auto n = syzygetic_quadruples().size();
    return CheckRecord{"chars.syzygetic_quadruples", "syzygetic quadruples", pass_if(n == 15), {{"count", n}}};
  });
  t.push_back([] {
    const auto n = quadruple_orbit(standard_quadruple()).size();
    return CheckRecord{"chars.quadruple_orbit", "Sp(4,F2)-orbit of the standard quadruple", pass_if(n == 15),
                       {{"orbit", n}}};
  });
  t.push_back([] {
    const auto n = sp4f2_group().size();
    return CheckRecord{"chars.sp4f2_order", "order of Sp(4,F2)", pass_if(n == 720), {{"order", n}}};
  });
  t.push_back([] {
    bool ok = true;
    for (const auto& g : sp4f2_group())
      for (const auto& m : all_chars()) ok = ok && parity(sp4f2_act(g, m)) == parity(m);
    return CheckRecord{"chars.action_parity", "action on characteristics preserves parity", pass_if(ok), {}};
  });
}

inline void series_tasks(std::vector<CheckTask>& t, const SuiteParams& p) {
  const std::int64_t n = p.truncation;
  t.push_back([n] {
    ojson rows = ojson::array();
    bool ok = true;
    for (const auto& m : enumerate_even()) {
      const QSeries s = theta_qexp(m, n);
      const std::array<std::int64_t, 3> got{vanishing_order(s, 0), vanishing_order(s, 1), vanishing_order(s, 2)};
      const std::array<std::int64_t, 3> want{m.a1, m.a1 + m.a2 - 2 * m.a1 * m.a2, m.a2};
      ok = ok && got == want;
      rows.push_back({{"m", m.digits()}, {"orders_q0_q1_q2", got}});
    }
    return CheckRecord{"series.theta_orders", "theta vanishing multiplicities", pass_if(ok), {{"thetas", rows}}};
  });
  t.push_back([n] {
    bool odd_zero = true, koecher = true;
    for (const auto& m : all_chars()) {
      const QSeries s = theta_qexp(m, n);
      if (!is_even(m)) odd_zero = odd_zero && s.is_zero();
      koecher = koecher && koecher_check(s);
    }
    return CheckRecord{"series.odd_vanishing_koecher", "odd thetas vanish; Koecher support", pass_if(odd_zero && koecher),
                       {{"odd_zero", odd_zero}, {"koecher", koecher}}};
  });
  t.push_back([n] {
    const QSeries s = sextuple_form(standard_sextuple(), n);
    return CheckRecord{"series.t_antisymmetry", "T is odd under z1 -> -z1", pass_if(negate_offdiag(s) == -s),
                       {{"terms", s.size()}}};
  });
  for (const auto& g : runge_generator_actions()) {
    t.push_back([g, n] {
      const auto measured = measure_action(g, n);
      bool ok = measured.has_value() && measured->image == g.printed.image;
      for (std::size_t i = 0; ok && i < 4; ++i) ok = measured->sign[i] == g.printed.sign[i];
      ojson d{{"printed", perm_json(g.printed)}, {"measured", measured ? perm_json(*measured) : ojson()}};
      return CheckRecord{"series.runge_action." + g.name + ".f1_f4", "substitution action on F1..F4", pass_if(ok), d};
    });
    t.push_back([g, n] {
      const auto measured = measure_action(g, n);
      ojson d{{"printed_sign", g.printed.sign[4]}, {"measured_sign", measured ? ojson(measured->sign[4]) : ojson()}};
      return CheckRecord{"series.runge_action." + g.name + ".f5", "substitution action on F5", Status::report, d};
    });
  }
  t.push_back([n] {
    const FormRegistry reg(std::max<std::int64_t>(n, 4));
    int swapped = 0, printed = 0;
    for (const auto& r : change_matrix_residuals(reg, series_change_matrix())) swapped += !r.is_zero();
    for (const auto& r : change_matrix_residuals(reg, xy_change_matrix())) printed += !r.is_zero();
    return CheckRecord{"series.coordinate_change", "y as linear forms in F1..F5", Status::report,
                       {{"nonzero_rows_printed_matrix", printed}, {"nonzero_rows_x1_x2_swapped", swapped}}};
  });
}

inline void relation_tasks(std::vector<CheckTask>& t, const SuiteParams& p,
                           const std::optional<std::filesystem::path>& cache) {
  auto reg = std::make_shared<const FormRegistry>(std::max<std::int64_t>(p.truncation, 4), cache);
  for (const auto& r : ring_relations()) {
    t.push_back([r, reg] {
      const QSeries res = relation_residual(r, *reg);
      return CheckRecord{"relations." + r.id, r.label, pass_if(res.is_zero() && weight_consistent(r)),
                         {{"N", reg->truncation()}, {"residual_terms", res.size()}}};
    });
  }
  const std::int64_t mn = std::max<std::int64_t>(p.truncation, kMutationTruncation);
  auto mreg = mn == reg->truncation() ? reg : std::make_shared<const FormRegistry>(mn, cache);
  for (const auto& r : planted_mutations()) {
    t.push_back([r, mreg] {
      const QSeries res = relation_residual(r, *mreg);
      return CheckRecord{"relations.mutation." + r.id, "planted mutation is detected", pass_if(!res.is_zero()),
                         {{"N", mreg->truncation()}, {"residual_terms", res.size()}}};
    });
  }
  t.push_back([] {
    const bool detected = !jacobian_identity_check(1);
    return CheckRecord{"relations.mutation.mutant_jacobian_factor_4to1", "planted mutation is detected",
                       pass_if(detected), {}};
  });
}

inline void boundary_tasks(std::vector<CheckTask>& t, const SuiteParams& p) {
  const std::int64_t n = std::max<std::int64_t>(p.truncation, 12);
  for (const auto& s : complementary_sextuples()) {
    t.push_back([s, n] {
      const BoundaryOrders b = boundary_orders(s, n);
      bool ok = true;
      for (int k : b.k) ok = ok && (k == 0 || k == 1);
      return CheckRecord{"boundary.sextuple." + sextuple_id(s), "boundary vanishing orders of a sextuple form",
                         pass_if(ok), {{"k", k_json(b)}}};
    });
  }
  t.push_back([n] {
    const auto counts = boundary_counts(boundary_distribution(n));
    const std::map<BoundaryOrders, int> want{{{{0, 0, 0}}, 8}, {{{1, 1, 1}}, 1}, {{{0, 0, 1}}, 2},
                                             {{{0, 1, 0}}, 2}, {{{1, 0, 0}}, 2}};
    ojson d = ojson::object();
    for (const auto& [b, c] : counts) d[b.to_string()] = c;
    return CheckRecord{"boundary.distribution", "boundary order table", pass_if(counts == want), {{"counts", d}}};
  });
  t.push_back([n] {
    int checked = 0;
    bool ok = true;
    for (const auto& [s, b] : boundary_distribution(n))
      for (int axis = 0; axis < 3; ++axis)
        if (b.k[axis] == 1) {
          ok = ok && q_parity_check(s, axis, n);
          ++checked;
        }
    return CheckRecord{"boundary.q_parity", "only even t0 occur", pass_if(ok && checked > 0), {{"axes", checked}}};
  });
}

inline void variety_tasks(std::vector<CheckTask>& t) {
  t.push_back([] {
    const auto r = coordinate_change_check();
    return CheckRecord{"variety.coordinate_change", "coordinate change between the two models", pass_if(r.ok()),
                       {{"determinant", rational_str(r.determinant)},
                        {"quadric_scalar", r.quadric_scalar ? rational_str(*r.quadric_scalar) : ""}}};
  });
  t.push_back([] {
    const auto g = group_closure(symmetry_generator_maps());
    const auto px = x_presentation();
    bool fixed = true;
    for (const auto& e : g) {
      const auto r = equation_invariance(e, px);
      fixed = fixed && r.invariant && r.signs == std::array<int, 2>{1, 1};
    }
    return CheckRecord{"variety.symmetry_group", "symmetry group of X", pass_if(g.size() == 48 && fixed),
                       {{"order", g.size()}, {"fixes_equations", fixed}}};
  });
  t.push_back([] {
    const auto n = projective_order(group_closure(symmetry_generator_maps()));
    return CheckRecord{"variety.projective_order", "order of the image in PGL(5)", Status::report, {{"order", n}}};
  });
  for (const auto& [name, g] : symmetry_generators()) {
    if (name == "flip_x4") continue;
    t.push_back([name, g] {
      const int s = omega_pullback_sign(g);
      return CheckRecord{"variety.omega_sign." + name, "G fixes omega", pass_if(s == 1), {{"sign", s}}};
    });
  }
  t.push_back([] {
    const int s = omega_pullback_sign(SignedMonomialMap::signs({4, 5}));
    return CheckRecord{"variety.omega_sign.flip_x4_x5", "G fixes omega", pass_if(s == 1), {{"sign", s}}};
  });
  t.push_back([] {
    const int s = omega_pullback_sign(SignedMonomialMap::signs({4}));
    return CheckRecord{"variety.omega_sign.flip_x4", "sign change of x4 on omega", Status::report, {{"sign", s}}};
  });
  t.push_back([] {
    const auto r = omega_stabilizer();
    return CheckRecord{"variety.omega_stabilizer", "stabilizer of omega", Status::report,
                       {{"candidates", r.candidates},
                        {"preserving_equations", r.preserving},
                        {"fixing_omega", r.stabilizer.size()},
                        {"fixing_omega_flipping_x4", r.x4_flipping.size()}}};
  });
  t.push_back([] {
    const auto g = group_closure(symmetry_generator_maps());
    const auto fam = curve_family(g, {quadric_curve(), line_curve()});
    bool ok = fam.size() == 15;
    for (const auto& c : fam) ok = ok && curve_checks(c).ok();
    std::vector<std::size_t> sizes;
    for (const auto& o : curve_orbits(g, fam)) sizes.push_back(o.size());
    std::sort(sizes.begin(), sizes.end());
    ok = ok && sizes == std::vector<std::size_t>{3, 12};
    return CheckRecord{"variety.singular_curves", "singular locus is 15 curves", pass_if(ok),
                       {{"curves", fam.size()}, {"orbit_sizes", sizes}}};
  });
  t.push_back([] {
    return CheckRecord{"variety.jacobian_rational", "Jacobian of the rational transformation",
                       pass_if(jacobian_identity_check()), {}};
  });
  t.push_back([] {
    const auto r = homogeneous_jacobian_identity();
    const bool ok = r.factor && *r.factor == -1;
    return CheckRecord{"variety.jacobian_homogeneous", "W = -f4^4 J", pass_if(ok),
                       {{"factor", r.factor ? rational_str(*r.factor) : ""}, {"symbols", r.w.vars().size()}}};
  });
  t.push_back([] {
    const auto r = homogeneous_jacobian_identity();
    return CheckRecord{"variety.jacobian_homogeneous_printed", "W = f4^4 J as displayed", Status::report,
                       {{"printed_factor", "1"}, {"measured_factor", r.factor ? rational_str(*r.factor) : ""}}};
  });
  for (const auto& c : {blowup_case1(), blowup_case3()}) {
    t.push_back([c] {
      const auto r = blowup_chart_check(c);
      const bool ok = r.form_matches && std::all_of(r.induced.begin(), r.induced.end(), [](const auto& s) { return s.has_value(); });
      ojson grp = ojson::array();
      for (const auto& s : r.induced_group) grp.push_back(s);
      return CheckRecord{"variety." + c.name, "blow-up chart pullback and induced action", pass_if(ok),
                         {{"pulled", r.pulled}, {"induced_group", grp}}};
    });
  }
  t.push_back([] {
    return CheckRecord{"variety.blowup_printed_identity", "displayed chart identity", Status::report,
                       {{"holds", printed_chart_identity_holds()}}};
  });
}

inline void numeric_tasks(std::vector<CheckTask>& t, const SuiteParams& p) {
  const std::uint64_t seed = p.seed;
  const long double tol = p.tol;
  t.push_back([tol] {
    const cplx i(0, 1);
    const cplx v = theta_eval(Char(), SiegelPoint::diag(i, i)).value;
    long double odd = 0;
    for (const auto& m : enumerate_odd()) odd = std::max(odd, std::abs(theta_eval(m, SiegelPoint::diag(i, 2.0L * i)).value));
    const bool ok = std::abs(v - 1.1803406L) < 1e-6L && odd < tol;
    return CheckRecord{"numeric.theta_values", "theta series definition", pass_if(ok),
                       {{"theta0000_iE", static_cast<double>(v.real())}, {"max_odd", static_cast<double>(odd)}}};
  });
  t.push_back([tol] {
    long double dev = 0;
    for (const auto& m : enumerate_even())
      dev = std::max(dev, series_numeric_consistency(m, SiegelPoint::diag(cplx(0, 3), cplx(0, 3)), 12));
    return CheckRecord{"numeric.series_consistency", "Fourier rewrite agrees with the lattice sum", pass_if(dev < tol),
                       {{"max_deviation", static_cast<double>(dev)}}};
  });
  t.push_back([seed, tol] {
    long double worst = 0;
    bool ok = true;
    for (std::uint64_t k = 0; k < 20; ++k) {
      const SpMat g = sample_element(SubgroupTag::full(), 6, seed + k);
      const auto evens = enumerate_even();
      const Char m = evens[(seed + k) % evens.size()];
      const auto r = transform_modulus_check(g, m, sample_point(seed + k), tol);
      ok = ok && r.ok;
      worst = std::max(worst, std::abs(r.lhs - r.rhs));
    }
    return CheckRecord{"numeric.modulus_law", "theta transformation law, modulus", pass_if(ok),
                       {{"cases", 20}, {"max_deviation", static_cast<double>(worst)}}};
  });
  auto law = [seed](std::string id, std::string ref, FormKind k, int cases) {
    return [=] {
      int agree = 0;
      ojson signs = ojson::array();
      for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(cases); ++j) {
        const SpMat g = sample_element(form_domain(k), 4, seed + j);
        const auto r = character_law_check(k, g, sample_point(seed + 1000 + j));
        agree += r.sign != 0 && r.sign == predicted_character(k, g);
        signs.push_back(r.sign);
      }
      return CheckRecord{id, ref, pass_if(agree == cases), {{"cases", cases}, {"agree", agree}, {"measured", signs}}};
    };
  };
  t.push_back(law("numeric.character.theta", "character of Theta on Hecke0(2)", FormKind::Theta, 20));
  t.push_back(law("numeric.character.t", "T has weight 3 with trivial character on Gamma_n", FormKind::T, 20));
  for (const auto k : {FormKind::F1, FormKind::F2, FormKind::F3, FormKind::F4, FormKind::F5, FormKind::F6})
    t.push_back(law("numeric.character." + to_string(k), "F1..F6 on Gamma[2]", k, 5));
  t.push_back([] {
    const SpMat g = SpMat::lower_translation({{{2, 2}, {2, 2}}});
    const int s = character_law_check(FormKind::Theta, g, sample_point(3)).sign;
    return CheckRecord{"numeric.character.theta_c2222", "sign of F6 under C = (2 2; 2 2)", pass_if(s == -1),
                       {{"sign", s}}};
  });
  t.push_back([seed] {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<long double> re(-0.5L, 0.5L), im(0.7L, 2.0L);
    long double worst = 0;
    for (int j = 0; j < 5; ++j) {
      const auto r = diagonal_vanishing_check(cplx(re(rng), im(rng)), cplx(re(rng), im(rng)));
      worst = std::max({worst, r.t, r.theta1111});
    }
    return CheckRecord{"numeric.t_diagonal", "T vanishes on the diagonal", pass_if(worst < 1e-10L),
                       {{"points", 5}, {"max_abs", static_cast<double>(worst)}}};
  });
  t.push_back([seed, tol] {
    long double worst = 0;
    for (std::uint64_t j = 0; j < 10; ++j) {
      const SiegelPoint z = sample_point(seed + j);
      const cplx a = form_eval(FormKind::T, z), b = form_eval(FormKind::T, SiegelPoint(z.z0, -z.z1, z.z2));
      worst = std::max(worst, std::abs(a + b) / std::max<long double>(1, std::abs(a)));
    }
    return CheckRecord{"numeric.t_antisymmetry", "T is odd under z1 -> -z1", pass_if(worst < tol),
                       {{"points", 10}, {"max_deviation", static_cast<double>(worst)}}};
  });
  t.push_back([seed] {
    ojson d = ojson::object();
    const SiegelPoint z = sample_point(seed);
    for (const auto& g : runge_generator_actions())
      if (g.translation) d[g.name] = translation_ratio(FormKind::F5, g.m, z).sign;
    return CheckRecord{"numeric.f5_translation", "F5 under unit translations", Status::report, {{"measured_sign", d}}};
  });
}

}  // namespace detail

/// Runs the checks of a selector on a worker pool; records come back sorted by id.
inline SuiteReport run_suite(const std::string& selector, const SuiteParams& params,
                             const std::optional<std::filesystem::path>& cache = std::nullopt) {
  const auto& sel = suite_selectors();
  if (std::find(sel.begin(), sel.end(), selector) == sel.end())
    throw std::invalid_argument("run_suite: unknown selector '" + selector + "'");
  if (params.truncation < 4) throw std::invalid_argument("run_suite: truncation must be at least 4");
  if (!(params.tol > 0)) throw std::invalid_argument("run_suite: tol must be positive");

  std::vector<CheckTask> tasks;
  const bool all = selector == "all";
  if (all || selector == "chars") detail::chars_tasks(tasks);
  if (all || selector == "series") detail::series_tasks(tasks, params);
  if (all || selector == "relations") detail::relation_tasks(tasks, params, cache);
  if (all || selector == "boundary") detail::boundary_tasks(tasks, params);
  if (all || selector == "variety") detail::variety_tasks(tasks);
  if (all || selector == "numeric") detail::numeric_tasks(tasks, params);

  SuiteReport r{params, {}};
  r.checks.resize(tasks.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < std::min(workers, tasks.size()); ++w)
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i; (i = next++) < tasks.size();) r.checks[i] = tasks[i]();
    }));
  for (auto& f : pool) f.get();
  std::sort(r.checks.begin(), r.checks.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return r;
}

}  // namespace siegelcy
