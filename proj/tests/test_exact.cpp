#include "catch_amalgamated.hpp"

#include <complex>
#include <random>

#include "siegelcy/exact/cyclotomic.hpp"
#include "siegelcy/exact/membership.hpp"
#include "siegelcy/exact/mpoly.hpp"
#include "siegelcy/exact/ratfn.hpp"
#include "siegelcy/exact/threeform.hpp"

using namespace siegelcy;

namespace {

CycInt8 random_cyc(std::mt19937_64& rng) {
  auto r = [&] { return static_cast<std::int64_t>(rng() % 21) - 10; };
  return {r(), r(), r(), r()};
}

MPoly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int max_deg, int terms) {
  MPoly p;
  for (int k = 0; k < terms; ++k) {
    MPoly t(static_cast<int>(rng() % 7) - 3);
    for (const auto& v : vars) t *= var(v).pow(static_cast<unsigned>(rng() % (max_deg + 1)));
    p += t;
  }
  return p;
}

RatFn random_ratfn(std::mt19937_64& rng, const std::vector<std::string>& vars) {
  MPoly num = random_poly(rng, vars, 1, 2) + MPoly(static_cast<int>(rng() % 3) + 1) * var(vars[rng() % vars.size()]);
  if (rng() % 2) return RatFn(num);
  MPoly den = var(vars[rng() % vars.size()]) + MPoly(static_cast<int>(rng() % 3) + 1);
  return RatFn(num, den);
}

}  // namespace

TEST_CASE("cyclotomic products reduce with zeta^4 = -1") {
  const CycInt8 z = CycInt8::zeta();
  CHECK(z * z.times_zeta_pow(2) == CycInt8(-1));
  const CycInt8 zz = CycInt8::zeta_pow(2);
  CHECK((CycInt8(1) + zz) * (CycInt8(1) - zz) == CycInt8(2));
  CycInt8 p = z;
  for (int i = 0; i < 3; ++i) p = p * p;
  CHECK(p == CycInt8(1));
  CHECK(CycInt8::zeta_pow(-1) == CycInt8(0, 0, 0, -1));
}

TEST_CASE("cyclotomic arithmetic agrees with complex numbers and satisfies ring axioms") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const CycInt8 a = random_cyc(rng), b = random_cyc(rng), c = random_cyc(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    const auto diff = (a * b).to_complex() - a.to_complex() * b.to_complex();
    CHECK(std::abs(diff) < 1e-9L);
    const auto k = static_cast<std::int64_t>(rng() % 40) - 20;
    CHECK(a.times_zeta_pow(k) == a * CycInt8::zeta_pow(k));
  }
}

TEST_CASE("polynomial ring axioms on random triples") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> vars{"x", "y", "z"};
  for (int i = 0; i < 100; ++i) {
    const MPoly a = random_poly(rng, vars, 2, 3), b = random_poly(rng, {"y", "w"}, 2, 3), c = random_poly(rng, vars, 1, 2);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == MPoly());
  }
}

TEST_CASE("polynomial substitution") {
  const MPoly x = var("x"), u = var("u"), v = var("v");
  CHECK(x.pow(2).substitute({{"x", u + v}}) == u * u + MPoly(2) * u * v + v * v);
  CHECK(x.substitute({{"x", MPoly()}}) == MPoly());
  try {
    (x * var("y")).substitute({{"x", u}});
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find('y') != std::string::npos);
  }
}

TEST_CASE("polynomial queries") {
  const MPoly p = var("a").pow(2) * var("b") - MPoly(3) * var("b").pow(3);
  CHECK(p.total_degree() == 3);
  CHECK(p.is_homogeneous());
  CHECK_FALSE((p + var("a")).is_homogeneous());
  CHECK(p.coefficient({{"b", 3}}) == -3);
  CHECK(p.coefficient({{"b", 3}, {"c", 0}}) == -3);
  CHECK(p.weighted_degree({{"a", 1}, {"b", 2}}) == std::nullopt);
  CHECK(p.weighted_degree({{"a", 2}, {"b", 2}}) == 6);
  CHECK(p.derivative("a") == MPoly(2) * var("a") * var("b"));
}

TEST_CASE("graded membership") {
  const MPoly x = var("x"), y = var("y");
  auto c = graded_membership(x * x, {x});
  REQUIRE(c);
  CHECK(c->multipliers[0] == x);
  CHECK_FALSE(graded_membership(x, {x * x}));
  CHECK_FALSE(graded_membership(x * y, {x * x, y * y}));
  CHECK_THROWS_AS(graded_membership(x + MPoly(1), {x}), std::invalid_argument);
}

TEST_CASE("graded membership certificates re-expand exactly") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> vars{"a", "b", "c"};
  for (int i = 0; i < 20; ++i) {
    std::vector<MPoly> gens;
    for (int k = 0; k < 2; ++k) {
      MPoly g;
      for (const auto& m : monomials_of_degree(3, 2))
        if (rng() % 3 == 0) g += MPoly::from_terms(vars, {{m, Rational(static_cast<int>(rng() % 5) - 2)}});
      gens.push_back(g);
    }
    MPoly f = gens[0] * var("a") - gens[1] * var("c");
    if (rng() % 2) f += var("b").pow(3);
    if (f.is_zero()) continue;
    auto cert = graded_membership(f, gens);
    if (cert) CHECK(cert->expand(gens) == f);
  }
}

TEST_CASE("rational functions compare by cross-multiplication") {
  const MPoly x = var("x"), y = var("y");
  CHECK(RatFn(x * y, y * y) == RatFn(x, y));
  CHECK(RatFn(x * x - y * y, x - y) == RatFn(x + y));
  CHECK(RatFn(1) / RatFn(x) * RatFn(x) == RatFn(1));
  CHECK(RatFn(x, y).derivative("y") == RatFn(-x, y * y));
  CHECK_THROWS(RatFn(x, MPoly()));
}

TEST_CASE("rational Jacobian examples") {
  const RatFn g1 = RatFn::variable("g1"), g2 = RatFn::variable("g2"), g3 = RatFn::variable("g3");
  const std::array<std::string, 3> v{"g1", "g2", "g3"};
  CHECK(rational_jacobian({g1, g2, g3}, v) == RatFn(1));
  CHECK(rational_jacobian({g1 * g1, g2, g3}, v) == RatFn(2) * g1);
  const RatFn G1 = g1 * g2 / g3 + g3 / (g1 * g2);
  const RatFn G2 = g1 * g3 / g2 + g2 / (g1 * g3);
  const RatFn G3 = g2 * g3 / g1 + g1 / (g2 * g3);
  const RatFn closed = RatFn(4) * (g3 * g3 - g1 * g1 * g2 * g2) * (g2 * g2 - g1 * g1 * g3 * g3) *
                       (g1 * g1 - g2 * g2 * g3 * g3) / (g1 * g2 * g3).pow(4);
  CHECK(rational_jacobian({G1, G2, G3}, v) == closed);
  CHECK_FALSE(rational_jacobian({G1, G2, G3}, v) == closed / RatFn(4));
}

TEST_CASE("rational Jacobian is multiplicative under composition") {
  std::mt19937_64 rng(23);
  const std::vector<std::string> vs{"a", "b", "c"};
  const std::array<std::string, 3> va{"a", "b", "c"};
  int checked = 0;
  while (checked < 20) {
    std::array<RatFn, 3> f, g;
    for (auto& x : f) x = random_ratfn(rng, vs);
    for (auto& x : g) x = random_ratfn(rng, vs);
    std::map<std::string, RatFn> gs{{"a", g[0]}, {"b", g[1]}, {"c", g[2]}};
    std::array<RatFn, 3> fg{f[0].substitute(gs), f[1].substitute(gs), f[2].substitute(gs)};
    const RatFn lhs = rational_jacobian(fg, va);
    const RatFn rhs = rational_jacobian(f, va).substitute(gs) * rational_jacobian(g, va);
    CHECK(lhs == rhs);
    ++checked;
  }
}

TEST_CASE("three-form pullback examples") {
  const std::vector<std::string> z{"z1", "z2", "z3"};
  const ThreeForm dz(z, RatFn(1), {"z1", "z2", "z3"});
  ChartMap id{z, {{"z1", RatFn::variable("z1")}, {"z2", RatFn::variable("z2")}, {"z3", RatFn::variable("z3")}}};
  CHECK(dz.pullback(id).form == dz);

  ChartMap case1{{"w1", "z2", "z3"},
                 {{"z1", RatFn::variable("w1") * RatFn::variable("z2")},
                  {"z2", RatFn::variable("z2")},
                  {"z3", RatFn::variable("z3")}}};
  const auto p1 = dz.pullback(case1);
  CHECK_FALSE(p1.degenerate);
  CHECK(p1.form == ThreeForm({"w1", "z2", "z3"}, RatFn::variable("z2"), {"w1", "z2", "z3"}));

  ChartMap case3{{"u1", "z2", "z3"},
                 {{"z1", RatFn::variable("u1") * RatFn::variable("z2") * RatFn::variable("z3")},
                  {"z2", RatFn::variable("z2")},
                  {"z3", RatFn::variable("z3")}}};
  CHECK(dz.pullback(case3).form ==
        ThreeForm({"u1", "z2", "z3"}, RatFn::variable("z2") * RatFn::variable("z3"), {"u1", "z2", "z3"}));

  ChartMap flat{{"s", "t", "r"}, {{"z1", RatFn::variable("s")}, {"z2", RatFn::variable("s")}, {"z3", RatFn::variable("t")}}};
  CHECK(dz.pullback(flat).degenerate);
}

TEST_CASE("three-form wedge normalisation") {
  const std::vector<std::string> v{"a", "b", "c"};
  const ThreeForm w(v, RatFn(1), {"b", "a", "c"});
  CHECK(w.coefficient({"a", "b", "c"}) == RatFn(-1));
  CHECK(w.coefficient({"c", "a", "b"}) == RatFn(-1));
  CHECK(ThreeForm(v, RatFn(1), {"a", "a", "c"}).is_zero());
  CHECK(w == -ThreeForm(v, RatFn(1), {"a", "b", "c"}));
}

TEST_CASE("three-form pullback is contravariant") {
  std::mt19937_64 rng(31);
  const std::vector<std::string> src{"a", "b", "c"}, mid{"u", "v", "w"}, dst{"r", "s", "t"};
  for (int i = 0; i < 20; ++i) {
    const ThreeForm omega(src, random_ratfn(rng, src), {"a", "b", "c"});
    ChartMap g{mid, {}}, f{dst, {}};
    for (const auto& s : src) g.images[s] = random_ratfn(rng, mid);
    for (const auto& s : mid) f.images[s] = random_ratfn(rng, dst);
    const auto twice = omega.pullback(g).form.pullback(f).form;
    const auto once = omega.pullback(g.after(f)).form;
    CHECK(twice == once);
  }
}
