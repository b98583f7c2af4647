#include "catch_amalgamated.hpp"

#include <map>
#include <random>
#include <sstream>

#include "siegelcy/qseries.hpp"

using namespace siegelcy;

namespace {

/// Independent oracle: sum over g in a box, h = g + a/2, exponents
/// 8 h1^2, 8 (h1-h2)^2, 8 h2^2 ... on the level-8 grid, coefficient i^(2 b.h).
std::map<std::tuple<long, long, long>, std::complex<double>> theta_oracle(const Char& m, long n) {
  std::map<std::tuple<long, long, long>, std::complex<double>> out;
  for (long g1 = -5; g1 <= 5; ++g1)
    for (long g2 = -5; g2 <= 5; ++g2) {
      const double h1 = g1 + m.a1 / 2.0, h2 = g2 + m.a2 / 2.0;
      const long n0 = std::lround(4 * h1 * h1), n2 = std::lround(4 * h2 * h2), n1 = std::lround(4 * (h1 - h2) * (h1 - h2));
      if (n0 + n2 > n) continue;
      const double phase = M_PI * (m.b1 * h1 + m.b2 * h2);
      out[{n0, n1, n2}] += std::complex<double>(std::cos(phase), std::sin(phase));
    }
  for (auto it = out.begin(); it != out.end();)
    it = std::abs(it->second) < 1e-9 ? out.erase(it) : std::next(it);
  return out;
}

QSeries random_series(std::mt19937_64& rng, std::int64_t n) {
  std::vector<QSeries::Term> t;
  for (int k = 0; k < 12; ++k) {
    const std::int64_t n0 = static_cast<std::int64_t>(rng() % 5), n2 = static_cast<std::int64_t>(rng() % 5);
    const std::int64_t n1 = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * (n0 + n2) + 1));
    t.push_back({{n0, n1, n2}, CycInt8(static_cast<std::int64_t>(rng() % 7) - 3, static_cast<std::int64_t>(rng() % 3), 0,
                                       static_cast<std::int64_t>(rng() % 3) - 1)});
  }
  return QSeries::from_terms(t, n);
}

}  // namespace

TEST_CASE("theta expansions match direct lattice summation") {
  for (const auto& m : all_chars()) {
    const QSeries s = theta_qexp(m, 16);
    const auto oracle = theta_oracle(m, 16);
    REQUIRE(s.size() == oracle.size());
    for (const auto& t : s.terms()) {
      const auto it = oracle.find({t.e.n0, t.e.n1, t.e.n2});
      REQUIRE(it != oracle.end());
      CHECK(std::abs(std::complex<double>(t.c.to_complex()) - it->second) < 1e-9);
    }
    if (is_even(m)) {
      CHECK(koecher_check(s));
      for (const auto& t : s.terms()) CHECK(t.c.is_rational_integer());
    } else {
      CHECK(s.is_zero());
    }
  }
}

TEST_CASE("theta expansion examples") {
  CHECK(theta_qexp(Char(0, 0, 0, 0), 12).coefficient({0, 0, 0}) == CycInt8(1));
  const QSeries t11 = theta_qexp(Char(1, 1, 0, 0), 12);
  CHECK(t11.terms().front().e == ExpTriple{1, 0, 1});
  CHECK(t11.terms().front().c == CycInt8(2));
  CHECK(theta_qexp(Char(1, 0, 1, 0), 12).is_zero());
  CHECK_THROWS(theta_qexp(Char(), -1));
}

TEST_CASE("second kind expansions") {
  CHECK(second_kind_qexp(0, 0, 12).coefficient({0, 0, 0}) == CycInt8(1));
  const QSeries f4 = second_kind_qexp(1, 1, 12);
  CHECK(f4.terms().front().e == ExpTriple{2, 0, 2});
  CHECK(f4.terms().front().c == CycInt8(2));
  for (int a = 0; a < 4; ++a) {
    const QSeries f = second_kind_qexp(a & 1, a >> 1, 13);
    for (const auto& t : f.terms())
      CHECK((t.e.n0 % 2 == 0 && t.e.n1 % 2 == 0 && t.e.n2 % 2 == 0));
  }
  CHECK(second_kind_qexp(1, 0, 13).truncation() == 13);
}

TEST_CASE("series products") {
  const QSeries t0 = theta_qexp(Char(0, 0, 0, 0), 12);
  CHECK(QSeries::one() * t0 == t0);
  CHECK((t0 * t0).coefficient({0, 0, 0}) == CycInt8(1));
  const QSeries t11 = theta_qexp(Char(1, 1, 0, 0), 12);
  const QSeries sq = t11 * t11;
  CHECK(sq.terms().front().e == ExpTriple{2, 0, 2});
  CHECK(sq.terms().front().c == CycInt8(4));
  CHECK((t0 * theta_qexp(Char(0, 0, 1, 0), 8)).truncation() == 8);
  CHECK(t0.pow(3) == t0 * t0 * t0);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const QSeries a = random_series(rng, 10), b = random_series(rng, 9), c = random_series(rng, 10);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("vanishing orders follow the characteristic") {
  CHECK(vanishing_order(theta_qexp(Char(1, 0, 0, 0), 12), 0) == 1);
  CHECK(vanishing_order(theta_qexp(Char(0, 0, 0, 0), 12), 0) == 0);
  CHECK(vanishing_order(theta_qexp(Char(1, 0, 0, 1), 12), 1) == 1);
  CHECK_THROWS(vanishing_order(QSeries(5), 0));
  for (const auto& m : enumerate_even()) {
    const QSeries s = theta_qexp(m, 12);
    CHECK(vanishing_order(s, 0) == m.a1);
    CHECK(vanishing_order(s, 2) == m.a2);
    CHECK(vanishing_order(s, 1) == m.a1 + m.a2 - 2 * m.a1 * m.a2);
  }
}

TEST_CASE("translations") {
  const QSeries t = theta_qexp(Char(1, 1, 0, 0), 12);
  CHECK(translate_action(t, {{{0, 0}, {0, 0}}}) == t);
  CHECK(translate_action(t, {{{8, 0}, {0, 8}}}) == t);
  CHECK(translate_action(t, {{{0, 8}, {8, 0}}}) == t);
  CHECK_THROWS(translate_action(t, {{{0, 1}, {0, 0}}}));
}

TEST_CASE("unimodular substitutions") {
  const QSeries t = theta_qexp(Char(1, 0, 0, 1), 16);
  CHECK(unimodular_action(t, {{{1, 0}, {0, 1}}}) == t);
  // swapping the variables swaps the characteristic halves
  CHECK(agree(unimodular_action(t, {{{0, 1}, {1, 0}}}), theta_qexp(Char(0, 1, 1, 0), 16)));
  CHECK(unimodular_truncation({{{0, 1}, {1, 0}}}, 16) == 16);
  const auto n = unimodular_truncation({{{1, 1}, {0, 1}}}, 32);
  CHECK(n >= 12);
  CHECK(n < 32);
  CHECK_THROWS(unimodular_action(t, {{{2, 0}, {0, 1}}}));
}

TEST_CASE("substitutions are ring homomorphisms") {
  std::mt19937_64 rng(12);
  const std::vector<Mat2> ss{{{{1, 0}, {0, 0}}}, {{{0, 1}, {1, 0}}}, {{{0, 0}, {0, 1}}}, {{{3, -1}, {-1, 2}}}};
  const std::vector<Mat2> us{{{{0, 1}, {1, 0}}}, {{{1, 1}, {0, 1}}}, {{{1, -1}, {0, 1}}}, {{{-1, 0}, {0, 1}}}};
  const auto even = enumerate_even();
  for (int i = 0; i < 50; ++i) {
    const QSeries a = theta_qexp(even[rng() % 10], 14), b = theta_qexp(even[rng() % 10], 14);
    const Mat2& s = ss[rng() % ss.size()];
    CHECK(translate_action(a * b, s) == translate_action(a, s) * translate_action(b, s));
    const Mat2& u = us[rng() % us.size()];
    CHECK(agree(unimodular_action(a * b, u), unimodular_action(a, u) * unimodular_action(b, u)));
  }
}

TEST_CASE("z1 sign change") {
  const QSeries t0 = theta_qexp(Char(0, 0, 0, 0), 12);
  CHECK(negate_offdiag(t0) == t0);
  const QSeries t1111 = theta_qexp(Char(1, 1, 1, 1), 12);
  CHECK(negate_offdiag(t1111) == -t1111);
  CHECK(negate_offdiag(negate_offdiag(t1111)) == t1111);
  for (const auto& m : enumerate_even())
    if (m != Char(1, 1, 1, 1)) CHECK(negate_offdiag(theta_qexp(m, 12)) == theta_qexp(m, 12));
}

TEST_CASE("Koecher check") {
  CHECK_FALSE(koecher_check(QSeries::from_terms({{{1, 5, 1}, CycInt8(1)}}, 4)));
  CHECK(koecher_check(QSeries(3)));
}

TEST_CASE("series cache round trip") {
  const Char m(1, 0, 0, 1);
  const QSeries s = theta_qexp(m, 12);
  std::stringstream io;
  write_series(io, m, s);
  const auto back = read_series(io);
  CHECK(back.m == m);
  CHECK(back.series == s);
  std::istringstream bad("# nonsense\n");
  CHECK_THROWS(read_series(bad));

  const auto dir = std::filesystem::temp_directory_path() / "siegelcy_cache_test";
  std::filesystem::remove_all(dir);
  CHECK(theta_qexp_cached(m, 12, dir) == s);
  CHECK(std::filesystem::exists(dir / "theta_1001_N12.txt"));
  CHECK(theta_qexp_cached(m, 12, dir) == s);
  std::filesystem::remove_all(dir);
}
