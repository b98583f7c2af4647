#include "catch_amalgamated.hpp"

#include <map>
#include <random>

#include "siegelcy/chargeom.hpp"

using namespace siegelcy;

TEST_CASE("parity") {
  CHECK(parity(Char(0, 0, 0, 0)) == Parity::Even);
  CHECK(parity(Char(1, 1, 1, 1)) == Parity::Even);
  CHECK(parity(Char(1, 0, 1, 0)) == Parity::Odd);
}

TEST_CASE("ten even and six odd characteristics") {
  const auto even = enumerate_even();
  CHECK(even.size() == 10);
  CHECK(std::find(even.begin(), even.end(), Char(0, 0, 0, 0)) != even.end());
  CHECK(std::is_sorted(even.begin(), even.end()));
  const auto odd = enumerate_odd();
  CHECK(odd.size() == 6);
  for (const auto& m : odd) CHECK(parity(m) == Parity::Odd);
}

TEST_CASE("syzygetic quadruples") {
  const Quadruple std4 = standard_quadruple();
  CHECK(is_syzygetic(std4));
  CHECK_FALSE(is_syzygetic({Char(0, 0, 0, 0), Char(0, 0, 1, 0), Char(0, 0, 0, 1), Char(1, 1, 0, 0)}));
  CHECK_THROWS(is_syzygetic({Char(0, 0, 0, 0), Char(0, 0, 0, 0), Char(0, 0, 0, 1), Char(1, 1, 0, 0)}));

  // Oracle: brute force over all 4-subsets of the 16 characteristics.
  int count = 0;
  for (int m = 0; m < (1 << 16); ++m) {
    if (__builtin_popcount(static_cast<unsigned>(m)) != 4) continue;
    std::vector<Char> s;
    for (int c = 0; c < 16; ++c)
      if (m >> c & 1) s.push_back(Char::from_code(c));
    bool ok = std::all_of(s.begin(), s.end(), [](const Char& x) { return is_even(x); });
    for (std::size_t i = 0; ok && i < 4; ++i) {
      Char sum;
      for (std::size_t j = 0; j < 4; ++j)
        if (j != i) sum = sum + s[j];
      ok = is_even(sum);
    }
    count += ok;
  }
  const auto all = syzygetic_quadruples();
  CHECK(all.size() == 15);
  CHECK(count == 15);
  CHECK(std::find(all.begin(), all.end(), std4) != all.end());

  std::set<Sextuple> sext;
  for (const auto& q : all) sext.insert(complement_sextuple(q));
  CHECK(sext.size() == 15);
}

TEST_CASE("complementary sextuples") {
  const Sextuple s = standard_sextuple();
  const Sextuple expected{Char(0, 1, 0, 0), Char(0, 1, 1, 0), Char(1, 0, 0, 0),
                          Char(1, 0, 0, 1), Char(1, 1, 0, 0), Char(1, 1, 1, 1)};
  CHECK(s == expected);
  for (const auto& m : s) CHECK((m.a1 || m.a2));
  CHECK(defining_quadruple(s) == standard_quadruple());
  CHECK_THROWS(complement_sextuple({Char(0, 0, 0, 0), Char(0, 0, 1, 0), Char(0, 0, 0, 1), Char(1, 1, 0, 0)}));
}

TEST_CASE("Sp(4,F2) has 720 elements") {
  CHECK(sp4f2_group().size() == 720);
  CHECK(Mat4F2::identity().is_symplectic());
}

TEST_CASE("symplectic action on characteristics") {
  const Mat4F2 j = Mat4F2::from_bits(0x2184);
  for (const auto& m : all_chars()) {
    CHECK(sp4f2_act(Mat4F2::identity(), m) == m);
    CHECK(sp4f2_act(j, m) == Char(m.b1, m.b2, m.a1, m.a2));
  }
  CHECK_THROWS(sp4f2_act(Mat4F2::from_bits(1), Char()));

  const auto& g = sp4f2_group();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto& x = g[rng() % g.size()];
    const auto& y = g[rng() % g.size()];
    const Char m = Char::from_code(static_cast<int>(rng() % 16));
    CHECK(parity(sp4f2_act(x, m)) == parity(m));
    CHECK(sp4f2_act(x * y, m) == sp4f2_act(x, sp4f2_act(y, m)));
  }
}

TEST_CASE("action is transitive on syzygetic quadruples") {
  const auto orbit = quadruple_orbit(standard_quadruple());
  CHECK(orbit.size() == 15);
  CHECK(720 % orbit.size() == 0);
  for (const auto& q : orbit) CHECK(is_syzygetic(q));
  CHECK(quadruple_stabilizer_order(standard_quadruple()) == 48);
}

TEST_CASE("odd permutation sign is a character") {
  const auto& g = sp4f2_group();
  std::mt19937_64 rng(9);
  int negative = 0;
  for (int i = 0; i < 100; ++i) {
    const auto& x = g[rng() % g.size()];
    const auto& y = g[rng() % g.size()];
    CHECK(odd_permutation_sign(x * y) == odd_permutation_sign(x) * odd_permutation_sign(y));
    negative += odd_permutation_sign(x) < 0;
  }
  CHECK(negative > 0);
  int total_negative = 0;
  for (const auto& x : g) total_negative += odd_permutation_sign(x) < 0;
  CHECK(total_negative == 360);
}
