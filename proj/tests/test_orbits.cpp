#include <doctest.h>

#include "symcap/orbits.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace symcap;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

std::vector<Rational> rats(std::initializer_list<double> xs) {
  std::vector<Rational> out;
  for (double x : xs) out.push_back(Rational(x));
  return out;
}

std::vector<long> cz_of(const OrbitSpectrum& s, int simple) {
  std::vector<long> out;
  for (auto& o : s.orbits)
    if (o.simple == simple) out.push_back(o.cz);
  return out;
}

} // namespace

TEST_CASE("ellipsoid orbits of the perturbed four-ball") {
  auto s = ellipsoid_orbits({q(1), q(1)}, q(3));
  CHECK(cz_of(s, 0) == std::vector<long>{3, 7, 11});
  CHECK(cz_of(s, 1) == std::vector<long>{5, 9, 13});
  CHECK(!s.hurwitz_slice);
  for (auto& o : ellipsoid_orbits({q(1), q(1)}, q(20)).orbits) CHECK(Rational(o.cz) <= 1 + 4 * o.action);
}

TEST_CASE("ellipsoid orbits of E(1,13/2)") {
  auto s = ellipsoid_orbits({q(13, 2), q(1)}, q(8));
  REQUIRE(s.orbits.size() >= 8);
  std::vector<long> cz;
  for (std::size_t i = 0; i < 8; ++i) cz.push_back(s.orbits[i].cz);
  CHECK(cz == std::vector<long>{3, 5, 7, 9, 11, 13, 15, 17});
  CHECK(s.orbits[6].label == "beta_1");
  CHECK(s.orbits[6].action == q(13, 2));
  CHECK(s.hurwitz_slice);
  CHECK(s.orbits[0].in_slice);
  CHECK(!s.orbits[6].in_slice);
}

TEST_CASE("round balls have CZ n-1+2k in action order") {
  for (int n = 2; n <= 4; ++n) {
    auto s = ellipsoid_orbits(std::vector<Rational>(n, q(1)), q(4));
    for (std::size_t k = 1; k <= s.orbits.size(); ++k) CHECK(s.orbits[k - 1].cz == n - 1 + 2 * static_cast<long>(k));
  }
}

TEST_CASE("ellipsoid CZ parity") {
  std::mt19937 rng(1);
  for (int it = 0; it < 30; ++it) {
    int n = 2 + static_cast<int>(rng() % 3);
    std::vector<Rational> a;
    for (int i = 0; i < n; ++i) a.push_back(q(1 + rng() % 9, 1 + rng() % 4));
    for (auto& o : ellipsoid_orbits(a, q(10)).orbits) CHECK(((o.cz - (n - 1)) % 2 + 2) % 2 == 0);
  }
  CHECK_THROWS(ellipsoid_orbits({q(0), q(1)}, q(3)));
  CHECK_THROWS(ellipsoid_orbits({q(-1)}, q(3)));
}

TEST_CASE("polydisk orbits") {
  auto s = polydisk_orbits(q(2), q(5));
  auto find = [&](const std::string& l) {
    for (auto& o : s.orbits)
      if (o.label == l) return o;
    FAIL("missing " << l);
    return Orbit{};
  };
  CHECK(find("beta_{1,0}").action == 1);
  CHECK(find("beta_{1,0}").cz == 3);
  CHECK(find("alpha_{1,1}").action == 3);
  CHECK(find("alpha_{1,1}").cz == 4);
  CHECK(find("beta_{2,0}").in_slice);
  CHECK(!find("beta_{0,1}").in_slice);

  // independent enumeration for P(1,1) at cutoff 3
  auto p = polydisk_orbits(q(1), q(3));
  std::multiset<std::tuple<std::string, Rational, long>> got, want;
  for (auto& o : p.orbits) got.insert({o.label, o.action, o.cz});
  for (long i = 0; i <= 3; ++i)
    for (long j = 0; j <= 3; ++j) {
      if (i + j > 3 || i + j == 0) continue;
      std::string idx = "_{" + std::to_string(i) + "," + std::to_string(j) + "}";
      want.insert({"beta" + idx, q(i + j), 1 + 2 * i + 2 * j});
      if (i >= 1 && j >= 1) want.insert({"alpha" + idx, q(i + j), 2 * i + 2 * j});
    }
  CHECK(got == want);
  for (std::size_t i = 1; i < p.orbits.size(); ++i) CHECK(p.orbits[i - 1].action <= p.orbits[i].action);
  CHECK_THROWS(polydisk_orbits(q(1, 2), q(3)));
}

TEST_CASE("EH capacity sequences") {
  CHECK(eh_sequence({q(1), q(2)}, 7) == rats({1, 2, 2, 3, 4, 4, 5}));
  CHECK(eh_sequence({q(3, 2), q(3, 2)}, 7) == rats({1.5, 1.5, 3, 3, 4.5, 4.5, 6}));
  CHECK(capacity_sequence_EH({q(5, 3)}, 4) == q(20, 3));
  CHECK(capacity_sequence_EH({q(1), std::nullopt}, 5) == 5);
  CHECK(capacity_sequence_EH({q(2), q(3), std::nullopt}, 3) == 4);
  CHECK_THROWS(capacity_sequence_EH({std::nullopt, std::nullopt}, 1));
  CHECK_THROWS(capacity_sequence_EH({q(1)}, 0));
}

TEST_CASE("ECH capacity sequences") {
  auto e = ech_sequence(q(1), q(2), 8);
  CHECK(std::vector<Rational>(e.begin() + 1, e.end()) == rats({1, 2, 2, 3, 3, 4, 4, 4}));
  auto b = ech_sequence(q(3, 2), q(3, 2), 9);
  CHECK(std::vector<Rational>(b.begin() + 1, b.end()) == rats({1.5, 1.5, 3, 3, 3, 4.5, 4.5, 4.5, 4.5}));
  CHECK(capacity_sequence_ECH(q(1), q(2), 0) == 0);
  for (long k = 0; k <= 30; ++k) CHECK(capacity_sequence_ECH(q(2), q(7, 3), k) == ech_sequence(q(2), q(7, 3), 30)[k]);
}

TEST_CASE("ECH values agree with direct lattice counting") {
  for (auto [a, b] : {std::pair{q(1), q(1)}, std::pair{q(1), q(2)}, std::pair{q(2), q(5, 3)}}) {
    auto seq = ech_sequence(a, b, 60);
    std::vector<Rational> all;
    for (long i = 0; i <= 80; ++i)
      for (long j = 0; j <= 80; ++j) all.push_back(a * i + b * j);
    std::sort(all.begin(), all.end());
    for (long k = 0; k <= 60; ++k) CHECK(seq[k] == all[k]);
  }
}

TEST_CASE("capacity sequences are monotone") {
  std::mt19937 rng(2);
  for (int it = 0; it < 20; ++it) {
    Rational a = q(1 + rng() % 6, 1 + rng() % 3), b = q(1 + rng() % 6, 1 + rng() % 3);
    Rational a2 = a + q(rng() % 3, 2), b2 = b + q(rng() % 3, 3);
    auto e = ech_sequence(a, b, 40), e2 = ech_sequence(a2, b2, 40);
    auto h = eh_sequence({a, b}, 40), h2 = eh_sequence({a2, b2}, 40);
    for (std::size_t k = 1; k < e.size(); ++k) {
      CHECK(e[k - 1] <= e[k]);
      CHECK(e[k] <= e2[k]);
    }
    for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k - 1] <= h[k]);
    for (std::size_t k = 0; k < h.size(); ++k) CHECK(h[k] <= h2[k]);
  }
}

TEST_CASE("ECH volume asymptotics") {
  const long k = 100000;
  for (auto [a, b] : {std::pair{q(1), q(1)}, std::pair{q(1), q(2)}}) {
    double c = to_double(capacity_sequence_ECH(a, b, k));
    double ratio = c * c / k / (2 * to_double(a * b));
    CHECK(std::abs(ratio - 1) < 0.05);
  }
}

TEST_CASE("fredholm_index") {
  std::vector<long> none;
  std::vector<long> three{3};
  CHECK(fredholm_index(2, 0, three, three, 0, 0) == 0);
  CHECK(fredholm_index(2, 0, three, none, 0, 2) == 0);

  std::mt19937 rng(4);
  std::uniform_int_distribution<long> cz(-5, 25);
  for (int it = 0; it < 1000; ++it) {
    int n = 1 + static_cast<int>(rng() % 6);
    int g = static_cast<int>(rng() % 4);
    std::vector<long> pos(rng() % 5), neg(rng() % 5);
    for (auto& x : pos) x = cz(rng);
    for (auto& x : neg) x = cz(rng);
    long c1 = static_cast<long>(rng() % 7) - 3;
    long codim = 2 * static_cast<long>(rng() % 6);
    long ind = fredholm_index(n, g, pos, neg, c1, codim);
    auto p1 = pos, n1 = neg;
    for (auto& x : p1) ++x;
    for (auto& x : n1) ++x;
    long l = static_cast<long>(neg.size());
    CHECK(fredholm_index(n + 1, g, p1, n1, c1, codim) == 2 - 2 * g - 2 * l + ind);
  }
}
