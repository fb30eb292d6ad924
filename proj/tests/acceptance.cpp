#include "symcap/capacity.hpp"
#include "symcap/gw.hpp"
#include "symcap/linfty.hpp"
#include "symcap/model_io.hpp"
#include "symcap/orbits.hpp"

#include <fmt/format.h>

#include <chrono>
#include <functional>
#include <numeric>
#include <random>

using namespace symcap;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void expect(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

Rational q(long a, long b = 1) { return make_rational(a, b); }
Rational ceil_q(const Rational& x) { return Rational(ceil_of(x)); }
ModelPtr fixture(const std::string& name) { return load_model_file(std::string(SYMCAP_FIXTURES) + "/" + name); }
Coeff num(const Rational& c) { return Coeff::constant(c); }

std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (auto& x : v) s += (s.empty() ? "" : ",") + to_string(x);
  return s;
}

Outcome eh_sequences() {
  Outcome o;
  auto a = eh_sequence({q(1), q(2)}, 7);
  auto b = eh_sequence({q(3, 2), q(3, 2)}, 7);
  o.expect(a == std::vector<Rational>{1, 2, 2, 3, 4, 4, 5}, "E(1,2): " + join(a));
  o.expect(b == std::vector<Rational>{q(3, 2), q(3, 2), 3, 3, q(9, 2), q(9, 2), 6}, "E(1.5,1.5): " + join(b));
  return o;
}

Outcome ech_sequences() {
  Outcome o;
  auto a = ech_sequence(q(1), q(2), 8);
  auto b = ech_sequence(q(3, 2), q(3, 2), 9);
  a.erase(a.begin());
  b.erase(b.begin());
  o.expect(a == std::vector<Rational>{1, 2, 2, 3, 3, 4, 4, 4}, "E(1,2): " + join(a));
  o.expect(b == std::vector<Rational>{q(3, 2), q(3, 2), 3, 3, 3, q(9, 2), q(9, 2), q(9, 2), q(9, 2)},
           "E(1.5,1.5): " + join(b));
  return o;
}

Outcome obstruction_fixture() {
  Outcome o;
  Rational s = capacity_sequence_EH({q(1), q(2)}, 2), t = capacity_sequence_EH({q(3, 2), q(3, 2)}, 2);
  o.expect(s == 2 && t == q(3, 2) && s > t, fmt::format("c2 = {} vs {}", to_string(s), to_string(t)));
  return o;
}

Outcome mcduff() {
  Outcome o;
  auto f9 = mcduff_f(q(9), 5000);
  o.expect(f9.value >= q(294, 100) && f9.value <= 3, "f(9) = " + to_string(f9.value));
  for (long K : {1, 10, 100}) o.expect(mcduff_f(q(1), K).value == 1, "f(1) != 1");
  for (long K : {2, 10, 100}) {
    auto f2 = mcduff_f(q(2), K).value;
    o.expect(f2 == 2, "f(2) = " + to_string(f2));
    // E(1,2) sits inside B(2), so no capacity ratio can exceed 2
    o.expect(f2 <= capacity_sequence_ECH(q(2), q(2), 1) / capacity_sequence_ECH(q(1), q(1), 1), "inclusion bound");
  }
  if (o.pass) o.detail = fmt::format("f(9) = {} at K=5000, witness k={}", to_string(f9.value), f9.k);
  return o;
}

Outcome closed_forms() {
  Outcome o;
  for (long k = 2; k <= 50; k += 3)
    o.expect(g_tangency(DomainDescriptor::ball(), k) == ceil_q(q(k + 1, 3)), fmt::format("ball k={}", k));
  std::mt19937 rng(20);
  for (int it = 0; it < 20; ++it) {
    Rational x = q(2 + static_cast<long>(rng() % 60), 1 + static_cast<long>(rng() % 4));
    long m = 1 + static_cast<long>(rng() % static_cast<unsigned long>(to_long(floor_of(x))));
    o.expect(g_tangency(DomainDescriptor::ellipsoid(1, x), m) == Rational(m), fmt::format("E(1,{}) m={}", to_string(x), m));
  }
  for (Rational x : {q(1), q(5, 4), q(3, 2), q(2), q(5, 2), q(3), q(9, 2), q(7), q(12)})
    for (long m = 1; m <= 25; m += 2)
      o.expect(g_tangency(DomainDescriptor::polydisk(1, x), m) ==
                   std::min(Rational(m), Rational(x + ceil_q(q(m - 1, 2)))),
               fmt::format("P(1,{}) m={}", to_string(x), m));
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const Rational cutoff = 15;
  auto ball = ellipsoid_orbits({q(1), q(1)}, cutoff);
  long checked = 0;
  for (long k = 2; ceil_q(q(k + 1, 3)) <= cutoff; k += 3, ++checked)
    o.expect(spectral_lower_bound(ball, tangency_codim(2, k - 1), ConstraintKind::tangency, cutoff).value ==
                 g_tangency(DomainDescriptor::ball(), k),
             fmt::format("ball k={}", k));
  for (long r = 1; ceil_q(q(r + 1, 3)) <= cutoff; ++r, ++checked)
    o.expect(spectral_lower_bound(ball, 2 * r, ConstraintKind::points, cutoff).value == r_points_ball(r),
             fmt::format("ball r={}", r));
  auto ell = ellipsoid_orbits({q(1), q(13, 2)}, cutoff);
  for (long m = 1; m <= 6; ++m, ++checked)
    o.expect(spectral_lower_bound(ell, tangency_codim(2, m - 1), ConstraintKind::tangency, cutoff).value ==
                 g_tangency(DomainDescriptor::ellipsoid(1, q(13, 2)), m),
             fmt::format("E(1,13/2) m={}", m));
  for (Rational x : {q(1), q(3, 2), q(2), q(3), q(7, 2), q(6)}) {
    auto pd = polydisk_orbits(x, cutoff);
    for (long m = 1; m <= 25; m += 2, ++checked) {
      auto closed = *g_tangency(DomainDescriptor::polydisk(1, x), m);
      auto res = spectral_lower_bound(pd, tangency_codim(2, m - 1), ConstraintKind::tangency, cutoff);
      bool ok = closed <= cutoff ? res.value == closed : !res.value;
      o.expect(ok, fmt::format("P(1,{}) m={}", to_string(x), m));
    }
  }
  if (o.pass) o.detail = fmt::format("{} indices", checked);
  return o;
}

Outcome stabilized() {
  Outcome o;
  for (long d = 1; d <= 10; ++d)
    o.expect(stabilized_obstruction(DomainDescriptor::ellipsoid(1, 3 * d - 1), TargetFamily::ball).value ==
                 q(3 * d - 1, d),
             fmt::format("E(1,{}) -> B", 3 * d - 1));
  o.expect(stabilized_obstruction(DomainDescriptor::polydisk(1, 2), TargetFamily::cube).value == q(3, 2), "P(1,2)");
  o.expect(stabilized_obstruction(DomainDescriptor::polydisk(1, 3), TargetFamily::ball).value == q(5, 2), "P(1,3)");
  Rational prev = 0;
  for (long d : {1, 10, 100, 1000}) {
    auto v = stabilized_obstruction(DomainDescriptor::ellipsoid(1, 3 * d - 1), TargetFamily::ball, 3 * d).value;
    o.expect(v > prev && v < 3 && 3 - v <= q(1, d), fmt::format("d={} bound {}", d, to_string(v)));
    prev = v;
  }
  return o;
}

Outcome linfty_properties() {
  Outcome o;
  const std::vector<std::string> suite = {"complex.model", "b2.model", "b2_lin.model", "e1x.model",
                                          "sl2.model",     "dgla_mc.model", "cdga.model", "poisson.model"};
  for (auto& name : suite) {
    auto m = fixture(name);
    o.expect(check_linfty_relations(*m, 4).empty(), name + ": relations");
    o.expect(check_coleibniz(*m, 4).empty(), name + ": coLeibniz");
    o.expect(check_coassociativity(*m, 4).empty(), name + ": coassociativity");
  }

  auto cdga = fixture("cdga.model");
  auto lin = linearize(cdga, "eps");
  auto comp = compose_morphisms(lin.shift, lin.inverse);
  for (auto& w : basis_words(*cdga, 4))
    if (w.size() == 1) o.expect(comp->component(w) == Element{{w[0], num(1)}}, "F^eps F^-eps != id");
  for (auto& w : basis_words(*lin.linear, 1)) {
    BarElement twice = extend_coderivation(*lin.linear, extend_coderivation(*lin.linear, w));
    o.expect(twice.empty(), "(d_lin)^2 != 0 on " + lin.linear->bar_str(w));
  }

  auto m = fixture("dgla_mc.model");
  MaurerCartanElement x{m->mc_elements()[0].value};
  o.expect(mc_check(*m, x).pass, "stored element is not Maurer-Cartan");
  auto t = trivial_model({{"z", 0, 0}}, m->cutoff());
  auto eps = std::make_shared<SparseMorphism>(m, t);
  eps->add_component({"a"}, {{"z", num(1)}});
  eps->add_component({"b"}, {{"z", num(2)}});
  eps->add_component({"a", "b"}, {{"z", num(1)}});
  eps->add_component({"a", "a"}, {{"z", num(-1)}});
  eps->add_component({"a", "a", "b"}, {{"z", num(3)}});
  eps->add_component({"b", "b", "b", "b"}, {{"z", num(5)}});
  o.expect(check_morphism(*eps, 4).empty(), "synthetic augmentation is not a morphism");
  auto pushed = mc_pushforward(*eps, x);
  Element proj;
  for (auto& [w, c] : extend_morphism(*eps, exp_bar(*m, x, 12)))
    if (w.size() == 1) add_term(proj, w[0], c);
  o.expect(pushed.value == proj && !proj.empty(), "eps_*(m) != pi_1 eps(exp m)");
  if (o.pass) o.detail = fmt::format("{} models", suite.size());
  return o;
}

Outcome gb_fixtures() {
  Outcome o;
  auto b2 = fixture("b2_lin.model");
  for (long m = 1; m <= 10; ++m) {
    auto r = gb_solver(b2, "tangency", "t^" + std::to_string(m), std::nullopt, q(15));
    o.expect(r.value == Rational(m + 1), fmt::format("B2 t^{}", m));
  }
  auto e = fixture("e1x.model");
  for (long m = 1; m <= 6; ++m) {
    auto r = gb_solver(e, "tangency", "t^" + std::to_string(m - 1), std::nullopt, q(10));
    o.expect(r.value == Rational(m), fmt::format("E(1,13/2) t^{}", m - 1));
  }
  return o;
}

Outcome weights() {
  Outcome o;
  std::vector<Rational> want(6, q(1));
  want.push_back(q(7, 8));
  for (int i = 0; i < 7; ++i) want.push_back(q(1, 8));
  o.expect(weight_decomposition(55, 8) == want, "55/8: " + join(weight_decomposition(55, 8)));
  std::mt19937 rng(10);
  for (int it = 0; it < 50;) {
    long a = 1 + static_cast<long>(rng() % 500), b = 1 + static_cast<long>(rng() % 90);
    if (std::gcd(a, b) != 1 || a < b) continue;
    ++it;
    Rational s1 = 0, s2 = 0;
    for (auto& w : weight_decomposition(a, b)) {
      s1 += w;
      s2 += w * w;
    }
    o.expect(s2 == q(a, b) && s1 == q(a + b - 1, b), fmt::format("{}/{}", a, b));
  }
  return o;
}

Outcome gw_rewriting() {
  Outcome o;
  auto table = BaseInvariantTable::load(std::string(SYMCAP_FIXTURES) + "/base.tbl");
  auto conics = parse_constraint(Surface::cp2, CurveClass{{2}}, "<(T^4 p)>");
  auto covers = parse_constraint(Surface::cp1, CurveClass{{2}}, "<(T^2 p)>");
  Rational vc = evaluate(reduce(conics), table), vl = evaluate(reduce(covers), table);
  o.expect(vc == 1, "conics: " + to_string(vc));
  o.expect(vl == 0, "covers of the line: " + to_string(vl));
  o.expect(vc != 3, "tangency count equals the descendant count 3");
  std::vector<Rational> want = {1, 1, 4};
  std::string got;
  for (long d = 1; d <= 3; ++d) {
    Rational v = evaluate(reduce(cp2_tangency(d)), table);
    o.expect(v == want[d - 1], fmt::format("T{} = {}", d, to_string(v)));
    got += (d > 1 ? "," : "") + to_string(v);
  }
  if (o.pass) o.detail = "T1..T3 = " + got;
  return o;
}

Outcome index_arithmetic() {
  Outcome o;
  std::vector<long> three{3}, none;
  o.expect(fredholm_index(2, 0, three, three, 0, 0) == 0, "trivial cylinder");
  std::mt19937 rng(12);
  std::uniform_int_distribution<long> cz(-9, 30);
  for (int it = 0; it < 1000; ++it) {
    int n = 1 + static_cast<int>(rng() % 7);
    int g = static_cast<int>(rng() % 4);
    std::vector<long> pos(rng() % 6), neg(rng() % 6);
    for (auto& v : pos) v = cz(rng);
    for (auto& v : neg) v = cz(rng);
    long c1 = static_cast<long>(rng() % 9) - 4;
    long codim = 2 * static_cast<long>(rng() % 8);
    long ind = fredholm_index(n, g, pos, neg, c1, codim);
    auto p1 = pos, n1 = neg;
    for (auto& v : p1) ++v;
    for (auto& v : n1) ++v;
    long l = static_cast<long>(neg.size());
    o.expect(fredholm_index(n + 1, g, p1, n1, c1, codim) == 2 - 2 * g - 2 * l + ind, fmt::format("sample {}", it));
  }
  return o;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_ms; // 0: no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "EH sequences", 1, eh_sequences},
      {2, "ECH sequences", 1, ech_sequences},
      {3, "obstruction fixture", 0, obstruction_fixture},
      {4, "McDuff f asymptote", 10000, mcduff},
      {5, "closed-form capacities", 0, closed_forms},
      {6, "oracle equivalence", 30000, oracle_equivalence},
      {7, "stabilized obstructions", 0, stabilized},
      {8, "L-infinity engine properties", 60000, linfty_properties},
      {9, "gb_solver fixtures", 0, gb_fixtures},
      {10, "weight expansion", 0, weights},
      {11, "GW rewriting", 1000, gw_rewriting},
      {12, "index arithmetic", 0, index_arithmetic},
  };
  int failures = 0;
  for (auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && c.budget_ms > 0 && ms > c.budget_ms) {
      o.pass = false;
      o.detail = fmt::format("over the {} ms budget", c.budget_ms);
    }
    failures += !o.pass;
    fmt::print("{} {:2d} {} ({:.1f} ms){}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, ms,
               o.detail.empty() ? "" : ": " + o.detail);
  }
  return failures == 0 ? 0 : 1;
}
