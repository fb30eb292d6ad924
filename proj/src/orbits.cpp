#include "symcap/orbits.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace symcap {

namespace {

// floor(k a_j / a_i) with a_j perturbed upward relative to a_i when j > i
long perturbed_floor(long k, const Rational& aj, const Rational& ai, std::size_t j, std::size_t i) {
  Rational r = Rational(k) * aj / ai;
  long q = to_long(floor_of(r));
  if (is_integer(r) && j < i) --q;
  return q;
}

void sort_spectrum(std::vector<Orbit>& v) {
  std::stable_sort(v.begin(), v.end(), [](const Orbit& x, const Orbit& y) {
    if (x.action != y.action) return x.action < y.action;
    if (x.simple != y.simple) return x.simple < y.simple;
    return x.cz < y.cz;
  });
}

// number of lattice points i a + j b <= L
Integer lattice_count(const Rational& a, const Rational& b, const Rational& L) {
  Integer n = 0;
  for (Rational jb = 0; jb <= L; jb += b) n += floor_of((L - jb) / a) + 1;
  return n;
}

} // namespace

OrbitSpectrum ellipsoid_orbits(std::vector<Rational> a, const Rational& cutoff) {
  if (a.empty()) throw std::invalid_argument("ellipsoid needs at least one parameter");
  for (auto& x : a)
    if (x <= 0) throw std::invalid_argument("ellipsoid parameters must be positive");
  std::stable_sort(a.begin(), a.end());
  OrbitSpectrum s;
  s.n = static_cast<int>(a.size());
  s.domain = "E(";
  for (std::size_t j = 0; j < a.size(); ++j) s.domain += (j ? "," : "") + to_string(a[j]);
  s.domain += ")";
  s.hurwitz_slice = a.size() == 2 && a[0] < a[1];
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (long k = 1; Rational(k) * a[j] <= cutoff; ++k) {
      long cz = s.n - 1 + 2 * k;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (i != j) cz += 2 * perturbed_floor(k, a[j], a[i], j, i);
      std::string name = a.size() == 2 ? (j == 0 ? "alpha" : "beta") : "gamma" + std::to_string(j + 1);
      s.orbits.push_back({name + "_" + std::to_string(k), Rational(k) * a[j], cz, static_cast<int>(j), k,
                          s.hurwitz_slice && j == 0});
    }
  }
  sort_spectrum(s.orbits);
  return s;
}

OrbitSpectrum polydisk_orbits(const Rational& x, const Rational& cutoff) {
  if (x < 1) throw std::invalid_argument("polydisk P(1,x) needs x >= 1");
  OrbitSpectrum s;
  s.n = 2;
  s.domain = "P(1," + to_string(x) + ")";
  s.hurwitz_slice = true;
  for (long j = 0; Rational(j) * x <= cutoff; ++j)
    for (long i = 0; Rational(i) + Rational(j) * x <= cutoff; ++i) {
      if (i == 0 && j == 0) continue;
      Rational act = Rational(i) + Rational(j) * x;
      std::string idx = "_{" + std::to_string(i) + "," + std::to_string(j) + "}";
      int simple = j == 0 ? 0 : (i == 0 ? 1 : -1);
      long mult = j == 0 ? i : (i == 0 ? j : 1);
      s.orbits.push_back({"beta" + idx, act, 1 + 2 * i + 2 * j, simple, mult, j == 0});
      if (i >= 1 && j >= 1) s.orbits.push_back({"alpha" + idx, act, 2 * i + 2 * j, -1, 1, false});
    }
  sort_spectrum(s.orbits);
  return s;
}

std::vector<Rational> eh_sequence(const std::vector<EllipsoidParam>& a, long K) {
  using Item = std::pair<Rational, std::size_t>;
  auto cmp = [](const Item& x, const Item& y) { return x.first > y.first || (x.first == y.first && x.second > y.second); };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!a[j]) continue;
    if (*a[j] <= 0) throw std::invalid_argument("ellipsoid parameters must be positive");
    heap.push({*a[j], j});
  }
  if (heap.empty()) throw std::invalid_argument("all ellipsoid parameters are infinite");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(std::max(K, 0L)));
  while (static_cast<long>(out.size()) < K) {
    auto [v, j] = heap.top();
    heap.pop();
    out.push_back(v);
    heap.push({v + *a[j], j});
  }
  return out;
}

Rational capacity_sequence_EH(const std::vector<EllipsoidParam>& a, long k) {
  if (k < 1) throw std::invalid_argument("EH capacities are indexed from 1");
  return eh_sequence(a, k).back();
}

namespace {

std::vector<Rational> lattice_values(const Rational& a, const Rational& b, long k) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("ellipsoid parameters must be positive");
  if (k < 0) throw std::invalid_argument("ECH capacities are indexed from 0");
  Integer need = k + 1;
  Rational L = std::max(a, b);
  while (lattice_count(a, b, L) < need) L *= 2;
  std::vector<Rational> vals;
  for (Rational jb = 0; jb <= L; jb += b)
    for (Rational v = jb; v <= L; v += a) vals.push_back(v);
  return vals;
}

} // namespace

std::vector<Rational> ech_sequence(const Rational& a, const Rational& b, long K) {
  auto vals = lattice_values(a, b, K);
  std::sort(vals.begin(), vals.end());
  vals.resize(static_cast<std::size_t>(K + 1));
  return vals;
}

Rational capacity_sequence_ECH(const Rational& a, const Rational& b, long k) {
  auto vals = lattice_values(a, b, k);
  std::nth_element(vals.begin(), vals.begin() + k, vals.end());
  return vals[static_cast<std::size_t>(k)];
}

long fredholm_index(int n, int genus, std::span<const long> cz_pos, std::span<const long> cz_neg, long c1_term,
                    long constraint_codim) {
  long s = static_cast<long>(cz_pos.size() + cz_neg.size());
  long ind = static_cast<long>(n - 3) * (2 - 2 * genus - s);
  ind += std::accumulate(cz_pos.begin(), cz_pos.end(), 0L);
  ind -= std::accumulate(cz_neg.begin(), cz_neg.end(), 0L);
  return ind + 2 * c1_term - constraint_codim;
}

} // namespace symcap
