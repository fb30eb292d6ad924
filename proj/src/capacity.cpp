#include "symcap/capacity.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace symcap {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

Rational ceil_div(long a, long b) { return Rational(ceil_of(make_rational(a, b))); }

} // namespace

DomainDescriptor DomainDescriptor::ellipsoid(const Rational& a, const Rational& b) {
  DomainDescriptor d{Kind::ellipsoid, {std::min(a, b), std::max(a, b)}};
  return d;
}

DomainDescriptor DomainDescriptor::polydisk(const Rational& a, const Rational& b) {
  return {Kind::polydisk, {std::min(a, b), std::max(a, b)}};
}

DomainDescriptor DomainDescriptor::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::vector<EllipsoidParam> params;
  if (colon != std::string::npos) {
    for (auto& part : split(text.substr(colon + 1), ',')) {
      if (part == "inf")
        params.push_back(std::nullopt);
      else
        params.push_back(parse_rational(part));
    }
  }
  for (auto& p : params)
    if (p && *p <= 0) throw std::invalid_argument("domain parameters must be positive: " + text);
  auto by_size = [](const EllipsoidParam& x, const EllipsoidParam& y) { return x && (!y || *x < *y); };
  if (kind == "B") {
    if (params.empty()) params.push_back(Rational(1));
    if (params.size() != 1 || !params[0]) throw std::invalid_argument("ball takes one finite area: " + text);
    return {Kind::ball, params};
  }
  if (kind == "E") {
    if (params.size() < 2) throw std::invalid_argument("ellipsoid needs at least two parameters: " + text);
    std::stable_sort(params.begin(), params.end(), by_size);
    return {Kind::ellipsoid, params};
  }
  if (kind == "P") {
    if (params.size() != 2 || !params[0] || !params[1])
      throw std::invalid_argument("polydisk takes two finite parameters: " + text);
    std::stable_sort(params.begin(), params.end(), by_size);
    return {Kind::polydisk, params};
  }
  throw std::invalid_argument("unknown domain kind: " + text);
}

std::string DomainDescriptor::str() const {
  std::string s = kind == Kind::ball ? "B" : kind == Kind::ellipsoid ? "E" : "P";
  for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : ":") + (params[i] ? to_string(*params[i]) : "inf");
  return s;
}

bool DomainDescriptor::finite() const {
  return std::all_of(params.begin(), params.end(), [](auto& p) { return p.has_value(); });
}

std::vector<Rational> DomainDescriptor::finite_params() const {
  std::vector<Rational> out;
  for (auto& p : params) {
    if (!p) throw std::invalid_argument("domain " + str() + " has an infinite factor");
    out.push_back(*p);
  }
  return out;
}

std::vector<EllipsoidParam> DomainDescriptor::ellipsoid_params() const {
  switch (kind) {
  case Kind::ball: return {params[0], params[0]};
  case Kind::ellipsoid: return params;
  default: throw std::invalid_argument("polydisks have no ellipsoid parameters");
  }
}

std::optional<Rational> g_tangency(const DomainDescriptor& d, long k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  auto ball = [&](const Rational& c) -> std::optional<Rational> {
    if (k % 3 != 2) return std::nullopt;
    return c * ceil_div(k + 1, 3);
  };
  if (d.kind == DomainDescriptor::Kind::ball) return ball(*d.params[0]);
  auto p = d.finite_params();
  if (p.size() != 2) throw std::invalid_argument("closed forms are only known in dimension four");
  const Rational& a = p[0];
  Rational x = p[1] / a;
  if (d.kind == DomainDescriptor::Kind::ellipsoid) {
    if (x == 1) return ball(a);
    if (Rational(k) > x) return std::nullopt;
    return a * k;
  }
  if (k % 2 == 0) return std::nullopt;
  Rational v = x + ceil_div(k - 1, 2);
  return a * std::min(Rational(k), v);
}

Rational r_points_ball(long r) {
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  return ceil_div(r + 1, 3);
}

SpectralResult spectral_lower_bound(const OrbitSpectrum& s, long constraint_codim, ConstraintKind kind,
                                    const Rational& action_cutoff, std::optional<std::size_t> max_ends) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < s.orbits.size(); ++i) {
    if (s.orbits[i].action <= 0) throw std::invalid_argument("orbit actions must be positive");
    if (s.orbits[i].action <= action_cutoff) usable.push_back(i);
  }
  if (usable.empty()) throw std::invalid_argument("action cutoff is below every orbit of the spectrum");
  Rational min_action = s.orbits[usable.front()].action;
  for (auto i : usable) min_action = std::min(min_action, s.orbits[i].action);
  std::size_t end_bound = static_cast<std::size_t>(to_long(floor_of(action_cutoff / min_action)));
  if (max_ends) end_bound = std::min(end_bound, *max_ends);

  // (number of ends, CZ sum, slice multiplicity or -1 once an end leaves the slice)
  using Key = std::tuple<long, long, long>;
  struct Best {
    Rational action;
    std::vector<std::size_t> ends;
  };
  std::map<Key, Best> best;
  best[{0, 0, 0}] = {Rational(0), {}};
  for (auto idx : usable) {
    const Orbit& o = s.orbits[idx];
    std::map<Key, Best> frontier = best;
    while (!frontier.empty()) {
      std::map<Key, Best> next;
      for (auto& [key, b] : frontier) {
        auto [k, cz, sl] = key;
        if (static_cast<std::size_t>(k) + 1 > end_bound) continue;
        Rational act = b.action + o.action;
        if (act > action_cutoff) continue;
        long nsl = (sl >= 0 && o.in_slice) ? sl + o.multiplicity : -1;
        Key nk{k + 1, cz + o.cz, nsl};
        auto it = best.find(nk);
        if (it != best.end() && it->second.action <= act) continue;
        Best nb{act, b.ends};
        nb.ends.push_back(idx);
        best[nk] = nb;
        next[nk] = std::move(nb);
      }
      frontier = std::move(next);
    }
  }

  long contact = (constraint_codim - (2 * s.n - 2)) / 2 + 1;
  SpectralResult out;
  std::size_t best_ends = 0;
  for (auto& [key, b] : best) {
    auto [k, cz, sl] = key;
    if (k == 0) continue;
    if (static_cast<long>(s.n - 3) * (2 - k) + cz - constraint_codim != 0) continue;
    if (kind == ConstraintKind::tangency && s.hurwitz_slice && sl >= 0 && sl != contact) continue;
    if (!out.value || b.action < *out.value || (b.action == *out.value && b.ends.size() < best_ends)) {
      out.value = b.action;
      best_ends = b.ends.size();
      out.ends.clear();
      for (auto i : b.ends) out.ends.push_back(s.orbits[i]);
    }
  }
  return out;
}

BarElement parse_codomain_word(const LInfinityModel& codomain, const std::string& text) {
  BarElement out;
  std::string t = text;
  // normalize " - " into " + -"
  for (std::size_t pos = 0; (pos = t.find(" - ", pos)) != std::string::npos; pos += 4) t.replace(pos, 3, " + -");
  std::size_t start = 0;
  while (true) {
    std::size_t end = t.find(" + ", start);
    std::string term = t.substr(start, end == std::string::npos ? std::string::npos : end - start);
    Rational c = 1;
    auto star = term.find('*');
    if (star != std::string::npos) {
      std::string cs = term.substr(0, star);
      c = cs == "-" ? Rational(-1) : parse_rational(cs);
      term = term.substr(star + 1);
    } else if (!term.empty() && term[0] == '-') {
      c = -1;
      term = term.substr(1);
    }
    if (term.empty()) throw std::invalid_argument("empty term in " + text);
    std::vector<Word> letters;
    for (auto& name : split(term, '.')) letters.push_back(codomain.letter(name));
    auto sw = normalize_bar(codomain, letters);
    if (sw.sign != 0) add_term(out, sw.word, codomain.scalar(c * sw.sign));
    if (end == std::string::npos) break;
    start = end + 3;
  }
  if (out.empty()) throw std::invalid_argument("the element " + text + " is zero");
  return out;
}

namespace {

void words_below(const LInfinityModel& m, const Rational& cutoff, std::size_t cap, std::vector<GenId>& cur,
                 Rational act, GenId from, std::vector<BarWord>& out) {
  if (!cur.empty()) {
    BarWord w;
    for (auto g : cur) w.letters.push_back(Word{{g}});
    out.push_back(std::move(w));
  }
  if (cur.size() == cap) return;
  const auto& gens = m.generators();
  for (GenId g = from; g < gens.size(); ++g) {
    Rational na = act + gens[g].action;
    if (na > cutoff) break; // generators are sorted by action
    if (!cur.empty() && cur.back() == g && parity(gens.degree(g))) continue;
    cur.push_back(g);
    words_below(m, cutoff, cap, cur, na, g, out);
    cur.pop_back();
  }
}

} // namespace

GbResult gb_solver(ModelPtr m, const std::string& augmentation, const std::string& b_text,
                   std::optional<std::size_t> word_cap, const Rational& action_cutoff) {
  if (m->is_cdga()) throw std::invalid_argument("gb_solver expects a module-mode model");
  if (!m->flags().filtered) throw std::invalid_argument("gb_solver needs a filtered model");
  for (auto& g : m->generators().all())
    if (g.action <= 0) throw std::invalid_argument("generator " + g.name + " has nonpositive action");
  auto eps = augmentation_morphism(m, augmentation);
  const LInfinityModel& cod = *eps->target();
  BarElement b = parse_codomain_word(cod, b_text);

  std::size_t cap = word_cap.value_or(static_cast<std::size_t>(-1));
  std::vector<BarWord> words;
  std::vector<GenId> cur;
  words_below(*m, action_cutoff, cap, cur, Rational(0), 0, words);
  std::stable_sort(words.begin(), words.end(),
                   [&](const BarWord& x, const BarWord& y) { return m->bar_action(x) < m->bar_action(y); });

  // columns: words; rows: coefficients of l(x) and of eps(x)
  std::map<BarWord, std::map<std::size_t, Rational>> lrows, erows;
  for (std::size_t j = 0; j < words.size(); ++j) {
    for (auto& [u, c] : extend_coderivation(*m, words[j])) {
      Rational v = c.at_one();
      if (v != 0) lrows[u][j] += v;
    }
    for (auto& [u, c] : extend_morphism(*eps, words[j])) {
      Rational v = c.at_one();
      if (v != 0) erows[u][j] += v;
    }
  }
  for (auto& [u, c] : b) erows[u];

  GbResult out;
  std::optional<Rational> last;
  for (std::size_t n = 1; n <= words.size(); ++n) {
    Rational level = m->bar_action(words[n - 1]);
    if (n < words.size() && m->bar_action(words[n]) == level) continue;
    SparseSystem sys;
    sys.columns = n;
    auto restrict = [&](const std::map<std::size_t, Rational>& row) {
      std::map<std::size_t, Rational> r;
      for (auto& [j, v] : row)
        if (j < n) r.emplace(j, v);
      return r;
    };
    for (auto& [u, row] : lrows) sys.add_row(restrict(row), Rational(0));
    for (auto& [u, row] : erows) {
      auto it = b.find(u);
      sys.add_row(restrict(row), it == b.end() ? Rational(0) : it->second.at_one());
    }
    if (auto x = solve(std::move(sys))) {
      out.value = level;
      for (std::size_t j = 0; j < n; ++j)
        if ((*x)[j] != 0) add_term(out.cycle, words[j], m->scalar((*x)[j]));
      return out;
    }
  }
  return out;
}

std::size_t SparseSystem::add_row(std::map<std::size_t, Rational> row, Rational value) {
  std::erase_if(row, [](auto& kv) { return kv.second == 0; });
  for (auto& [j, v] : row) columns = std::max(columns, j + 1);
  rows.push_back(std::move(row));
  rhs.push_back(std::move(value));
  return rows.size() - 1;
}

std::optional<std::vector<Rational>> solve(SparseSystem sys) {
  // row echelon form with the pivot in the smallest remaining column
  std::vector<std::size_t> pivot_col;
  std::vector<std::map<std::size_t, Rational>> piv_rows;
  std::vector<Rational> piv_rhs;
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    auto row = std::move(sys.rows[r]);
    Rational val = std::move(sys.rhs[r]);
    // reduce against earlier pivots, in pivot order
    bool changed = true;
    while (changed && !row.empty()) {
      changed = false;
      for (std::size_t p = 0; p < piv_rows.size(); ++p) {
        auto it = row.find(pivot_col[p]);
        if (it == row.end()) continue;
        Rational f = it->second;
        for (auto& [j, v] : piv_rows[p]) {
          Rational nv = row[j] - f * v;
          if (nv == 0)
            row.erase(j);
          else
            row[j] = nv;
        }
        val -= f * piv_rhs[p];
        changed = true;
      }
    }
    if (row.empty()) {
      if (val != 0) return std::nullopt;
      continue;
    }
    auto [col, lead] = *row.begin();
    Rational inv = 1 / lead;
    for (auto& [j, v] : row) v *= inv;
    val *= inv;
    // keep pivots fully reduced so back substitution is direct
    for (std::size_t p = 0; p < piv_rows.size(); ++p) {
      auto it = piv_rows[p].find(col);
      if (it == piv_rows[p].end()) continue;
      Rational f = it->second;
      for (auto& [j, v] : row) {
        Rational nv = piv_rows[p][j] - f * v;
        if (nv == 0)
          piv_rows[p].erase(j);
        else
          piv_rows[p][j] = nv;
      }
      piv_rhs[p] -= f * val;
    }
    pivot_col.push_back(col);
    piv_rows.push_back(std::move(row));
    piv_rhs.push_back(std::move(val));
  }
  std::vector<Rational> x(sys.columns, Rational(0));
  for (std::size_t p = 0; p < piv_rows.size(); ++p) x[pivot_col[p]] = piv_rhs[p];
  return x;
}

Witnessed mcduff_f(const Rational& x, long K) {
  if (x < 1) throw std::invalid_argument("mcduff_f needs x >= 1");
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  auto e = ech_sequence(Rational(1), x, K);
  auto b = ech_sequence(Rational(1), Rational(1), K);
  Witnessed w{Rational(0), 0};
  for (long k = 1; k <= K; ++k) {
    Rational r = e[k] / b[k];
    if (r > w.value) w = {r, k};
  }
  return w;
}

std::vector<Rational> weight_decomposition(long p, long q) {
  if (p <= 0 || q <= 0) throw std::invalid_argument("weight expansion needs positive p and q");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("weight expansion needs gcd(p,q) = 1");
  if (p < q) throw std::invalid_argument("weight expansion needs p/q >= 1");
  std::vector<Rational> out;
  long a = p, b = q;
  while (b > 0) {
    for (long i = 0; i < a / b; ++i) out.push_back(make_rational(b, q));
    long r = a % b;
    a = b;
    b = r;
  }
  return out;
}

Rational packing_lower_bound(std::vector<Rational> weights, PackingQuery query, long k) {
  if (weights.empty()) throw std::invalid_argument("no weights given");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::sort(weights.begin(), weights.end(), std::greater<>());
  switch (query) {
  case PackingQuery::g_tangency: return weights[0] * ceil_div(k + 1, 3);
  case PackingQuery::r_multipoint: return weights[0] * k;
  case PackingQuery::r_points: break;
  }
  // dp[j]: best value with j points placed in the balls seen so far
  std::vector<std::optional<Rational>> dp(static_cast<std::size_t>(k + 1));
  dp[0] = Rational(0);
  for (auto& a : weights) {
    auto nd = dp;
    for (long used = 0; used <= k; ++used) {
      if (!dp[used]) continue;
      for (long j = 1; used + j <= k; ++j) {
        Rational v = *dp[used] + a * ceil_div(j + 1, 3);
        auto& slot = nd[used + j];
        if (!slot || v > *slot) slot = v;
      }
    }
    dp = std::move(nd);
  }
  return *dp[k];
}

Witnessed stabilized_obstruction(const DomainDescriptor& source, TargetFamily target, long k_max) {
  DomainDescriptor unit = target == TargetFamily::ball ? DomainDescriptor::ball(1) : DomainDescriptor::polydisk(1, 1);
  std::optional<Witnessed> best;
  for (long k = 1; k <= k_max; ++k) {
    auto s = g_tangency(source, k);
    auto t = g_tangency(unit, k);
    if (!s || !t) continue;
    Rational r = *s / *t;
    if (!best || r > best->value) best = Witnessed{r, k};
  }
  if (!best) throw std::invalid_argument("no k has closed forms for both source and target");
  return *best;
}

std::optional<long> obstruct_4d_ellipsoid(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                                          long K) {
  auto s = ech_sequence(a, b, K);
  auto t = ech_sequence(c, d, K);
  for (long k = 1; k <= K; ++k)
    if (s[k] > t[k]) return k;
  return std::nullopt;
}

} // namespace symcap
