#include "symcap/gw.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace symcap {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  std::string t = trim(s);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw std::invalid_argument("bad " + what + ": '" + s + "'");
  return std::stol(t);
}

bool cp1_exceeds_degree(const ConstraintTerm& t) {
  if (t.surface != Surface::cp1) return false;
  for (auto& g : t.groups) {
    long contact = 0;
    for (long m : g) contact += m + 1;
    if (contact > t.cls.degrees[0]) return true;
  }
  return false;
}

bool irreducible(const ConstraintTerm& t) { return t.order_zero() || complex_dimension(t.surface) != 2; }

// (sum of orders, minus the number of order-zero branches): every rewrite
// step strictly lowers it
std::pair<long, long> measure(const ConstraintTerm& t) {
  long total = 0, zeros = 0;
  for (auto& g : t.groups)
    for (long m : g) {
      total += m;
      zeros += m == 0;
    }
  return {total, -zeros};
}

void accumulate(TermCombination& c, const ConstraintTerm& t, const Rational& v) {
  if (v == 0) return;
  auto [it, fresh] = c.emplace(t, v);
  if (!fresh) {
    it->second += v;
    if (it->second == 0) c.erase(it);
  }
}

} // namespace

Surface parse_surface(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (t == "CP2") return Surface::cp2;
  if (t == "CP1XCP1") return Surface::cp1xcp1;
  if (t == "CP1") return Surface::cp1;
  throw std::invalid_argument("unknown surface '" + text + "' (expected CP2, CP1xCP1 or CP1)");
}

std::string to_string(Surface s) {
  switch (s) {
    case Surface::cp2: return "CP2";
    case Surface::cp1xcp1: return "CP1xCP1";
    case Surface::cp1: return "CP1";
  }
  return "";
}

int complex_dimension(Surface s) { return s == Surface::cp1 ? 1 : 2; }

CurveClass CurveClass::parse(Surface s, const std::string& text) {
  CurveClass c;
  for (auto& part : split(text, ',')) c.degrees.push_back(parse_long(part, "curve class"));
  std::size_t want = s == Surface::cp1xcp1 ? 2 : 1;
  if (c.degrees.size() != want)
    throw std::invalid_argument(fmt::format("{} needs a class with {} entries, got '{}'", to_string(s), want, text));
  if (std::accumulate(c.degrees.begin(), c.degrees.end(), 0L) <= 0)
    throw std::invalid_argument("curve class must be nonzero");
  return c;
}

std::string CurveClass::str() const {
  std::string out;
  for (std::size_t i = 0; i < degrees.size(); ++i) out += (i ? "," : "") + std::to_string(degrees[i]);
  return out;
}

void ConstraintTerm::canonicalize() {
  for (auto& g : groups) std::sort(g.begin(), g.end(), std::greater<>());
  std::erase_if(groups, [](const PointGroup& g) { return g.empty(); });
  std::sort(groups.begin(), groups.end(), [](const PointGroup& a, const PointGroup& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a > b;
  });
}

long ConstraintTerm::codimension() const {
  int n = complex_dimension(surface);
  long c = 0;
  for (auto& g : groups)
    for (long m : g) c += 2 * n - 2 + 2 * m;
  return c;
}

long ConstraintTerm::index_dimension() const {
  int n = complex_dimension(surface);
  long c1 = 0;
  switch (surface) {
    case Surface::cp2: c1 = 3 * cls.degrees[0]; break;
    case Surface::cp1xcp1: c1 = 2 * cls.degrees[0] + 2 * cls.degrees[1]; break;
    case Surface::cp1: c1 = 2 * cls.degrees[0]; break;
  }
  return 2 * (n - 3) + 2 * c1;
}

bool ConstraintTerm::order_zero() const {
  for (auto& g : groups)
    for (long m : g)
      if (m != 0) return false;
  return true;
}

std::string ConstraintTerm::constraint_str() const {
  std::string out = "<";
  for (std::size_t i = 0; i < groups.size(); ++i) {
    out += i ? ",(" : "(";
    for (std::size_t j = 0; j < groups[i].size(); ++j) {
      if (j) out += ", ";
      long m = groups[i][j];
      out += m == 0 ? "p" : fmt::format("T^{} p", m);
    }
    out += ")";
  }
  return out + ">";
}

std::string ConstraintTerm::str() const { return to_string(surface) + " " + cls.str() + " " + constraint_str(); }

std::string to_string(const TermCombination& c) {
  if (c.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [t, v] : c) {
    bool neg = v < 0;
    Rational a = neg ? Rational(-v) : v;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (a != 1) out += to_string(a) + "*";
    out += t.constraint_str();
    first = false;
  }
  return out;
}

ConstraintTerm parse_constraint(Surface s, const CurveClass& cls, const std::string& text) {
  ConstraintTerm t;
  t.surface = s;
  t.cls = cls;
  std::string body = trim(text);
  if (body.size() < 2 || body.front() != '<' || body.back() != '>')
    throw std::invalid_argument("constraint must be enclosed in <...>: '" + text + "'");
  body = trim(body.substr(1, body.size() - 2));
  std::size_t pos = 0;
  while (pos < body.size()) {
    if (body[pos] != '(') throw std::invalid_argument("expected '(' in constraint '" + text + "'");
    auto close = body.find(')', pos);
    if (close == std::string::npos) throw std::invalid_argument("unbalanced '(' in constraint '" + text + "'");
    PointGroup g;
    std::string label;
    for (auto& raw : split(body.substr(pos + 1, close - pos - 1), ',')) {
      std::string br = trim(raw);
      long m = 0;
      if (!br.empty() && br[0] == 'T') {
        std::size_t i = 1;
        m = 1;
        if (i < br.size() && br[i] == '^') {
          std::size_t j = ++i;
          while (j < br.size() && std::isdigit(static_cast<unsigned char>(br[j]))) ++j;
          if (j == i) throw std::invalid_argument("missing tangency order in '" + br + "'");
          m = std::stol(br.substr(i, j - i));
          i = j;
        }
        br = trim(br.substr(i));
      }
      if (br.empty() || !std::all_of(br.begin(), br.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; }))
        throw std::invalid_argument("bad branch in constraint '" + text + "'");
      if (label.empty()) label = br;
      if (br != label) throw std::invalid_argument("branches of one group must share a point label: '" + text + "'");
      g.push_back(m);
    }
    t.groups.push_back(g);
    pos = close + 1;
    while (pos < body.size() && (body[pos] == ' ' || body[pos] == ',')) ++pos;
  }
  t.canonicalize();
  return t;
}

TermCombination push_point(const ConstraintTerm& t, std::size_t source, std::size_t target) {
  if (source >= t.groups.size()) throw std::out_of_range("source group out of range");
  if (t.groups[source].size() != 1) throw std::invalid_argument("source group of push_point must be a singleton");
  TermCombination out;
  if (target == t.groups.size()) {
    ConstraintTerm u = t;
    u.canonicalize();
    out.emplace(u, 1);
    return out;
  }
  if (target > t.groups.size() || target == source) throw std::invalid_argument("bad target group for push_point");
  long m = t.groups[source][0];
  auto rebuilt = [&](const PointGroup& merged) {
    ConstraintTerm u = t;
    u.groups[target] = merged;
    u.groups.erase(u.groups.begin() + static_cast<long>(source));
    u.canonicalize();
    return u;
  };
  PointGroup joined = t.groups[target];
  joined.push_back(m);
  accumulate(out, rebuilt(joined), 1);
  for (std::size_t i = 0; i < t.groups[target].size(); ++i) {
    PointGroup raised = t.groups[target];
    raised[i] += m + 1;
    accumulate(out, rebuilt(raised), 1);
  }
  return out;
}

bool vanishes(const ConstraintTerm& t) { return !t.rigid() || cp1_exceeds_degree(t); }

namespace {

// One rewrite of a term with a positive order: lowers the chosen branch to a
// plain point and accounts for it with a separate point of order one less.
TermCombination rewrite(const ConstraintTerm& t, std::size_t gi, std::size_t bi) {
  ConstraintTerm lowered = t;
  long v = lowered.groups[gi][bi];
  lowered.groups[gi][bi] = 0;
  lowered.groups.push_back({v - 1});
  std::size_t source = lowered.groups.size() - 1;
  TermCombination pushed = push_point(lowered, source, gi);
  auto self = pushed.find(t);
  if (self == pushed.end()) throw std::logic_error("rewrite does not reproduce " + t.str());
  Rational k = self->second;
  pushed.erase(self);
  lowered.canonicalize();
  TermCombination out;
  accumulate(out, lowered, Rational(1) / k);
  for (auto& [u, c] : pushed) accumulate(out, u, -c / k);
  return out;
}

} // namespace

TermCombination reduce(const TermCombination& expr, const ReduceOptions& opt) {
  for (auto& [t, c] : expr)
    if (!opt.formal && !t.rigid())
      throw std::invalid_argument(fmt::format("non-rigid term {}: codimension {} but index dimension {}", t.str(),
                                              t.codimension(), t.index_dimension()));
  std::mt19937_64 rng(opt.seed);
  TermCombination pending;
  std::set<std::pair<std::pair<long, long>, ConstraintTerm>> queue;
  auto push = [&](const ConstraintTerm& t, const Rational& c) {
    if (!pending.count(t)) queue.insert({measure(t), t});
    accumulate(pending, t, c);
  };
  for (auto& [t, c] : expr) {
    ConstraintTerm u = t;
    u.canonicalize();
    push(u, c);
  }
  TermCombination out;
  while (!queue.empty()) {
    auto node = std::prev(queue.end());
    ConstraintTerm t = node->second;
    queue.erase(node);
    auto it = pending.find(t);
    if (it == pending.end()) continue;
    Rational c = it->second;
    pending.erase(it);
    if (!opt.formal && vanishes(t)) continue;
    if (irreducible(t)) {
      accumulate(out, t, c);
      continue;
    }
    std::vector<std::pair<std::size_t, std::size_t>> choices;
    for (std::size_t g = 0; g < t.groups.size(); ++g)
      for (std::size_t b = 0; b < t.groups[g].size(); ++b)
        if (t.groups[g][b] > 0 && (b == 0 || t.groups[g][b] != t.groups[g][b - 1])) choices.push_back({g, b});
    auto pick = choices.front();
    if (opt.seed != 0) pick = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
    TermCombination step = rewrite(t, pick.first, pick.second);
    if (opt.on_rewrite) opt.on_rewrite(t, step);
    for (auto& [u, d] : step) {
      if (measure(u) >= measure(t)) throw std::logic_error("rewrite did not lower the measure of " + t.str());
      push(u, c * d);
    }
  }
  return out;
}

TermCombination reduce(const ConstraintTerm& t, const ReduceOptions& opt) {
  TermCombination c;
  c.emplace(t, 1);
  return reduce(c, opt);
}

BaseInvariantTable BaseInvariantTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open base table " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

BaseInvariantTable BaseInvariantTable::parse(const std::string& text) {
  BaseInvariantTable table;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto f = split(line, '\t');
    if (f.size() < 4) throw std::invalid_argument(fmt::format("base table line {}: expected tab-separated fields", lineno));
    Surface s = parse_surface(trim(f[0]));
    auto cls = CurveClass::parse(s, trim(f[1]));
    auto term = parse_constraint(s, cls, f[2]);
    std::string prov = f.size() > 4 ? trim(f[4]) : "";
    if (table.find(term)) throw std::invalid_argument(fmt::format("base table line {}: duplicate key {}", lineno, term.str()));
    table.insert(term, parse_rational(trim(f[3])), prov);
  }
  return table;
}

void BaseInvariantTable::insert(const ConstraintTerm& t, const Rational& v, const std::string& provenance) {
  ConstraintTerm u = t;
  u.canonicalize();
  entries_.insert_or_assign(u, Entry{v, provenance});
}

const BaseInvariantTable::Entry* BaseInvariantTable::find(const ConstraintTerm& t) const {
  auto it = entries_.find(t);
  return it == entries_.end() ? nullptr : &it->second;
}

MissingKeysError::MissingKeysError(std::vector<ConstraintTerm> k)
    : std::runtime_error([&] {
        std::string msg = "base table is missing:";
        for (auto& t : k) msg += "\n  " + t.str();
        return msg;
      }()),
      keys(std::move(k)) {}

Rational evaluate(const TermCombination& expr, const BaseInvariantTable& table) {
  Rational total = 0;
  std::vector<ConstraintTerm> missing;
  for (auto& [t, c] : expr) {
    if (vanishes(t)) continue;
    if (!irreducible(t)) throw std::invalid_argument("evaluate needs a reduced expression; got " + t.str());
    const auto* e = table.find(t);
    if (!e) {
      missing.push_back(t);
      continue;
    }
    total += c * e->value;
  }
  if (!missing.empty()) throw MissingKeysError(std::move(missing));
  return total;
}

ConstraintTerm cp2_tangency(long d) {
  ConstraintTerm t;
  t.surface = Surface::cp2;
  t.cls.degrees = {d};
  t.groups = {{3 * d - 2}};
  return t;
}

} // namespace symcap
