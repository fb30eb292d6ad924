#pragma once

#include "symcap/novikov.hpp"
#include "symcap/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace symcap {

using GenId = std::uint32_t;

struct Generator {
  std::string name;
  int degree = 0;
  Rational action = 0;
  bool operator==(const Generator&) const = default;
};

inline int parity(long d) { return static_cast<int>(((d % 2) + 2) % 2); }

// Generators sorted by (action, name); GenId is the position in that order.
class GeneratorTable {
public:
  GeneratorTable() = default;
  explicit GeneratorTable(std::vector<Generator> gens);

  std::size_t size() const { return gens_.size(); }
  const Generator& operator[](GenId id) const { return gens_.at(id); }
  const std::vector<Generator>& all() const { return gens_; }
  std::optional<GenId> find(const std::string& name) const;
  GenId id(const std::string& name) const; // throws on unknown names
  int degree(GenId id) const { return gens_[id].degree; }

private:
  std::vector<Generator> gens_;
  std::unordered_map<std::string, GenId> index_;
};

// A canonical symmetric word: letters kept in the fixed total order.
// Used for generator monomials (letters are GenId) and for bar words
// (letters are themselves words).
template <class L>
struct SymWord {
  std::vector<L> letters;
  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  const L& operator[](std::size_t i) const { return letters[i]; }
  auto operator<=>(const SymWord&) const = default;
  bool operator==(const SymWord&) const = default;
};

using Word = SymWord<GenId>;
using BarWord = SymWord<Word>;

// (-1)^{sum |v_i||v_j|} over i<j with sigma(i) > sigma(j); sigma[i] is the
// new position of letter i.
int koszul_sign(std::span<const int> degrees, std::span<const std::size_t> sigma);

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> p);

// All (i,j)-shuffles. Each entry s lists, for every output position p, the
// original index s[p]; s[0..i) and s[i..i+j) are increasing.
std::vector<std::vector<std::size_t>> shuffles(std::size_t i, std::size_t j);

// Sign of moving the letters flagged in `front` to the front, keeping the
// relative order inside both parts.
int front_sign(std::span<const int> degrees, const std::vector<bool>& front);

// Sorts letters into canonical order. Returns the Koszul sign, or 0 when an
// odd letter repeats (the zero word).
template <class L, class DegFn>
int sort_letters(std::vector<L>& letters, DegFn&& deg) {
  const std::size_t n = letters.size();
  std::vector<int> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = parity(deg(letters[i]));
  int sign = 1;
  // insertion sort, tracking transpositions of adjacent letters
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i; j > 0 && letters[j] < letters[j - 1]; --j) {
      std::swap(letters[j], letters[j - 1]);
      std::swap(d[j], d[j - 1]);
      if (d[j] & d[j - 1]) sign = -sign;
    }
  }
  for (std::size_t i = 1; i < n; ++i)
    if (d[i] && letters[i] == letters[i - 1]) return 0;
  return sign;
}

template <class L>
struct Signed {
  SymWord<L> word;
  int sign = 0; // 0 means the zero word
};

template <class L, class DegFn>
Signed<L> normalize(std::vector<L> letters, DegFn&& deg) {
  int s = sort_letters(letters, deg);
  return {SymWord<L>{std::move(letters)}, s};
}

template <class L>
struct Split {
  SymWord<L> left, right;
  int sign;
};

// Reduced coproduct: one entry per shuffle splitting into two nonempty parts.
template <class L, class DegFn>
std::vector<Split<L>> coproduct(const SymWord<L>& w, DegFn&& deg) {
  std::vector<Split<L>> out;
  const std::size_t n = w.size();
  if (n < 2) return out;
  std::vector<int> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = deg(w[i]);
  for (std::size_t i = 1; i < n; ++i) {
    for (auto& s : shuffles(i, n - i)) {
      std::vector<bool> front(n, false);
      for (std::size_t p = 0; p < i; ++p) front[s[p]] = true;
      Split<L> sp;
      for (std::size_t p = 0; p < n; ++p) (p < i ? sp.left : sp.right).letters.push_back(w[s[p]]);
      sp.sign = front_sign(d, front);
      out.push_back(std::move(sp));
    }
  }
  return out;
}

// mu = product of factorials of letter multiplicities.
template <class L>
Integer multiplicity_factor(const SymWord<L>& w) {
  Integer mu = 1;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= w.size(); ++i) {
    if (i < w.size() && w[i] == w[i - 1]) {
      ++run;
      mu *= static_cast<unsigned long>(run);
    } else {
      run = 1;
    }
  }
  return mu;
}

// Linear combinations with Novikov coefficients.
template <class K>
using Combination = std::map<K, NovikovPolynomial>;

template <class K>
void add_term(Combination<K>& c, const K& key, const NovikovPolynomial& coeff) {
  if (coeff.is_zero()) return;
  auto [it, fresh] = c.try_emplace(key, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second.is_zero()) c.erase(it);
  }
}

template <class K>
void add_into(Combination<K>& acc, const Combination<K>& c, const NovikovPolynomial& scale) {
  for (auto& [k, v] : c) add_term(acc, k, v * scale);
}

template <class K>
void add_into(Combination<K>& acc, const Combination<K>& c) {
  for (auto& [k, v] : c) add_term(acc, k, v);
}

} // namespace symcap
