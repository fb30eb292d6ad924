#include "symcap/koszul.hpp"

#include <stdexcept>

namespace symcap {

GeneratorTable::GeneratorTable(std::vector<Generator> gens) : gens_(std::move(gens)) {
  std::sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) {
    if (a.action != b.action) return a.action < b.action;
    return a.name < b.name;
  });
  for (GenId i = 0; i < gens_.size(); ++i) {
    if (gens_[i].action < 0) throw std::invalid_argument("negative action for " + gens_[i].name);
    if (gens_[i].name.empty()) throw std::invalid_argument("empty generator name");
    if (!index_.emplace(gens_[i].name, i).second)
      throw std::invalid_argument("duplicate generator " + gens_[i].name);
  }
}

std::optional<GenId> GeneratorTable::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GenId GeneratorTable::id(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::invalid_argument("unknown generator " + name);
  return it->second;
}

int koszul_sign(std::span<const int> degrees, std::span<const std::size_t> sigma) {
  if (degrees.size() != sigma.size()) throw std::invalid_argument("koszul_sign: length mismatch");
  int s = 1;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j] && (parity(degrees[i]) & parity(degrees[j]))) s = -s;
  return s;
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> p) {
  std::vector<std::size_t> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv.at(p[i]) = i;
  return inv;
}

std::vector<std::vector<std::size_t>> shuffles(std::size_t i, std::size_t j) {
  const std::size_t n = i + j;
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return out;
  // choose the i-subset that goes first, in lexicographic order
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(i), true);
  do {
    std::vector<std::size_t> s;
    s.reserve(n);
    for (std::size_t p = 0; p < n; ++p)
      if (pick[p]) s.push_back(p);
    for (std::size_t p = 0; p < n; ++p)
      if (!pick[p]) s.push_back(p);
    out.push_back(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

int front_sign(std::span<const int> degrees, const std::vector<bool>& front) {
  int s = 1;
  int odd_back = 0; // odd letters left behind so far
  for (std::size_t p = 0; p < degrees.size(); ++p) {
    bool odd = parity(degrees[p]);
    if (front[p]) {
      if (odd && (odd_back & 1)) s = -s;
    } else if (odd) {
      ++odd_back;
    }
  }
  return s;
}

} // namespace symcap
