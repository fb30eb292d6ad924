#include "symcap/linfty.hpp"

#include <fmt/format.h>

namespace symcap {

LInfinityModel::LInfinityModel(std::vector<Generator> gens, ModelFlags flags)
    : gens_(std::move(gens)), flags_(std::move(flags)) {
  if (flags_.cutoff && *flags_.cutoff <= 0) throw std::invalid_argument("cutoff must be positive");
}

int LInfinityModel::degree(const Word& w) const {
  int d = 0;
  for (GenId g : w.letters) d += gens_.degree(g);
  return d;
}

Rational LInfinityModel::action(const Word& w) const {
  Rational a = 0;
  for (GenId g : w.letters) a += gens_[g].action;
  return a;
}

int LInfinityModel::bar_degree(const BarWord& w) const {
  int d = 0;
  for (auto& l : w.letters) d += degree(l);
  return d;
}

Rational LInfinityModel::bar_action(const BarWord& w) const {
  Rational a = 0;
  for (auto& l : w.letters) a += action(l);
  return a;
}

Signed<GenId> LInfinityModel::signed_word(const std::vector<std::string>& names) const {
  std::vector<GenId> ids;
  ids.reserve(names.size());
  for (auto& n : names) ids.push_back(gens_.id(n));
  return normalize(std::move(ids), [&](GenId g) { return gens_.degree(g); });
}

Word LInfinityModel::word(const std::vector<std::string>& names) const {
  auto s = signed_word(names);
  if (s.sign == 0) throw std::invalid_argument("word with a repeated odd generator is zero");
  return s.word;
}

Signed<GenId> LInfinityModel::multiply(const std::vector<const Word*>& factors) const {
  std::vector<GenId> all;
  for (auto* f : factors) all.insert(all.end(), f->letters.begin(), f->letters.end());
  return normalize(std::move(all), [&](GenId g) { return gens_.degree(g); });
}

void LInfinityModel::add_operation(const Word& input, const Element& output) {
  if (input.empty()) throw std::invalid_argument("operations need at least one input");
  for (GenId g : input.letters)
    if (g >= gens_.size()) throw std::invalid_argument("operation input references unknown generator");
  auto& slot = ops_[input];
  for (auto& [w, c] : output) {
    if (!is_cdga() && w.size() != 1)
      throw std::invalid_argument("module-mode operations must output single generators");
    add_term(slot, w, c.truncated(flags_.cutoff));
  }
  if (slot.empty()) ops_.erase(input);
}

void LInfinityModel::add_operation(const std::vector<std::string>& input,
                                   const std::vector<std::pair<std::vector<std::string>, Coeff>>& output) {
  auto in = signed_word(input);
  if (in.sign == 0) throw std::invalid_argument("operation input is the zero word");
  Element out;
  for (auto& [names, c] : output) {
    auto w = signed_word(names);
    if (w.sign == 0) continue;
    // l^k is stored on the canonical input; reordering the input costs its sign
    add_term(out, w.word, c * Rational(w.sign * in.sign));
  }
  add_operation(in.word, out);
}

std::size_t LInfinityModel::max_arity() const {
  std::size_t k = 0;
  for (auto& [w, _] : ops_) k = std::max(k, w.size());
  return k;
}

void LInfinityModel::add_augmentation(AugmentationData aug) {
  for (auto& a : augs_)
    if (a.name == aug.name) throw std::invalid_argument("duplicate augmentation " + aug.name);
  augs_.push_back(std::move(aug));
}

const AugmentationData& LInfinityModel::augmentation(const std::string& name) const {
  for (auto& a : augs_)
    if (a.name == name) return a;
  throw std::invalid_argument("unknown augmentation " + name);
}

void LInfinityModel::validate() const {
  for (auto& [in, out] : ops_) {
    int din = degree(in);
    Rational ain = action(in);
    for (auto& [w, c] : out) {
      int dout = degree(w);
      bool ok = flags_.grading == GradingMode::integer ? dout == din + 1 : parity(dout) == parity(din + 1);
      if (!ok)
        throw IntegrityError(fmt::format("operation on {} does not raise degree by one (output {})",
                                         letter_str(in), letter_str(w)));
      if (flags_.filtered) {
        auto v = c.valuation();
        if (v && *v + action(w) < ain)
          throw IntegrityError(fmt::format("operation on {} violates the action filtration", letter_str(in)));
      }
    }
  }
  for (auto& aug : augs_) {
    for (auto& [in, out] : aug.components) {
      for (GenId g : in.letters)
        if (g >= gens_.size()) throw IntegrityError("augmentation references unknown generator");
      for (auto& [name, c] : out) {
        bool found = false;
        for (auto& cg : aug.codomain) found |= cg.name == name;
        if (!found) throw IntegrityError("augmentation " + aug.name + " uses unknown codomain element " + name);
      }
    }
  }
}

Element LInfinityModel::apply(std::span<const Word> letters) const {
  Element result;
  const std::size_t k = letters.size();
  if (k == 0) return result;
  auto deg = [&](GenId g) { return gens_.degree(g); };

  if (!is_cdga()) {
    Word key;
    for (auto& l : letters) {
      if (l.size() != 1) throw std::invalid_argument("module-mode letters are single generators");
      key.letters.push_back(l[0]);
    }
    auto s = normalize(key.letters, deg);
    if (s.sign == 0) return result;
    auto it = ops_.find(s.word);
    if (it == ops_.end()) return result;
    for (auto& [w, c] : it->second) add_term(result, w, c * Rational(s.sign));
    return result;
  }

  // Leibniz extension: pick one generator x_i out of every input word,
  // rewrite (x_1 r_1)...(x_k r_k) = +-(x_1...x_k)(r_1...r_k) and apply l^k
  // to the picked generators.
  for (auto& l : letters)
    if (l.empty()) return result;
  std::vector<std::size_t> choice(k, 0);
  while (true) {
    int sign = 1;
    std::vector<GenId> xs(k);
    std::vector<Word> rs(k);
    std::vector<int> px(k), pr(k);
    for (std::size_t i = 0; i < k; ++i) {
      const Word& l = letters[i];
      std::size_t j = choice[i];
      xs[i] = l[j];
      px[i] = parity(deg(xs[i]));
      int before = 0;
      for (std::size_t t = 0; t < l.size(); ++t) {
        if (t < j) before += parity(deg(l[t]));
        if (t != j) rs[i].letters.push_back(l[t]);
      }
      if (px[i] && (before & 1)) sign = -sign;
      pr[i] = parity(degree(rs[i]));
    }
    int later = 0;
    for (std::size_t i = k; i-- > 0;) {
      if (pr[i] && (later & 1)) sign = -sign;
      later += px[i];
    }
    auto key = normalize(xs, deg);
    if (key.sign != 0) {
      auto it = ops_.find(key.word);
      if (it != ops_.end()) {
        for (auto& [w, c] : it->second) {
          std::vector<const Word*> fs{&w};
          for (auto& r : rs) fs.push_back(&r);
          auto prod = multiply(fs);
          if (prod.sign == 0) continue;
          add_term(result, prod.word, c * Rational(sign * key.sign * prod.sign));
        }
      }
    }
    // next choice
    std::size_t i = 0;
    while (i < k && ++choice[i] == letters[i].size()) choice[i++] = 0;
    if (i == k) break;
  }
  return result;
}

std::string LInfinityModel::letter_str(const Word& w) const {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += gens_[w[i]].name;
  }
  if (!is_cdga()) return s;
  return "[" + (w.empty() ? std::string("1") : s) + "]";
}

std::string LInfinityModel::bar_str(const BarWord& w) const {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += letter_str(w[i]);
  }
  return s;
}

std::string LInfinityModel::element_str(const Element& e) const {
  if (e.empty()) return "0";
  std::string s;
  for (auto& [w, c] : e) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")" + letter_str(w);
  }
  return s;
}

std::string LInfinityModel::bar_element_str(const BarElement& e) const {
  if (e.empty()) return "0";
  std::string s;
  for (auto& [w, c] : e) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")" + bar_str(w);
  }
  return s;
}

Signed<Word> normalize_bar(const LInfinityModel& m, std::vector<Word> letters) {
  return normalize(std::move(letters), [&](const Word& l) { return m.degree(l); });
}

} // namespace symcap
