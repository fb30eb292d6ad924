#include "symcap/linfty.hpp"

#include <fmt/format.h>

namespace symcap {

namespace {

std::vector<int> letter_degrees(const LInfinityModel& m, const BarWord& w) {
  std::vector<int> d(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) d[i] = m.degree(w[i]);
  return d;
}

} // namespace

BarElement extend_coderivation(const LInfinityModel& m, const BarWord& w) {
  if (w.empty()) throw std::invalid_argument("the empty word is not in the reduced bar complex");
  const std::size_t n = w.size();
  if (n > 20) throw std::invalid_argument("bar word too long");
  auto degs = letter_degrees(m, w);
  BarElement out;
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    std::vector<bool> front(n);
    std::vector<Word> in, rest;
    for (std::size_t p = 0; p < n; ++p) {
      front[p] = (mask >> p) & 1;
      (front[p] ? in : rest).push_back(w[p]);
    }
    Element y = m.apply(in);
    if (y.empty()) continue;
    int s = front_sign(degs, front);
    for (auto& [letter, c] : y) {
      std::vector<Word> letters{letter};
      letters.insert(letters.end(), rest.begin(), rest.end());
      auto nw = normalize_bar(m, std::move(letters));
      if (nw.sign == 0) continue;
      add_term(out, nw.word, c * Rational(s * nw.sign));
    }
  }
  return out;
}

BarElement extend_coderivation(const LInfinityModel& m, const BarElement& x) {
  BarElement out;
  for (auto& [w, c] : x) add_into(out, extend_coderivation(m, w), c);
  return out;
}

namespace {

// Nonempty generator words of length <= max_gens (odd generators not repeated).
void gen_words(const LInfinityModel& m, std::size_t max_gens, std::vector<Word>& out) {
  const std::size_t g = m.generators().size();
  std::vector<GenId> cur;
  std::function<void(GenId)> rec = [&](GenId start) {
    if (!cur.empty()) out.push_back(Word{cur});
    if (cur.size() == max_gens) return;
    for (GenId i = start; i < g; ++i) {
      bool odd = parity(m.generators().degree(i));
      if (odd && !cur.empty() && cur.back() == i) continue;
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
}

} // namespace

std::vector<BarWord> basis_words(const LInfinityModel& m, std::size_t max_len) {
  std::vector<Word> letters;
  if (m.is_cdga()) {
    gen_words(m, max_len, letters);
  } else {
    for (GenId i = 0; i < m.generators().size(); ++i) letters.push_back(Word{{i}});
  }
  std::vector<BarWord> out;
  std::vector<Word> cur;
  std::size_t gens = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (!cur.empty()) out.push_back(BarWord{cur});
    if (cur.size() == max_len) return;
    for (std::size_t i = start; i < letters.size(); ++i) {
      const Word& l = letters[i];
      if (gens + l.size() > max_len) continue;
      bool odd = parity(m.degree(l));
      if (odd && !cur.empty() && cur.back() == l) continue;
      cur.push_back(l);
      gens += l.size();
      rec(i);
      gens -= l.size();
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Violation> check_linfty_relations(const LInfinityModel& m, std::size_t max_word_len) {
  if (max_word_len < 1) throw std::invalid_argument("max_word_len must be at least 1");
  std::vector<Violation> out;
  for (auto& w : basis_words(m, max_word_len)) {
    auto r = extend_coderivation(m, extend_coderivation(m, w));
    if (!r.empty())
      out.push_back({w, r, fmt::format("l^2 != 0 on {}: {}", m.bar_str(w), m.bar_element_str(r))});
  }
  return out;
}

std::optional<Rational> filtration_level(const LInfinityModel& m, const BarElement& x) {
  std::optional<Rational> best;
  for (auto& [w, c] : x) {
    Rational lvl = *c.valuation() + m.bar_action(w);
    if (!best || lvl < *best) best = lvl;
  }
  return best;
}

// ---------------------------------------------------------------- morphisms

void SparseMorphism::add_component(const BarWord& input, const Element& output) {
  if (input.empty()) throw std::invalid_argument("morphism components need inputs");
  auto& slot = comps_[input];
  for (auto& [w, c] : output) add_term(slot, w, c.truncated(target()->cutoff()));
  if (slot.empty()) comps_.erase(input);
}

void SparseMorphism::add_component(const std::vector<std::string>& input,
                                   const std::vector<std::pair<std::string, Coeff>>& output) {
  std::vector<Word> letters;
  for (auto& n : input) letters.push_back(source()->letter(n));
  auto in = normalize_bar(*source(), letters);
  if (in.sign == 0) throw std::invalid_argument("morphism input is the zero word");
  Element out;
  for (auto& [n, c] : output) add_term(out, target()->letter(n), c * Rational(in.sign));
  add_component(in.word, out);
}

Element SparseMorphism::component(const BarWord& w) const {
  auto it = comps_.find(w);
  return it == comps_.end() ? Element{} : it->second;
}

std::optional<std::size_t> SparseMorphism::max_arity() const {
  std::size_t k = 0;
  for (auto& [w, _] : comps_) k = std::max(k, w.size());
  return k;
}

Element IdentityMorphism::component(const BarWord& w) const {
  Element out;
  if (w.size() == 1) out.emplace(w[0], target()->scalar(1));
  return out;
}

ComposedMorphism::ComposedMorphism(MorphismPtr psi, MorphismPtr phi)
    : LInfinityMorphism(phi->source(), psi->target()), psi_(std::move(psi)), phi_(std::move(phi)) {
  if (psi_->source() != phi_->target()) throw std::invalid_argument("compose_morphisms: model mismatch");
}

Element ComposedMorphism::component(const BarWord& w) const {
  Element out;
  for (auto& [u, c] : extend_morphism(*phi_, w)) add_into(out, psi_->component(u), c);
  return out;
}

std::optional<std::size_t> ComposedMorphism::max_arity() const {
  auto a = psi_->max_arity(), b = phi_->max_arity();
  if (!a || !b) return std::nullopt;
  return *a * *b;
}

MorphismPtr compose_morphisms(MorphismPtr psi, MorphismPtr phi) {
  return std::make_shared<ComposedMorphism>(std::move(psi), std::move(phi));
}

namespace {

// Set partitions of {0..n-1} as restricted growth strings.
void set_partitions(std::size_t n, const std::function<void(const std::vector<std::size_t>&, std::size_t)>& f) {
  std::vector<std::size_t> a(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      f(a, blocks);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      a[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) return;
  a[0] = 0;
  rec(1, 1);
}

} // namespace

// The 1/(k! i_1!...i_k!) sum over permutations collapses to one term per
// unordered set partition of the letters.
BarElement extend_morphism(const LInfinityMorphism& f, const BarWord& w) {
  if (w.empty()) throw std::invalid_argument("the empty word is not in the reduced bar complex");
  const LInfinityModel& src = *f.source();
  const LInfinityModel& tgt = *f.target();
  const std::size_t n = w.size();
  auto degs = letter_degrees(src, w);
  BarElement out;
  set_partitions(n, [&](const std::vector<std::size_t>& block_of, std::size_t nblocks) {
    std::vector<std::vector<std::size_t>> blocks(nblocks);
    for (std::size_t p = 0; p < n; ++p) blocks[block_of[p]].push_back(p);
    std::vector<Element> images;
    images.reserve(nblocks);
    for (auto& b : blocks) {
      BarWord sub;
      for (auto p : b) sub.letters.push_back(w[p]);
      images.push_back(f.component(sub));
      if (images.back().empty()) return;
    }
    std::vector<std::size_t> sigma(n);
    std::size_t pos = 0;
    for (auto& b : blocks)
      for (auto p : b) sigma[p] = pos++;
    int s = koszul_sign(degs, sigma);
    // expand the product of the block images
    std::vector<Element::const_iterator> it(nblocks);
    for (std::size_t i = 0; i < nblocks; ++i) it[i] = images[i].begin();
    while (true) {
      std::vector<Word> letters;
      Coeff c = tgt.scalar(s);
      for (std::size_t i = 0; i < nblocks; ++i) {
        letters.push_back(it[i]->first);
        c *= it[i]->second;
      }
      auto nw = normalize_bar(tgt, std::move(letters));
      if (nw.sign != 0) add_term(out, nw.word, c * Rational(nw.sign));
      std::size_t i = 0;
      while (i < nblocks && ++it[i] == images[i].end()) {
        it[i] = images[i].begin();
        ++i;
      }
      if (i == nblocks) break;
    }
  });
  return out;
}

BarElement extend_morphism(const LInfinityMorphism& f, const BarElement& x) {
  BarElement out;
  for (auto& [w, c] : x) add_into(out, extend_morphism(f, w), c);
  return out;
}

std::vector<Violation> check_morphism(const LInfinityMorphism& f, std::size_t max_word_len) {
  if (max_word_len < 1) throw std::invalid_argument("max_word_len must be at least 1");
  const LInfinityModel& src = *f.source();
  const LInfinityModel& tgt = *f.target();
  std::vector<Violation> out;
  for (auto& w : basis_words(src, max_word_len)) {
    BarElement lhs = extend_morphism(f, extend_coderivation(src, w));
    BarElement rhs = extend_coderivation(tgt, extend_morphism(f, w));
    BarElement diff = lhs;
    add_into(diff, rhs, tgt.scalar(-1));
    if (!diff.empty())
      out.push_back({w, diff, fmt::format("morphism relation fails on {}: {}", src.bar_str(w), tgt.bar_element_str(diff))});
  }
  return out;
}

ModelPtr trivial_model(const std::vector<Generator>& basis, std::optional<Rational> cutoff) {
  ModelFlags fl;
  fl.cutoff = std::move(cutoff);
  return std::make_shared<LInfinityModel>(basis, fl);
}

std::shared_ptr<SparseMorphism> augmentation_morphism(ModelPtr model, const std::string& name) {
  const auto& aug = model->augmentation(name);
  auto target = trivial_model(aug.codomain, model->cutoff());
  auto f = std::make_shared<SparseMorphism>(model, target);
  for (auto& [in, out] : aug.components) {
    BarWord bw;
    for (GenId g : in.letters) bw.letters.push_back(Word{{g}});
    Element e;
    for (auto& [n, c] : out) add_term(e, target->letter(n), c);
    f->add_component(bw, e);
  }
  return f;
}

} // namespace symcap

namespace symcap {

BarTensor bar_coproduct(const LInfinityModel& m, const BarElement& x) {
  BarTensor out;
  for (auto& [w, c] : x)
    for (auto& sp : coproduct(w, [&](const Word& l) { return m.degree(l); }))
      add_term(out, std::make_pair(sp.left, sp.right), c * Rational(sp.sign));
  return out;
}

namespace {

std::string tensor_str(const LInfinityModel& m, const BarTensor& t) {
  std::string s;
  for (auto& [k, c] : t) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")" + m.bar_str(k.first) + " | " + m.bar_str(k.second);
  }
  return s.empty() ? "0" : s;
}

} // namespace

std::vector<Violation> check_coleibniz(const LInfinityModel& m, std::size_t max_len) {
  std::vector<Violation> out;
  for (auto& w : basis_words(m, max_len)) {
    BarElement one{{w, m.scalar(1)}};
    BarTensor lhs = bar_coproduct(m, extend_coderivation(m, w));
    BarTensor rhs;
    for (auto& [k, c] : bar_coproduct(m, one)) {
      for (auto& [l, d] : extend_coderivation(m, k.first)) add_term(rhs, std::make_pair(l, k.second), c * d);
      int s = parity(m.bar_degree(k.first)) ? -1 : 1;
      for (auto& [r, d] : extend_coderivation(m, k.second)) add_term(rhs, std::make_pair(k.first, r), c * d * Rational(s));
    }
    for (auto& [k, c] : rhs) add_term(lhs, k, -c);
    if (!lhs.empty()) out.push_back({w, {}, "coLeibniz fails on " + m.bar_str(w) + ": " + tensor_str(m, lhs)});
  }
  return out;
}

std::vector<Violation> check_coassociativity(const LInfinityModel& m, std::size_t max_len) {
  using Triple = std::tuple<BarWord, BarWord, BarWord>;
  std::vector<Violation> out;
  auto deg = [&](const Word& l) { return m.degree(l); };
  for (auto& w : basis_words(m, max_len)) {
    Combination<Triple> a, b;
    for (auto& sp : coproduct(w, deg)) {
      for (auto& sp2 : coproduct(sp.right, deg))
        add_term(a, Triple{sp.left, sp2.left, sp2.right}, m.scalar(sp.sign * sp2.sign));
      for (auto& sp2 : coproduct(sp.left, deg))
        add_term(b, Triple{sp2.left, sp2.right, sp.right}, m.scalar(sp.sign * sp2.sign));
    }
    if (a != b) out.push_back({w, {}, "coassociativity fails on " + m.bar_str(w)});
  }
  return out;
}

std::vector<Violation> check_coalgebra_map(const LInfinityMorphism& f, std::size_t max_len) {
  const LInfinityModel& src = *f.source();
  const LInfinityModel& tgt = *f.target();
  std::vector<Violation> out;
  for (auto& w : basis_words(src, max_len)) {
    BarTensor lhs = bar_coproduct(tgt, extend_morphism(f, w));
    BarElement one{{w, src.scalar(1)}};
    for (auto& [k, c] : bar_coproduct(src, one)) {
      auto l = extend_morphism(f, k.first);
      auto r = extend_morphism(f, k.second);
      for (auto& [x, cx] : l)
        for (auto& [y, cy] : r) add_term(lhs, std::make_pair(x, y), -(c * cx * cy));
    }
    if (!lhs.empty()) out.push_back({w, {}, "coalgebra property fails on " + src.bar_str(w) + ": " + tensor_str(tgt, lhs)});
  }
  return out;
}

} // namespace symcap
