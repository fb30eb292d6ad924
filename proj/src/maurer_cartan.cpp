#include "symcap/linfty.hpp"

#include <fmt/format.h>

namespace symcap {

namespace {

Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

// Calls f(counts) for every multiset of size 1..max_size over `s` symbols.
void for_each_multiset(std::size_t s, std::size_t max_size,
                       const std::function<void(const std::vector<std::size_t>&, std::size_t)>& f) {
  std::vector<std::size_t> counts(s, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == s) {
      if (used > 0) f(counts, used);
      return;
    }
    for (std::size_t c = 0; used + c <= max_size; ++c) {
      counts[i] = c;
      rec(i + 1, used + c);
    }
    counts[i] = 0;
  };
  rec(0, 0);
}

struct Expansion {
  std::vector<GenId> support;
  std::vector<Coeff> coeffs;
};

Expansion expansion(const MaurerCartanElement& x) {
  Expansion e;
  for (auto& [w, c] : x.value) {
    e.support.push_back(w[0]);
    e.coeffs.push_back(c);
  }
  return e;
}

// x^{(u)}/mu(u): the coefficient of the bar word u in exp(x).
Coeff exp_coefficient(const LInfinityModel& m, const Expansion& e, const std::vector<std::size_t>& counts) {
  Coeff c = m.scalar(1);
  Integer mu = 1;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (std::size_t t = 0; t < counts[i]; ++t) c *= e.coeffs[i];
    mu *= factorial(counts[i]);
  }
  return c * Rational(Integer(1), mu);
}

BarWord word_of(const Expansion& e, const std::vector<std::size_t>& counts) {
  BarWord w;
  for (std::size_t i = 0; i < counts.size(); ++i)
    for (std::size_t t = 0; t < counts[i]; ++t) w.letters.push_back(Word{{e.support[i]}});
  return w;
}

std::size_t series_bound(const LInfinityModel& m, const MaurerCartanElement& x, std::optional<std::size_t> arity) {
  if (arity) return *arity;
  std::optional<Rational> v;
  for (auto& [w, c] : x.value) {
    auto cv = c.valuation();
    if (!v || (cv && *cv < *v)) v = cv;
  }
  if (!v) return 0;
  if (*v == 0 || !m.cutoff())
    throw std::invalid_argument("unbounded Maurer-Cartan series needs positive valuation and a finite cutoff");
  return to_long(floor_of(*m.cutoff() / *v)) + 1;
}

} // namespace

void validate_mc_element(const LInfinityModel& m, const MaurerCartanElement& x) {
  if (m.is_cdga()) throw std::invalid_argument("Maurer-Cartan elements are supported in module mode");
  for (auto& [w, c] : x.value) {
    if (w.size() != 1) throw std::invalid_argument("Maurer-Cartan element must be a combination of generators");
    if (parity(m.degree(w)))
      throw std::invalid_argument("Maurer-Cartan element has an odd component " + m.letter_str(w));
    if (!m.flags().nilpotent && c.valuation() && *c.valuation() <= 0)
      throw std::invalid_argument("Maurer-Cartan element needs positive valuation (component " + m.letter_str(w) + ")");
  }
}

McCheck mc_check(const LInfinityModel& m, const MaurerCartanElement& x) {
  validate_mc_element(m, x);
  auto e = expansion(x);
  McCheck out;
  for_each_multiset(e.support.size(), m.max_arity(), [&](const std::vector<std::size_t>& counts, std::size_t) {
    Coeff c = exp_coefficient(m, e, counts);
    if (c.is_zero()) return;
    BarWord u = word_of(e, counts);
    add_into(out.residual, m.apply(u.letters), c);
  });
  out.pass = out.residual.empty();
  return out;
}

BarElement exp_bar(const LInfinityModel& m, const MaurerCartanElement& x, std::size_t max_len) {
  validate_mc_element(m, x);
  auto e = expansion(x);
  BarElement out;
  for_each_multiset(e.support.size(), max_len, [&](const std::vector<std::size_t>& counts, std::size_t) {
    add_term(out, word_of(e, counts), exp_coefficient(m, e, counts));
  });
  return out;
}

MaurerCartanElement mc_pushforward(const LInfinityMorphism& f, const MaurerCartanElement& x) {
  const LInfinityModel& src = *f.source();
  validate_mc_element(src, x);
  auto e = expansion(x);
  MaurerCartanElement out;
  std::size_t bound = series_bound(src, x, f.max_arity());
  for_each_multiset(e.support.size(), bound, [&](const std::vector<std::size_t>& counts, std::size_t) {
    Coeff c = exp_coefficient(src, e, counts);
    if (c.is_zero()) return;
    add_into(out.value, f.component(word_of(e, counts)), c);
  });
  auto chk = mc_check(*f.target(), out);
  if (!chk.pass)
    throw IntegrityError("pushforward is not Maurer-Cartan in the target: residual " +
                         f.target()->element_str(chk.residual));
  return out;
}

std::shared_ptr<LInfinityModel> deform(const LInfinityModel& m, const MaurerCartanElement& x) {
  auto chk = mc_check(m, x);
  if (!chk.pass) throw IntegrityError("cannot deform: Maurer-Cartan residual " + m.element_str(chk.residual));
  auto out = std::make_shared<LInfinityModel>(m.generators().all(), m.flags());
  std::map<GenId, Coeff> xc;
  for (auto& [w, c] : x.value) xc.emplace(w[0], c);

  // l^k_x(w) = sum_u l^{k+|u|}(w, u) * x^{(u)}/mu(u) over sub-multisets u of
  // the stored keys made of support letters; u = {} gives l^k itself.
  for (auto& [key, val] : m.operations()) {
    std::vector<std::pair<GenId, std::size_t>> runs;
    for (GenId g : key.letters) {
      if (!runs.empty() && runs.back().first == g)
        ++runs.back().second;
      else
        runs.push_back({g, 1});
    }
    std::vector<std::size_t> take(runs.size(), 0);
    while (true) {
      Word rest;
      Coeff c = m.scalar(1);
      Integer mu = 1;
      for (std::size_t i = 0; i < runs.size(); ++i) {
        for (std::size_t t = 0; t < runs[i].second - take[i]; ++t) rest.letters.push_back(runs[i].first);
        for (std::size_t t = 0; t < take[i]; ++t) c *= xc.at(runs[i].first);
        mu *= factorial(take[i]);
      }
      if (!rest.empty() && !c.is_zero()) {
        Element scaled;
        add_into(scaled, val, c * Rational(Integer(1), mu));
        out->add_operation(rest, scaled);
      }
      std::size_t i = 0;
      for (; i < runs.size(); ++i) {
        std::size_t lim = xc.count(runs[i].first) ? runs[i].second : 0;
        if (++take[i] <= lim) break;
        take[i] = 0;
      }
      if (i == runs.size()) break;
    }
  }
  return out;
}

} // namespace symcap
