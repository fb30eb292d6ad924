#include "symcap/novikov.hpp"

#include <algorithm>
#include <stdexcept>

namespace symcap {

std::optional<Rational> min_cutoff(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}

NovikovPolynomial::NovikovPolynomial(std::optional<Rational> cutoff) : cutoff_(std::move(cutoff)) {
  if (cutoff_ && *cutoff_ <= 0) throw std::invalid_argument("cutoff must be positive");
}

NovikovPolynomial NovikovPolynomial::constant(const Rational& c, std::optional<Rational> cutoff) {
  return monomial(c, 0, std::move(cutoff));
}

NovikovPolynomial NovikovPolynomial::monomial(const Rational& c, const Rational& exponent,
                                              std::optional<Rational> cutoff) {
  if (exponent < 0) throw std::invalid_argument("negative Novikov exponent");
  NovikovPolynomial p(std::move(cutoff));
  p.terms_.push_back({exponent, c});
  p.normalize();
  return p;
}

NovikovPolynomial NovikovPolynomial::from_terms(std::vector<Term> terms, std::optional<Rational> cutoff) {
  NovikovPolynomial p(std::move(cutoff));
  for (auto& t : terms)
    if (t.exponent < 0) throw std::invalid_argument("negative Novikov exponent");
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void NovikovPolynomial::normalize() {
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (cutoff_ && t.exponent >= *cutoff_) break;
    if (!out.empty() && out.back().exponent == t.exponent)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
  terms_ = std::move(out);
}

std::optional<Rational> NovikovPolynomial::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().exponent;
}

Rational NovikovPolynomial::at_one() const {
  Rational s = 0;
  for (auto& t : terms_) s += t.coeff;
  return s;
}

NovikovPolynomial NovikovPolynomial::truncated(std::optional<Rational> cutoff) const {
  NovikovPolynomial p(min_cutoff(cutoff_, cutoff));
  p.terms_ = terms_;
  p.normalize();
  return p;
}

NovikovPolynomial NovikovPolynomial::operator-() const {
  NovikovPolynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

NovikovPolynomial& NovikovPolynomial::operator+=(const NovikovPolynomial& o) {
  cutoff_ = min_cutoff(cutoff_, o.cutoff_);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::merge(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(), std::back_inserter(merged),
             [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  terms_ = std::move(merged);
  normalize();
  return *this;
}

NovikovPolynomial& NovikovPolynomial::operator-=(const NovikovPolynomial& o) { return *this += -o; }

NovikovPolynomial operator*(const NovikovPolynomial& a, const NovikovPolynomial& b) {
  NovikovPolynomial p(min_cutoff(a.cutoff_, b.cutoff_));
  p.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (auto& x : a.terms_)
    for (auto& y : b.terms_) {
      Rational e = x.exponent + y.exponent;
      if (p.cutoff_ && e >= *p.cutoff_) continue;
      p.terms_.push_back({std::move(e), x.coeff * y.coeff});
    }
  p.normalize();
  return p;
}

NovikovPolynomial& NovikovPolynomial::operator*=(const NovikovPolynomial& o) { return *this = *this * o; }

NovikovPolynomial& NovikovPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

std::string NovikovPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    Rational c = t.coeff;
    if (i > 0) {
      s += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    s += to_string(c) + "*T^(" + to_string(t.exponent) + ")";
  }
  return s;
}

namespace {

struct Cursor {
  std::string_view s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string_view number() {
    skip_ws();
    size_t b = i;
    while (i < s.size() && ((s[i] >= '0' && s[i] <= '9') || s[i] == '/' || s[i] == '.')) ++i;
    return s.substr(b, i - b);
  }
};

} // namespace

NovikovPolynomial NovikovPolynomial::parse(std::string_view text, std::optional<Rational> cutoff) {
  Cursor c{text};
  std::vector<Term> terms;
  auto fail = [&](const char* why) {
    throw std::invalid_argument(std::string("bad Novikov polynomial (") + why + "): " + std::string(text));
  };
  c.skip_ws();
  if (c.i == text.size()) fail("empty");
  bool first = true;
  while (true) {
    c.skip_ws();
    if (c.i == text.size()) break;
    Rational sign = 1;
    if (c.eat('+')) {
    } else if (c.eat('-')) {
      sign = -1;
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Rational coeff = 1;
    bool have_coeff = false;
    auto num = c.number();
    if (!num.empty()) {
      coeff = parse_rational(num);
      have_coeff = true;
    }
    Rational exponent = 0;
    bool star = c.eat('*');
    c.skip_ws();
    if (c.i < text.size() && text[c.i] == 'T') {
      ++c.i;
      exponent = 1;
      if (c.eat('^')) {
        bool paren = c.eat('(');
        bool neg = c.eat('-');
        auto e = c.number();
        if (e.empty()) fail("missing exponent");
        exponent = parse_rational(e);
        if (neg) exponent = -exponent;
        if (paren && !c.eat(')')) fail("missing )");
      }
    } else if (star || !have_coeff) {
      fail("expected T");
    }
    terms.push_back({exponent, sign * coeff});
  }
  return from_terms(std::move(terms), std::move(cutoff));
}

NovikovPolynomial nov_add(const NovikovPolynomial& a, const NovikovPolynomial& b) { return a + b; }
NovikovPolynomial nov_mul(const NovikovPolynomial& a, const NovikovPolynomial& b) { return a * b; }
std::optional<Rational> valuation(const NovikovPolynomial& a) { return a.valuation(); }

} // namespace symcap
