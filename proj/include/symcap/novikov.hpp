#pragma once

#include "symcap/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symcap {

// Finite sum of c_i T^{e_i} with rational exponents e_i >= 0, optionally
// truncated: every exponent >= cutoff is dropped.
class NovikovPolynomial {
public:
  struct Term {
    Rational exponent;
    Rational coeff;
    bool operator==(const Term&) const = default;
  };

  NovikovPolynomial() = default;
  explicit NovikovPolynomial(std::optional<Rational> cutoff);

  static NovikovPolynomial constant(const Rational& c, std::optional<Rational> cutoff = {});
  static NovikovPolynomial monomial(const Rational& c, const Rational& exponent,
                                    std::optional<Rational> cutoff = {});
  // Builds from unsorted terms; merges equal exponents and truncates.
  static NovikovPolynomial from_terms(std::vector<Term> terms, std::optional<Rational> cutoff = {});

  const std::vector<Term>& terms() const { return terms_; }
  const std::optional<Rational>& cutoff() const { return cutoff_; }
  bool is_zero() const { return terms_.empty(); }
  // Smallest exponent; nullopt stands for +infinity (the zero element).
  std::optional<Rational> valuation() const;
  // Coefficient sum, i.e. the value at T = 1.
  Rational at_one() const;
  NovikovPolynomial truncated(std::optional<Rational> cutoff) const;

  NovikovPolynomial operator-() const;
  NovikovPolynomial& operator+=(const NovikovPolynomial& o);
  NovikovPolynomial& operator-=(const NovikovPolynomial& o);
  NovikovPolynomial& operator*=(const NovikovPolynomial& o);
  NovikovPolynomial& operator*=(const Rational& c);

  friend NovikovPolynomial operator+(NovikovPolynomial a, const NovikovPolynomial& b) { return a += b; }
  friend NovikovPolynomial operator-(NovikovPolynomial a, const NovikovPolynomial& b) { return a -= b; }
  friend NovikovPolynomial operator*(const NovikovPolynomial& a, const NovikovPolynomial& b);
  friend NovikovPolynomial operator*(NovikovPolynomial a, const Rational& c) { return a *= c; }
  friend NovikovPolynomial operator*(const Rational& c, NovikovPolynomial a) { return a *= c; }

  // Compares values only; the cutoff is a truncation parameter.
  bool operator==(const NovikovPolynomial& o) const { return terms_ == o.terms_; }

  std::string str() const;
  static NovikovPolynomial parse(std::string_view text, std::optional<Rational> cutoff = {});

private:
  void normalize();
  std::vector<Term> terms_;
  std::optional<Rational> cutoff_;
};

std::optional<Rational> min_cutoff(const std::optional<Rational>& a, const std::optional<Rational>& b);

NovikovPolynomial nov_add(const NovikovPolynomial& a, const NovikovPolynomial& b);
NovikovPolynomial nov_mul(const NovikovPolynomial& a, const NovikovPolynomial& b);
std::optional<Rational> valuation(const NovikovPolynomial& a);

} // namespace symcap
