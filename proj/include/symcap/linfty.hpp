#pragma once

#include "symcap/koszul.hpp"
#include "symcap/novikov.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symcap {

using Coeff = NovikovPolynomial;
// Elements of V (module mode: singleton words) or of the free graded
// commutative algebra on the generators (CDGA mode: any word, the empty
// word being the unit).
using Element = Combination<Word>;
using BarElement = Combination<BarWord>;

enum class GradingMode { integer, mod2 };
enum class AlgebraMode { module, cdga };

struct ModelFlags {
  GradingMode grading = GradingMode::integer;
  AlgebraMode algebra = AlgebraMode::module;
  std::optional<Rational> cutoff;
  bool filtered = false;  // coefficients respect the action filtration
  bool nilpotent = false; // Maurer-Cartan sums may use valuation-zero elements
};

class IntegrityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A map Word -> (codomain basis name -> coefficient) per augmentation.
struct AugmentationData {
  std::string name;
  std::vector<Generator> codomain;
  std::map<Word, std::map<std::string, Coeff>> components;
};

struct NamedElement {
  std::string name;
  Element value;
};

class LInfinityModel {
public:
  LInfinityModel(std::vector<Generator> gens, ModelFlags flags);

  const GeneratorTable& generators() const { return gens_; }
  const ModelFlags& flags() const { return flags_; }
  const std::optional<Rational>& cutoff() const { return flags_.cutoff; }
  bool is_cdga() const { return flags_.algebra == AlgebraMode::cdga; }

  // Operation on a canonical input word of generators. Adds to any existing
  // entry. Output words are generator words (singletons in module mode).
  void add_operation(const Word& input, const Element& output);
  void add_operation(const std::vector<std::string>& input, const std::vector<std::pair<std::vector<std::string>, Coeff>>& output);
  const std::map<Word, Element>& operations() const { return ops_; }
  std::size_t max_arity() const;

  void add_augmentation(AugmentationData aug);
  const std::vector<AugmentationData>& augmentations() const { return augs_; }
  const AugmentationData& augmentation(const std::string& name) const;

  void add_mc_element(NamedElement e) { mcs_.push_back(std::move(e)); }
  const std::vector<NamedElement>& mc_elements() const { return mcs_; }

  // Throws IntegrityError on degree or filtration violations.
  void validate() const;

  int degree(const Word& w) const;
  Rational action(const Word& w) const;
  int bar_degree(const BarWord& w) const;
  Rational bar_action(const BarWord& w) const;

  Word word(const std::vector<std::string>& names) const;         // sorted, sign dropped
  Signed<GenId> signed_word(const std::vector<std::string>& names) const;
  Word letter(const std::string& name) const { return Word{{gens_.id(name)}}; }

  // Canonicalizes a product of generator words (CDGA multiplication).
  Signed<GenId> multiply(const std::vector<const Word*>& factors) const;

  // l^k applied to k bar letters (generators in module mode, words in CDGA
  // mode where the generator data is extended by the Leibniz rule).
  Element apply(std::span<const Word> letters) const;

  Coeff scalar(const Rational& c) const { return Coeff::constant(c, flags_.cutoff); }

  std::string letter_str(const Word& w) const;
  std::string bar_str(const BarWord& w) const;
  std::string element_str(const Element& e) const;
  std::string bar_element_str(const BarElement& e) const;

private:
  GeneratorTable gens_;
  ModelFlags flags_;
  std::map<Word, Element> ops_;
  std::vector<AugmentationData> augs_;
  std::vector<NamedElement> mcs_;
};

using ModelPtr = std::shared_ptr<const LInfinityModel>;

// Canonicalizes a list of bar letters with the model's letter degrees.
Signed<Word> normalize_bar(const LInfinityModel& m, std::vector<Word> letters);

// The coderivation extension of the operations.
BarElement extend_coderivation(const LInfinityModel& m, const BarWord& w);
BarElement extend_coderivation(const LInfinityModel& m, const BarElement& x);

// Canonical basis bar words. In CDGA mode letters are nonempty words and the
// total number of generators is bounded by max_len as well.
std::vector<BarWord> basis_words(const LInfinityModel& m, std::size_t max_len);

struct Violation {
  BarWord word;
  BarElement residual;
  std::string description;
};

std::vector<Violation> check_linfty_relations(const LInfinityModel& m, std::size_t max_word_len);

// Elements of the tensor square of the bar complex.
using BarTensor = Combination<std::pair<BarWord, BarWord>>;

BarTensor bar_coproduct(const LInfinityModel& m, const BarElement& x);
// Delta l = (l x 1 + 1 x l) Delta on basis words up to max_len.
std::vector<Violation> check_coleibniz(const LInfinityModel& m, std::size_t max_len);
// (1 x Delta) Delta = (Delta x 1) Delta on basis words up to max_len.
std::vector<Violation> check_coassociativity(const LInfinityModel& m, std::size_t max_len);

// Sum of c * T^a shifted by the action of the word: the filtration level.
std::optional<Rational> filtration_level(const LInfinityModel& m, const BarElement& x);

class LInfinityMorphism {
public:
  LInfinityMorphism(ModelPtr source, ModelPtr target) : source_(std::move(source)), target_(std::move(target)) {}
  virtual ~LInfinityMorphism() = default;
  const ModelPtr& source() const { return source_; }
  const ModelPtr& target() const { return target_; }
  // Phi^k on a canonical source bar word of length k; returns an element
  // of the target (a combination of target letters).
  virtual Element component(const BarWord& w) const = 0;
  // Largest k with Phi^k possibly nonzero; nullopt if unbounded.
  virtual std::optional<std::size_t> max_arity() const = 0;

private:
  ModelPtr source_, target_;
};

using MorphismPtr = std::shared_ptr<const LInfinityMorphism>;

class SparseMorphism : public LInfinityMorphism {
public:
  using LInfinityMorphism::LInfinityMorphism;
  void add_component(const BarWord& input, const Element& output);
  void add_component(const std::vector<std::string>& input, const std::vector<std::pair<std::string, Coeff>>& output);
  Element component(const BarWord& w) const override;
  std::optional<std::size_t> max_arity() const override;
  const std::map<BarWord, Element>& components() const { return comps_; }

private:
  std::map<BarWord, Element> comps_;
};

class IdentityMorphism : public LInfinityMorphism {
public:
  explicit IdentityMorphism(ModelPtr m) : LInfinityMorphism(m, m) {}
  Element component(const BarWord& w) const override;
  std::optional<std::size_t> max_arity() const override { return 1; }
};

class ComposedMorphism : public LInfinityMorphism {
public:
  ComposedMorphism(MorphismPtr psi, MorphismPtr phi);
  Element component(const BarWord& w) const override;
  std::optional<std::size_t> max_arity() const override;

private:
  MorphismPtr psi_, phi_;
};

BarElement extend_morphism(const LInfinityMorphism& f, const BarWord& w);
BarElement extend_morphism(const LInfinityMorphism& f, const BarElement& x);
MorphismPtr compose_morphisms(MorphismPtr psi, MorphismPtr phi);
std::vector<Violation> check_morphism(const LInfinityMorphism& f, std::size_t max_word_len);
// Delta' F = (F x F) Delta on basis words up to max_len.
std::vector<Violation> check_coalgebra_map(const LInfinityMorphism& f, std::size_t max_len);

// A model with a single even generator and no operations, and the
// augmentation of a model file turned into a morphism to it.
ModelPtr trivial_model(const std::vector<Generator>& basis, std::optional<Rational> cutoff);
std::shared_ptr<SparseMorphism> augmentation_morphism(ModelPtr model, const std::string& name);

// Maurer-Cartan theory (module mode).
struct MaurerCartanElement {
  Element value;
};

struct McCheck {
  bool pass = false;
  Element residual;
};

void validate_mc_element(const LInfinityModel& m, const MaurerCartanElement& x);
McCheck mc_check(const LInfinityModel& m, const MaurerCartanElement& x);
// sum over k <= max_len of x^k / k! as a bar element
BarElement exp_bar(const LInfinityModel& m, const MaurerCartanElement& x, std::size_t max_len);
MaurerCartanElement mc_pushforward(const LInfinityMorphism& f, const MaurerCartanElement& x);
std::shared_ptr<LInfinityModel> deform(const LInfinityModel& m, const MaurerCartanElement& x);

// Linearization of a CDGA-mode model at an augmentation given by its values
// on generators (F(x) = x + eps(x)).
class CdgaShift : public LInfinityMorphism {
public:
  CdgaShift(ModelPtr m, std::map<GenId, Coeff> eps);
  Element apply(const Word& w) const; // the algebra map on a single word
  Element component(const BarWord& w) const override;
  std::optional<std::size_t> max_arity() const override { return 1; }
  const std::map<GenId, Coeff>& values() const { return eps_; }

private:
  std::map<GenId, Coeff> eps_;
};

struct Linearization {
  std::shared_ptr<CdgaShift> shift;     // F^eps
  std::shared_ptr<CdgaShift> inverse;   // F^{-eps}
  std::shared_ptr<LInfinityModel> linear;
};

Coeff evaluate_augmentation(const LInfinityModel& m, const std::map<GenId, Coeff>& eps, const Element& x);
Linearization linearize(ModelPtr cdga, const std::map<std::string, Coeff>& eps);
Linearization linearize(ModelPtr cdga, const std::string& augmentation_name);

// V tensor K[t,dt] modulo the dg ideal generated by t^{J+1} (J = max_t_degree),
// which also contains t^J dt. Evaluation at t0 != 0 only commutes with the
// operations on inputs of total t-degree at most J.
struct IntervalModel {
  std::shared_ptr<LInfinityModel> model;
  std::size_t max_t_degree = 0;
  std::string name(const std::string& base, std::size_t j, bool dt) const;
};

IntervalModel interval_tensor(ModelPtr m, std::size_t max_t_degree);
MorphismPtr eval_at(const IntervalModel& im, ModelPtr base, const Rational& t0);
MorphismPtr constants_inclusion(ModelPtr base, const IntervalModel& im);
MorphismPtr constant_homotopy(MorphismPtr phi, const IntervalModel& target_interval);

} // namespace symcap
