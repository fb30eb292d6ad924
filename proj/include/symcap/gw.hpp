#pragma once

#include "symcap/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace symcap {

enum class Surface { cp2, cp1xcp1, cp1 };

Surface parse_surface(const std::string& text); // "CP2", "CP1xCP1", "CP1"
std::string to_string(Surface s);
int complex_dimension(Surface s);

// Degree for CP2 and CP1, bidegree for CP1xCP1.
struct CurveClass {
  std::vector<long> degrees;
  static CurveClass parse(Surface s, const std::string& text); // "2" or "1,1"
  std::string str() const;
  auto operator<=>(const CurveClass&) const = default;
};

// One point group: the tangency orders of the branches through a common
// point (order 0 is a plain point). Kept sorted in decreasing order.
using PointGroup = std::vector<long>;

// A constraint <(T^{m} p, ...), (...), ...> on genus zero curves in a class.
// Groups sit at distinct generic points; labels carry no meaning.
struct ConstraintTerm {
  Surface surface = Surface::cp2;
  CurveClass cls;
  std::vector<PointGroup> groups;

  void canonicalize();
  long codimension() const;
  long index_dimension() const;
  bool rigid() const { return codimension() == index_dimension(); }
  bool order_zero() const;
  std::string constraint_str() const; // "<(T^1 p, p),(p)>"
  std::string str() const;            // "CP2 2 <(T^4 p)>"
  auto operator<=>(const ConstraintTerm&) const = default;
};

using TermCombination = std::map<ConstraintTerm, Rational>;

std::string to_string(const TermCombination& c);

// Parses the bracket syntax "<(T^1 p),(T^3 p)>"; "p", "T p" and "T^m p" are
// accepted inside a group, and all branches of a group must share a label.
ConstraintTerm parse_constraint(Surface s, const CurveClass& cls, const std::string& text);

// Moves the singleton group `source` onto the point of group `target`:
// <(T^m q),(G)> = <(T^m, G)> + sum_i <G with m_i -> m_i + m + 1>.
// Without a target (target == groups.size()) the point is only relabelled.
TermCombination push_point(const ConstraintTerm& t, std::size_t source, std::size_t target);

struct ReduceOptions {
  // 0 picks the highest order branch; other values pick pseudo-randomly
  std::uint64_t seed = 0;
  // called with each rewritten term and the combination replacing it
  std::function<void(const ConstraintTerm&, const TermCombination&)> on_rewrite;
  // skip the rigidity check and dimension vanishing (rewrite trace only)
  bool formal = false;
};

// Rewrites every term into order-zero terms. Non-rigid inputs are rejected;
// terms that vanish for dimension or contact reasons are dropped.
TermCombination reduce(const TermCombination& expr, const ReduceOptions& opt = {});
TermCombination reduce(const ConstraintTerm& t, const ReduceOptions& opt = {});

// Zero for reasons independent of the base table: non-rigid, or (on CP1) a
// point with more total contact than the degree.
bool vanishes(const ConstraintTerm& t);

class BaseInvariantTable {
 public:
  struct Entry {
    Rational value;
    std::string provenance;
  };
  static BaseInvariantTable load(const std::string& path);
  static BaseInvariantTable parse(const std::string& text);
  void insert(const ConstraintTerm& t, const Rational& v, const std::string& provenance);
  const Entry* find(const ConstraintTerm& t) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<ConstraintTerm, Entry> entries_;
};

struct MissingKeysError : std::runtime_error {
  std::vector<ConstraintTerm> keys;
  explicit MissingKeysError(std::vector<ConstraintTerm> k);
};

Rational evaluate(const TermCombination& expr, const BaseInvariantTable& table);

// T_d = <T^{3d-2} p> in degree d on CP2.
ConstraintTerm cp2_tangency(long d);

} // namespace symcap
