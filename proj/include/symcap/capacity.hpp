#pragma once

#include "symcap/linfty.hpp"
#include "symcap/orbits.hpp"
#include "symcap/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symcap {

// B^4(c), E(a,b) (a <= b) or P(a,b) (a <= b). Parsed from "B", "B:c",
// "E:a,b" or "P:a,b"; "inf" entries are kept for the EH sequence only.
struct DomainDescriptor {
  enum class Kind { ball, ellipsoid, polydisk };
  Kind kind = Kind::ball;
  std::vector<EllipsoidParam> params;

  static DomainDescriptor parse(const std::string& text);
  static DomainDescriptor ball(const Rational& c = 1) { return {Kind::ball, {c}}; }
  static DomainDescriptor ellipsoid(const Rational& a, const Rational& b);
  static DomainDescriptor polydisk(const Rational& a, const Rational& b);
  std::string str() const;
  bool finite() const;
  // the finite parameters; throws on infinite ones
  std::vector<Rational> finite_params() const;
  // E(a,b) as the ellipsoid parameters of the domain (ball: (c,c))
  std::vector<EllipsoidParam> ellipsoid_params() const;
};

// Closed forms for g<T^{k-1} p>. nullopt is the "no-formula" result: outside
// the proven ranges nothing is extrapolated.
std::optional<Rational> g_tangency(const DomainDescriptor& d, long k);

Rational r_points_ball(long r);

enum class ConstraintKind { points, tangency };

struct SpectralResult {
  std::optional<Rational> value; // nullopt: no index-zero end set below the cutoff
  std::vector<Orbit> ends;       // a minimizing set of positive ends
};

// Minimal total action of a set of positive ends with Fredholm index zero
// for a genus zero curve with the given constraint. For tangency
// constraints on spectra with a Hurwitz slice, end sets inside the slice
// must have multiplicities adding up to the contact order.
SpectralResult spectral_lower_bound(const OrbitSpectrum& s, long constraint_codim, ConstraintKind kind,
                                    const Rational& action_cutoff, std::optional<std::size_t> max_ends = {});

// Codimension of T^{m} p in dimension 2n.
inline long tangency_codim(int n, long m) { return 2 * n - 2 + 2 * m; }

struct GbResult {
  std::optional<Rational> value; // nullopt: not found below the cutoff
  BarElement cycle;              // a cycle x realizing the value
};

// Parses an element of the reduced symmetric algebra on the augmentation's
// codomain: terms "c*t^1.t^2" joined by " + ".
BarElement parse_codomain_word(const LInfinityModel& codomain, const std::string& text);

// Smallest action level A such that some x in the span of bar words of
// length <= word_cap and action <= A has l(x) = 0 and eps(x) = b, with
// coefficients evaluated at T = 1 (increasing-filtration formulation).
GbResult gb_solver(ModelPtr m, const std::string& augmentation, const std::string& b,
                   std::optional<std::size_t> word_cap, const Rational& action_cutoff);

struct Witnessed {
  Rational value;
  long k = 0;
};

// max over k <= K of c_k(E(1,x)) / c_k(B(1)); nondecreasing in K.
Witnessed mcduff_f(const Rational& x, long K);

std::vector<Rational> weight_decomposition(long p, long q);

enum class PackingQuery { g_tangency, r_points, r_multipoint };
Rational packing_lower_bound(std::vector<Rational> weights, PackingQuery query, long k);

enum class TargetFamily { ball, cube }; // B^4(c), P(c,c)

// sup over k <= k_max with both closed forms defined of
// g(source,k) / g(unit target,k); the smallest maximizing k is reported.
Witnessed stabilized_obstruction(const DomainDescriptor& source, TargetFamily target, long k_max = 300);

// First k <= K with c_k(E(a,b)) > c_k(E(c,d)), or nullopt.
std::optional<long> obstruct_4d_ellipsoid(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                                          long K);

// Exact sparse Gaussian elimination: solves rows * x = rhs.
struct SparseSystem {
  std::vector<std::map<std::size_t, Rational>> rows;
  std::vector<Rational> rhs;
  std::size_t columns = 0;
  std::size_t add_row(std::map<std::size_t, Rational> row, Rational value);
};
std::optional<std::vector<Rational>> solve(SparseSystem sys);

} // namespace symcap
