#pragma once

#include "symcap/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace symcap {

struct Orbit {
  std::string label;
  Rational action;
  long cz = 0;
  int simple = -1;       // index of the underlying simple orbit, -1 if none is distinguished
  long multiplicity = 1; // iterate number of that simple orbit
  bool in_slice = false; // lies in the distinguished two-dimensional slice
};

// Reeb orbits of a nondegenerate (or infinitesimally perturbed) toric domain,
// sorted by action.
struct OrbitSpectrum {
  std::string domain;
  int n = 2; // half-dimension
  std::vector<Orbit> orbits;
  // Curves whose positive ends all lie in the slice are branched covers of
  // it, so a tangency of order m forces the multiplicities to add up to m.
  bool hurwitz_slice = false;
};

// Orbits k*a_j <= cutoff. Equal parameters are treated as perturbed
// a_1 < a_1 + d_1 < ... with infinitesimal d increasing in the index.
OrbitSpectrum ellipsoid_orbits(std::vector<Rational> a, const Rational& cutoff);

// The perturbed polydisk P(1,x): alpha_{i,j} (i,j >= 1, CZ 2i+2j) and
// beta_{i,j} ((i,j) != (0,0), CZ 1+2i+2j), both of action i + j x.
OrbitSpectrum polydisk_orbits(const Rational& x, const Rational& cutoff);

// nullopt entries stand for infinite factors.
using EllipsoidParam = std::optional<Rational>;

// k-th smallest of {i a_j : i >= 1}, k >= 1.
Rational capacity_sequence_EH(const std::vector<EllipsoidParam>& a, long k);
// values for k = 1..K
std::vector<Rational> eh_sequence(const std::vector<EllipsoidParam>& a, long K);

// (k+1)-st smallest of {i a + j b : i, j >= 0}, k >= 0.
Rational capacity_sequence_ECH(const Rational& a, const Rational& b, long k);
// values for k = 0..K
std::vector<Rational> ech_sequence(const Rational& a, const Rational& b, long K);

// (n-3)(2-2g-s+-s-) + sum CZ+ - sum CZ- + 2 c1_term - constraint_codim
long fredholm_index(int n, int genus, std::span<const long> cz_pos, std::span<const long> cz_neg, long c1_term,
                    long constraint_codim);

} // namespace symcap
