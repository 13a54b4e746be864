// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boolgrow/connective.hpp"
#include "boolgrow/process.hpp"
#include "boolgrow/spectrum.hpp"

namespace boolgrow {

enum class PredictionKind {
  Concentrated,
  UniformOnSet,
  Alternating,
  Degenerate,
  Unknown
};

enum class SetFamily {
  Threshold,         // the single weight-threshold function T_param
  Slice,             // functions free on weight `param`, forced elsewhere
  SelfDualSlice,     // self-dual members of the middle slice family
  SelfDual,          // all self-dual functions
  AllFunctions,
  BiPreserving,      // f(0..0) = 0 and f(1..1) = 1
  AllLinear,
  LinearConstrained, // affine functions with coefficient constraints
  ExplicitSet
};

struct SetDescriptor {
  SetFamily family = SetFamily::ExplicitSet;
  Domain domain = Domain::General;
  int n = 0;
  int param = 0;                    // threshold index or slice level
  std::optional<int> c0;            // LinearConstrained: constant coefficient
  std::optional<int> var_parity;    // LinearConstrained: #variables mod 2
  std::vector<std::uint64_t> ids;   // ExplicitSet

  std::string describe() const;
};

// Where the process ends up, and by which structural argument.
struct Prediction {
  PredictionKind kind = PredictionKind::Unknown;
  std::string tag = "none";
  std::optional<SetDescriptor> set;      // Concentrated / UniformOnSet
  std::optional<SetDescriptor> even_set; // Alternating
  std::optional<SetDescriptor> odd_set;
  std::string note;
};

Prediction predict(const ProcessSpec& spec);

std::vector<std::uint64_t> materialize(const SetDescriptor& d);
Distribution set_distribution(const SetDescriptor& d);

struct LimitLaw {
  std::optional<Distribution> limit;      // non-alternating
  std::optional<Distribution> even_limit; // alternating
  std::optional<Distribution> odd_limit;
};

LimitLaw limit_distribution(const Prediction& pred);

struct IterationBound {
  std::string tag;
  double value = 0.0; // NaN when only a qualitative tail is known
  bool has_unknown_constant = false;
  std::string note;
};

IterationBound theoretical_iterations(const ProcessSpec& spec, double eps);

struct ConvergenceReport {
  Prediction prediction;
  bool achieved = false;
  int iterations_measured = -1; // first depth with distance <= eps
  double final_distance = 0.0;
  std::vector<double> trajectory; // distance at depth 0,1,...
};

ConvergenceReport empirical_convergence(const ProcessSpec& spec, double eps,
                                        int max_iters,
                                        Metric metric = Metric::MaxAbs);

// ---- structural inequality checks ----------------------------------------

struct CheckResult {
  std::string lemma;
  std::string population;
  bool pass = false;
  double worst_margin = 0.0;
  std::string witness; // offending or extremal gate, when relevant
};

enum class Lemma {
  BalanceIff,        // A(1/2) = 1/2 exactly iff the gate is balanced
  Equivalence,       // interior fixed points are 1/2 or far from rationals
  FastNoFixpoint,    // slope near 1 exceeds 35/24 in the fast regime
  SlowNoFixpoint,    // two-sided slope bounds in the slow regime
  TrivialQuadratic,  // no weight-1 mass forces A(p) below (C(k,2)+1)p^2
  MinSlope,          // interior fixed point slope >= 1 + (k-2)/2^(k-2)
  FourierSlice,      // closed form of the middle-slice limit spectrum
  Restriction,       // residual of the restriction identity shrinks
  SavickyRecurrence, // spectral one-step prediction matches brute force
  SpectralNorm,      // gate spectra have unit power, zero mean iff balanced
  PredictionConsistency // exact iterates converge to predicted limits
};

struct LemmaOptions {
  std::vector<Connective> population;
  std::string population_label;
  int denominator_bound = 50;          // Equivalence
  int n = 2;                           // FourierSlice
  std::optional<ProcessSpec> spec;     // Restriction / SavickyRecurrence
  int iters = 20;                      // Restriction
  int max_weight = 3;                  // SavickyRecurrence
  std::uint64_t seed = 0x5eedull;      // SavickyRecurrence random inputs
};

CheckResult verify_lemma(Lemma which, const LemmaOptions& opts);

// Standard battery over exhaustive arities <= min(kmax,4), sampled gates
// at arity 5 when kmax >= 5, and the n <= nmax spectral/consistency checks.
std::vector<CheckResult> verify_all(int kmax, int nmax);

// Margins behind the polynomial lemmas; negative means violated. Exposed
// so perturbed-coefficient negative controls can drive them directly.
double minslope_margin(const CharPoly& cp);
double triv_margin(const CharPoly& cp);
double fastnfp_margin(const CharPoly& cp);
double slownfp_margin(const CharPoly& cp);
double equiv_margin(const CharPoly& cp, int denominator_bound);

std::vector<Connective> all_connectives(int k);
std::vector<Connective> monotone_connectives(int k);
std::vector<Connective> sampled_monotone_connectives(int k, int count,
                                                     std::uint64_t seed);

} // namespace boolgrow
