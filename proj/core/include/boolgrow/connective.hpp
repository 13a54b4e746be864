// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boolgrow/truth_table.hpp"

namespace boolgrow {

// A k-ary gate used to combine k independently drawn functions.
struct Connective {
  TruthTable table;
  PropertySet props;
  std::string name;

  int arity() const { return table.num_vars(); }
};

Connective make_connective(const TruthTable& table, std::string name = "");

// Named gates used throughout the tests and the CLI.
Connective preset_connective(const std::string& name);
std::vector<std::string> preset_connective_names();

// Output-density polynomial of a gate: if each input is 1 independently
// with probability p, the output is 1 with probability
//   A(p) = sum_i count_i p^i (1-p)^(k-i),
// where count_i is the number of true assignments of weight i. The
// weight-fraction beta_i = count_i / C(k,i) is kept exact.
class CharPoly {
public:
  CharPoly() = default;
  explicit CharPoly(const TruthTable& alpha);
  // Direct construction from weight counts (k+1 entries).
  CharPoly(int arity, std::vector<std::uint64_t> counts);

  int arity() const { return k_; }
  std::uint64_t count(int i) const { return counts_[i]; }
  std::uint64_t binom(int i) const { return binom_[i]; }
  double beta(int i) const {
    return static_cast<double>(counts_[i]) / static_cast<double>(binom_[i]);
  }
  std::string beta_fraction(int i) const;

  double value(double p) const;
  double derivative(double p) const;

  bool balanced_exact() const; // A(1/2) == 1/2 as an integer identity

private:
  int k_ = 0;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> binom_;
};

struct FixedPointReport {
  enum class Kind { AboveEverywhere, BelowEverywhere, Interior, Identity };
  Kind kind = Kind::Identity;
  double s = 0.0;           // Interior only
  double residual = 0.0;    // |A(s) - s| at the reported point
  double slope = 0.0;       // A'(s), Interior only
};

// Sign classification of A(p) - p on (0,1), with bisection for the
// interior crossing. Balanced gates land exactly on s = 1/2.
FixedPointReport fixed_point(const CharPoly& cp, double tol = 1e-12);

enum class ConvergenceClass { Fast, Slow };

struct ConvergenceClassReport {
  ConvergenceClass cls = ConvergenceClass::Fast;
  bool used_dual = false;   // gate amplifies upward; classified via its dual
  std::string note;         // nonempty when hypothesis variants disagree
};

// Fast/slow dichotomy for monotone gates without an interior fixed point:
// slow exactly when the top nonconstant weight fraction is (k-1)/k.
ConvergenceClassReport convergence_class(const Connective& alpha);

// Signed gate spectrum S(t) = 2^-k sum_r (-1)^(<r,t> + alpha(r)).
struct SpectralProfile {
  std::vector<double> s;
  double s_zero = 0.0;      // S at t = 0; zero iff the gate is balanced
  double max_abs = 0.0;
  double a3 = 0.0;          // sum |S(t)|^3, the contraction constant
  double parseval = 0.0;    // sum S(t)^2, equals 1 for every gate
};

SpectralProfile spectral_profile(const Connective& alpha);

CharPoly char_poly(const Connective& alpha);

} // namespace boolgrow
