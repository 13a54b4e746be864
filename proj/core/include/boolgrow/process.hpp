// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boolgrow/connective.hpp"
#include "boolgrow/truth_table.hpp"

namespace boolgrow {

// Thrown when an exact operation would exceed its enumeration budget.
// Callers can catch this to fall back to sampling.
class BudgetError : public std::runtime_error {
public:
  BudgetError(const std::string& what, std::uint64_t required)
      : std::runtime_error(what + " (required " + std::to_string(required) +
                           " units)"),
        required_(required) {}
  std::uint64_t required() const { return required_; }

private:
  std::uint64_t required_;
};

enum class Domain { General, Linear };

// Base gate pool: the n projections, optionally their negations and the
// two constants.
struct SupportSpec {
  int n = 0;
  bool negations = false;
  bool const0 = false;
  bool const1 = false;

  int member_count() const {
    return n * (negations ? 2 : 1) + (const0 ? 1 : 0) + (const1 ? 1 : 0);
  }
};

struct ProcessSpec {
  SupportSpec support;
  Connective alpha;
};

// Sparse probability vector over function ids. General-domain ids are
// packed truth tables (n <= 6); linear-domain ids are coefficient bit
// vectors with the constant term at bit 0 (n <= 20). Entries are sorted
// by id and hold only nonzero mass.
struct Distribution {
  Domain domain = Domain::General;
  int n = 0;
  int iteration = 0;
  std::vector<std::pair<std::uint64_t, double>> entries;

  double total() const;
  double at(std::uint64_t id) const;
  void sort_and_compact();
};

enum class Metric { MaxAbs, TotalVariation };

double distance(const Distribution& a, const Distribution& b, Metric metric);

std::vector<TruthTable> support_members(const SupportSpec& s);
std::vector<std::uint64_t> support_member_ids(const SupportSpec& s, Domain d);

// Fraction of the base pool that is true at assignment a.
double initial_marginal(const SupportSpec& s, std::uint32_t a);

// pi_0: uniform over the base pool. Linear domain iff the gate is linear.
Distribution initial_distribution(const ProcessSpec& spec);

// One exact growth step: push the distribution through the gate applied
// to k independent draws.
Distribution step_exact(const Distribution& pi, const Connective& alpha);

using StepObserver = std::function<void(int, const Distribution&)>;

Distribution iterate_exact(const ProcessSpec& spec, int steps,
                           const StepObserver& observer = {});

// Reachable-support analysis. The support sets of pi_i are eventually
// periodic with period 1 or 2; even_ids/odd_ids are the cycle sets for
// even and odd depths, union_ids includes transient members as well.
struct ClosureReport {
  Domain domain = Domain::General;
  int n = 0;
  int closed_at = 0;
  int period = 1;
  std::vector<std::uint64_t> union_ids;
  std::vector<std::uint64_t> even_ids;
  std::vector<std::uint64_t> odd_ids;
};

ClosureReport support_closure(const ProcessSpec& spec);

// Random depth-d formula value, drawn with a counter-based stream so that
// (seed, sample index) fully determines the result.
TruthTable sample_formula(const ProcessSpec& spec, int depth,
                          std::uint64_t seed, std::uint64_t index = 0);

// Empirical pi_depth from `samples` independent formulas. Worker count
// does not affect the result, only the wall time; workers = 0 picks up
// BOOLGROW_THREADS or the hardware count.
Distribution monte_carlo(const ProcessSpec& spec, int depth,
                         std::uint64_t samples, std::uint64_t seed,
                         int workers = 0);

// p_{i+1} = A(p_i) orbit, including p_0; length iters+1.
std::vector<double> scalar_trajectory(const CharPoly& cp, double p0, int iters);

int resolve_workers(int requested);

} // namespace boolgrow
