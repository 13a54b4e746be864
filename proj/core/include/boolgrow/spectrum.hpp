// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "boolgrow/connective.hpp"
#include "boolgrow/process.hpp"
#include "boolgrow/truth_table.hpp"

namespace boolgrow {

// Dense Fourier coefficients Delta(w) = sum_g (-1)^<g,w> pi(g) of a
// distribution over functions. General domain pairs truth tables by the
// parity of their AND; linear domain pairs coefficient vectors bitwise.
// iteration = -1 marks a limit spectrum.
struct Spectrum {
  Domain domain = Domain::General;
  int n = 0;
  int iteration = 0;
  std::vector<double> values;

  double at(std::uint64_t w) const { return values[w]; }
};

std::size_t spectrum_dim(Domain domain, int n);

Spectrum transform(const Distribution& pi);
Distribution inverse(const Spectrum& sp);

// Exact one-step update for a linear gate in the linear domain:
// Delta'(w) = (-1)^(c * w_0) * Delta(w)^j with j the number of inputs the
// gate reads and w_0 the coefficient of the constant-one direction.
Spectrum linear_step(const Spectrum& sp, const Connective& alpha);

// Limit spectrum of the balanced middle-slice processes on even n:
// Delta(w) = 0 unless w's table avoids the middle layer, otherwise
// +-1 by the parity of the overlap with the strict upper half.
Spectrum slice_spectrum(int n);

// max_w | Delta(w) - (-1)^<high,w> Delta(w and low) |, the residual of the
// restriction identity that the limit spectra satisfy exactly.
double restriction_residual(const Spectrum& sp, const TruthTable& low,
                            const TruthTable& high);

// Next-step coefficient at w from the gate spectrum:
//   Delta_{i+1}(w) = sum over tuples (v_1..v_k), v_j subset of w, of
//   prod_{a in w} S(column of tuple at a) * prod_j Delta_i(v_j).
double savicky_predict(const Distribution& pi, const Connective& alpha,
                       const TruthTable& w);

// Constants of the exponential-decay machinery for a balanced nonlinear
// gate: contraction a = sum |S|^3, thresholds i_d, the global onset I and
// the implicit smallest iteration certifying max |Delta_i| <= c.
struct BoundConstants {
  int k = 0;
  int n = 0;
  double a = 0.0;
  double log2_inv_a = 0.0;
  double i2 = 0.0;    // n 2^k log2(1/a)
  double onset = 0.0; // i2 + 2^2n (k+1)^(2^n) / log2(1/a)

  double i_d(int d) const;
  // log2 of the decay envelope for coefficients of weight d >= 2 at
  // iteration i. Weight 2 uses the direct bound 2^(-i / (n 2^k)); higher
  // weights use a^(i - i_d) (i - i2 + 2)^((k+1)^(d-3)). +inf when the
  // curve does not constrain iteration i yet.
  double envelope_log2(double i, int d) const;

  bool certifies(std::uint64_t i, double c) const;
  std::uint64_t smallest_i(double c) const;
};

BoundConstants bound_constants(const Connective& alpha, int n);

} // namespace boolgrow
