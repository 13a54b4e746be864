// SPDX-License-Identifier: Apache-2.0
#include "boolgrow/spectrum.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "boolgrow/detail/fwht.hpp"

namespace boolgrow {

std::size_t spectrum_dim(Domain domain, int n) {
  if (domain == Domain::Linear) {
    if (n > 20)
      throw std::invalid_argument("linear-domain spectrum capped at n = 20");
    return 1ull << (n + 1);
  }
  if (n > 4)
    throw std::invalid_argument("general-domain spectrum capped at n = 4");
  return 1ull << (1u << n);
}

Spectrum transform(const Distribution& pi) {
  Spectrum sp;
  sp.domain = pi.domain;
  sp.n = pi.n;
  sp.iteration = pi.iteration;
  sp.values.assign(spectrum_dim(pi.domain, pi.n), 0.0);
  for (const auto& [id, p] : pi.entries) {
    if (id >= sp.values.size())
      throw std::invalid_argument("function id outside the spectrum space");
    sp.values[id] = p;
  }
  detail::fwht_inplace(sp.values);
  return sp;
}

Distribution inverse(const Spectrum& sp) {
  std::vector<double> v = sp.values;
  detail::fwht_inplace(v);
  double scale = 1.0 / static_cast<double>(v.size());
  Distribution out;
  out.domain = sp.domain;
  out.n = sp.n;
  out.iteration = sp.iteration;
  for (std::size_t id = 0; id < v.size(); ++id) {
    double p = v[id] * scale;
    if (p < 0.0) {
      if (p < -1e-9)
        throw std::invalid_argument("spectrum does not invert to a distribution");
      continue; // rounding dust
    }
    if (p != 0.0) out.entries.push_back({id, p});
  }
  return out;
}

Spectrum linear_step(const Spectrum& sp, const Connective& alpha) {
  if (sp.domain != Domain::Linear)
    throw std::invalid_argument("pointwise step lives in the linear domain");
  auto lc = linear_coeffs(alpha.table);
  if (!lc)
    throw std::invalid_argument("pointwise step needs a linear gate");
  int j = std::popcount(lc->var_mask());
  bool c = lc->constant_term();
  Spectrum out = sp;
  out.iteration = sp.iteration + 1;
  for (std::size_t w = 0; w < out.values.size(); ++w) {
    double d = 1.0;
    double base = sp.values[w];
    for (int e = 0; e < j; ++e) d *= base;
    if (c && (w & 1ull)) d = -d;
    out.values[w] = d;
  }
  return out;
}

Spectrum slice_spectrum(int n) {
  if (n % 2 != 0)
    throw std::invalid_argument("slice limit spectrum needs even n");
  std::uint64_t chi = make_chi(n).to_id();
  std::uint64_t ups = make_upsilon(n).to_id();
  Spectrum sp;
  sp.domain = Domain::General;
  sp.n = n;
  sp.iteration = -1;
  sp.values.assign(spectrum_dim(Domain::General, n), 0.0);
  for (std::uint64_t w = 0; w < sp.values.size(); ++w) {
    if (w & chi) continue;
    sp.values[w] = (std::popcount(w & ups) & 1) ? -1.0 : 1.0;
  }
  return sp;
}

double restriction_residual(const Spectrum& sp, const TruthTable& low,
                            const TruthTable& high) {
  if (sp.domain != Domain::General)
    throw std::invalid_argument("restriction residual is a general-domain notion");
  if (low.num_vars() != sp.n || high.num_vars() != sp.n)
    throw std::invalid_argument("restriction pair arity mismatch");
  std::uint64_t lo = low.to_id();
  std::uint64_t hi = high.to_id();
  double worst = 0.0;
  for (std::uint64_t w = 0; w < sp.values.size(); ++w) {
    double sign = (std::popcount(w & hi) & 1) ? -1.0 : 1.0;
    double r = std::fabs(sp.values[w] - sign * sp.values[w & lo]);
    if (r > worst) worst = r;
  }
  return worst;
}

double savicky_predict(const Distribution& pi, const Connective& alpha,
                       const TruthTable& w) {
  if (pi.domain != Domain::General)
    throw std::invalid_argument("spectral one-step prediction is general-domain");
  if (w.num_vars() != pi.n)
    throw std::invalid_argument("coefficient index arity mismatch");

  const int k = alpha.arity();
  const std::uint64_t wid = w.to_id();
  std::vector<int> pos; // assignments where w is true
  for (std::uint32_t a = 0; a < w.size(); ++a)
    if ((wid >> a) & 1ull) pos.push_back(a);
  const int d = static_cast<int>(pos.size());

  std::uint64_t tuples = 1;
  for (int j = 0; j < k; ++j) {
    tuples *= 1ull << d;
    if (tuples > 10'000'000ull)
      throw BudgetError("spectral one-step tuple budget exceeded", tuples);
  }

  Spectrum sp = transform(pi);
  SpectralProfile prof = spectral_profile(alpha);

  // subsets of w, as function ids aligned with sp
  std::vector<std::uint64_t> subs(1ull << d, 0);
  for (std::uint32_t m = 0; m < subs.size(); ++m) {
    std::uint64_t id = 0;
    for (int b = 0; b < d; ++b)
      if ((m >> b) & 1u) id |= 1ull << pos[b];
    subs[m] = id;
  }

  double acc = 0.0;
  std::vector<std::uint32_t> v(k, 0); // subset masks per slot
  while (true) {
    double prod = 1.0;
    for (int j = 0; j < k; ++j) prod *= sp.values[subs[v[j]]];
    if (prod != 0.0) {
      double sfac = 1.0;
      for (int b = 0; b < d && sfac != 0.0; ++b) {
        std::uint32_t col = 0;
        for (int j = 0; j < k; ++j) col |= ((v[j] >> b) & 1u) << j;
        sfac *= prof.s[col];
      }
      acc += sfac * prod;
    }
    int slot = 0;
    while (slot < k && ++v[slot] == subs.size()) v[slot++] = 0;
    if (slot == k) break;
  }
  return acc;
}

double BoundConstants::i_d(int d) const {
  double v = i2;
  for (int j = 3; j <= d; ++j)
    v += std::pow(static_cast<double>(k + 1), j) * j / log2_inv_a;
  return v;
}

double BoundConstants::envelope_log2(double i, int d) const {
  if (d < 2) throw std::invalid_argument("envelope defined for weight >= 2");
  if (d == 2) return -i / (n * std::pow(2.0, k));
  double body = i - i2 + 2.0;
  if (body <= 0.0) return std::numeric_limits<double>::infinity();
  return (i - i_d(d)) * std::log2(a) +
         std::pow(static_cast<double>(k + 1), d - 3) * std::log2(body);
}

bool BoundConstants::certifies(std::uint64_t i, double c) const {
  if (c <= 0.0 || c >= 1.0)
    throw std::invalid_argument("decay target must lie in (0,1)");
  double x = static_cast<double>(i);
  double body = x - onset + 2.0;
  if (body < 1.0) return false; // envelope not yet meaningful
  double power = std::pow(static_cast<double>(k + 1),
                          std::pow(2.0, n)); // (k+1)^(2^n)
  double rhs = std::log2(1.0 / c) / log2_inv_a +
               std::log2(body) / log2_inv_a * power + onset;
  return x >= rhs;
}

std::uint64_t BoundConstants::smallest_i(double c) const {
  // The gap i - rhs(i) is unimodal with a single crossing; grow an upper
  // bracket then bisect down to the first certified iteration.
  std::uint64_t lo = static_cast<std::uint64_t>(std::max(0.0, std::floor(onset)));
  std::uint64_t hi = lo + 2;
  while (!certifies(hi, c)) {
    if (hi > (1ull << 62))
      throw std::runtime_error("decay certificate out of range");
    hi *= 2;
  }
  while (lo + 1 < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (certifies(mid, c))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

BoundConstants bound_constants(const Connective& alpha, int n) {
  SpectralProfile prof = spectral_profile(alpha);
  if (prof.s_zero != 0.0 || prof.max_abs >= 1.0)
    throw std::invalid_argument(
        "decay constants need a balanced nonlinear gate");
  BoundConstants bc;
  bc.k = alpha.arity();
  bc.n = n;
  bc.a = prof.a3;
  bc.log2_inv_a = std::log2(1.0 / bc.a);
  bc.i2 = n * std::pow(2.0, bc.k) * bc.log2_inv_a;
  bc.onset = bc.i2 + std::pow(2.0, 2 * n) *
                         std::pow(static_cast<double>(bc.k + 1),
                                  std::pow(2.0, n)) /
                         bc.log2_inv_a;
  return bc;
}

} // namespace boolgrow
