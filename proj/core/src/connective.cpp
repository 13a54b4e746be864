// SPDX-License-Identifier: Apache-2.0
#include "boolgrow/connective.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "boolgrow/detail/fwht.hpp"

namespace boolgrow {

Connective make_connective(const TruthTable& table, std::string name) {
  if (table.num_vars() < 1)
    throw std::invalid_argument("connective arity must be at least 1");
  return Connective{table, classify(table), std::move(name)};
}

namespace {

TruthTable preset_table(const std::string& name) {
  auto proj = [](int k, int j) { return make_basis(k, BasisKind::Projection, j); };
  if (name == "and2") return proj(2, 1) & proj(2, 2);
  if (name == "or2") return proj(2, 1) | proj(2, 2);
  if (name == "xor2") return proj(2, 1) ^ proj(2, 2);
  if (name == "and3") return make_threshold(3, 3);
  if (name == "or3") return make_threshold(3, 1);
  if (name == "xor3") return proj(3, 1) ^ proj(3, 2) ^ proj(3, 3);
  if (name == "maj3") return make_threshold(3, 2);
  if (name == "mux") {
    auto x = proj(3, 1), y = proj(3, 2), z = proj(3, 3);
    return (x & y) | (~x & z);
  }
  if (name == "slow3") {
    auto x = proj(3, 1), y = proj(3, 2), z = proj(3, 3);
    return (x & y) | (x & z);
  }
  if (name == "valiant4")
    return (proj(4, 1) & proj(4, 2)) | (proj(4, 3) & proj(4, 4));
  throw std::invalid_argument("unknown preset connective: " + name);
}

} // namespace

Connective preset_connective(const std::string& name) {
  return make_connective(preset_table(name), name);
}

std::vector<std::string> preset_connective_names() {
  return {"and2", "or2",  "xor2",  "and3",     "or3", "xor3",
          "maj3", "mux", "slow3", "valiant4"};
}

CharPoly::CharPoly(const TruthTable& alpha)
    : k_(alpha.num_vars()), counts_(alpha.num_vars() + 1, 0),
      binom_(alpha.num_vars() + 1, 0) {
  for (std::uint32_t r = 0; r < alpha.size(); ++r)
    if (alpha.get(r)) ++counts_[std::popcount(r)];
  binom_[0] = 1;
  for (int i = 1; i <= k_; ++i)
    binom_[i] = binom_[i - 1] * static_cast<std::uint64_t>(k_ - i + 1) /
                static_cast<std::uint64_t>(i);
}

CharPoly::CharPoly(int arity, std::vector<std::uint64_t> counts) : k_(arity) {
  if (static_cast<int>(counts.size()) != arity + 1)
    throw std::invalid_argument("weight count vector must have arity+1 entries");
  counts_ = std::move(counts);
  binom_.assign(k_ + 1, 0);
  binom_[0] = 1;
  for (int i = 1; i <= k_; ++i)
    binom_[i] = binom_[i - 1] * static_cast<std::uint64_t>(k_ - i + 1) /
                static_cast<std::uint64_t>(i);
  for (int i = 0; i <= k_; ++i)
    if (counts_[i] > binom_[i])
      throw std::invalid_argument("weight count exceeds binomial coefficient");
}

std::string CharPoly::beta_fraction(int i) const {
  return std::to_string(counts_[i]) + "/" + std::to_string(binom_[i]);
}

double CharPoly::value(double p) const {
  double q = 1.0 - p;
  std::vector<double> pp(k_ + 1), qp(k_ + 1);
  pp[0] = qp[0] = 1.0;
  for (int i = 1; i <= k_; ++i) {
    pp[i] = pp[i - 1] * p;
    qp[i] = qp[i - 1] * q;
  }
  double acc = 0.0;
  for (int i = 0; i <= k_; ++i)
    if (counts_[i])
      acc += static_cast<double>(counts_[i]) * pp[i] * qp[k_ - i];
  return acc;
}

double CharPoly::derivative(double p) const {
  double q = 1.0 - p;
  std::vector<double> pp(k_ + 1), qp(k_ + 1);
  pp[0] = qp[0] = 1.0;
  for (int i = 1; i <= k_; ++i) {
    pp[i] = pp[i - 1] * p;
    qp[i] = qp[i - 1] * q;
  }
  double acc = 0.0;
  for (int i = 0; i <= k_; ++i) {
    if (!counts_[i]) continue;
    double c = static_cast<double>(counts_[i]);
    if (i > 0) acc += c * static_cast<double>(i) * pp[i - 1] * qp[k_ - i];
    if (i < k_) acc -= c * static_cast<double>(k_ - i) * pp[i] * qp[k_ - i - 1];
  }
  return acc;
}

bool CharPoly::balanced_exact() const {
  std::uint64_t total = 0;
  for (auto c : counts_) total += c;
  return total * 2 == (1ull << k_);
}

FixedPointReport fixed_point(const CharPoly& cp, double tol) {
  const int k = cp.arity();

  // A(p) = p identically iff the counts match the Bernstein coefficients
  // of p itself, count_i = C(k-1, i-1).
  bool identity = cp.count(0) == 0;
  std::uint64_t b = 1;
  for (int i = 1; i <= k && identity; ++i) {
    identity = cp.count(i) == b;
    b = b * static_cast<std::uint64_t>(k - i) / static_cast<std::uint64_t>(i);
  }
  if (identity) return {FixedPointReport::Kind::Identity, 0.0, 0.0, 1.0};

  auto D = [&](double p) { return cp.value(p) - p; };

  constexpr int grid = 4096;
  double prev = 0.0;
  bool seen_pos = false, seen_neg = false;
  for (int i = 1; i < grid; ++i) {
    double p = static_cast<double>(i) / grid;
    double d = D(p);
    if (d == 0.0) {
      return {FixedPointReport::Kind::Interior, p, 0.0, cp.derivative(p)};
    }
    if (d > 0.0) seen_pos = true;
    if (d < 0.0) seen_neg = true;
    if (i > 1 && ((prev < 0.0) != (d < 0.0))) {
      double lo = static_cast<double>(i - 1) / grid;
      double hi = p;
      double dlo = prev;
      for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        double dm = D(mid);
        if (dm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((dm < 0.0) == (dlo < 0.0)) {
          lo = mid;
          dlo = dm;
        } else {
          hi = mid;
        }
      }
      double s = 0.5 * (lo + hi);
      return {FixedPointReport::Kind::Interior, s, std::fabs(D(s)),
              cp.derivative(s)};
    }
    prev = d;
  }
  if (seen_pos && !seen_neg)
    return {FixedPointReport::Kind::AboveEverywhere, 0.0, 0.0, 0.0};
  if (seen_neg && !seen_pos)
    return {FixedPointReport::Kind::BelowEverywhere, 0.0, 0.0, 0.0};
  // Only reachable for pathological sign patterns the grid failed to
  // bracket; treat the densest deviation as the answer.
  throw std::runtime_error("fixed point scan found no stable classification");
}

ConvergenceClassReport convergence_class(const Connective& alpha) {
  if (!alpha.props.monotone)
    throw std::invalid_argument("convergence dichotomy needs a monotone gate");
  CharPoly cp = char_poly(alpha);
  FixedPointReport fp = fixed_point(cp);
  if (fp.kind == FixedPointReport::Kind::Interior ||
      fp.kind == FixedPointReport::Kind::Identity)
    throw std::invalid_argument(
        "convergence dichotomy needs a gate without interior fixed point");

  ConvergenceClassReport rep;
  TruthTable work = alpha.table;
  if (fp.kind == FixedPointReport::Kind::AboveEverywhere) {
    work = dual(work);
    rep.used_dual = true;
  }
  CharPoly wp(work);
  const int k = wp.arity();
  std::uint64_t top = wp.count(k - 1);
  if (top >= static_cast<std::uint64_t>(k))
    throw std::runtime_error("downward gate with saturated top coefficient");
  rep.cls = top == static_cast<std::uint64_t>(k - 1) ? ConvergenceClass::Slow
                                                     : ConvergenceClass::Fast;

  // The fast regime can be keyed on the weight-(k-1) count (what the
  // classification above uses) or, more loosely, on the weight-(k-2)
  // count; flag gates where the two readings disagree.
  bool fast_by_top = top <= static_cast<std::uint64_t>(k - 2);
  if (k >= 2) {
    bool fast_by_next = wp.count(k - 2) * static_cast<std::uint64_t>(k) <=
                        static_cast<std::uint64_t>(k - 2) * wp.binom(k - 2);
    if (fast_by_next != fast_by_top)
      rep.note = "fast-regime hypothesis variants disagree; "
                 "classification uses the top-level coefficient";
  }
  return rep;
}

SpectralProfile spectral_profile(const Connective& alpha) {
  const int k = alpha.arity();
  if (k > 20)
    throw std::invalid_argument("gate spectrum capped at arity 20");
  std::vector<double> v(1ull << k);
  for (std::uint32_t r = 0; r < (1u << k); ++r)
    v[r] = alpha.table.get(r) ? -1.0 : 1.0;
  detail::fwht_inplace(v);
  SpectralProfile out;
  out.s.resize(v.size());
  double scale = 1.0 / static_cast<double>(1ull << k);
  for (std::size_t t = 0; t < v.size(); ++t) {
    double s = v[t] * scale;
    out.s[t] = s;
    double a = std::fabs(s);
    if (a > out.max_abs) out.max_abs = a;
    out.a3 += a * a * a;
    out.parseval += s * s;
  }
  out.s_zero = out.s[0];
  return out;
}

CharPoly char_poly(const Connective& alpha) { return CharPoly(alpha.table); }

} // namespace boolgrow
