// SPDX-License-Identifier: Apache-2.0
#include "boolgrow/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "boolgrow/detail/rng.hpp"

namespace boolgrow {

namespace {

constexpr std::uint64_t set_cap = 1ull << 16;

std::uint64_t binom_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * static_cast<std::uint64_t>(n - i + 1) / static_cast<std::uint64_t>(i);
  return r;
}

} // namespace

std::string SetDescriptor::describe() const {
  std::string base = " on " + std::to_string(n) + " inputs";
  switch (family) {
  case SetFamily::Threshold:
    return "threshold T_" + std::to_string(param) + base;
  case SetFamily::Slice:
    return "slice functions at level " + std::to_string(param) + base;
  case SetFamily::SelfDualSlice:
    return "self-dual middle-slice functions" + base;
  case SetFamily::SelfDual:
    return "self-dual functions" + base;
  case SetFamily::AllFunctions:
    return "all functions" + base;
  case SetFamily::BiPreserving:
    return "bottom/top preserving functions" + base;
  case SetFamily::AllLinear:
    return "all affine functions" + base;
  case SetFamily::LinearConstrained: {
    std::string s = "affine functions" + base;
    if (c0) s += ", constant term " + std::to_string(*c0);
    if (var_parity)
      s += std::string(", ") + (*var_parity ? "odd" : "even") +
           " variable count";
    return s;
  }
  case SetFamily::ExplicitSet:
    return "explicit set of " + std::to_string(ids.size()) + " functions";
  }
  return "unknown set";
}

std::vector<std::uint64_t> materialize(const SetDescriptor& d) {
  const int n = d.n;
  std::vector<std::uint64_t> out;

  if (d.domain == Domain::Linear) {
    const std::uint64_t dim = 1ull << (n + 1);
    switch (d.family) {
    case SetFamily::AllLinear:
      if (dim > set_cap) throw BudgetError("affine family exceeds set cap", dim);
      for (std::uint64_t id = 0; id < dim; ++id) out.push_back(id);
      return out;
    case SetFamily::LinearConstrained:
      if (dim > set_cap) throw BudgetError("affine family exceeds set cap", dim);
      for (std::uint64_t id = 0; id < dim; ++id) {
        if (d.c0 && static_cast<int>(id & 1ull) != *d.c0) continue;
        if (d.var_parity &&
            (std::popcount(id >> 1) & 1) != *d.var_parity)
          continue;
        out.push_back(id);
      }
      return out;
    case SetFamily::ExplicitSet:
      return d.ids;
    default:
      throw std::invalid_argument("set family does not live in the linear domain");
    }
  }

  if (n > 6)
    throw std::invalid_argument("general-domain sets need packed ids (n <= 6)");
  const std::uint32_t sz = 1u << n;

  switch (d.family) {
  case SetFamily::Threshold:
    out.push_back(make_threshold(n, d.param).to_id());
    return out;
  case SetFamily::Slice: {
    std::vector<int> level;
    std::uint64_t fixed = 0;
    for (std::uint32_t a = 0; a < sz; ++a) {
      int w = std::popcount(a);
      if (w > d.param) fixed |= 1ull << a;
      if (w == d.param) level.push_back(a);
    }
    if (level.size() > 16)
      throw BudgetError("slice family exceeds set cap", 1ull << level.size());
    for (std::uint64_t m = 0; m < (1ull << level.size()); ++m) {
      std::uint64_t id = fixed;
      for (std::size_t b = 0; b < level.size(); ++b)
        if ((m >> b) & 1ull) id |= 1ull << level[b];
      out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  case SetFamily::SelfDualSlice: {
    if (n % 2 != 0)
      throw std::invalid_argument("middle slice needs even arity");
    const std::uint32_t all = sz - 1;
    std::vector<std::pair<int, int>> pairs;
    std::uint64_t fixed = 0;
    for (std::uint32_t a = 0; a < sz; ++a) {
      int w = std::popcount(a);
      if (2 * w > n) fixed |= 1ull << a;
      if (2 * w == n && a < (a ^ all)) pairs.push_back({static_cast<int>(a),
                                                        static_cast<int>(a ^ all)});
    }
    if (pairs.size() > 16)
      throw BudgetError("self-dual slice family exceeds set cap",
                        1ull << pairs.size());
    for (std::uint64_t m = 0; m < (1ull << pairs.size()); ++m) {
      std::uint64_t id = fixed;
      for (std::size_t b = 0; b < pairs.size(); ++b) {
        if ((m >> b) & 1ull)
          id |= 1ull << pairs[b].first;
        else
          id |= 1ull << pairs[b].second;
      }
      out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  case SetFamily::SelfDual: {
    const std::uint32_t all = sz - 1;
    std::vector<int> reps;
    for (std::uint32_t a = 0; a < sz; ++a)
      if (a < (a ^ all)) reps.push_back(a);
    if (reps.size() > 16)
      throw BudgetError("self-dual family exceeds set cap", 1ull << reps.size());
    for (std::uint64_t m = 0; m < (1ull << reps.size()); ++m) {
      std::uint64_t id = 0;
      for (std::size_t b = 0; b < reps.size(); ++b) {
        std::uint32_t a = reps[b];
        if ((m >> b) & 1ull)
          id |= 1ull << a;
        else
          id |= 1ull << (a ^ all);
      }
      out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  case SetFamily::AllFunctions: {
    std::uint64_t dim = 1ull << sz;
    if (dim > set_cap) throw BudgetError("function space exceeds set cap", dim);
    for (std::uint64_t id = 0; id < dim; ++id) out.push_back(id);
    return out;
  }
  case SetFamily::BiPreserving: {
    if (sz < 2) throw std::invalid_argument("need at least one input");
    std::uint64_t free_bits = sz - 2;
    if ((1ull << free_bits) > set_cap)
      throw BudgetError("bi-preserving family exceeds set cap",
                        1ull << free_bits);
    for (std::uint64_t m = 0; m < (1ull << free_bits); ++m)
      out.push_back((m << 1) | (1ull << (sz - 1)));
    return out;
  }
  case SetFamily::ExplicitSet:
    return d.ids;
  default:
    throw std::invalid_argument("set family does not live in the general domain");
  }
}

Distribution set_distribution(const SetDescriptor& d) {
  std::vector<std::uint64_t> ids = materialize(d);
  if (ids.empty()) throw std::invalid_argument("empty limit set");
  Distribution out;
  out.domain = d.domain;
  out.n = d.n;
  out.iteration = -1;
  double p = 1.0 / static_cast<double>(ids.size());
  for (auto id : ids) out.entries.push_back({id, p});
  out.sort_and_compact();
  return out;
}

LimitLaw limit_distribution(const Prediction& pred) {
  LimitLaw law;
  switch (pred.kind) {
  case PredictionKind::Concentrated:
  case PredictionKind::UniformOnSet:
    law.limit = set_distribution(*pred.set);
    return law;
  case PredictionKind::Alternating:
    law.even_limit = set_distribution(*pred.even_set);
    law.odd_limit = set_distribution(*pred.odd_set);
    return law;
  default:
    throw std::invalid_argument("prediction has no limit law to materialize");
  }
}

namespace {

SetDescriptor linear_descriptor(int n, std::vector<std::uint64_t> ids) {
  SetDescriptor d;
  d.domain = Domain::Linear;
  d.n = n;
  if (ids.size() == (1ull << (n + 1))) {
    d.family = SetFamily::AllLinear;
    return d;
  }
  bool c0_const = true, vp_const = true;
  int c0v = static_cast<int>(ids[0] & 1ull);
  int vpv = std::popcount(ids[0] >> 1) & 1;
  for (auto id : ids) {
    if (static_cast<int>(id & 1ull) != c0v) c0_const = false;
    if ((std::popcount(id >> 1) & 1) != vpv) vp_const = false;
  }
  std::uint64_t masks = vp_const ? (1ull << (n - 1)) : (1ull << n);
  std::uint64_t expected = (c0_const ? 1ull : 2ull) * masks;
  if (ids.size() == expected && (c0_const || vp_const)) {
    d.family = SetFamily::LinearConstrained;
    if (c0_const) d.c0 = c0v;
    if (vp_const) d.var_parity = vpv;
    return d;
  }
  d.family = SetFamily::ExplicitSet;
  d.ids = std::move(ids);
  return d;
}

Prediction predict_linear(const ProcessSpec& spec) {
  Prediction pred;
  ClosureReport cr;
  try {
    cr = support_closure(spec);
  } catch (const BudgetError& e) {
    pred.kind = PredictionKind::Unknown;
    pred.note = std::string("support closure over budget: ") + e.what();
    return pred;
  }
  bool alternating = cr.even_ids != cr.odd_ids;
  if (alternating) {
    pred.kind = PredictionKind::Alternating;
    pred.tag = "linear-alternating";
    pred.even_set = linear_descriptor(cr.n, cr.even_ids);
    pred.odd_set = linear_descriptor(cr.n, cr.odd_ids);
  } else {
    SetDescriptor d = linear_descriptor(cr.n, cr.even_ids);
    pred.kind = d.family == SetFamily::ExplicitSet && d.ids.size() == 1
                    ? PredictionKind::Concentrated
                    : PredictionKind::UniformOnSet;
    pred.tag = spec.support.negations ? "linear-negations" : "linear-limit";
    pred.set = std::move(d);
  }
  return pred;
}

// Smallest threshold whose starting marginal clears the fixed point.
int marginal_threshold(const SupportSpec& s, double t) {
  double denom = s.member_count();
  for (int j = 0; j <= s.n; ++j) {
    double p0 = (static_cast<double>(j) + (s.const1 ? 1.0 : 0.0)) / denom;
    if (p0 > t) return j;
  }
  return s.n + 1;
}

Prediction predict_balanced_monotone(const ProcessSpec& spec) {
  const SupportSpec& s = spec.support;
  const int n = s.n;
  Prediction pred;

  auto majority = [&]() {
    pred.kind = PredictionKind::Concentrated;
    pred.tag = "majority-odd";
    SetDescriptor d;
    d.family = SetFamily::Threshold;
    d.n = n;
    d.param = (n + 1) / 2;
    pred.set = d;
  };

  if (!s.const0 && !s.const1) {
    if (n % 2 == 1) {
      majority();
    } else if (spec.alpha.props.self_dual) {
      pred.kind = PredictionKind::UniformOnSet;
      pred.tag = "self-dual-slice";
      SetDescriptor d;
      d.family = SetFamily::SelfDualSlice;
      d.n = n;
      d.param = n / 2;
      pred.set = d;
    } else {
      pred.kind = PredictionKind::UniformOnSet;
      pred.tag = "slice-even";
      SetDescriptor d;
      d.family = SetFamily::Slice;
      d.n = n;
      d.param = n / 2;
      pred.set = d;
    }
    return pred;
  }

  if (s.const0 && s.const1) {
    if (n % 2 == 1) {
      majority();
    } else {
      pred.kind = PredictionKind::UniformOnSet;
      pred.tag = "slice-even";
      SetDescriptor d;
      d.family = SetFamily::Slice;
      d.n = n;
      d.param = n / 2;
      pred.set = d;
    }
    return pred;
  }

  // exactly one constant
  if (n % 2 == 1) {
    // the only undecided marginal sits one level off the middle
    pred.kind = PredictionKind::UniformOnSet;
    pred.tag = "one-constant-odd-slice";
    SetDescriptor d;
    d.family = SetFamily::Slice;
    d.n = n;
    d.param = s.const1 ? (n - 1) / 2 : (n + 1) / 2;
    pred.set = d;
    return pred;
  }
  // even n: every marginal decays to a constant, pinning one function;
  // resolve it by running the process and reading off the dominant mass.
  try {
    Distribution d60 = iterate_exact(spec, 60);
    std::uint64_t best = 0;
    double bestp = -1.0;
    for (const auto& [id, p] : d60.entries)
      if (p > bestp) {
        bestp = p;
        best = id;
      }
    pred.kind = PredictionKind::Concentrated;
    pred.tag = "one-constant-even-empirical";
    pred.note = "single limit identified by dominant mass after 60 exact steps";
    SetDescriptor d;
    d.family = SetFamily::ExplicitSet;
    d.n = n;
    d.ids = {best};
    pred.set = d;
  } catch (const BudgetError& e) {
    pred.kind = PredictionKind::Unknown;
    pred.note = std::string("empirical resolution over budget: ") + e.what();
  }
  return pred;
}

} // namespace

Prediction predict(const ProcessSpec& spec) {
  const SupportSpec& s = spec.support;
  const PropertySet& P = spec.alpha.props;
  const int n = s.n;
  Prediction pred;

  if (spec.alpha.arity() == 1 || !P.depends_on_all) {
    pred.kind = PredictionKind::Degenerate;
    pred.tag = "degenerate-gate";
    pred.note = "gate ignores at least one input; reduce it first";
    return pred;
  }

  if (P.linear) return predict_linear(spec);

  if (P.self_dual && s.negations && !s.const0 && !s.const1) {
    pred.kind = PredictionKind::UniformOnSet;
    pred.tag = "self-dual-support";
    SetDescriptor d;
    d.family = SetFamily::SelfDual;
    d.n = n;
    pred.set = d;
    return pred;
  }

  if (P.balanced && s.negations && s.const0 && s.const1) {
    pred.kind = PredictionKind::UniformOnSet;
    pred.tag = "balanced-full-support";
    SetDescriptor d;
    d.family = SetFamily::AllFunctions;
    d.n = n;
    pred.set = d;
    return pred;
  }

  if (P.monotone && !s.negations) {
    CharPoly cp = char_poly(spec.alpha);
    FixedPointReport fp = fixed_point(cp);
    if (fp.kind == FixedPointReport::Kind::AboveEverywhere ||
        fp.kind == FixedPointReport::Kind::BelowEverywhere) {
      pred.kind = PredictionKind::Concentrated;
      pred.tag = "threshold-no-fixed-point";
      SetDescriptor d;
      d.family = SetFamily::Threshold;
      d.n = n;
      d.param = fp.kind == FixedPointReport::Kind::AboveEverywhere
                    ? (s.const1 ? 0 : 1)
                    : (s.const0 ? n + 1 : n);
      pred.set = d;
      return pred;
    }
    if (fp.kind == FixedPointReport::Kind::Interior) {
      if (cp.balanced_exact()) return predict_balanced_monotone(spec);
      pred.kind = PredictionKind::Concentrated;
      pred.tag = "threshold-fixed-point";
      SetDescriptor d;
      d.family = SetFamily::Threshold;
      d.n = n;
      d.param = marginal_threshold(s, fp.s);
      pred.set = d;
      return pred;
    }
  }

  if (!s.negations && !s.const0 && !s.const1 &&
      spec.alpha.table == preset_connective("mux").table) {
    pred.kind = PredictionKind::UniformOnSet;
    pred.tag = "bi-preserving";
    SetDescriptor d;
    d.family = SetFamily::BiPreserving;
    d.n = n;
    pred.set = d;
    return pred;
  }

  pred.kind = PredictionKind::Unknown;
  pred.note = "no structural result covers this gate/support combination";
  return pred;
}

IterationBound theoretical_iterations(const ProcessSpec& spec, double eps) {
  if (eps <= 0.0 || eps >= 1.0)
    throw std::invalid_argument("target accuracy must lie in (0,1)");
  Prediction pred = predict(spec);
  if (pred.kind == PredictionKind::Unknown ||
      pred.kind == PredictionKind::Degenerate)
    throw std::invalid_argument("no iteration bound without a predicted limit");

  const int n = spec.support.n;
  const int k = spec.alpha.arity();
  const double lg_n = std::log2(static_cast<double>(n));
  IterationBound b;

  if (pred.tag.rfind("linear", 0) == 0) {
    b.tag = "linear-spectral";
    b.value = 2.0 * lg_n / std::log2(static_cast<double>(k));
    b.has_unknown_constant = false;
    b.note = "certifies deviation below 2^-n";
    return b;
  }
  if (pred.tag == "threshold-no-fixed-point") {
    ConvergenceClassReport cc = convergence_class(spec.alpha);
    if (cc.cls == ConvergenceClass::Fast) {
      b.tag = "fast-amplification";
      b.value = 3.0 * lg_n;
    } else {
      b.tag = "slow-amplification";
      b.value = std::pow(static_cast<double>(n), k - 2) /
                static_cast<double>(k - 1) * lg_n;
    }
    b.has_unknown_constant = true;
    b.note = cc.note;
    return b;
  }
  if (pred.tag == "balanced-full-support") {
    BoundConstants bc = bound_constants(spec.alpha, n);
    b.tag = "spectral-envelope";
    b.value = static_cast<double>(bc.smallest_i(eps));
    b.has_unknown_constant = false;
    return b;
  }
  if (pred.tag == "self-dual-support" || pred.tag == "bi-preserving") {
    b.tag = "exponential-decay";
    b.value = std::numeric_limits<double>::quiet_NaN();
    b.has_unknown_constant = true;
    b.note = "only a qualitative exponential tail is known here";
    return b;
  }
  // interior-fixed-point family: threshold, majority, slice flavours
  b.tag = "fixed-point-amplification";
  b.value = static_cast<double>(k) * std::pow(2.0, k) * lg_n;
  b.has_unknown_constant = true;
  return b;
}

ConvergenceReport empirical_convergence(const ProcessSpec& spec, double eps,
                                        int max_iters, Metric metric) {
  if (max_iters < 0) throw std::invalid_argument("need max_iters >= 0");
  ConvergenceReport rep;
  rep.prediction = predict(spec);
  if (rep.prediction.kind == PredictionKind::Unknown ||
      rep.prediction.kind == PredictionKind::Degenerate)
    throw std::invalid_argument("no predicted limit to measure against");
  LimitLaw law = limit_distribution(rep.prediction);

  Distribution d = initial_distribution(spec);
  for (int i = 0; i <= max_iters; ++i) {
    if (i > 0) d = step_exact(d, spec.alpha);
    const Distribution& target =
        law.limit ? *law.limit : (i % 2 == 0 ? *law.even_limit : *law.odd_limit);
    double dist = distance(d, target, metric);
    rep.trajectory.push_back(dist);
    rep.final_distance = dist;
    if (dist <= eps) {
      rep.achieved = true;
      rep.iterations_measured = i;
      break;
    }
  }
  return rep;
}

// ---- lemma margins --------------------------------------------------------

double minslope_margin(const CharPoly& cp) {
  FixedPointReport fp = fixed_point(cp);
  if (fp.kind != FixedPointReport::Kind::Interior)
    throw std::invalid_argument("slope bound needs an interior fixed point");
  int k = cp.arity();
  double bound = 1.0 + static_cast<double>(k - 2) / std::pow(2.0, k - 2);
  return fp.slope - bound;
}

double triv_margin(const CharPoly& cp) {
  int k = cp.arity();
  double c = static_cast<double>(binom_u64(k, 2)) + 1.0;
  double worst = std::numeric_limits<double>::infinity();
  constexpr int grid = 1024;
  for (int i = 1; i < grid; ++i) {
    double p = static_cast<double>(i) / grid;
    worst = std::min(worst, c * p * p - cp.value(p));
  }
  return worst;
}

double fastnfp_margin(const CharPoly& cp) {
  int k = cp.arity();
  double hi = 1.0 / (static_cast<double>(k) * std::pow(2.0, k + 1));
  double worst = std::numeric_limits<double>::infinity();
  constexpr int grid = 64;
  for (int i = 1; i <= grid; ++i) {
    double eps = hi * static_cast<double>(i) / (grid + 1);
    worst = std::min(worst, cp.derivative(1.0 - eps) - 35.0 / 24.0);
  }
  return worst;
}

double slownfp_margin(const CharPoly& cp) {
  int k = cp.arity();
  double hi = 1.0 / static_cast<double>(k);
  double worst = std::numeric_limits<double>::infinity();
  constexpr int grid = 64;
  for (int i = 1; i <= grid; ++i) {
    double eps = hi * static_cast<double>(i) / (grid + 1);
    double der = cp.derivative(1.0 - eps);
    double lower = der - (1.0 + std::pow(eps, k));
    double upper = std::pow(1.0 - eps, k - 2) *
                       (static_cast<double>(k) * (k - 2) * eps + 1.0) -
                   der;
    worst = std::min({worst, lower, upper});
  }
  return worst;
}

double equiv_margin(const CharPoly& cp, int denominator_bound) {
  FixedPointReport fp = fixed_point(cp);
  if (fp.kind != FixedPointReport::Kind::Interior)
    throw std::invalid_argument("rationality check needs an interior fixed point");
  constexpr double guard = 1e-7;
  if (cp.balanced_exact()) return guard - std::fabs(fp.s - 0.5);
  double nearest = std::numeric_limits<double>::infinity();
  for (int b = 2; b <= denominator_bound; ++b)
    for (int a = 1; a < b; ++a)
      nearest = std::min(nearest,
                         std::fabs(fp.s - static_cast<double>(a) / b));
  return nearest - guard;
}

// ---- populations ----------------------------------------------------------

std::vector<Connective> all_connectives(int k) {
  if (k < 1 || k > 4)
    throw std::invalid_argument("exhaustive gate enumeration capped at arity 4");
  std::vector<Connective> out;
  std::uint64_t dim = 1ull << (1u << k);
  out.reserve(dim);
  for (std::uint64_t id = 0; id < dim; ++id)
    out.push_back(make_connective(TruthTable::from_id(k, id)));
  return out;
}

std::vector<Connective> monotone_connectives(int k) {
  std::vector<Connective> out;
  for (auto& c : all_connectives(k))
    if (c.props.monotone) out.push_back(std::move(c));
  return out;
}

std::vector<Connective> sampled_monotone_connectives(int k, int count,
                                                     std::uint64_t seed) {
  if (k < 1 || k > 6)
    throw std::invalid_argument("sampled gate arity capped at 6");
  std::vector<Connective> out;
  detail::SplitMix64 rng{seed};
  const std::uint32_t sz = 1u << k;
  for (int i = 0; i < count; ++i) {
    std::uint64_t bits = rng.next();
    if (sz < 64) bits &= (1ull << sz) - 1;
    // upward closure makes the table monotone: or in everything below
    TruthTable t(k);
    for (std::uint32_t a = 0; a < sz; ++a)
      if ((bits >> a) & 1ull) t.set(a, true);
    for (int j = 0; j < k; ++j)
      for (std::uint32_t a = 0; a < sz; ++a)
        if ((a & (1u << j)) && t.get(a ^ (1u << j))) t.set(a, true);
    out.push_back(make_connective(t));
  }
  return out;
}

// ---- lemma drivers --------------------------------------------------------

namespace {

std::string hex_witness(const Connective& c) {
  return "arity " + std::to_string(c.arity()) + " gate 0x" + c.table.to_hex();
}

ProcessSpec default_slice_spec() {
  return ProcessSpec{SupportSpec{2, false, true, true},
                     preset_connective("maj3")};
}

ProcessSpec default_full_spec() {
  return ProcessSpec{SupportSpec{2, true, true, true},
                     preset_connective("maj3")};
}

CheckResult scan_margins(
    const std::string& lemma, const LemmaOptions& o,
    const std::function<bool(const Connective&, const CharPoly&)>& admit,
    const std::function<double(const CharPoly&)>& margin, double floor) {
  CheckResult r;
  r.lemma = lemma;
  r.population = o.population_label;
  r.pass = true;
  r.worst_margin = std::numeric_limits<double>::infinity();
  int used = 0;
  for (const auto& c : o.population) {
    CharPoly cp = char_poly(c);
    if (!admit(c, cp)) continue;
    ++used;
    double m = margin(cp);
    if (m < r.worst_margin) {
      r.worst_margin = m;
      r.witness = hex_witness(c);
    }
    if (m < floor) r.pass = false;
  }
  if (used == 0) {
    r.pass = false;
    r.witness = "no gate in the population satisfies the hypotheses";
  }
  r.population += " (" + std::to_string(used) + " admitted)";
  return r;
}

bool below_everywhere(const CharPoly& cp) {
  return fixed_point(cp).kind == FixedPointReport::Kind::BelowEverywhere;
}

bool interior_fp(const CharPoly& cp) {
  return fixed_point(cp).kind == FixedPointReport::Kind::Interior;
}

} // namespace

CheckResult verify_lemma(Lemma which, const LemmaOptions& o) {
  switch (which) {
  case Lemma::BalanceIff: {
    CheckResult r;
    r.lemma = "balance-iff-half";
    r.population = o.population_label;
    r.pass = true;
    r.worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& c : o.population) {
      CharPoly cp = char_poly(c);
      bool bal = cp.balanced_exact();
      double v = cp.value(0.5);
      if ((v == 0.5) != bal) {
        r.pass = false;
        r.witness = hex_witness(c);
      }
      if (!bal) r.worst_margin = std::min(r.worst_margin, std::fabs(v - 0.5));
    }
    return r;
  }
  case Lemma::MinSlope:
    return scan_margins(
        "interior-slope-floor", o,
        [](const Connective& c, const CharPoly& cp) {
          return c.props.monotone && cp.arity() >= 2 && interior_fp(cp);
        },
        [](const CharPoly& cp) { return minslope_margin(cp); }, -1e-9);
  case Lemma::TrivialQuadratic:
    return scan_margins(
        "no-weight-one-quadratic-cap", o,
        [](const Connective& c, const CharPoly& cp) {
          return c.props.monotone && cp.count(1) == 0;
        },
        [](const CharPoly& cp) { return triv_margin(cp); }, 0.0);
  case Lemma::FastNoFixpoint:
    return scan_margins(
        "fast-regime-slope", o,
        [](const Connective& c, const CharPoly& cp) {
          int k = cp.arity();
          return c.props.monotone && k > 2 && cp.count(k) == 1 &&
                 cp.count(k - 1) <= static_cast<std::uint64_t>(k - 2) &&
                 below_everywhere(cp);
        },
        [](const CharPoly& cp) { return fastnfp_margin(cp); }, 0.0);
  case Lemma::SlowNoFixpoint:
    return scan_margins(
        "slow-regime-slope", o,
        [](const Connective& c, const CharPoly& cp) {
          int k = cp.arity();
          return c.props.monotone && k > 2 &&
                 cp.count(k - 1) == static_cast<std::uint64_t>(k - 1) &&
                 below_everywhere(cp);
        },
        [](const CharPoly& cp) { return slownfp_margin(cp); }, -1e-12);
  case Lemma::Equivalence:
    return scan_margins(
        "fixed-point-rationality", o,
        [](const Connective& c, const CharPoly& cp) {
          return c.props.monotone && cp.arity() >= 2 && interior_fp(cp);
        },
        [&](const CharPoly& cp) {
          return equiv_margin(cp, o.denominator_bound);
        },
        0.0);
  case Lemma::FourierSlice: {
    CheckResult r;
    r.lemma = "slice-limit-spectrum";
    r.population = "middle slice on " + std::to_string(o.n) + " inputs";
    SetDescriptor d;
    d.family = SetFamily::Slice;
    d.n = o.n;
    d.param = o.n / 2;
    Spectrum got = transform(set_distribution(d));
    Spectrum want = slice_spectrum(o.n);
    double worst = 0.0;
    for (std::size_t w = 0; w < got.values.size(); ++w)
      worst = std::max(worst, std::fabs(got.values[w] - want.values[w]));
    r.pass = worst == 0.0;
    r.worst_margin = -worst;
    if (!r.pass) r.witness = "max deviation " + std::to_string(worst);
    return r;
  }
  case Lemma::Restriction: {
    CheckResult r;
    r.lemma = "restriction-identity-residual";
    ProcessSpec spec = o.spec ? *o.spec : default_slice_spec();
    r.population = "exact iterates of " + spec.alpha.name + " middle-slice process";
    TruthTable lo = make_chi(spec.support.n);
    TruthTable hi = make_upsilon(spec.support.n);
    std::vector<double> residuals;
    Distribution d = initial_distribution(spec);
    for (int i = 1; i <= o.iters; ++i) {
      d = step_exact(d, spec.alpha);
      if (i >= 5) residuals.push_back(restriction_residual(transform(d), lo, hi));
    }
    bool monotone_decay = true;
    for (std::size_t i = 1; i < residuals.size(); ++i)
      if (residuals[i] > residuals[i - 1] + 1e-15) monotone_decay = false;
    double final = residuals.empty() ? 1.0 : residuals.back();
    r.pass = monotone_decay && final <= 1e-6;
    r.worst_margin = 1e-6 - final;
    if (!monotone_decay) r.witness = "residual failed to decrease";
    return r;
  }
  case Lemma::SavickyRecurrence: {
    CheckResult r;
    r.lemma = "spectral-one-step";
    ProcessSpec spec = o.spec ? *o.spec : default_full_spec();
    r.population = "random and iterated states, coefficient weight <= " +
                   std::to_string(o.max_weight);
    const int n = spec.support.n;
    const std::uint32_t sz = 1u << n;

    std::vector<Distribution> states;
    states.push_back(iterate_exact(spec, 5));
    Distribution rnd;
    rnd.domain = Domain::General;
    rnd.n = n;
    detail::SplitMix64 rng{o.seed};
    double tot = 0.0;
    for (std::uint64_t id = 0; id < (1ull << sz); ++id) {
      double v = static_cast<double>(rng.next() >> 11) * 0x1p-53;
      rnd.entries.push_back({id, v});
      tot += v;
    }
    for (auto& e : rnd.entries) e.second /= tot;
    states.push_back(rnd);

    double worst = 0.0;
    for (const auto& st : states) {
      Spectrum next = transform(step_exact(st, spec.alpha));
      for (std::uint64_t wid = 0; wid < next.values.size(); ++wid) {
        if (std::popcount(wid) > o.max_weight) continue;
        TruthTable w = TruthTable::from_id(n, wid);
        double predicted = savicky_predict(st, spec.alpha, w);
        worst = std::max(worst, std::fabs(predicted - next.values[wid]));
      }
    }
    r.pass = worst <= 1e-9;
    r.worst_margin = 1e-9 - worst;
    if (!r.pass) r.witness = "max deviation " + std::to_string(worst);
    return r;
  }
  case Lemma::SpectralNorm: {
    CheckResult r;
    r.lemma = "gate-spectrum-power";
    r.population = o.population_label;
    r.pass = true;
    double worst = 0.0;
    for (const auto& c : o.population) {
      SpectralProfile prof = spectral_profile(c);
      worst = std::max(worst, std::fabs(prof.parseval - 1.0));
      bool bal = CharPoly(c.table).balanced_exact();
      if ((prof.s_zero == 0.0) != bal) {
        r.pass = false;
        r.witness = hex_witness(c);
      }
    }
    if (worst > 1e-12) r.pass = false;
    r.worst_margin = 1e-12 - worst;
    return r;
  }
  case Lemma::PredictionConsistency: {
    CheckResult r;
    r.lemma = "limit-consistency";
    r.population = "standard two-input processes";
    r.pass = true;
    double worst = 0.0;
    struct Row {
      const char* gate;
      SupportSpec s;
    };
    const Row rows[] = {
        {"maj3", {2, false, true, true}}, {"maj3", {2, true, false, false}},
        {"maj3", {2, true, true, true}},  {"mux", {2, false, false, false}},
        {"xor2", {2, false, false, false}}, {"and2", {2, false, false, false}},
    };
    for (const auto& row : rows) {
      ProcessSpec spec{row.s, preset_connective(row.gate)};
      ConvergenceReport rep = empirical_convergence(spec, 1e-6, 60);
      worst = std::max(worst, rep.final_distance);
      if (!rep.achieved) {
        r.pass = false;
        r.witness = std::string(row.gate) + " failed to converge";
      }
    }
    r.worst_margin = 1e-6 - worst;
    return r;
  }
  }
  throw std::invalid_argument("unknown lemma");
}

std::vector<CheckResult> verify_all(int kmax, int nmax) {
  std::vector<CheckResult> out;
  const int kcap = std::min(kmax, 4);

  LemmaOptions all;
  for (int k = 1; k <= kcap; ++k)
    for (auto& c : all_connectives(k)) all.population.push_back(std::move(c));
  all.population_label = "all gates of arity <= " + std::to_string(kcap);

  LemmaOptions mono;
  for (int k = 1; k <= kcap; ++k)
    for (auto& c : monotone_connectives(k))
      mono.population.push_back(std::move(c));
  mono.population_label = "monotone gates of arity <= " + std::to_string(kcap);
  if (kmax >= 5) {
    for (auto& c : sampled_monotone_connectives(5, 500, 0x5eedull))
      mono.population.push_back(std::move(c));
    mono.population_label += " plus 500 sampled at arity 5";
  }

  out.push_back(verify_lemma(Lemma::BalanceIff, all));
  out.push_back(verify_lemma(Lemma::SpectralNorm, all));
  out.push_back(verify_lemma(Lemma::MinSlope, mono));
  out.push_back(verify_lemma(Lemma::Equivalence, mono));
  out.push_back(verify_lemma(Lemma::TrivialQuadratic, mono));
  out.push_back(verify_lemma(Lemma::FastNoFixpoint, mono));
  out.push_back(verify_lemma(Lemma::SlowNoFixpoint, mono));

  LemmaOptions fs;
  fs.n = 2;
  out.push_back(verify_lemma(Lemma::FourierSlice, fs));
  if (nmax >= 4) {
    fs.n = 4;
    out.push_back(verify_lemma(Lemma::FourierSlice, fs));
  }

  LemmaOptions rest;
  out.push_back(verify_lemma(Lemma::Restriction, rest));
  out.push_back(verify_lemma(Lemma::SavickyRecurrence, rest));
  out.push_back(verify_lemma(Lemma::PredictionConsistency, rest));
  return out;
}

} // namespace boolgrow
