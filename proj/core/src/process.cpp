// SPDX-License-Identifier: Apache-2.0
#include "boolgrow/process.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <thread>
#include <unordered_map>

#include "boolgrow/detail/compose_kernel.hpp"
#include "boolgrow/detail/rng.hpp"

namespace boolgrow {

namespace {

constexpr std::uint64_t tuple_budget = 100'000'000ull;
constexpr std::uint64_t closure_cap = 1ull << 16;

// base^exp, saturating just above `limit` so callers can compare safely.
std::uint64_t saturating_pow(std::uint64_t base, int exp, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > (limit + 1) / base) return limit + 1;
    r *= base;
  }
  return r;
}

} // namespace

double Distribution::total() const {
  double s = 0.0;
  for (const auto& [id, p] : entries) s += p;
  return s;
}

double Distribution::at(std::uint64_t id) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), id,
      [](const auto& e, std::uint64_t v) { return e.first < v; });
  if (it != entries.end() && it->first == id) return it->second;
  return 0.0;
}

void Distribution::sort_and_compact() {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size();) {
    std::uint64_t id = entries[i].first;
    double p = 0.0;
    while (i < entries.size() && entries[i].first == id) p += entries[i++].second;
    if (p != 0.0) entries[out++] = {id, p};
  }
  entries.resize(out);
}

double distance(const Distribution& a, const Distribution& b, Metric metric) {
  if (a.domain != b.domain || a.n != b.n)
    throw std::invalid_argument("distributions live on different spaces");
  double acc = 0.0;
  std::size_t i = 0, j = 0;
  auto feed = [&](double d) {
    d = std::fabs(d);
    if (metric == Metric::MaxAbs)
      acc = std::max(acc, d);
    else
      acc += d;
  };
  while (i < a.entries.size() || j < b.entries.size()) {
    if (j >= b.entries.size() ||
        (i < a.entries.size() && a.entries[i].first < b.entries[j].first)) {
      feed(a.entries[i++].second);
    } else if (i >= a.entries.size() || b.entries[j].first < a.entries[i].first) {
      feed(b.entries[j++].second);
    } else {
      feed(a.entries[i++].second - b.entries[j++].second);
    }
  }
  return metric == Metric::TotalVariation ? 0.5 * acc : acc;
}

std::vector<TruthTable> support_members(const SupportSpec& s) {
  if (s.n < 1 || s.n > max_vars)
    throw std::invalid_argument("support arity out of range");
  std::vector<TruthTable> m;
  for (int j = 1; j <= s.n; ++j)
    m.push_back(make_basis(s.n, BasisKind::Projection, j));
  if (s.negations)
    for (int j = 1; j <= s.n; ++j)
      m.push_back(make_basis(s.n, BasisKind::NegProjection, j));
  if (s.const0) m.push_back(make_basis(s.n, BasisKind::Const0));
  if (s.const1) m.push_back(make_basis(s.n, BasisKind::Const1));
  return m;
}

std::vector<std::uint64_t> support_member_ids(const SupportSpec& s, Domain d) {
  std::vector<std::uint64_t> ids;
  if (d == Domain::Linear) {
    for (int j = 1; j <= s.n; ++j) ids.push_back(1ull << j);
    if (s.negations)
      for (int j = 1; j <= s.n; ++j) ids.push_back((1ull << j) | 1ull);
    if (s.const0) ids.push_back(0);
    if (s.const1) ids.push_back(1);
  } else {
    for (const auto& t : support_members(s)) ids.push_back(t.to_id());
  }
  return ids;
}

double initial_marginal(const SupportSpec& s, std::uint32_t a) {
  if (a >= (1u << s.n))
    throw std::invalid_argument("assignment index out of range");
  int t = 0;
  int set_bits = std::popcount(a);
  t += set_bits;                       // projections
  if (s.negations) t += s.n - set_bits;
  if (s.const1) ++t;
  return static_cast<double>(t) / static_cast<double>(s.member_count());
}

Distribution initial_distribution(const ProcessSpec& spec) {
  const SupportSpec& s = spec.support;
  Distribution d;
  d.n = s.n;
  d.iteration = 0;
  d.domain = spec.alpha.props.linear ? Domain::Linear : Domain::General;
  if (d.domain == Domain::Linear) {
    if (s.n > 20)
      throw std::invalid_argument("linear domain capped at n = 20");
  } else if (s.n > 6) {
    throw std::invalid_argument("general domain ids capped at n = 6");
  }
  double p = 1.0 / static_cast<double>(s.member_count());
  for (auto id : support_member_ids(s, d.domain)) d.entries.push_back({id, p});
  d.sort_and_compact();
  return d;
}

namespace {

Distribution step_exact_linear(const Distribution& pi, const Connective& alpha) {
  auto lc = linear_coeffs(alpha.table);
  if (!lc)
    throw std::invalid_argument("linear-domain step needs a linear gate");
  const std::size_t dim = 1ull << (pi.n + 1);
  const std::uint32_t c = lc->constant_term() ? 1u : 0u;
  std::uint32_t args = lc->var_mask();

  std::vector<double> cur(dim, 0.0);
  if (args == 0) {
    cur[0] = pi.total(); // gate ignores every input
  } else {
    for (const auto& [id, p] : pi.entries) cur[id] = p;
    int extra = std::popcount(args) - 1;
    std::vector<double> nxt(dim);
    for (int f = 0; f < extra; ++f) {
      std::uint64_t nnz = 0;
      for (double v : cur) nnz += v != 0.0;
      std::uint64_t cost = nnz * pi.entries.size();
      if (cost > tuple_budget)
        throw BudgetError("linear convolution exceeds tuple budget", cost);
      std::fill(nxt.begin(), nxt.end(), 0.0);
      for (std::size_t x = 0; x < dim; ++x) {
        double v = cur[x];
        if (v == 0.0) continue;
        for (const auto& [id, p] : pi.entries) nxt[x ^ id] += v * p;
      }
      cur.swap(nxt);
    }
  }

  Distribution out;
  out.domain = Domain::Linear;
  out.n = pi.n;
  out.iteration = pi.iteration + 1;
  for (std::size_t x = 0; x < dim; ++x)
    if (cur[x] != 0.0) out.entries.push_back({x ^ c, cur[x]});
  out.sort_and_compact();
  return out;
}

Distribution step_exact_general(const Distribution& pi, const Connective& alpha) {
  const int n = pi.n;
  if (n > 4)
    throw std::invalid_argument("exact general-domain step capped at n = 4");
  if (n == 4 && pi.entries.size() > 4096)
    throw BudgetError("n = 4 exact step needs support within a closed family",
                      pi.entries.size());
  const int k = alpha.arity();
  std::uint64_t cost = saturating_pow(pi.entries.size(), k, tuple_budget);
  if (cost > tuple_budget)
    throw BudgetError("exact step exceeds tuple budget", cost);

  const std::uint32_t sz = 1u << n;
  std::vector<std::uint32_t> ids(pi.entries.size());
  std::vector<double> ps(pi.entries.size());
  for (std::size_t i = 0; i < pi.entries.size(); ++i) {
    ids[i] = static_cast<std::uint32_t>(pi.entries[i].first);
    ps[i] = pi.entries[i].second;
  }

  std::vector<double> acc(1ull << sz, 0.0);
  std::array<std::uint32_t, 16> col{};

  // Walk tuples depth-first; the last slot collapses to three masks so the
  // innermost loop is a handful of bit ops per support member.
  auto rec = [&](auto&& self, int slot, double prob,
                 std::array<std::uint32_t, 16>& cols) -> void {
    if (slot == k - 1) {
      std::uint32_t one = 0, idm = 0, notm = 0;
      std::uint32_t top = 1u << (k - 1);
      for (std::uint32_t a = 0; a < sz; ++a) {
        bool t0 = alpha.table.get(cols[a]);
        bool t1 = alpha.table.get(cols[a] | top);
        if (t0 && t1)
          one |= 1u << a;
        else if (t1)
          idm |= 1u << a;
        else if (t0)
          notm |= 1u << a;
      }
      for (std::size_t i = 0; i < ids.size(); ++i) {
        std::uint32_t res = one | (ids[i] & idm) | (~ids[i] & notm);
        acc[res] += prob * ps[i];
      }
      return;
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      std::array<std::uint32_t, 16> next = cols;
      std::uint32_t id = ids[i];
      for (std::uint32_t a = 0; a < sz; ++a)
        next[a] |= ((id >> a) & 1u) << slot;
      self(self, slot + 1, prob * ps[i], next);
    }
  };
  rec(rec, 0, 1.0, col);

  Distribution out;
  out.domain = Domain::General;
  out.n = n;
  out.iteration = pi.iteration + 1;
  for (std::size_t x = 0; x < acc.size(); ++x)
    if (acc[x] != 0.0) out.entries.push_back({x, acc[x]});
  return out;
}

} // namespace

Distribution step_exact(const Distribution& pi, const Connective& alpha) {
  Distribution out = pi.domain == Domain::Linear
                         ? step_exact_linear(pi, alpha)
                         : step_exact_general(pi, alpha);
  // The map sends probability vectors to probability vectors, but summation
  // dust compounds like total^k across iterations unless it is squashed.
  double t = out.total();
  if (t > 0.0 && t != 1.0)
    for (auto& e : out.entries) e.second /= t;
  return out;
}

Distribution iterate_exact(const ProcessSpec& spec, int steps,
                           const StepObserver& observer) {
  Distribution d = initial_distribution(spec);
  if (observer) observer(0, d);
  for (int i = 1; i <= steps; ++i) {
    d = step_exact(d, spec.alpha);
    if (observer) observer(i, d);
  }
  return d;
}

namespace {

// One closure step: image of S^k under the gate, as a sorted id list.
std::vector<std::uint64_t> closure_step(const std::vector<std::uint64_t>& s,
                                        const Connective& alpha, Domain domain,
                                        int n) {
  if (domain == Domain::Linear) {
    auto lc = linear_coeffs(alpha.table);
    const std::size_t dim = 1ull << (n + 1);
    std::uint64_t cost = static_cast<std::uint64_t>(dim) * s.size();
    if (cost > tuple_budget)
      throw BudgetError("closure step exceeds tuple budget", cost);
    std::vector<std::uint8_t> cur(dim, 0), nxt(dim, 0);
    cur[0] = 1;
    int factors = std::popcount(lc->var_mask());
    for (int f = 0; f < factors; ++f) {
      std::fill(nxt.begin(), nxt.end(), 0);
      for (std::size_t x = 0; x < dim; ++x)
        if (cur[x])
          for (auto id : s) nxt[x ^ id] = 1;
      cur.swap(nxt);
    }
    std::uint64_t c = lc->constant_term() ? 1 : 0;
    std::vector<std::uint64_t> out;
    for (std::size_t x = 0; x < dim; ++x)
      if (cur[x]) out.push_back(x ^ c);
    std::sort(out.begin(), out.end());
    return out;
  }

  const int k = alpha.arity();
  std::uint64_t cost = saturating_pow(s.size(), k, tuple_budget);
  if (cost > tuple_budget)
    throw BudgetError("closure step exceeds tuple budget", cost);
  const std::uint32_t sz = 1u << n;
  std::vector<std::uint8_t> seen(1ull << sz, 0);
  std::array<std::uint32_t, 16> col{};
  auto rec = [&](auto&& self, int slot,
                 std::array<std::uint32_t, 16>& cols) -> void {
    if (slot == k - 1) {
      std::uint32_t one = 0, idm = 0, notm = 0;
      std::uint32_t top = 1u << (k - 1);
      for (std::uint32_t a = 0; a < sz; ++a) {
        bool t0 = alpha.table.get(cols[a]);
        bool t1 = alpha.table.get(cols[a] | top);
        if (t0 && t1)
          one |= 1u << a;
        else if (t1)
          idm |= 1u << a;
        else if (t0)
          notm |= 1u << a;
      }
      for (auto id : s) {
        std::uint32_t g = static_cast<std::uint32_t>(id);
        seen[one | (g & idm) | (~g & notm)] = 1;
      }
      return;
    }
    for (auto id : s) {
      std::array<std::uint32_t, 16> next = cols;
      for (std::uint32_t a = 0; a < sz; ++a)
        next[a] |= ((static_cast<std::uint32_t>(id) >> a) & 1u) << slot;
      self(self, slot + 1, next);
    }
  };
  rec(rec, 0, col);
  std::vector<std::uint64_t> out;
  for (std::size_t x = 0; x < seen.size(); ++x)
    if (seen[x]) out.push_back(x);
  return out;
}

} // namespace

ClosureReport support_closure(const ProcessSpec& spec) {
  Domain domain = spec.alpha.props.linear ? Domain::Linear : Domain::General;
  int n = spec.support.n;
  if (domain == Domain::General && n > 4)
    throw std::invalid_argument("general-domain closure capped at n = 4");
  if (domain == Domain::Linear && n > 15)
    throw std::invalid_argument("linear-domain closure capped at n = 15");

  std::vector<std::vector<std::uint64_t>> sets;
  sets.push_back(support_member_ids(spec.support, domain));
  std::sort(sets[0].begin(), sets[0].end());

  int repeat_of = -1;
  while (true) {
    if (sets.back().size() > closure_cap)
      throw BudgetError("closure set exceeds cap", sets.back().size());
    std::vector<std::uint64_t> nxt =
        closure_step(sets.back(), spec.alpha, domain, n);
    bool found = false;
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (sets[j] == nxt) {
        repeat_of = static_cast<int>(j);
        found = true;
        break;
      }
    }
    sets.push_back(std::move(nxt));
    if (found) break;
    if (sets.size() > 4096)
      throw std::runtime_error("closure failed to cycle within 4096 levels");
  }

  ClosureReport rep;
  rep.domain = domain;
  rep.n = n;
  rep.closed_at = static_cast<int>(sets.size()) - 1;
  rep.period = rep.closed_at - repeat_of;

  std::vector<std::uint64_t> uni;
  for (const auto& s : sets) uni.insert(uni.end(), s.begin(), s.end());
  std::sort(uni.begin(), uni.end());
  uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
  rep.union_ids = std::move(uni);

  auto collect = [&](int parity) {
    std::vector<std::uint64_t> out;
    for (int m = repeat_of; m < rep.closed_at; ++m) {
      if (rep.period % 2 == 0 && m % 2 != parity) continue;
      out.insert(out.end(), sets[m].begin(), sets[m].end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  rep.even_ids = collect(0);
  rep.odd_ids = collect(1);
  return rep;
}

namespace {

struct Sampler {
  const ProcessSpec& spec;
  bool fast;
  std::vector<std::uint64_t> member_ids;
  std::vector<TruthTable> member_tts;
  detail::ComposeKernel kernel;

  explicit Sampler(const ProcessSpec& s)
      : spec(s), fast(s.support.n <= 6),
        kernel(detail::ComposeKernel::build(s.alpha.table, s.support.n)) {
    if (fast)
      member_ids = support_member_ids(s.support, Domain::General);
    else
      member_tts = support_members(s.support);
  }

  std::uint64_t draw_id_rec(int depth, detail::LeafPicker& lp) const {
    if (depth == 0) return member_ids[lp.pick()];
    std::array<std::uint64_t, 32> ch;
    for (int j = 0; j < kernel.k; ++j) ch[j] = draw_id_rec(depth - 1, lp);
    return kernel.apply(ch.data());
  }

  // Whole-tree evaluation into a reusable buffer; leaves are drawn in the
  // same left-to-right order the recursion uses, so results match it
  // bit-for-bit. Falls back to recursion when the tree will not fit.
  std::uint64_t draw_id(int depth, detail::LeafPicker& lp,
                        std::vector<std::uint64_t>& scratch) const {
    constexpr std::uint64_t flat_cap = 1ull << 20;
    std::uint64_t leaves = 1;
    for (int d = 0; d < depth; ++d) {
      leaves *= static_cast<std::uint64_t>(kernel.k);
      if (leaves > flat_cap) return draw_id_rec(depth, lp);
    }
    scratch.resize(leaves);
    for (std::uint64_t i = 0; i < leaves; ++i)
      scratch[i] = member_ids[lp.pick()];
    for (std::uint64_t m = leaves; m > 1;) {
      m /= static_cast<std::uint64_t>(kernel.k);
      for (std::uint64_t i = 0; i < m; ++i)
        scratch[i] = kernel.apply(&scratch[i * kernel.k]);
    }
    return scratch[0];
  }

  TruthTable draw_tt(int depth, detail::LeafPicker& lp) const {
    if (depth == 0) return member_tts[lp.pick()];
    std::vector<TruthTable> ch;
    ch.reserve(spec.alpha.arity());
    for (int j = 0; j < spec.alpha.arity(); ++j)
      ch.push_back(draw_tt(depth - 1, lp));
    return compose(spec.alpha.table, ch);
  }
};

} // namespace

TruthTable sample_formula(const ProcessSpec& spec, int depth,
                          std::uint64_t seed, std::uint64_t index) {
  if (depth < 0) throw std::invalid_argument("formula depth must be >= 0");
  if (spec.alpha.arity() > 32)
    throw std::invalid_argument("sampling capped at arity 32");
  Sampler s(spec);
  detail::LeafPicker lp(detail::sample_stream(seed, index),
                        static_cast<std::uint64_t>(spec.support.member_count()));
  if (s.fast) {
    std::vector<std::uint64_t> scratch;
    return TruthTable::from_id(spec.support.n, s.draw_id(depth, lp, scratch));
  }
  return s.draw_tt(depth, lp);
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BOOLGROW_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

Distribution monte_carlo(const ProcessSpec& spec, int depth,
                         std::uint64_t samples, std::uint64_t seed,
                         int workers) {
  if (spec.support.n > 6)
    throw std::invalid_argument("sampled aggregation needs n <= 6 ids");
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  if (depth < 0) throw std::invalid_argument("formula depth must be >= 0");
  if (spec.alpha.arity() > 32)
    throw std::invalid_argument("sampling capped at arity 32");

  const int w = resolve_workers(workers);
  const Sampler sampler(spec);
  const std::uint64_t pool =
      static_cast<std::uint64_t>(spec.support.member_count());

  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> local(w);
  auto run = [&](int widx) {
    std::uint64_t lo = samples * static_cast<std::uint64_t>(widx) /
                       static_cast<std::uint64_t>(w);
    std::uint64_t hi = samples * (static_cast<std::uint64_t>(widx) + 1) /
                       static_cast<std::uint64_t>(w);
    auto& counts = local[widx];
    std::vector<std::uint64_t> scratch;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      detail::LeafPicker lp(detail::sample_stream(seed, idx), pool);
      ++counts[sampler.draw_id(depth, lp, scratch)];
    }
  };
  if (w == 1) {
    run(0);
  } else {
    std::vector<std::thread> ts;
    for (int i = 0; i < w; ++i) ts.emplace_back(run, i);
    for (auto& t : ts) t.join();
  }

  std::map<std::uint64_t, std::uint64_t> merged;
  for (const auto& m : local)
    for (const auto& [id, c] : m) merged[id] += c;

  Distribution out;
  out.domain = Domain::General;
  out.n = spec.support.n;
  out.iteration = depth;
  for (const auto& [id, c] : merged)
    out.entries.push_back(
        {id, static_cast<double>(c) / static_cast<double>(samples)});
  return out;
}

std::vector<double> scalar_trajectory(const CharPoly& cp, double p0, int iters) {
  if (p0 < 0.0 || p0 > 1.0)
    throw std::invalid_argument("marginal probability outside [0,1]");
  std::vector<double> out;
  out.reserve(iters + 1);
  out.push_back(p0);
  double p = p0;
  for (int i = 0; i < iters; ++i) {
    p = cp.value(p);
    out.push_back(p);
  }
  return out;
}

} // namespace boolgrow
