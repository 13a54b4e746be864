// SPDX-License-Identifier: Apache-2.0
#include "boolgrow/truth_table.hpp"

#include <bit>
#include <stdexcept>

namespace boolgrow {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument("bad hex digit in truth table literal");
}

} // namespace

TruthTable::TruthTable(int num_vars, bool fill) : n_(num_vars) {
  if (num_vars < 0 || num_vars > max_vars)
    throw std::invalid_argument("truth table arity out of range");
  std::size_t nwords = (size() + 63) / 64;
  words_.assign(nwords, fill ? ~0ull : 0ull);
  if (fill) mask_tail();
}

void TruthTable::mask_tail() {
  std::uint32_t bits = size();
  if (bits < 64) words_.back() &= (1ull << bits) - 1;
}

TruthTable TruthTable::from_id(int num_vars, std::uint64_t id) {
  if (num_vars > 6)
    throw std::invalid_argument("packed function ids require arity <= 6");
  TruthTable t(num_vars);
  t.words_[0] = id;
  t.mask_tail();
  if (t.words_[0] != id)
    throw std::invalid_argument("function id has bits beyond 2^n");
  return t;
}

std::uint64_t TruthTable::to_id() const {
  if (n_ > 6)
    throw std::invalid_argument("packed function ids require arity <= 6");
  return words_[0];
}

std::uint64_t TruthTable::count_ones() const {
  std::uint64_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

// Hex form is little-endian in nibbles: first character covers
// assignments 0..3, next 4..7, and so on. Lowercase on output.
std::string TruthTable::to_hex() const {
  std::uint32_t bits = size();
  std::uint32_t digits = (bits + 3) / 4;
  std::string s(digits, '0');
  for (std::uint32_t d = 0; d < digits; ++d) {
    int v = static_cast<int>((words_[d >> 4] >> ((d & 15) * 4)) & 0xf);
    s[d] = "0123456789abcdef"[v];
  }
  return s;
}

TruthTable TruthTable::from_hex(int num_vars, const std::string& hex) {
  TruthTable t(num_vars);
  std::uint32_t digits = (t.size() + 3) / 4;
  if (hex.size() != digits)
    throw std::invalid_argument("truth table hex literal has wrong length");
  for (std::uint32_t d = 0; d < digits; ++d) {
    std::uint64_t v = static_cast<std::uint64_t>(hex_digit(hex[d]));
    t.words_[d >> 4] |= v << ((d & 15) * 4);
  }
  t.mask_tail();
  return t;
}

TruthTable TruthTable::operator~() const {
  TruthTable r(*this);
  for (auto& w : r.words_) w = ~w;
  r.mask_tail();
  return r;
}

#define BOOLGROW_BITWISE(op)                                         \
  TruthTable TruthTable::operator op(const TruthTable& o) const {    \
    if (n_ != o.n_)                                                  \
      throw std::invalid_argument("arity mismatch in table op");     \
    TruthTable r(*this);                                             \
    for (std::size_t i = 0; i < words_.size(); ++i)                  \
      r.words_[i] = words_[i] op o.words_[i];                        \
    return r;                                                        \
  }
BOOLGROW_BITWISE(&)
BOOLGROW_BITWISE(|)
BOOLGROW_BITWISE(^)
#undef BOOLGROW_BITWISE

bool TruthTable::operator<(const TruthTable& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  for (std::size_t i = words_.size(); i-- > 0;)
    if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
  return false;
}

std::size_t TruthTableHash::operator()(const TruthTable& t) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(t.num_vars());
  for (auto w : t.words()) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

TruthTable make_basis(int num_vars, BasisKind kind, int var) {
  TruthTable t(num_vars);
  switch (kind) {
  case BasisKind::Const0:
    return t;
  case BasisKind::Const1:
    return TruthTable(num_vars, true);
  case BasisKind::Projection:
  case BasisKind::NegProjection: {
    if (var < 1 || var > num_vars)
      throw std::invalid_argument("projection variable out of range");
    std::uint32_t bit = 1u << (var - 1);
    bool neg = kind == BasisKind::NegProjection;
    for (std::uint32_t a = 0; a < t.size(); ++a)
      t.set(a, ((a & bit) != 0) != neg);
    return t;
  }
  }
  throw std::invalid_argument("unknown basis kind");
}

TruthTable make_threshold(int num_vars, int t) {
  if (t < 0 || t > num_vars + 1)
    throw std::invalid_argument("threshold index out of range");
  TruthTable r(num_vars);
  for (std::uint32_t a = 0; a < r.size(); ++a)
    r.set(a, std::popcount(a) >= t);
  return r;
}

TruthTable make_chi(int num_vars) {
  if (num_vars % 2 != 0)
    throw std::invalid_argument("middle-slice indicator needs even arity");
  TruthTable r(num_vars);
  for (std::uint32_t a = 0; a < r.size(); ++a)
    r.set(a, std::popcount(a) == num_vars / 2);
  return r;
}

TruthTable make_upsilon(int num_vars) {
  TruthTable r(num_vars);
  for (std::uint32_t a = 0; a < r.size(); ++a)
    r.set(a, 2 * std::popcount(a) > num_vars);
  return r;
}

TruthTable make_eta(int num_vars) {
  return make_threshold(num_vars, num_vars);
}

TruthTable make_kappa(int num_vars) {
  TruthTable r(num_vars);
  for (std::uint32_t a = 1; a + 1 < r.size(); ++a) r.set(a, std::popcount(a) >= 1);
  return r;
}

TruthTable compose(const TruthTable& alpha, const std::vector<TruthTable>& args) {
  int k = alpha.num_vars();
  if (static_cast<int>(args.size()) != k)
    throw std::invalid_argument("compose needs one argument per connective input");
  if (k == 0) return args.empty() ? alpha : args[0];
  int n = args[0].num_vars();
  for (const auto& g : args)
    if (g.num_vars() != n)
      throw std::invalid_argument("compose arguments must share arity");
  TruthTable r(n);
  for (std::uint32_t a = 0; a < r.size(); ++a) {
    std::uint32_t idx = 0;
    for (int j = 0; j < k; ++j) idx |= static_cast<std::uint32_t>(args[j].get(a)) << j;
    r.set(a, alpha.get(idx));
  }
  return r;
}

int parity_inner(const TruthTable& f, const TruthTable& g) {
  if (f.num_vars() != g.num_vars())
    throw std::invalid_argument("arity mismatch in inner product");
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < f.words().size(); ++i)
    c += std::popcount(f.words()[i] & g.words()[i]);
  return static_cast<int>(c & 1);
}

TruthTable dual(const TruthTable& f) {
  TruthTable r(f.num_vars());
  std::uint32_t all = f.size() - 1;
  for (std::uint32_t a = 0; a < f.size(); ++a) r.set(a, !f.get(a ^ all));
  return r;
}

TruthTable self_dual_extend(const TruthTable& f) {
  int n = f.num_vars();
  if (n + 1 > max_vars)
    throw std::invalid_argument("self-dual extension exceeds max arity");
  TruthTable g(n + 1);
  std::uint32_t low_mask = (1u << n) - 1;
  for (std::uint32_t a = 0; a < g.size(); ++a) {
    bool xn1 = (a >> n) & 1;
    std::uint32_t x = a & low_mask;
    g.set(a, xn1 ? f.get(x) : !f.get(x ^ low_mask));
  }
  return g;
}

std::optional<LinearFn> linear_coeffs(const TruthTable& f) {
  int n = f.num_vars();
  std::uint32_t c0 = f.get(0) ? 1u : 0u;
  std::uint32_t vmask = 0;
  for (int j = 0; j < n; ++j)
    if (f.get(1u << j) != (c0 != 0)) vmask |= 1u << j;
  for (std::uint32_t a = 0; a < f.size(); ++a) {
    bool want = ((std::popcount(a & vmask) & 1) != 0) != (c0 != 0);
    if (f.get(a) != want) return std::nullopt;
  }
  return LinearFn{n, c0 | (vmask << 1)};
}

TruthTable linear_to_tt(const LinearFn& l) {
  TruthTable t(l.n);
  std::uint32_t vmask = l.var_mask();
  bool c0 = l.constant_term();
  for (std::uint32_t a = 0; a < t.size(); ++a)
    t.set(a, ((std::popcount(a & vmask) & 1) != 0) != c0);
  return t;
}

std::string LinearFn::to_bits() const {
  std::string s(static_cast<std::size_t>(n) + 1, '0');
  for (int j = 0; j <= n; ++j)
    if ((id >> j) & 1u) s[j] = '1';
  return s;
}

LinearFn LinearFn::from_bits(int n, const std::string& bits) {
  if (static_cast<int>(bits.size()) != n + 1)
    throw std::invalid_argument("linear coefficient string has wrong length");
  std::uint32_t id = 0;
  for (int j = 0; j <= n; ++j) {
    if (bits[j] == '1')
      id |= 1u << j;
    else if (bits[j] != '0')
      throw std::invalid_argument("linear coefficient string must be 0/1");
  }
  return LinearFn{n, id};
}

PropertySet classify(const TruthTable& f) {
  int n = f.num_vars();
  std::uint32_t sz = f.size();
  PropertySet p;

  p.balanced = f.count_ones() * 2 == sz;
  p.linear = linear_coeffs(f).has_value();
  p.self_dual = f == dual(f);
  p.bi_preserving = !f.get(0) && f.get(sz - 1);

  p.monotone = true;
  for (std::uint32_t a = 0; a < sz && p.monotone; ++a)
    for (int j = 0; j < n; ++j) {
      std::uint32_t bit = 1u << j;
      if (!(a & bit) && f.get(a) && !f.get(a | bit)) {
        p.monotone = false;
        break;
      }
    }

  p.depends_on_all = true;
  for (int j = 0; j < n; ++j) {
    std::uint32_t bit = 1u << j;
    bool dep = false;
    for (std::uint32_t a = 0; a < sz && !dep; ++a)
      if (!(a & bit) && f.get(a) != f.get(a | bit)) dep = true;
    if (!dep) {
      p.depends_on_all = false;
      break;
    }
  }

  int min_true = n + 1, max_false = -1;
  for (std::uint32_t a = 0; a < sz; ++a) {
    int w = std::popcount(a);
    if (f.get(a)) {
      if (w < min_true) min_true = w;
    } else {
      if (w > max_false) max_false = w;
    }
  }
  // min_true = n+1 means constant 0, max_false = -1 means constant 1
  if (max_false <= min_true) {
    int m = max_false < 0 ? 0 : max_false;
    if (m <= n) p.slice_level = m;
  }
  if (p.slice_level && f == make_threshold(n, min_true))
    p.threshold_index = min_true;
  return p;
}

} // namespace boolgrow
