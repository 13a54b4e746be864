// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace boolgrow {

inline constexpr int max_vars = 24;

// Truth table of a boolean function on n inputs, n <= 24.
//
// Assignment indexing: assignment (x_1, ..., x_n) maps to the index
// a = sum_j x_j * 2^(j-1), i.e. x_1 is the least significant bit.
// Bit a of the table is f(a). Tables with n <= 6 fit in one word and
// can round-trip through a packed uint64_t id.
class TruthTable {
public:
  TruthTable() = default;
  TruthTable(int num_vars, bool fill = false);

  static TruthTable from_id(int num_vars, std::uint64_t id);
  static TruthTable from_hex(int num_vars, const std::string& hex);

  int num_vars() const { return n_; }
  std::uint32_t size() const { return 1u << n_; }

  bool get(std::uint32_t a) const {
    return (words_[a >> 6] >> (a & 63)) & 1ull;
  }
  void set(std::uint32_t a, bool v) {
    if (v)
      words_[a >> 6] |= 1ull << (a & 63);
    else
      words_[a >> 6] &= ~(1ull << (a & 63));
  }

  std::uint64_t count_ones() const;

  // Packed table bits; only valid for n <= 6.
  std::uint64_t to_id() const;
  std::string to_hex() const;

  TruthTable operator~() const;
  TruthTable operator&(const TruthTable& o) const;
  TruthTable operator|(const TruthTable& o) const;
  TruthTable operator^(const TruthTable& o) const;

  bool operator==(const TruthTable& o) const {
    return n_ == o.n_ && words_ == o.words_;
  }
  bool operator!=(const TruthTable& o) const { return !(*this == o); }
  bool operator<(const TruthTable& o) const;

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

private:
  void mask_tail();

  int n_ = 0;
  std::vector<std::uint64_t> words_{0};
};

struct PropertySet {
  bool monotone = false;
  bool balanced = false;
  bool linear = false;
  bool self_dual = false;
  bool bi_preserving = false;
  bool depends_on_all = false;
  // t such that f(x) = [ |x| >= t ], if f is a threshold-by-weight function.
  std::optional<int> threshold_index;
  // Smallest m with f(x) = 1 for |x| > m and f(x) = 0 for |x| < m, if any.
  std::optional<int> slice_level;
};

enum class BasisKind { Projection, NegProjection, Const0, Const1 };

// Affine function c_0 xor c_1 x_1 xor ... xor c_n x_n, packed with c_0 at
// bit 0 and c_j at bit j. Doubles as the linear-domain function id.
struct LinearFn {
  int n = 0;
  std::uint32_t id = 0;

  bool constant_term() const { return id & 1u; }
  std::uint32_t var_mask() const { return id >> 1; }
  // "c0c1...cn" bit string
  std::string to_bits() const;
  static LinearFn from_bits(int n, const std::string& bits);
};

PropertySet classify(const TruthTable& f);

// Members of the base gate set: x_j, not x_j (1-based j), constants.
TruthTable make_basis(int num_vars, BasisKind kind, int var = 0);

TruthTable make_threshold(int num_vars, int t);   // [ |x| >= t ]
TruthTable make_chi(int num_vars);                // [ |x| == n/2 ], n even
TruthTable make_upsilon(int num_vars);            // [ |x| > n/2 ]
TruthTable make_eta(int num_vars);                // conjunction of all inputs
TruthTable make_kappa(int num_vars);              // some but not all inputs set

// alpha applied coordinatewise: result(a) = alpha(g_1(a), ..., g_k(a)).
TruthTable compose(const TruthTable& alpha, const std::vector<TruthTable>& args);

// Parity of |{x : f(x) = g(x) = 1}|, the inner product behind the
// distribution transform.
int parity_inner(const TruthTable& f, const TruthTable& g);

// dual(f)(x) = not f(not x1, ..., not xn)
TruthTable dual(const TruthTable& f);

// Self-dual (n+1)-input extension x_{n+1} f(x) or (not x_{n+1})(not f(~x)).
// Bijection between functions on n inputs and self-dual ones on n+1.
TruthTable self_dual_extend(const TruthTable& f);

std::optional<LinearFn> linear_coeffs(const TruthTable& f);
TruthTable linear_to_tt(const LinearFn& l);

struct TruthTableHash {
  std::size_t operator()(const TruthTable& t) const;
};

} // namespace boolgrow
