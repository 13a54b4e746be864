// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "boolgrow/truth_table.hpp"

namespace boolgrow::detail {

// Applies a gate to k child truth tables packed in single words
// (functions on n <= 6 inputs). Built once per sampling run; recognizes
// the handful of gate shapes that dominate real workloads and falls back
// to a minterm sweep otherwise.
struct ComposeKernel {
  enum class Kind { Conj, Disj, Xor, Maj3, Mux3, Minterms };

  Kind kind = Kind::Minterms;
  int k = 0;
  std::uint64_t full = 0;          // n-bit-world mask
  std::uint64_t xor_init = 0;      // constant term for the parity kernel
  std::uint32_t xor_args = 0;      // which children the parity kernel uses
  bool invert = false;             // minterm sweep computes the complement
  std::vector<std::uint32_t> minterms;

  static ComposeKernel build(const TruthTable& alpha, int n_world) {
    ComposeKernel kn;
    kn.k = alpha.num_vars();
    kn.full = n_world >= 6 ? ~0ull : ((1ull << (1u << n_world)) - 1);

    const std::uint32_t rows = alpha.size();
    if (auto lc = linear_coeffs(alpha)) {
      kn.kind = Kind::Xor;
      kn.xor_args = lc->var_mask();
      kn.xor_init = lc->constant_term() ? kn.full : 0;
      return kn;
    }
    if (alpha.count_ones() == 1 && alpha.get(rows - 1)) {
      kn.kind = Kind::Conj;
      return kn;
    }
    if (alpha.count_ones() == rows - 1 && !alpha.get(0)) {
      kn.kind = Kind::Disj;
      return kn;
    }
    if (kn.k == 3) {
      if (alpha == make_threshold(3, 2)) {
        kn.kind = Kind::Maj3;
        return kn;
      }
      TruthTable x = make_basis(3, BasisKind::Projection, 1);
      TruthTable y = make_basis(3, BasisKind::Projection, 2);
      TruthTable z = make_basis(3, BasisKind::Projection, 3);
      if (alpha == ((x & y) | (~x & z))) {
        kn.kind = Kind::Mux3;
        return kn;
      }
    }
    kn.kind = Kind::Minterms;
    kn.invert = alpha.count_ones() * 2 > rows;
    for (std::uint32_t r = 0; r < rows; ++r)
      if (alpha.get(r) != kn.invert) kn.minterms.push_back(r);
    return kn;
  }

  std::uint64_t apply(const std::uint64_t* ch) const {
    switch (kind) {
    case Kind::Conj: {
      std::uint64_t w = ch[0];
      for (int j = 1; j < k; ++j) w &= ch[j];
      return w;
    }
    case Kind::Disj: {
      std::uint64_t w = ch[0];
      for (int j = 1; j < k; ++j) w |= ch[j];
      return w;
    }
    case Kind::Xor: {
      std::uint64_t w = xor_init;
      for (int j = 0; j < k; ++j)
        if ((xor_args >> j) & 1u) w ^= ch[j];
      return w;
    }
    case Kind::Maj3:
      return (ch[0] & ch[1]) | (ch[0] & ch[2]) | (ch[1] & ch[2]);
    case Kind::Mux3:
      return (ch[0] & ch[1]) | (~ch[0] & ch[2] & full);
    case Kind::Minterms: {
      std::uint64_t acc = 0;
      for (std::uint32_t r : minterms) {
        std::uint64_t m = full;
        for (int j = 0; j < k; ++j)
          m &= ((r >> j) & 1u) ? ch[j] : ~ch[j];
        acc |= m;
      }
      return invert ? (~acc & full) : acc;
    }
    }
    return 0;
  }
};

} // namespace boolgrow::detail
