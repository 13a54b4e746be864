// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace boolgrow::detail {

// splitmix64; not cryptographic, chosen for speed and a well mixed
// counter-to-stream map.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

// Stream head for sample `index` under `seed`. Two finalizer rounds keep
// neighbouring indices decorrelated.
inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 s{seed ^ (index * 0xd1342543de82ef95ull)};
  s.state = s.next() ^ (s.next() << 1);
  return s;
}

// Uniform picks in [0, m). Power-of-two pool sizes slice one 64-bit word
// into several picks; other sizes spend a full word per pick via the
// multiply-high map (bias ~ m * 2^-64, far below every tolerance used
// here). The draw schedule is fixed, so results never depend on how
// samples are partitioned across workers.
struct LeafPicker {
  SplitMix64 rng;
  std::uint64_t m;
  int bits = 0;
  std::uint64_t buf = 0;
  int avail = 0;

  LeafPicker(SplitMix64 stream, std::uint64_t pool) : rng(stream), m(pool) {
    while ((1ull << bits) < m) ++bits;
    if ((1ull << bits) != m) bits = 0; // not a power of two
  }

  std::uint32_t pick() {
    if (bits) {
      if (avail < bits) {
        buf = rng.next();
        avail = 64;
      }
      std::uint32_t v = static_cast<std::uint32_t>(buf & ((1ull << bits) - 1));
      buf >>= bits;
      avail -= bits;
      return v;
    }
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(rng.next()) * m) >> 64);
  }
};

} // namespace boolgrow::detail
