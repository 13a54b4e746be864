// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "boolgrow/spectrum.hpp"

using namespace boolgrow;
using doctest::Approx;

namespace {

ProcessSpec spec_of(const std::string& gate, int n, bool neg, bool c0, bool c1) {
  return ProcessSpec{SupportSpec{n, neg, c0, c1}, preset_connective(gate)};
}

Distribution random_dist(Domain d, int n, int support, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::size_t dim = spectrum_dim(d, n);
  Distribution out;
  out.domain = d;
  out.n = n;
  double total = 0.0;
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::uniform_int_distribution<std::uint64_t> pick(0, dim - 1);
  for (int i = 0; i < support; ++i) {
    double v = u(rng);
    out.entries.push_back({pick(rng), v});
    total += v;
  }
  out.sort_and_compact();
  total = out.total();
  for (auto& [id, p] : out.entries) p /= total;
  return out;
}

} // namespace

TEST_CASE("spectrum dimensions") {
  CHECK(spectrum_dim(Domain::General, 2) == 16);
  CHECK(spectrum_dim(Domain::General, 4) == 65536);
  CHECK(spectrum_dim(Domain::Linear, 2) == 8);
  CHECK(spectrum_dim(Domain::Linear, 20) == 1ull << 21);
  CHECK_THROWS(spectrum_dim(Domain::General, 5));
  CHECK_THROWS(spectrum_dim(Domain::Linear, 21));
}

TEST_CASE("transform of point masses") {
  Distribution d0;
  d0.domain = Domain::General;
  d0.n = 2;
  d0.entries = {{0, 1.0}};
  Spectrum s0 = transform(d0);
  for (double v : s0.values) CHECK(v == 1.0); // empty function pairs evenly

  Distribution d1;
  d1.domain = Domain::General;
  d1.n = 1;
  d1.entries = {{3, 1.0}};
  Spectrum s1 = transform(d1); // coefficient is parity of |w|
  CHECK(s1.values == std::vector<double>{1.0, -1.0, -1.0, 1.0});

  Distribution bad;
  bad.domain = Domain::General;
  bad.n = 2;
  bad.entries = {{16, 1.0}};
  CHECK_THROWS(transform(bad));
}

TEST_CASE("transform and inverse are mutually inverse") {
  for (std::uint32_t seed = 1; seed <= 20; ++seed) {
    Domain d = seed % 2 ? Domain::General : Domain::Linear;
    int n = seed % 3 + 1;
    Distribution pi = random_dist(d, n, 5 + seed % 7, seed);
    Distribution back = inverse(transform(pi));
    CHECK(distance(pi, back, Metric::MaxAbs) <= 1e-12);
    CHECK(back.iteration == pi.iteration);
  }

  // a slightly corrupted spectrum no longer inverts
  Distribution point;
  point.domain = Domain::General;
  point.n = 2;
  point.entries = {{0, 1.0}};
  Spectrum s = transform(point);
  s.values[3] -= 1e-3;
  CHECK_THROWS(inverse(s));
}

TEST_CASE("pointwise update for affine gates") {
  Distribution pi = random_dist(Domain::Linear, 3, 6, 99);
  pi.iteration = 0;
  for (const char* gate : {"xor2", "xor3"}) {
    Connective g = preset_connective(gate);
    Spectrum lhs = transform(step_exact(pi, g));
    Spectrum rhs = linear_step(transform(pi), g);
    REQUIRE(lhs.values.size() == rhs.values.size());
    for (std::size_t w = 0; w < lhs.values.size(); ++w)
      CHECK(lhs.values[w] == Approx(rhs.values[w]).epsilon(1e-12));
    CHECK(rhs.iteration == 1);
  }

  // negated parity flips the sign on odd constant coordinate
  TruthTable nx = ~preset_connective("xor2").table;
  Connective nxor2 = make_connective(nx, "nxor2");
  Spectrum lhs = transform(step_exact(pi, nxor2));
  Spectrum rhs = linear_step(transform(pi), nxor2);
  for (std::size_t w = 0; w < lhs.values.size(); ++w)
    CHECK(lhs.values[w] == Approx(rhs.values[w]).epsilon(1e-12));

  CHECK_THROWS(linear_step(transform(random_dist(Domain::General, 2, 3, 5)),
                           preset_connective("xor2")));
  CHECK_THROWS(linear_step(transform(pi), preset_connective("maj3")));
}

TEST_CASE("middle-slice limit spectrum") {
  Spectrum s = slice_spectrum(2);
  CHECK(s.iteration == -1);
  REQUIRE(s.values.size() == 16);
  for (std::uint64_t w = 0; w < 16; ++w) {
    if (w == 0 || w == 1)
      CHECK(s.at(w) == 1.0);
    else if (w == 8 || w == 9)
      CHECK(s.at(w) == -1.0);
    else
      CHECK(s.at(w) == 0.0);
  }
  CHECK_THROWS(slice_spectrum(3));

  // equals the transform of the uniform distribution on the slice set
  Distribution u;
  u.domain = Domain::General;
  u.n = 2;
  u.entries = {{8, 0.25}, {10, 0.25}, {12, 0.25}, {14, 0.25}};
  Spectrum t = transform(u);
  for (std::uint64_t w = 0; w < 16; ++w) CHECK(t.at(w) == s.at(w));
}

TEST_CASE("restriction identity holds in the limit and tightens en route") {
  TruthTable ups = make_upsilon(2);
  TruthTable low = ~ups;
  CHECK(restriction_residual(slice_spectrum(2), low, ups) == 0.0);

  ProcessSpec sp = spec_of("maj3", 2, false, false, true);
  sp.support.const0 = true; // middle-slice start: projections plus constants
  double r5 = restriction_residual(transform(iterate_exact(sp, 5)), low, ups);
  double r12 = restriction_residual(transform(iterate_exact(sp, 12)), low, ups);
  double r20 = restriction_residual(transform(iterate_exact(sp, 20)), low, ups);
  CHECK(r5 >= r12);
  CHECK(r12 >= r20);
  CHECK(r20 <= 1e-6);

  CHECK_THROWS(restriction_residual(slice_spectrum(2), make_upsilon(4), ups));
}

TEST_CASE("one-step coefficient prediction matches the exact step") {
  ProcessSpec sp = spec_of("maj3", 2, false, false, false);
  Distribution pi0 = initial_distribution(sp);
  Connective maj = preset_connective("maj3");
  Spectrum s1 = transform(step_exact(pi0, maj));
  for (std::uint64_t w = 0; w < 16; ++w) {
    double pred = savicky_predict(pi0, maj, TruthTable::from_id(2, w));
    CHECK(pred == Approx(s1.at(w)).epsilon(1e-12));
  }

  // also from a non-uniform state
  Distribution pi2 = iterate_exact(sp, 2);
  Spectrum s3 = transform(step_exact(pi2, maj));
  for (std::uint64_t w : {1ull, 6ull, 9ull, 15ull}) {
    double pred = savicky_predict(pi2, maj, TruthTable::from_id(2, w));
    CHECK(pred == Approx(s3.at(w)).epsilon(1e-11));
  }
}

TEST_CASE("decay constants for the majority gate at n = 2") {
  BoundConstants bc = bound_constants(preset_connective("maj3"), 2);
  CHECK(bc.k == 3);
  CHECK(bc.n == 2);
  CHECK(bc.a == Approx(0.5).epsilon(1e-14));
  CHECK(bc.log2_inv_a == Approx(1.0).epsilon(1e-12));
  CHECK(bc.i2 == Approx(16.0).epsilon(1e-12));
  CHECK(bc.i_d(2) == Approx(16.0).epsilon(1e-12));
  CHECK(bc.i_d(3) == Approx(208.0).epsilon(1e-9));
  CHECK(bc.i_d(4) == Approx(1232.0).epsilon(1e-9));
  CHECK(bc.onset == Approx(4112.0).epsilon(1e-9));

  CHECK(bc.envelope_log2(32.0, 2) == Approx(-2.0).epsilon(1e-12));
  CHECK(bc.envelope_log2(1000.0, 3) < bc.envelope_log2(500.0, 3));
  CHECK(bc.envelope_log2(300.0, 3) > bc.envelope_log2(300.0, 2) - 100.0); // finite

  std::uint64_t s6 = bc.smallest_i(1e-6);
  CHECK(bc.certifies(s6, 1e-6));
  CHECK_FALSE(bc.certifies(s6 - 1, 1e-6));
  CHECK(bc.smallest_i(1e-3) <= s6);

  // the parity gate is linear, hence outside this machinery
  CHECK_THROWS(bound_constants(preset_connective("xor2"), 2));
}

TEST_CASE("coefficient at a one-point set tracks the scalar orbit") {
  ProcessSpec sp = spec_of("maj3", 3, false, false, false);
  CharPoly cp = char_poly(sp.alpha);
  Distribution pi3 = iterate_exact(sp, 3);
  Spectrum s = transform(pi3);
  for (std::uint32_t a : {0u, 3u, 5u, 7u}) {
    double p0 = initial_marginal(sp.support, a);
    double pi = scalar_trajectory(cp, p0, 3)[3];
    CHECK(s.at(1ull << a) == Approx(1.0 - 2.0 * pi).epsilon(1e-9));
  }
}
