// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <unordered_set>

#include "boolgrow/truth_table.hpp"

using namespace boolgrow;

TEST_CASE("truth table bits, ids and hex") {
  TruthTable f(3);
  CHECK(f.num_vars() == 3);
  CHECK(f.size() == 8);
  CHECK(f.count_ones() == 0);
  f.set(5, true);
  CHECK(f.get(5));
  CHECK(f.count_ones() == 1);
  f.set(5, false);
  CHECK(f.count_ones() == 0);

  // low assignment nibble first
  TruthTable maj = make_threshold(3, 2);
  CHECK(maj.to_hex() == "8e");
  CHECK(TruthTable::from_hex(3, "8e") == maj);
  CHECK(maj.to_id() == 0xe8);
  CHECK(TruthTable::from_id(3, 0xe8) == maj);

  TruthTable x = make_basis(3, BasisKind::Projection, 1);
  TruthTable y = make_basis(3, BasisKind::Projection, 2);
  TruthTable z = make_basis(3, BasisKind::Projection, 3);
  TruthTable mux = (x & y) | (~x & z);
  CHECK(mux.to_hex() == "8d");

  for (std::uint64_t id = 0; id < 256; ++id) {
    TruthTable t = TruthTable::from_id(3, id);
    CHECK(t.to_id() == id);
    CHECK(TruthTable::from_hex(3, t.to_hex()) == t);
  }
  CHECK_THROWS(TruthTable::from_hex(3, "8"));    // wrong length
  CHECK_THROWS(TruthTable::from_hex(3, "8x"));   // bad digit
  CHECK_THROWS(TruthTable(-1));
  CHECK_THROWS(TruthTable(max_vars + 1));
}

TEST_CASE("assignment encoding uses x1 as the low bit") {
  // assignment 0b01 means x1=1, x2=0
  TruthTable x1 = make_basis(2, BasisKind::Projection, 1);
  CHECK(x1.get(0b01));
  CHECK_FALSE(x1.get(0b10));
  TruthTable x2 = make_basis(2, BasisKind::Projection, 2);
  CHECK(x2.get(0b10));
  CHECK_FALSE(x2.get(0b01));
  CHECK(make_basis(2, BasisKind::NegProjection, 1).get(0b10));
  CHECK(make_basis(2, BasisKind::Const0, 0).count_ones() == 0);
  CHECK(make_basis(2, BasisKind::Const1, 0).count_ones() == 4);
}

TEST_CASE("named families") {
  CHECK(make_threshold(2, 0).count_ones() == 4);  // always true
  CHECK(make_threshold(2, 3).count_ones() == 0);  // never true
  CHECK(make_chi(2).to_id() == 0b0110);           // weight exactly 1
  CHECK(make_upsilon(2).to_id() == 0b1000);       // weight above 1
  CHECK(make_eta(2).to_id() == 0b1000);           // all inputs
  CHECK(make_kappa(2).to_id() == 0b0110);         // some but not all
  CHECK_THROWS(make_chi(3));                      // needs even arity
  for (int n : {2, 4}) {
    TruthTable c = make_chi(n), u = make_upsilon(n);
    for (std::uint32_t a = 0; a < c.size(); ++a) {
      int w = std::popcount(a);
      CHECK(c.get(a) == (2 * w == n));
      CHECK(u.get(a) == (2 * w > n));
    }
  }
}

TEST_CASE("classification oracles") {
  PropertySet maj = classify(make_threshold(3, 2));
  CHECK(maj.monotone);
  CHECK(maj.balanced);
  CHECK(maj.self_dual);
  CHECK(maj.bi_preserving);
  CHECK(maj.depends_on_all);
  CHECK_FALSE(maj.linear);
  CHECK(maj.threshold_index == 2);
  CHECK(maj.slice_level == 1);

  TruthTable x1 = make_basis(2, BasisKind::Projection, 1);
  TruthTable x2 = make_basis(2, BasisKind::Projection, 2);
  PropertySet px = classify(x1 ^ x2);
  CHECK(px.linear);
  CHECK(px.balanced);
  CHECK_FALSE(px.monotone);
  CHECK_FALSE(px.threshold_index.has_value());

  PropertySet pa = classify(x1 & x2);
  CHECK(pa.monotone);
  CHECK_FALSE(pa.balanced);
  CHECK(pa.threshold_index == 2);
  CHECK(pa.slice_level == 1); // free slot at weight 1 once 0 below, 1 above

  CHECK(classify(make_basis(2, BasisKind::Const0, 0)).slice_level == 2);
  CHECK(classify(make_basis(2, BasisKind::Const1, 0)).slice_level == 0);
  CHECK_FALSE(classify(x1).depends_on_all);

  TruthTable mux = TruthTable::from_hex(3, "8d");
  PropertySet pm = classify(mux);
  CHECK(pm.bi_preserving);
  CHECK(pm.balanced);
  CHECK_FALSE(pm.monotone);
  CHECK_FALSE(pm.self_dual);
}

TEST_CASE("dual and self-dual extension") {
  TruthTable and2 = make_threshold(2, 2), or2 = make_threshold(2, 1);
  CHECK(dual(and2) == or2);
  CHECK(dual(or2) == and2);
  TruthTable maj = make_threshold(3, 2);
  CHECK(dual(maj) == maj);

  // extension is injective, lands on self-dual tables, keeps f on the
  // upper half
  std::unordered_set<TruthTable, TruthTableHash> seen;
  for (std::uint64_t id = 0; id < 16; ++id) {
    TruthTable f = TruthTable::from_id(2, id);
    TruthTable g = self_dual_extend(f);
    CHECK(g.num_vars() == 3);
    CHECK(classify(g).self_dual);
    for (std::uint32_t a = 0; a < 4; ++a) CHECK(g.get(a | 4u) == f.get(a));
    seen.insert(g);
  }
  CHECK(seen.size() == 16);
}

TEST_CASE("compose evaluates substitution") {
  TruthTable maj = make_threshold(3, 2);
  TruthTable x1 = make_basis(2, BasisKind::Projection, 1);
  TruthTable x2 = make_basis(2, BasisKind::Projection, 2);
  CHECK(compose(maj, {x1, x1, x2}) == x1);
  CHECK(compose(maj, {x1, x2, ~x1}) == x2);
  TruthTable and2 = make_threshold(2, 2);
  CHECK(compose(and2, {x1, x2}) == (x1 & x2));
  CHECK_THROWS(compose(maj, {x1, x2})); // arity mismatch
}

TEST_CASE("composition preserves gate classes, exhaustively at n=2") {
  std::vector<TruthTable> all;
  for (std::uint64_t id = 0; id < 16; ++id) all.push_back(TruthTable::from_id(2, id));

  for (std::uint64_t gid = 0; gid < 256; ++gid) {
    TruthTable g = TruthTable::from_id(3, gid);
    PropertySet pg = classify(g);
    if (!pg.monotone && !pg.self_dual && !pg.linear) continue;
    for (const auto& a : all) {
      PropertySet pa = classify(a);
      for (const auto& b : all) {
        PropertySet pb = classify(b);
        for (const auto& c : all) {
          PropertySet pc = classify(c);
          TruthTable r = compose(g, {a, b, c});
          PropertySet pr = classify(r);
          if (pg.monotone && pa.monotone && pb.monotone && pc.monotone)
            CHECK(pr.monotone);
          if (pg.self_dual && pa.self_dual && pb.self_dual && pc.self_dual)
            CHECK(pr.self_dual);
          if (pg.linear && pa.linear && pb.linear && pc.linear)
            CHECK(pr.linear);
        }
      }
    }
  }
}

TEST_CASE("pairing parity") {
  TruthTable x1 = make_basis(2, BasisKind::Projection, 1);
  TruthTable x2 = make_basis(2, BasisKind::Projection, 2);
  CHECK(parity_inner(x1, x2) == 1);          // overlap {11}, odd
  CHECK(parity_inner(x1, x1) == 0);          // overlap size 2
  CHECK(parity_inner(x1, ~x1) == 0);         // empty overlap
  CHECK(parity_inner(x1 & x2, x1 | x2) == 1);
}

TEST_CASE("affine coefficient vectors") {
  TruthTable x1 = make_basis(2, BasisKind::Projection, 1);
  TruthTable x2 = make_basis(2, BasisKind::Projection, 2);

  auto lc = linear_coeffs(x1 ^ x2);
  REQUIRE(lc.has_value());
  CHECK(lc->n == 2);
  CHECK(lc->constant_term() == 0);
  CHECK(lc->var_mask() == 0b11);
  CHECK(lc->id == 0b110);
  CHECK(lc->to_bits() == "011");
  CHECK(LinearFn::from_bits(2, "011").id == lc->id);
  CHECK(linear_to_tt(*lc) == (x1 ^ x2));

  auto nc = linear_coeffs(~(x1 ^ x2));
  REQUIRE(nc.has_value());
  CHECK(nc->constant_term() == 1);

  CHECK_FALSE(linear_coeffs(x1 & x2).has_value());

  // round trip over every affine function on 3 variables
  for (std::uint32_t id = 0; id < 16; ++id) {
    LinearFn l{3, id};
    auto back = linear_coeffs(linear_to_tt(l));
    REQUIRE(back.has_value());
    CHECK(back->id == id);
  }
}
