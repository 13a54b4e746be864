// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "boolgrow/connective.hpp"

using namespace boolgrow;
using doctest::Approx;

TEST_CASE("presets load with their own names") {
  auto names = preset_connective_names();
  CHECK(names.size() == 10);
  for (const auto& nm : names) {
    Connective c = preset_connective(nm);
    CHECK(c.name == nm);
    CHECK(c.arity() >= 2);
  }
  CHECK(preset_connective("maj3").table == make_threshold(3, 2));
  CHECK(preset_connective("and2").table == make_threshold(2, 2));
  CHECK(preset_connective("mux").table == TruthTable::from_hex(3, "8d"));
  CHECK(preset_connective("slow3").table.to_id() == 0xa8); // x1 and (x2 or x3)
  CHECK_THROWS(preset_connective("nope"));
}

TEST_CASE("weight-count polynomial") {
  CharPoly maj(make_threshold(3, 2));
  CHECK(maj.arity() == 3);
  CHECK(maj.count(0) == 0);
  CHECK(maj.count(1) == 0);
  CHECK(maj.count(2) == 3);
  CHECK(maj.count(3) == 1);
  CHECK(maj.binom(1) == 3);
  CHECK(maj.binom(2) == 3);
  CHECK(maj.beta_fraction(2) == "3/3");
  CHECK(maj.beta(2) == 1.0);
  CHECK(maj.value(0.5) == 0.5);
  CHECK(maj.derivative(0.5) == 1.5);
  CHECK(maj.balanced_exact());

  CharPoly val(preset_connective("valiant4").table);
  CHECK(val.count(2) == 2);
  CHECK(val.count(3) == 4);
  CHECK(val.count(4) == 1);
  // A(p) = 2p^2 - p^4 for this gate
  CHECK(val.value(0.25) == Approx(2 * 0.0625 - 0.00390625).epsilon(1e-15));

  CHECK_FALSE(CharPoly(make_threshold(2, 2)).balanced_exact());
  CHECK(CharPoly(preset_connective("xor2").table).balanced_exact());
  CHECK(CharPoly(preset_connective("mux").table).balanced_exact());

  CHECK_THROWS(CharPoly(3, {0, 0, 1}));        // needs k+1 entries
  CHECK_THROWS(CharPoly(3, {0, 4, 0, 1}));     // count above C(3,1)
}

TEST_CASE("fixed point classification") {
  FixedPointReport maj = fixed_point(CharPoly(make_threshold(3, 2)));
  CHECK(maj.kind == FixedPointReport::Kind::Interior);
  CHECK(maj.s == 0.5); // balanced gates land on the dyadic grid point
  CHECK(maj.slope == Approx(1.5).epsilon(1e-12));
  CHECK(maj.residual <= 1e-15);

  FixedPointReport val = fixed_point(char_poly(preset_connective("valiant4")));
  CHECK(val.kind == FixedPointReport::Kind::Interior);
  CHECK(val.s == Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-12));
  CHECK(val.slope == Approx(6.0 - 2.0 * std::sqrt(5.0)).epsilon(1e-10));

  CHECK(fixed_point(CharPoly(make_threshold(2, 2))).kind ==
        FixedPointReport::Kind::BelowEverywhere);
  CHECK(fixed_point(CharPoly(make_threshold(2, 1))).kind ==
        FixedPointReport::Kind::AboveEverywhere);
  CHECK(fixed_point(char_poly(preset_connective("slow3"))).kind ==
        FixedPointReport::Kind::BelowEverywhere);

  // P(out) = p for a multiplexer, and for bare projections
  CHECK(fixed_point(char_poly(preset_connective("mux"))).kind ==
        FixedPointReport::Kind::Identity);
  CHECK(fixed_point(CharPoly(TruthTable::from_id(1, 2))).kind ==
        FixedPointReport::Kind::Identity);

  // A(p) - p = p(1-p)(1-3p): interior crossing at 1/3 with slope 1/3
  FixedPointReport art = fixed_point(CharPoly(3, {0, 2, 0, 1}));
  CHECK(art.kind == FixedPointReport::Kind::Interior);
  CHECK(art.s == Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(art.slope == Approx(1.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("fast/slow dichotomy") {
  ConvergenceClassReport fast = convergence_class(preset_connective("and3"));
  CHECK(fast.cls == ConvergenceClass::Fast);
  CHECK_FALSE(fast.used_dual);
  CHECK(fast.note.empty());

  ConvergenceClassReport slow = convergence_class(preset_connective("slow3"));
  CHECK(slow.cls == ConvergenceClass::Slow);
  CHECK_FALSE(slow.used_dual);
  // the two published hypothesis levels disagree on this gate
  CHECK_FALSE(slow.note.empty());

  ConvergenceClassReport up = convergence_class(preset_connective("or3"));
  CHECK(up.cls == ConvergenceClass::Fast);
  CHECK(up.used_dual);

  // x1 or (x2 and x3), the upward mirror of slow3
  TruthTable x1 = make_basis(3, BasisKind::Projection, 1);
  TruthTable x2 = make_basis(3, BasisKind::Projection, 2);
  TruthTable x3 = make_basis(3, BasisKind::Projection, 3);
  ConvergenceClassReport mirror =
      convergence_class(make_connective(x1 | (x2 & x3)));
  CHECK(mirror.cls == ConvergenceClass::Slow);
  CHECK(mirror.used_dual);

  CHECK_THROWS(convergence_class(preset_connective("maj3"))); // interior fp
  CHECK_THROWS(convergence_class(preset_connective("xor2"))); // not monotone
}

TEST_CASE("gate spectrum") {
  SpectralProfile maj = spectral_profile(preset_connective("maj3"));
  REQUIRE(maj.s.size() == 8);
  CHECK(maj.s[0] == 0.0);
  CHECK(maj.s[1] == 0.5);
  CHECK(maj.s[2] == 0.5);
  CHECK(maj.s[4] == 0.5);
  CHECK(maj.s[7] == -0.5);
  CHECK(maj.s[3] == 0.0);
  CHECK(maj.s[5] == 0.0);
  CHECK(maj.s[6] == 0.0);
  CHECK(maj.s_zero == 0.0);
  CHECK(maj.max_abs == 0.5);
  CHECK(maj.a3 == Approx(0.5).epsilon(1e-15));
  CHECK(maj.parseval == Approx(1.0).epsilon(1e-15));

  SpectralProfile px = spectral_profile(preset_connective("xor2"));
  CHECK(px.s[3] == 1.0);
  CHECK(px.max_abs == 1.0);
  CHECK(px.a3 == Approx(1.0));

  SpectralProfile pa = spectral_profile(preset_connective("and2"));
  CHECK(pa.s_zero == 0.5); // unbalanced gates keep mass at t = 0
  CHECK(pa.parseval == Approx(1.0).epsilon(1e-15));

  // every gate spectrum has unit square mass
  for (const auto& nm : preset_connective_names())
    CHECK(spectral_profile(preset_connective(nm)).parseval ==
          Approx(1.0).epsilon(1e-12));
}
