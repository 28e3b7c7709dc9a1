#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gouq/params.hpp"
#include "gouq/rng.hpp"

using namespace gouq;

TEST_CASE("normalize divides by the rate total") {
  const ModelParams mp = normalize({2, 2, 1}, ScaleC::integer(2));
  CHECK(mp.p == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(mp.q == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(mp.r == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("normalize rejects a Y component that never jumps") {
  CHECK_THROWS_AS(normalize({1, 0, 0}, ScaleC::integer(2)), Error);
  try {
    normalize({1, 0, 0}, ScaleC::integer(2));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidRate);
  }
}

TEST_CASE("normalize rejects the degenerate r=1 model") {
  try {
    normalize({0, 0, 1}, ScaleC::integer(2));
    FAIL("expected DegenerateModel");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateModel);
  }
}

TEST_CASE("normalize rejects c <= 1") {
  try {
    normalize({1, 1, 1}, ScaleC::floating(1.0));
    FAIL("expected InvalidC");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidC);
  }
}

TEST_CASE("normalize is scale invariant") {
  for (double lambda : {0.25, 1.0, 7.5, 1e6}) {
    const ModelParams a = normalize({2, 3, 1}, ScaleC::integer(3));
    const ModelParams b =
        normalize({2 * lambda, 3 * lambda, lambda}, ScaleC::integer(3));
    CHECK(a.p == doctest::Approx(b.p).epsilon(1e-14));
    CHECK(a.q == doctest::Approx(b.q).epsilon(1e-14));
    CHECK(a.r == doctest::Approx(b.r).epsilon(1e-14));
  }
}

TEST_CASE("round trip: a valid triple normalises to itself") {
  const ModelParams mp = normalize({0.3, 0.5, 0.2}, ScaleC::integer(2));
  CHECK(mp.p == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(mp.q == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mp.r == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("make_params enforces the 1e-12 sum tolerance") {
  CHECK_NOTHROW(make_params(ScaleC::integer(2), 0.3, 0.5, 0.2 + 5e-13));
  CHECK_THROWS_AS(make_params(ScaleC::integer(2), 0.3, 0.5, 0.21), Error);
}

TEST_CASE("degenerate point of the r=1 model") {
  CHECK(degenerate_value(2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(degenerate_value(4.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(degenerate_value(1.5) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(degenerate_value(1.0), Error);
}

TEST_CASE("decimal strings parse to exact rationals") {
  CHECK(*parse_decimal("0.1715") == Rational(1715, 10000));
  CHECK(*parse_decimal("-3") == Rational(-3));
  CHECK(*parse_decimal("2.5e-3") == Rational(25, 10000));
  CHECK(*parse_decimal("1e2") == Rational(100));
  CHECK(!parse_decimal("abc").has_value());
  CHECK(!parse_decimal("1.2.3").has_value());
  CHECK(!parse_decimal("").has_value());
}

TEST_CASE("exact params keep their rational forms") {
  const ModelParams mp = make_params_exact(
      ScaleC::integer(2), Rational(3, 10), Rational(1, 2), Rational(1, 5));
  REQUIRE(mp.has_exact_pqr());
  CHECK(*mp.p_exact == Rational(3, 10));
  CHECK(mp.p == doctest::Approx(0.3).epsilon(1e-15));
  CHECK_THROWS_AS(make_params_exact(ScaleC::integer(2), Rational(1, 2),
                                    Rational(1, 2), Rational(1, 5)),
                  Error);
}

TEST_CASE("rational ScaleC reduces and tags integers") {
  const ScaleC half3 = ScaleC::rational(3, 2);
  CHECK(half3.tag == Exactness::Rational);
  CHECK(half3.value == doctest::Approx(1.5).epsilon(1e-15));
  const ScaleC four = ScaleC::rational(8, 2);
  CHECK(four.tag == Exactness::Integer);
}

TEST_CASE("stream rng decorrelates neighbouring streams") {
  // same stream reproduces, different streams differ
  SplitMix64 a = stream_rng(42, 7);
  SplitMix64 b = stream_rng(42, 7);
  SplitMix64 c = stream_rng(42, 8);
  CHECK(a.next() == b.next());
  CHECK(a.next() != c.next());
  // uniforms stay inside the open interval
  SplitMix64 g = stream_rng(1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = g.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}
