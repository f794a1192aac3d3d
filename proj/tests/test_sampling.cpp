#include <catch2/catch_amalgamated.hpp>

#include "tq/sampling.hpp"

using namespace tq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("wilson interval") {
  WilsonInterval empty = wilson_interval(0, 0);
  CHECK(empty.low == 0.0);
  CHECK(empty.high == 1.0);

  WilsonInterval one = wilson_interval(1, 10);
  CHECK_THAT(one.low, WithinAbs(0.0178762131, 1e-9));
  CHECK_THAT(one.high, WithinAbs(0.4041500268, 1e-9));

  WilsonInterval none = wilson_interval(0, 100);
  CHECK_THAT(none.low, WithinAbs(0.0, 1e-12));
  CHECK_THAT(none.high, WithinAbs(0.0369934982, 1e-9));

  WilsonInterval half = wilson_interval(50, 100);
  CHECK_THAT(half.low + half.high, WithinAbs(1.0, 1e-12));  // symmetric at p = 1/2
  CHECK(half.low < 0.5);
  CHECK(half.high > 0.5);
}

TEST_CASE("analytic bound values") {
  CHECK_THAT(nonquad_bound(4), WithinAbs(4.5, 1e-12));
  CHECK_THAT(nonquad_bound(10), WithinRel(24.027099609375, 1e-12));
  CHECK(nonquad_bound(60) < 0.004);
  // the curve peaks near n = 11 and then decays geometrically
  for (int n = 12; n < 60; ++n) CHECK(nonquad_bound(n + 1) < nonquad_bound(n));

  auto curve = bound_curve(4, 8);
  REQUIRE(curve.size() == 5);
  CHECK(curve.front().first == 4);
  CHECK_THAT(curve.front().second, WithinAbs(4.5, 1e-12));
  CHECK_THROWS_AS(bound_curve(3, 8), input_error);
  CHECK_THROWS_AS(bound_curve(10, 8), input_error);
}

TEST_CASE("estimates are deterministic in (n, trials, seed)") {
  SampleEstimate a = estimate_nonquad(12, 300, 7);
  SampleEstimate b = estimate_nonquad(12, 300, 7);
  SampleEstimate c = estimate_nonquad(12, 300, 7, 4);  // worker count must not matter
  CHECK(a.non_quadrangular == b.non_quadrangular);
  CHECK(a.non_quadrangular == c.non_quadrangular);
  SampleEstimate other = estimate_nonquad(12, 300, 8);
  CHECK(a.seed != other.seed);
}

TEST_CASE("frozen estimate values") {
  // small orders are almost never quadrangular
  CHECK(estimate_nonquad(12, 500, 7).non_quadrangular == 500);
  SampleEstimate e40 = estimate_nonquad(40, 500, 7);
  CHECK(e40.non_quadrangular == 119);
  CHECK_THAT(e40.fraction, WithinAbs(0.238, 1e-12));
  CHECK(e40.wilson_ci.low <= e40.fraction);
  CHECK(e40.wilson_ci.high >= e40.fraction);
  CHECK(e40.fraction <= e40.bound);
}

TEST_CASE("estimate input validation") {
  CHECK_THROWS_AS(estimate_nonquad(3, 10, 0), input_error);
  CHECK_THROWS_AS(estimate_nonquad(10, 0, 0), input_error);
}
