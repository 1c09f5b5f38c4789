#include "support.hpp"

#include "cyclap/numerics.hpp"

#include <random>

using namespace cyclap;

TEST_CASE("precision context") {
  PrecisionContext ctx(53);
  CHECK(ctx.eps() == std::ldexp(1.0, -52));
  CHECK_THROWS_AS(PrecisionContext(52), DomainError);
  PrecisionContext big(3322);
  CHECK(big.eps() == ldexp(big.real(1.0), -3321));
  CHECK(big.decimal_digits() == 1000);
}

TEST_CASE("chebyshev T examples") {
  PrecisionContext ctx(200);
  CHECK(chebyshev_T(0, ctx.real(0.7)) == 1.0);
  CHECK(chebyshev_T(2, ctx.real(0.5)) == -0.5);
  const Real theta = ctx.pi() / 7.0;
  const Real diff = chebyshev_T(5, cos(theta)) - cos(theta * 5.0);
  CHECK(abs(diff) < ctx.eps() * 64.0);
  CHECK_THROWS_AS(chebyshev_T(-1, ctx.real(0.1)), DomainError);
}

TEST_CASE("chebyshev U examples") {
  PrecisionContext ctx(200);
  CHECK(chebyshev_U(-1, ctx.real(0.3)).is_zero());
  CHECK(chebyshev_U(1, ctx.real(0.25)) == 0.5);
  const Real u4 = chebyshev_U(4, cos(ctx.pi() / 5.0));
  CHECK(abs(u4) < ctx.eps() * 64.0);
  const auto table = chebyshev_U_table(6, ctx.real(0.3));
  REQUIRE(table.size() == 8);
  for (int k = -1; k <= 6; ++k) CHECK(table[k + 1] == chebyshev_U(k, ctx.real(0.3)));
}

TEST_CASE("chebyshev complex argument") {
  PrecisionContext ctx(128);
  Complex t(ctx.real(0.3), ctx.real(0.2));
  // U_2 = 4t^2 - 1
  Complex u2 = chebyshev_U(2, t);
  Complex expect = t * t * 4.0 - one_like(t);
  CHECK(abs(u2 - expect) < ctx.eps() * 8.0);
}

TEST_CASE("chebyshev trig identities on random points") {
  PrecisionContext ctx(53);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Real t = ctx.real(dist(rng));
    const Real phi = acos(t);
    const int n = static_cast<int>(trial % 65);
    const Real bound = ctx.eps() * (64.0 * std::max(n, 1));
    CHECK(abs(chebyshev_T(n, t) - cos(phi * static_cast<double>(n))) <= bound);
    CHECK(abs(chebyshev_U(n, t) * sin(phi) - sin(phi * static_cast<double>(n + 1))) <= bound);
  }
}

TEST_CASE("symbol g") {
  PrecisionContext ctx(200);
  CHECK(g(ctx.real(0.0)).is_zero());
  CHECK(abs(g(ctx.pi()) - 4.0) < ctx.eps() * 8.0);
  CHECK(abs(g(ctx.pi() / 3.0) - 1.0) < ctx.eps() * 8.0);
  for (double x : {-7.0, -1.3, 0.2, 2.9, 3.5, 9.0}) {
    const Real r = ctx.real(x);
    CHECK(g(r) == g(-r));
    const Real c = cos(r / 2.0) * 2.0;
    CHECK(abs(g(r) - (4.0 - sqr(c))) <= ctx.eps() * 8.0);
    CHECK(abs(g(r) - (2.0 - cos(r) * 2.0)) <= ctx.eps() * 8.0);
  }
  CHECK(abs(g_prime(ctx.real(0.4)) - sin(ctx.real(0.4)) * 2.0) <= ctx.eps());
  CHECK(abs(g_second(ctx.real(0.4)) - cos(ctx.real(0.4)) * 2.0) <= ctx.eps());
}

TEST_CASE("sin cos multiples") {
  PrecisionContext ctx(256);
  const Real theta = ctx.real(0.731);
  const auto t = sin_cos_multiples(theta, 200);
  REQUIRE(t.sin.size() == 201);
  for (int m : {0, 1, 2, 57, 200}) {
    CHECK(abs(t.sin[m] - sin(theta * static_cast<double>(m))) <= ctx.eps() * 1000.0);
    CHECK(abs(t.cos[m] - cos(theta * static_cast<double>(m))) <= ctx.eps() * 1000.0);
  }
}

TEST_CASE("series tan and atan") {
  for (int bits : {53, 200, 3322}) {
    PrecisionContext ctx(bits);
    for (double x : {1e-30, -3e-12, 5e-9, 0.3, -1.7}) {
      const Real r = ctx.real(x);
      CHECK(abs(tan_fast(r) - tan(r)) <= abs(tan(r)) * ctx.eps() * 8.0);
      CHECK(abs(atan_fast(r) - atan(r)) <= abs(atan(r)) * ctx.eps() * 8.0);
    }
    CHECK(tan_fast(ctx.real(0.0)).is_zero());
  }
}
