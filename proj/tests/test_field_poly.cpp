#include <doctest.h>

#include <random>
#include <vector>

#include "dkron/poly.hpp"
#include "dkron/rational.hpp"

using dkron::Polynomial;
using dkron::Rational;

TEST_CASE("mod_reduce maps into [0, q) including negatives") {
  CHECK(dkron::mod_reduce(7, 3) == 1);
  CHECK(dkron::mod_reduce(-1, 3) == 2);
  CHECK(dkron::mod_reduce(-6, 3) == 0);
  CHECK(dkron::mod_reduce(0, 2) == 0);
}

TEST_CASE("pow_ll guards its domain") {
  CHECK(dkron::pow_ll(2, 10) == 1024);
  CHECK(dkron::pow_ll(5, 0) == 1);
  CHECK_THROWS_AS(dkron::pow_ll(2, -1), std::invalid_argument);
  CHECK_THROWS_AS(dkron::pow_ll(2, 63), std::overflow_error);
}

TEST_CASE("prime modulus is enforced") {
  CHECK_NOTHROW(dkron::require_prime_modulus(2));
  CHECK_NOTHROW(dkron::require_prime_modulus(13));
  CHECK_THROWS_AS(dkron::require_prime_modulus(4), std::invalid_argument);
  CHECK_THROWS_AS(dkron::require_prime_modulus(1), std::invalid_argument);
}

TEST_CASE("polynomial index correspondence round-trips") {
  for (int q : {2, 3, 5}) {
    for (std::uint64_t n = 0; n < 200; ++n) {
      Polynomial p = Polynomial::from_index(n, q);
      CHECK(p.to_index() == n);
    }
    // Index order is (degree, coefficients) order for monic prefixes.
    CHECK(Polynomial::from_index(0, q).is_zero());
    CHECK(Polynomial::from_index(1, q) == Polynomial::one(q));
    CHECK(Polynomial::from_index(static_cast<std::uint64_t>(q), q) == Polynomial::x(q));
  }
}

TEST_CASE("polynomial arithmetic satisfies ring laws on random draws") {
  std::mt19937_64 rng(314159);
  for (int q : {2, 3, 5}) {
    for (int trial = 0; trial < 50; ++trial) {
      auto draw = [&] {
        return Polynomial::from_index(rng() % 512, q);
      };
      Polynomial a = draw(), b = draw(), c = draw();
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) * c == a * c + b * c);
      CHECK(a - a == Polynomial::zero(q));
      if (!b.is_zero()) {
        auto [quot, rem] = Polynomial::divmod(a, b);
        CHECK(quot * b + rem == a);
        CHECK((rem.is_zero() || rem.degree() < b.degree()));
      }
    }
  }
}

TEST_CASE("degree bookkeeping") {
  Polynomial z = Polynomial::zero(3);
  CHECK(z.degree() == Polynomial::kNegInfinityDegree);
  CHECK(Polynomial::one(3).degree() == 0);
  CHECK(Polynomial::x(3).degree() == 1);
  // Trailing zeros trim: 3x^2 == 0 over Z_3.
  CHECK(Polynomial(3, {1, 0, 3}) == Polynomial::one(3));
}

TEST_CASE("gcd is monic and divides both arguments") {
  std::mt19937_64 rng(271828);
  for (int q : {2, 3}) {
    for (int trial = 0; trial < 40; ++trial) {
      Polynomial a = Polynomial::from_index(1 + rng() % 255, q);
      Polynomial b = Polynomial::from_index(1 + rng() % 255, q);
      Polynomial g = Polynomial::gcd(a, b);
      CHECK(g.is_monic());
      CHECK(g.divides(a));
      CHECK(g.divides(b));
    }
  }
  CHECK_THROWS_AS(Polynomial::gcd(Polynomial::zero(2), Polynomial::zero(2)),
                  std::invalid_argument);
  // gcd(x^2+x, x^2+1) over Z_2: both share x+1.
  Polynomial g = Polynomial::gcd(Polynomial(2, {0, 1, 1}), Polynomial(2, {1, 0, 1}));
  CHECK(g == Polynomial(2, {1, 1}));
}

TEST_CASE("evaluation and monic normalization") {
  Polynomial p(3, {1, 2, 1});  // 1 + 2x + x^2
  CHECK(p.eval(0) == 1);
  CHECK(p.eval(1) == 1);  // 1 + 2 + 1 = 4 = 1 mod 3
  CHECK(p.eval(2) == 0);  // 1 + 4 + 4 = 9 = 0 mod 3
  Polynomial twice(3, {2, 1, 2});
  Polynomial m = twice.monic();
  CHECK(m.is_monic());
  CHECK(m == Polynomial(3, {1, 2, 1}));
}

TEST_CASE("rational arithmetic stays reduced and exact") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK((Rational(3, 4) - Rational(3, 4)) == Rational(0));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(1, -2).den() == 2);
  CHECK(Rational(1, -2).num() == -1);
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(7).str() == "7");
  CHECK(Rational::pow(2, -3) == Rational(1, 8));
  CHECK(Rational::pow(3, 4) == Rational(81));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}
