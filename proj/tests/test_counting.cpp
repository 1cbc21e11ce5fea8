#include <doctest.h>

#include <vector>

#include "dkron/counting.hpp"

using dkron::Polynomial;
using dkron::Rational;

namespace {

// (1/n) sum_{d | n} mu(d) q^{n/d}: the count of monic irreducibles of degree n.
long long irreducible_count(int n, int q) {
  long long count = 0;
  for (const auto& p : dkron::monic_polynomials(n, q))
    if (dkron::is_irreducible(p)) ++count;
  return count;
}

}  // namespace

TEST_CASE("monic enumeration is complete, ordered, and monic") {
  for (int q : {2, 3}) {
    for (int a = 0; a <= 4; ++a) {
      auto all = dkron::monic_polynomials(a, q);
      CHECK(static_cast<long long>(all.size()) == dkron::pow_ll(q, a));
      std::uint64_t prev = 0;
      for (const auto& p : all) {
        CHECK(p.is_monic());
        CHECK(p.degree() == a);
        const std::uint64_t idx = p.to_index();
        CHECK(idx >= prev);
        prev = idx + 1;
      }
    }
  }
}

TEST_CASE("coprime enumeration agrees with a direct gcd filter") {
  for (int q : {2, 3}) {
    const Polynomial p = Polynomial::x(q) * (Polynomial::x(q) + Polynomial::one(q));
    for (int a = 0; a <= 5; ++a) {
      auto filtered = dkron::monic_coprime(a, q, p);
      long long direct = 0;
      for (const auto& f : dkron::monic_polynomials(a, q))
        if (Polynomial::gcd(f, p) == Polynomial::one(q)) ++direct;
      CHECK(static_cast<long long>(filtered.size()) == direct);

      dkron::MonicEnumerator en(a, q, p);
      long long streamed = 0;
      while (en.next()) ++streamed;
      CHECK(streamed == direct);
    }
  }
}

TEST_CASE("irreducible counts match the Gauss formula") {
  CHECK(irreducible_count(1, 2) == 2);
  CHECK(irreducible_count(2, 2) == 1);
  CHECK(irreducible_count(3, 2) == 2);
  CHECK(irreducible_count(4, 2) == 3);
  CHECK(irreducible_count(1, 3) == 3);
  CHECK(irreducible_count(2, 3) == 3);
  CHECK(irreducible_count(3, 3) == 8);
}

TEST_CASE("factorization multiplies back and splits known cases") {
  // 1 + 2x^2 = 2(x+1)(x+2) over Z_3.
  Polynomial f(3, {1, 0, 2});
  auto factors = dkron::factorize(f);
  REQUIRE(factors.size() == 2);
  CHECK(factors[0].first == Polynomial(3, {1, 1}));
  CHECK(factors[0].second == 1);
  CHECK(factors[1].first == Polynomial(3, {2, 1}));
  CHECK(factors[1].second == 1);

  for (int q : {2, 3}) {
    for (std::uint64_t n = 1; n < 300; ++n) {
      Polynomial g = Polynomial::from_index(n, q);
      Polynomial prod = Polynomial::one(q);
      for (const auto& [base, mult] : dkron::factorize(g))
        for (int i = 0; i < mult; ++i) prod = prod * base;
      CHECK(prod == g.monic());
    }
  }
}

TEST_CASE("radical drops multiplicities") {
  Polynomial x = Polynomial::x(2);
  Polynomial xp1 = x + Polynomial::one(2);
  CHECK(dkron::radical(x * x * xp1) == x * xp1);
  CHECK(dkron::radical(Polynomial::one(3)) == Polynomial::one(3));
}

TEST_CASE("polynomial Moebius values") {
  Polynomial one2 = Polynomial::one(2);
  Polynomial x2 = Polynomial::x(2);
  CHECK(dkron::moebius_q(one2) == 1);
  CHECK(dkron::moebius_q(x2) == -1);
  CHECK(dkron::moebius_q(x2 * x2) == 0);
  CHECK(dkron::moebius_q(x2 * (x2 + one2)) == 1);
  CHECK(dkron::moebius_q(Polynomial(2, {1, 1, 1})) == -1);
  // Unit multiples are equivalent.
  CHECK(dkron::moebius_q(Polynomial(3, {0, 2})) == dkron::moebius_q(Polynomial::x(3)));
  CHECK_THROWS_AS(dkron::moebius_q(Polynomial::zero(2)), std::invalid_argument);
}

TEST_CASE("coprime count formula matches brute enumeration and the density tail") {
  for (int q : {2, 3}) {
    const Polynomial x = Polynomial::x(q);
    const Polynomial p = x * (x + Polynomial::one(q)) * Polynomial(q, {1, 1, 1});
    const int rad_deg = dkron::radical(p).degree();
    for (int a = 0; a <= 6; ++a) {
      Rational formula = dkron::coprime_count_formula(a, p);
      CHECK(formula.den() == 1);
      CHECK(formula.num() == static_cast<long long>(dkron::monic_coprime(a, q, p).size()));
      if (a >= rad_deg)
        CHECK(formula == Rational::pow(q, a) * dkron::coprime_density(p));
    }
  }
}

TEST_CASE("coprime density is the product over distinct factors") {
  Polynomial x = Polynomial::x(2);
  Polynomial p = x * Polynomial(2, {1, 1, 1});  // x (x^2+x+1)
  CHECK(dkron::coprime_density(p) == Rational(1, 2) * Rational(3, 4));
}

TEST_CASE("signed unit-weighted partial sums match hand values") {
  const Polynomial p2 = Polynomial::x(2);
  // cutoff 0: the units alone contribute q - 1.
  CHECK(dkron::partial_sum_b(0, p2, 2) == Rational(1));
  // cutoff 1, q = 2, p = x: l in {1, x+1}, mu(x+1) = -1 at weight 2^{-s}.
  CHECK(dkron::partial_sum_b(1, p2, 2) == Rational(1) - Rational(1, 4));
  CHECK(dkron::partial_sum_b(1, p2, 3) == Rational(1) - Rational(1, 8));

  const Polynomial p3 = Polynomial::x(3);
  CHECK(dkron::partial_sum_b(0, p3, 2) == Rational(2));
  // q = 3: four unit multiples of the two coprime monic linears, each mu = -1.
  CHECK(dkron::partial_sum_b(1, p3, 2) == Rational(2) - Rational(4, 9));
}
