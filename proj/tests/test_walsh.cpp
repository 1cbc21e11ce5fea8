#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "dkron/laurent.hpp"
#include "dkron/walsh.hpp"

using dkron::LaurentSeries;

TEST_CASE("base-q digits come lowest first") {
  CHECK(dkron::base_q_digits(0, 2).empty());
  CHECK(dkron::base_q_digits(6, 2) == std::vector<int>{0, 1, 1});
  CHECK(dkron::base_q_digits(7, 3) == std::vector<int>{1, 2});
}

TEST_CASE("roots of unity and cached powers") {
  CHECK(dkron::root_of_unity(2).real() == doctest::Approx(-1.0));
  CHECK(std::abs(dkron::omega_power(3, 3) - std::complex<double>(1, 0)) < 1e-15);
  CHECK(std::abs(dkron::omega_power(3, -1) - std::conj(dkron::root_of_unity(3))) < 1e-15);
  for (int q : {2, 3, 5}) {
    std::complex<double> sum = 0;
    for (int e = 0; e < q; ++e) sum += dkron::omega_power(q, e);
    CHECK(std::abs(sum) < 1e-12);
  }
}

TEST_CASE("character exponent pairs digit i with coefficient i+1") {
  LaurentSeries g(2, 1, {1, 1, 0, 1, 0, 0, 0}, 8);
  CHECK(dkron::wal_exponent(1, g) == 1);  // digit 0 of j -> a_1
  CHECK(dkron::wal_exponent(2, g) == 1);  // digit 1 of j -> a_2
  CHECK(dkron::wal_exponent(3, g) == 0);  // 1 + 1 mod 2
  CHECK(dkron::wal_exponent(4, g) == 0);  // a_3 = 0
  CHECK(dkron::wal_exponent(8, g) == 1);  // a_4
  CHECK(dkron::wal_exponent(0, g) == 0);

  // Only coefficients under nonzero digits are read: j = 1 never looks past
  // a_1, so a barely-known series still answers.
  LaurentSeries short_g(2, 1, {1}, 2);
  CHECK(dkron::wal_exponent(1, short_g) == 1);
  CHECK_THROWS_AS(dkron::wal_exponent(2, short_g), dkron::InsufficientPrecisionError);
}

TEST_CASE("grid exponent agrees with the series exponent on snapshots") {
  std::mt19937_64 rng(4242);
  for (int q : {2, 3, 5}) {
    const int m = 5;
    const long long qm = dkron::pow_ll(q, m);
    for (int trial = 0; trial < 60; ++trial) {
      const long long y = static_cast<long long>(rng() % static_cast<std::uint64_t>(qm));
      std::vector<int> digits(m, 0);
      long long rest = y;
      for (int i = m - 1; i >= 0; --i, rest /= q) digits[i] = static_cast<int>(rest % q);
      LaurentSeries g(q, 1, digits, m + 1);
      const long long j = static_cast<long long>(rng() % static_cast<std::uint64_t>(qm));
      CHECK(dkron::wal_exponent(j, g) == dkron::wal_exponent_grid(j, y, m, q));
    }
  }
}

TEST_CASE("root-of-unity sums certify exact integers") {
  dkron::RootOfUnitySum s(3);
  s.add(0, 2);
  CHECK(s.exactly(2));
  s.add(1);
  s.add(2);
  CHECK(s.exactly(1));  // 2 + omega + omega^2 = 1
  CHECK_FALSE(s.exactly(2));
  CHECK(std::abs(s.value() - std::complex<double>(1, 0)) < 1e-12);

  dkron::RootOfUnitySum t(2);
  t.add(1, 5);
  t.add(0, 5);
  CHECK(t.exactly_zero());
  CHECK(t.total() == 10);
}

TEST_CASE("full-grid character sums are orthogonal without normalization") {
  for (int q : {2, 3}) {
    for (int m = 1; m <= 3; ++m) {
      const long long qm = dkron::pow_ll(q, m);
      for (long long j = 0; j < qm; ++j)
        for (long long k = 0; k < qm; ++k) {
          auto sum = dkron::orthonormality_sum(j, k, m, q);
          if (j == k)
            CHECK(sum.exactly(qm));
          else
            CHECK(sum.exactly_zero());
        }
    }
  }
}

TEST_CASE("index decomposition strips the top digit") {
  auto p6 = dkron::decompose_index(6, 2);  // 110
  CHECK(p6.a == 3);
  CHECK(p6.kappa == 1);
  CHECK(p6.rest == 2);
  auto p7 = dkron::decompose_index(7, 2);
  CHECK(p7.rest == 3);
  auto p17 = dkron::decompose_index(17, 3);  // 122 base 3
  CHECK(p17.a == 3);
  CHECK(p17.kappa == 1);
  CHECK(p17.rest == 8);
  for (int q : {2, 3}) {
    for (long long j = 1; j < dkron::pow_ll(q, 5); ++j) {
      auto parts = dkron::decompose_index(j, q);
      CHECK(parts.kappa >= 1);
      CHECK(parts.kappa < q);
      CHECK(parts.rest < dkron::pow_ll(q, parts.a - 1));
      CHECK(parts.kappa * dkron::pow_ll(q, parts.a - 1) + parts.rest == j);
    }
  }
}

TEST_CASE("anchor indices have both top digits equal to one") {
  auto k6 = dkron::parse_k_star(6, 2);  // 110
  CHECK(k6.valid);
  CHECK(k6.a == 3);
  CHECK(k6.l == 0);
  CHECK(k6.reduced == 2);
  auto k7 = dkron::parse_k_star(7, 2);  // 111
  CHECK(k7.valid);
  CHECK(k7.l == 1);
  CHECK(k7.reduced == 3);
  CHECK_FALSE(dkron::parse_k_star(5, 2).valid);   // 101
  CHECK_FALSE(dkron::parse_k_star(3, 2).valid);   // needs a >= 3
  CHECK_FALSE(dkron::parse_k_star(24, 3).valid);  // 220 base 3
  auto k13 = dkron::parse_k_star(13, 3);          // 111 base 3
  CHECK(k13.valid);
  CHECK(k13.a == 3);
  CHECK(k13.l == 1);
  CHECK(k13.reduced == 4);

  for (int q : {2, 3}) {
    for (long long k = 1; k < dkron::pow_ll(q, 5); ++k) {
      auto ks = dkron::parse_k_star(k, q);
      if (!ks.valid) continue;
      CHECK(ks.a >= 3);
      CHECK(ks.l < dkron::pow_ll(q, ks.a - 2));
      CHECK(dkron::pow_ll(q, ks.a - 1) + dkron::pow_ll(q, ks.a - 2) + ks.l == k);
      CHECK(ks.reduced == k - dkron::pow_ll(q, ks.a - 1));
    }
  }
}

TEST_CASE("wal values multiply across digit-disjoint index splits") {
  std::mt19937_64 rng(777);
  for (int q : {2, 3}) {
    const long long q3 = dkron::pow_ll(q, 3);
    for (int trial = 0; trial < 50; ++trial) {
      LaurentSeries g = dkron::sample_haar(q, 16, rng);
      const long long a = static_cast<long long>(rng() % static_cast<std::uint64_t>(q3));
      const long long b = static_cast<long long>(rng() % static_cast<std::uint64_t>(q3)) * q3;
      const auto lhs = dkron::wal(a + b, g);
      const auto rhs = dkron::wal(a, g) * dkron::wal(b, g);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}
