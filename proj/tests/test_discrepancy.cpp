#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dkron/discrepancy.hpp"
#include "dkron/errors.hpp"

using dkron::Complex;
using dkron::DigitalKroneckerConfig;
using dkron::LaurentSeries;
using dkron::PointSetView;

namespace {

std::vector<std::vector<long long>> random_rows(std::mt19937_64& rng, int s,
                                                long long grid, long long n) {
  std::vector<std::vector<long long>> rows;
  for (long long i = 0; i < n; ++i) {
    std::vector<long long> row;
    for (int j = 0; j < s; ++j)
      row.push_back(static_cast<long long>(rng() % static_cast<std::uint64_t>(grid)));
    rows.push_back(row);
  }
  return rows;
}

DigitalKroneckerConfig haar_config(std::mt19937_64& rng, int q, int s, int precision) {
  DigitalKroneckerConfig cfg;
  cfg.q = q;
  for (int j = 0; j < s; ++j) cfg.f.push_back(dkron::sample_haar(q, precision, rng));
  return cfg;
}

}  // namespace

TEST_CASE("scaled local discrepancy matches a hand count") {
  std::mt19937_64 rng(2024);
  for (int q : {2, 3}) {
    for (int s : {1, 2}) {
      const int m = 2;
      const long long grid = dkron::pow_ll(q, m);
      auto rows = random_rows(rng, s, grid, 11);
      PointSetView P{q, m, s, rows};
      for (int trial = 0; trial < 40; ++trial) {
        std::vector<long long> corner;
        for (int j = 0; j < s; ++j)
          corner.push_back(static_cast<long long>(rng() % static_cast<std::uint64_t>(grid + 1)));
        const long long N = 1 + static_cast<long long>(rng() % 11);
        long long inside = 0;
        for (long long n = 0; n < N; ++n) {
          bool in = true;
          for (int j = 0; j < s; ++j) in = in && rows[static_cast<size_t>(n)][j] < corner[j];
          inside += in;
        }
        long long vol = 1;
        for (long long v : corner) vol *= v;
        CHECK(dkron::local_discrepancy_scaled(P, corner, N) == inside * P.cells() - N * vol);
      }
    }
  }
}

TEST_CASE("box membership at snapshot resolution only needs the first m digits") {
  std::mt19937_64 rng(88);
  const int q = 3, m = 2, extra = 3;
  DigitalKroneckerConfig cfg = haar_config(rng, q, 2, 16);
  const auto coarse = dkron::generate_block(cfg, 0, 30, m);
  const auto fine = dkron::generate_block(cfg, 0, 30, m + extra);
  const long long scale = dkron::pow_ll(q, extra);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<long long> corner{
        static_cast<long long>(rng() % static_cast<std::uint64_t>(dkron::pow_ll(q, m) + 1)),
        static_cast<long long>(rng() % static_cast<std::uint64_t>(dkron::pow_ll(q, m) + 1))};
    for (size_t n = 0; n < coarse.size(); ++n) {
      bool in_coarse = coarse[n][0] < corner[0] && coarse[n][1] < corner[1];
      bool in_fine = fine[n][0] < corner[0] * scale && fine[n][1] < corner[1] * scale;
      CHECK(in_coarse == in_fine);
    }
  }
}

TEST_CASE("star discrepancy pins the two-point and one-point examples") {
  // {0, 1/2} at q = 2, m = 1: the uniform pair achieves D* = 1/2.
  std::vector<std::vector<long long>> rows{{0}, {1}};
  PointSetView P{2, 1, 1, rows};
  auto rep = dkron::star_discrepancy_grid(P, 2);
  CHECK(rep.value == dkron::Rational(1, 2));
  CHECK_FALSE(rep.lower_bound_only);

  // A single point at the origin: the closed box at 0 already holds it.
  std::vector<std::vector<long long>> one{{0}};
  PointSetView Q{2, 1, 1, one};
  auto rep1 = dkron::star_discrepancy_grid(Q, 1);
  CHECK(rep1.value == dkron::Rational(1));
}

TEST_CASE("star report value is attained at its own argmax") {
  std::mt19937_64 rng(9);
  for (int s : {1, 2}) {
    const int q = 2, m = 2;
    auto rows = random_rows(rng, s, dkron::pow_ll(q, m), 7);
    PointSetView P{q, m, s, rows};
    auto rep = dkron::star_discrepancy_grid(P, 7);
    REQUIRE(static_cast<int>(rep.argmax.size()) == s);
    long long gap;
    if (rep.closed_at_argmax) {
      std::vector<long long> closed = rep.argmax;
      for (auto& v : closed) v = std::min(v + 1, P.grid());
      long long inside = 0;
      for (const auto& row : rows) {
        bool in = true;
        for (int j = 0; j < s; ++j) in = in && row[j] < closed[j];
        inside += in;
      }
      long long vol = 1;
      for (long long v : rep.argmax) vol *= v;
      gap = std::llabs(inside * P.cells() - 7 * vol);
    } else {
      gap = std::llabs(dkron::local_discrepancy_scaled(P, rep.argmax, 7));
    }
    CHECK(gap == rep.scaled);
    CHECK(rep.value == dkron::Rational(rep.scaled, 7 * P.cells()));
  }
}

TEST_CASE("sampled star search lower-bounds the exact grid maximum") {
  std::mt19937_64 rng(31);
  const int q = 3, m = 2, s = 2;
  auto rows = random_rows(rng, s, dkron::pow_ll(q, m), 10);
  PointSetView P{q, m, s, rows};
  auto exact = dkron::star_discrepancy_grid(P, 10);
  std::mt19937_64 rng2(7);
  auto sampled = dkron::star_discrepancy_sampled(P, 10, 200, rng2);
  CHECK(sampled.lower_bound_only);
  CHECK(sampled.value <= exact.value);
  CHECK(sampled.scaled <= exact.scaled);
}

TEST_CASE("tiny budgets trip the budget guard") {
  std::mt19937_64 rng(5);
  auto rows = random_rows(rng, 2, 8, 4);
  PointSetView P{2, 3, 2, rows};
  CHECK_THROWS_AS(dkron::star_discrepancy_grid(P, 4, 10), dkron::BudgetExceededError);
}

TEST_CASE("indicator coefficients: closed form equals the defining sum") {
  for (int q : {2, 3}) {
    for (int m = 1; m <= 3; ++m) {
      const long long qm = dkron::pow_ll(q, m);
      for (long long k = 0; k < qm; ++k)
        for (long long x = 0; x < qm; ++x) {
          Complex a = dkron::j_coefficient(k, x, m, q);
          Complex b = dkron::j_coefficient_sum(k, x, m, q);
          CHECK(std::abs(a - b) < 1e-11);
        }
    }
  }
  // m = 4 spot checks at q = 2.
  for (long long k : {0ll, 1ll, 6ll, 11ll, 15ll})
    for (long long x : {0ll, 5ll, 9ll, 13ll}) {
      Complex a = dkron::j_coefficient(k, x, 4, 2);
      Complex b = dkron::j_coefficient_sum(k, x, 4, 2);
      CHECK(std::abs(a - b) < 1e-11);
    }
}

TEST_CASE("the zeroth coefficient recovers the corner itself") {
  for (int q : {2, 3, 5}) {
    const int m = 3;
    const long long qm = dkron::pow_ll(q, m);
    for (long long x = 0; x <= qm; x += 7) {
      Complex v = dkron::j_coefficient(0, x, m, q);
      CHECK(std::abs(v - Complex(static_cast<double>(x) / static_cast<double>(qm), 0)) < 1e-12);
    }
  }
}

TEST_CASE("digit weights shift the coefficients down by one") {
  LaurentSeries g(2, 1, {1, 0, 1, 1, 0, 0, 0}, 8);
  auto w = dkron::weyl_digit_weights(g, 4);
  CHECK(w == std::vector<int>{1, 0, 1, 1});
  // Weight c under the diagnostic offset 0 reads coefficient c instead.
  auto w0 = dkron::weyl_digit_weights(g, 4, 0);
  CHECK(w0 == std::vector<int>{0, 1, 0, 1});
  LaurentSeries deep(3, 2, {2, 0, 0, 0}, 6);
  CHECK(dkron::weyl_digit_weights(deep, 3) == std::vector<int>{0, 2, 0});
}

TEST_CASE("index-weighted character sums: geometric form equals the digit sum") {
  std::mt19937_64 rng(606);
  for (int q : {2, 3, 5}) {
    for (int m = 1; m <= 4; ++m) {
      const long long qm = dkron::pow_ll(q, m);
      for (int trial = 0; trial < 12; ++trial) {
        std::vector<int> weights;
        for (int c = 0; c < m; ++c)
          weights.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(q)));
        for (long long N : {0ll, 1ll, qm / 2, qm - 1, qm}) {
          Complex a = dkron::g_factor_closed(N, weights, q);
          Complex b = dkron::g_factor_direct(N, weights, q);
          CHECK(std::abs(a - b) < 1e-10);
        }
      }
      // All-zero weights count every index.
      std::vector<int> zero(static_cast<size_t>(m), 0);
      Complex full = dkron::g_factor_closed(qm, zero, q);
      CHECK(std::abs(full - Complex(static_cast<double>(qm), 0)) < 1e-12);
    }
  }
}

TEST_CASE("weight extraction reproduces the point character sum") {
  std::mt19937_64 rng(1101);
  for (int q : {2, 3}) {
    for (int s : {1, 2}) {
      const int m = 3;
      DigitalKroneckerConfig cfg = haar_config(rng, q, s, 2 * m + 4);
      const long long qm = dkron::pow_ll(q, m);
      for (int trial = 0; trial < 25; ++trial) {
        std::vector<long long> ks;
        bool nonzero = false;
        for (int j = 0; j < s; ++j) {
          ks.push_back(static_cast<long long>(rng() % static_cast<std::uint64_t>(qm)));
          nonzero = nonzero || ks.back() != 0;
        }
        if (!nonzero) ks[0] = 1;
        std::vector<dkron::Polynomial> kp;
        for (long long k : ks)
          kp.push_back(dkron::Polynomial::from_index(static_cast<std::uint64_t>(k), q));
        LaurentSeries combo =
            dkron::fractional_part(dkron::linear_combination(kp, cfg.f));
        auto weights = dkron::weyl_digit_weights(combo, m);
        const long long N = 1 + static_cast<long long>(rng() % static_cast<std::uint64_t>(qm));
        Complex closed = dkron::g_factor_closed(N, weights, q);
        Complex direct = dkron::weyl_sum_points(cfg, ks, N, m);
        CHECK(std::abs(closed - direct) < 1e-9);
      }
    }
  }
}

TEST_CASE("ladder offsets take their pinned values") {
  CHECK(dkron::beta_offset(3, 0, 2) == 0);
  CHECK(dkron::beta_offset(3, 1, 2) == 4);
  CHECK(dkron::beta_offset(3, 2, 2) == 4 + 8);
  CHECK(dkron::beta_offset(3, 3, 2) == 4 + 16);
  CHECK(dkron::beta_offset(3, 4, 2) == 4 + 32);
  CHECK(dkron::beta_offset(4, 1, 2) == 8);
  CHECK(dkron::beta_offset(3, 0, 3) == 0);
  CHECK(dkron::beta_offset(3, 1, 3) == 9);
  CHECK(dkron::beta_offset(3, 2, 3) == 9 + 27);
  CHECK(dkron::beta_offset(3, 3, 3) == 9 + 54);
  CHECK(dkron::beta_offset(3, 4, 3) == 9 + 81);
  CHECK(dkron::beta_offset(3, 5, 3) == 9 + 162);
}

TEST_CASE("anchored grid sums: closed cases match the defining sum everywhere") {
  for (int q : {2, 3}) {
    const int m = 4;
    const long long qm = dkron::pow_ll(q, m);
    std::vector<long long> anchors;
    // All anchors of length 3 and a sample of length 4.
    const long long b3 = dkron::pow_ll(q, 2) + dkron::pow_ll(q, 1);
    for (long long l = 0; l < q; ++l) anchors.push_back(b3 + l);
    const long long b4 = dkron::pow_ll(q, 3) + dkron::pow_ll(q, 2);
    anchors.push_back(b4);
    anchors.push_back(b4 + dkron::pow_ll(q, 2) - 1);
    for (long long kstar : anchors) {
      for (long long k = 0; k < qm; ++k) {
        Complex a = dkron::theta_closed(k, kstar, m, q);
        Complex b = dkron::theta_sum(k, kstar, m, q);
        CHECK(std::abs(a - b) < 1e-9);
      }
    }
  }
}

TEST_CASE("anchored sums decay along the offset ladder") {
  for (int q : {2, 3, 5}) {
    const int astar = 3;
    const long long kstar = dkron::pow_ll(q, astar - 1) + dkron::pow_ll(q, astar - 2);
    const long long reduced = kstar - dkron::pow_ll(q, astar - 1);
    const int u_max = 3 * q;
    // m large enough for every rung: top digit of the last rung sits at
    // astar + (u_max - 2) / (q - 1).
    const int m = astar + (u_max - 2) / (q - 1) + 2;
    const double qm = std::pow(static_cast<double>(q), m);
    for (int u = 0; u <= u_max; ++u) {
      const long long k = reduced + dkron::beta_offset(astar, u, q);
      const double mag = std::abs(dkron::theta_closed(k, kstar, m, q)) / qm;
      CHECK(mag <= 4.0 * std::pow(static_cast<double>(q),
                                  -(astar + static_cast<double>(u) / q)) + 1e-12);
    }
  }
}

TEST_CASE("spectral local discrepancy equals the counting route") {
  std::mt19937_64 rng(2718);
  for (int q : {2, 3}) {
    const int m = 2, s = 2;
    DigitalKroneckerConfig cfg = haar_config(rng, q, s, 2 * m + 6);
    const long long qm = dkron::pow_ll(q, m);
    auto rows = dkron::generate_block(cfg, 0, qm, m);
    PointSetView P{q, m, s, rows};
    dkron::WalshSpectralEvaluator eval(cfg, m);
    CHECK(eval.dimension() == s);
    CHECK(eval.grid() == qm);
    for (long long x0 = 0; x0 < qm; ++x0)
      for (long long x1 = 0; x1 < qm; ++x1)
        for (long long N : {1ll, qm / 2 + 1, qm}) {
          std::vector<long long> x{x0, x1};
          const double a = eval.evaluate(x, N);
          const double b = dkron::local_discrepancy_brute(P, x, N);
          CHECK(std::abs(a - b) < 1e-9);
          const double c = dkron::local_discrepancy_walsh(cfg, x, N, m);
          CHECK(std::abs(c - b) < 1e-9);
        }
  }
}

TEST_CASE("functional dual routes agree and certify a lower bound") {
  std::mt19937_64 rng(515);
  struct Scenario {
    int q, s, m;
  };
  for (Scenario sc : {Scenario{2, 1, 4}, Scenario{2, 2, 3}, Scenario{3, 1, 3}}) {
    DigitalKroneckerConfig cfg = haar_config(rng, sc.q, sc.s, 2 * sc.m + 8);
    std::vector<long long> kstars(static_cast<size_t>(sc.s),
                                  static_cast<long long>(sc.q) * sc.q + sc.q);
    const long long qm = dkron::pow_ll(sc.q, sc.m);
    for (long long N : {1ll, 3ll, qm / 2, qm}) {
      auto spec = dkron::lambda_spectral(cfg, kstars, sc.m, N, 2);
      auto direct = dkron::lambda_direct(cfg, kstars, sc.m, N);
      CHECK(std::abs(spec.total - direct) < 1e-8 * std::max(1.0, std::abs(direct)));
      CHECK(std::abs(spec.total - (spec.main_term + spec.middle + spec.tail)) < 1e-10);
    }
    auto cert = dkron::lambda_functional(cfg, kstars, sc.m, qm / 2 + 1, 2);
    CHECK(cert.rel_gap < 1e-9);
    CHECK(cert.grid_points == dkron::pow_ll(sc.q, sc.m * sc.s));
    const double observed =
        static_cast<double>(cert.observed.scaled) / static_cast<double>(cert.grid_points);
    CHECK(observed + 1e-12 >= cert.lower_bound);
  }
}

TEST_CASE("grid maximum over open corners never exceeds the star maximum") {
  std::mt19937_64 rng(123);
  const int q = 2, m = 3, s = 1;
  DigitalKroneckerConfig cfg = haar_config(rng, q, s, 16);
  auto rows = dkron::generate_block(cfg, 0, 6, m);
  PointSetView P{q, m, s, rows};
  auto open_max = dkron::max_local_discrepancy_open(P, 6);
  auto star = dkron::star_discrepancy_grid(P, 6);
  CHECK(open_max.scaled <= star.scaled);
  CHECK(std::llabs(dkron::local_discrepancy_scaled(P, open_max.argmax, 6)) ==
        open_max.scaled);
}

TEST_CASE("the weight-pairing diagnostic stays quiet on the validated offset") {
  DigitalKroneckerConfig cfg;
  cfg.q = 2;
  cfg.f.push_back(LaurentSeries(2, 1, {1}));
  auto ok = dkron::diagnose_spectral_mismatch(cfg, 3, 1, 8);
  CHECK_FALSE(ok.has_value());
}

TEST_CASE("the weight-pairing diagnostic localizes a planted off-by-one") {
  DigitalKroneckerConfig cfg;
  cfg.q = 2;
  cfg.f.push_back(LaurentSeries(2, 1, {1}));
  auto bad = dkron::diagnose_spectral_mismatch(cfg, 3, 0, 8);
  REQUIRE(bad.has_value());
  CHECK(bad->k == std::vector<long long>{1});
  CHECK(bad->N == 2);
  CHECK(std::abs(bad->closed_value - bad->direct_value) > 0.5);
}
