#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dkron/poly.hpp"
#include "dkron/rational.hpp"

namespace dkron {

// Streams the q^a monic polynomials of exact degree a over Z_q in ascending
// index order, optionally skipping those sharing a factor with `coprime_to`.
class MonicEnumerator {
 public:
  MonicEnumerator(int degree, int q, std::optional<Polynomial> coprime_to = std::nullopt);
  std::optional<Polynomial> next();

 private:
  int degree_, q_;
  std::uint64_t offset_, count_, base_;
  std::optional<Polynomial> coprime_to_;
};

std::vector<Polynomial> monic_polynomials(int degree, int q);
std::vector<Polynomial> monic_coprime(int degree, int q, const Polynomial& p);

bool is_irreducible(const Polynomial& f);

// Monic irreducible factors with multiplicities, sorted; the unit is dropped.
std::vector<std::pair<Polynomial, int>> factorize(const Polynomial& f);

// Product of the distinct monic irreducible factors (the unit for constants).
Polynomial radical(const Polynomial& f);

// Polynomial Moebius function: 1 on units, 0 when a square divides, otherwise
// (-1)^(number of distinct irreducible factors); unit multiples are equal.
// Undefined (throws) on zero.
int moebius_q(const Polynomial& f);

// Exact count of monic degree-a polynomials coprime to p, as the truncated
// divisor sum q^a * sum_{monic l | rad(p), deg l <= a} mu_q(l) q^{-deg l}.
// For a >= deg rad(p) this collapses to the product form q^a * A(p).
Rational coprime_count_formula(int a, const Polynomial& p);

// A(p) = prod over distinct irreducible factors p_j of (1 - q^{-deg p_j}).
Rational coprime_density(const Polynomial& p);

// Exact partial sum over all nonzero l in Z_q[x] (every unit multiple counted
// separately) with deg l <= cutoff and gcd(l, p) = 1 of mu_q(l) / q^{s deg l}.
Rational partial_sum_b(int cutoff, const Polynomial& p, int s);

}  // namespace dkron
