#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "dkron/laurent.hpp"

namespace dkron {

// q-adic digits of n >= 0, lowest-first; empty for n = 0.
std::vector<int> base_q_digits(long long n, int q);

// exp(2*pi*i/q).
std::complex<double> root_of_unity(int q);

// omega_q^e for any integer e (reduced mod q); powers are cached per q.
std::complex<double> omega_power(int q, long long e);

// Exponent of the j-th Walsh function at a series argument: digit i of j
// (lowest-first) pairs with the fractional coefficient at index i + 1, so
//
//   wal_j(g) = omega_q ^ sum_i j_i * a_{i+1}.
//
// Only coefficients under nonzero digits of j are read; an unknown required
// coefficient raises InsufficientPrecisionError.
int wal_exponent(long long j, const LaurentSeries& g);

// Exponent at the grid point y / q^m with y in [0, q^m); digits of the point
// beyond the m-th are zero, so every index j is valid here.
int wal_exponent_grid(long long j, long long y, int m, int q);

std::complex<double> wal(long long j, const LaurentSeries& g);
std::complex<double> wal_grid(long long j, long long y, int m, int q);

// Sum of q-th roots of unity tracked by exponent class. Because the q-th
// cyclotomic polynomial for prime q is 1 + x + ... + x^{q-1}, the sum
// sum_e c_e omega^e equals an integer v precisely when c_1 = ... = c_{q-1}
// and c_0 = v + c_1; this lets tests assert exact values with no floating
// point at all.
class RootOfUnitySum {
 public:
  explicit RootOfUnitySum(int q);

  void add(long long exponent, long long multiplicity = 1);
  long long total() const;

  bool exactly_zero() const { return exactly(0); }
  bool exactly(long long v) const;

  std::complex<double> value() const;

 private:
  int q_;
  std::vector<long long> counts_;
};

// sum over the full grid {y / q^m} of wal_j * conj(wal_k), unnormalized:
// equals q^m exactly when j = k (mod q^m) and 0 otherwise.
RootOfUnitySum orthonormality_sum(long long j, long long k, int m, int q);

// j = kappa * q^{a-1} + rest with kappa in [1, q-1]; a is the digit length.
struct WalshIndexParts {
  int a;
  int kappa;
  long long rest;
};

WalshIndexParts decompose_index(long long j, int q);  // requires j >= 1

// Recognizes indices of the shape q^{a-1} + q^{a-2} + l with 0 <= l < q^{a-2}
// and a >= 3 (both top digits equal to one). `reduced` drops the very top
// digit: q^{a-2} + l.
struct KStarIndex {
  bool valid = false;
  int a = 0;
  long long l = 0;
  long long reduced = 0;
};

KStarIndex parse_k_star(long long k, int q);

}  // namespace dkron
