#include "dkron/walsh.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "dkron/field.hpp"

namespace dkron {

std::vector<int> base_q_digits(long long n, int q) {
  if (n < 0) throw std::invalid_argument("base_q_digits: negative argument");
  require_prime_modulus(q);
  std::vector<int> digits;
  while (n > 0) {
    digits.push_back(static_cast<int>(n % q));
    n /= q;
  }
  return digits;
}

namespace {

const std::vector<std::complex<double>>& omega_table(int q) {
  static std::unordered_map<int, std::vector<std::complex<double>>> cache;
  auto it = cache.find(q);
  if (it == cache.end()) {
    require_prime_modulus(q);
    std::vector<std::complex<double>> table(static_cast<size_t>(q));
    for (int e = 0; e < q; ++e)
      table[static_cast<size_t>(e)] =
          std::polar(1.0, 2.0 * std::numbers::pi * e / q);
    it = cache.emplace(q, std::move(table)).first;
  }
  return it->second;
}

}  // namespace

std::complex<double> root_of_unity(int q) { return omega_table(q)[1 % q]; }

std::complex<double> omega_power(int q, long long e) {
  long long r = e % q;
  if (r < 0) r += q;
  return omega_table(q)[static_cast<size_t>(r)];
}

int wal_exponent(long long j, const LaurentSeries& g) {
  if (j < 0) throw std::invalid_argument("wal_exponent: negative index");
  const int q = g.modulus();
  int e = 0;
  int i = 0;
  for (long long rest = j; rest > 0; rest /= q, ++i) {
    const int ji = static_cast<int>(rest % q);
    if (ji != 0) e = mod_reduce(e + ji * g.coeff(i + 1), q);
  }
  return e;
}

int wal_exponent_grid(long long j, long long y, int m, int q) {
  if (j < 0) throw std::invalid_argument("wal_exponent_grid: negative index");
  require_prime_modulus(q);
  long long grid = 1;
  for (int i = 0; i < m; ++i) grid *= q;
  if (y < 0 || y >= grid) throw std::invalid_argument("wal_exponent_grid: point off the grid");
  int e = 0;
  int i = 0;
  for (long long rest = j; rest > 0 && i < m; rest /= q, ++i) {
    const int ji = static_cast<int>(rest % q);
    if (ji == 0) continue;
    long long p = 1;
    for (int t = 0; t < m - 1 - i; ++t) p *= q;
    const int xi = static_cast<int>((y / p) % q);
    e = mod_reduce(e + ji * xi, q);
  }
  return e;
}

std::complex<double> wal(long long j, const LaurentSeries& g) {
  return omega_power(g.modulus(), wal_exponent(j, g));
}

std::complex<double> wal_grid(long long j, long long y, int m, int q) {
  return omega_power(q, wal_exponent_grid(j, y, m, q));
}

RootOfUnitySum::RootOfUnitySum(int q) : q_(q), counts_(static_cast<size_t>(q), 0) {
  require_prime_modulus(q);
}

void RootOfUnitySum::add(long long exponent, long long multiplicity) {
  long long r = exponent % q_;
  if (r < 0) r += q_;
  counts_[static_cast<size_t>(r)] += multiplicity;
}

long long RootOfUnitySum::total() const {
  long long t = 0;
  for (long long c : counts_) t += c;
  return t;
}

bool RootOfUnitySum::exactly(long long v) const {
  for (int e = 2; e < q_; ++e)
    if (counts_[static_cast<size_t>(e)] != counts_[1]) return false;
  return counts_[0] - counts_[1] == v;
}

std::complex<double> RootOfUnitySum::value() const {
  std::complex<double> s = 0.0;
  for (int e = 0; e < q_; ++e)
    s += static_cast<double>(counts_[static_cast<size_t>(e)]) * omega_power(q_, e);
  return s;
}

RootOfUnitySum orthonormality_sum(long long j, long long k, int m, int q) {
  RootOfUnitySum sum(q);
  long long grid = 1;
  for (int i = 0; i < m; ++i) grid *= q;
  for (long long y = 0; y < grid; ++y)
    sum.add(wal_exponent_grid(j, y, m, q) - wal_exponent_grid(k, y, m, q));
  return sum;
}

WalshIndexParts decompose_index(long long j, int q) {
  if (j < 1) throw std::invalid_argument("decompose_index: index must be positive");
  const std::vector<int> digits = base_q_digits(j, q);
  WalshIndexParts parts;
  parts.a = static_cast<int>(digits.size());
  parts.kappa = digits.back();
  long long top = 1;
  for (int i = 0; i < parts.a - 1; ++i) top *= q;
  parts.rest = j - static_cast<long long>(parts.kappa) * top;
  return parts;
}

KStarIndex parse_k_star(long long k, int q) {
  KStarIndex out;
  if (k < 1) return out;
  const std::vector<int> digits = base_q_digits(k, q);
  const int a = static_cast<int>(digits.size());
  if (a < 3) return out;
  if (digits[static_cast<size_t>(a - 1)] != 1 || digits[static_cast<size_t>(a - 2)] != 1)
    return out;
  long long top = 1;
  for (int i = 0; i < a - 1; ++i) top *= q;
  out.valid = true;
  out.a = a;
  out.reduced = k - top;
  out.l = out.reduced - top / q;
  return out;
}

}  // namespace dkron
