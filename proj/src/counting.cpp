#include "dkron/counting.hpp"

#include <algorithm>
#include <stdexcept>

namespace dkron {

MonicEnumerator::MonicEnumerator(int degree, int q, std::optional<Polynomial> coprime_to)
    : degree_(degree), q_(q), offset_(0), coprime_to_(std::move(coprime_to)) {
  require_prime_modulus(q);
  if (degree < 0) throw std::invalid_argument("MonicEnumerator: negative degree");
  count_ = 1;
  for (int i = 0; i < degree; ++i) count_ *= q;
  base_ = count_;  // monic of degree a are indices q^a + offset, offset < q^a
  if (coprime_to_ && coprime_to_->is_zero())
    throw std::invalid_argument("MonicEnumerator: coprime filter against zero");
}

std::optional<Polynomial> MonicEnumerator::next() {
  while (offset_ < count_) {
    Polynomial cand = Polynomial::from_index(base_ + offset_, q_);
    ++offset_;
    if (coprime_to_ && Polynomial::gcd(cand, *coprime_to_).degree() != 0) continue;
    return cand;
  }
  return std::nullopt;
}

std::vector<Polynomial> monic_polynomials(int degree, int q) {
  MonicEnumerator en(degree, q);
  std::vector<Polynomial> out;
  while (auto p = en.next()) out.push_back(*p);
  return out;
}

std::vector<Polynomial> monic_coprime(int degree, int q, const Polynomial& p) {
  MonicEnumerator en(degree, q, p);
  std::vector<Polynomial> out;
  while (auto f = en.next()) out.push_back(*f);
  return out;
}

bool is_irreducible(const Polynomial& f) {
  if (f.degree() < 1) return false;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    MonicEnumerator en(d, f.modulus());
    while (auto g = en.next())
      if (g->divides(f)) return false;
  }
  return true;
}

std::vector<std::pair<Polynomial, int>> factorize(const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("factorize: zero polynomial");
  std::vector<std::pair<Polynomial, int>> factors;
  Polynomial rem = f.degree() >= 1 ? f.monic() : Polynomial::one(f.modulus());
  // Trial division by monics of increasing degree removes smaller factors
  // first, so every divisor found here is irreducible.
  for (int d = 1; rem.degree() >= 1 && 2 * d <= rem.degree(); ++d) {
    MonicEnumerator en(d, f.modulus());
    while (auto g = en.next()) {
      if (rem.degree() < 2 * d) break;
      int mult = 0;
      while (g->divides(rem)) {
        rem = rem / *g;
        ++mult;
      }
      if (mult > 0) factors.emplace_back(*g, mult);
    }
  }
  if (rem.degree() >= 1) factors.emplace_back(rem, 1);
  std::sort(factors.begin(), factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return factors;
}

Polynomial radical(const Polynomial& f) {
  Polynomial r = Polynomial::one(f.modulus());
  for (const auto& [p, mult] : factorize(f)) r = r * p;
  return r;
}

int moebius_q(const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("moebius_q: zero polynomial");
  if (f.degree() == 0) return 1;
  auto factors = factorize(f);
  int rho = 0;
  for (const auto& [p, mult] : factors) {
    if (mult >= 2) return 0;
    ++rho;
  }
  return (rho % 2 == 0) ? 1 : -1;
}

namespace {

// All monic squarefree divisors of rad(p): subsets of its irreducible factors.
std::vector<Polynomial> squarefree_divisors(const Polynomial& p) {
  auto factors = factorize(p);
  std::vector<Polynomial> divs = {Polynomial::one(p.modulus())};
  for (const auto& [irr, mult] : factors) {
    size_t n = divs.size();
    for (size_t i = 0; i < n; ++i) divs.push_back(divs[i] * irr);
  }
  return divs;
}

}  // namespace

Rational coprime_count_formula(int a, const Polynomial& p) {
  if (a < 0) throw std::invalid_argument("coprime_count_formula: negative degree");
  if (p.is_zero()) throw std::invalid_argument("coprime_count_formula: p = 0");
  Rational total(0);
  for (const Polynomial& l : squarefree_divisors(p)) {
    if (l.degree() > a) continue;
    Rational term = Rational::pow(p.modulus(), a - l.degree());
    total += (moebius_q(l) >= 0) ? term : -term;
  }
  return total;
}

Rational coprime_density(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("coprime_density: p = 0");
  Rational a(1);
  for (const auto& [irr, mult] : factorize(p))
    a *= Rational(1) - Rational::pow(p.modulus(), -irr.degree());
  return a;
}

Rational partial_sum_b(int cutoff, const Polynomial& p, int s) {
  if (cutoff < 0) throw std::invalid_argument("partial_sum_b: negative cutoff");
  if (s < 1) throw std::invalid_argument("partial_sum_b: s must be >= 1");
  if (p.is_zero()) throw std::invalid_argument("partial_sum_b: p = 0");
  const int q = p.modulus();
  Rational total(0);
  for (int d = 0; d <= cutoff; ++d) {
    // All nonzero polynomials of degree d are the q-1 unit multiples of the
    // monic ones, and mu_q ignores units.
    long long monic_sum = 0;
    MonicEnumerator en(d, q, p);
    while (auto l = en.next()) monic_sum += moebius_q(*l);
    total += Rational(monic_sum * (q - 1)) * Rational::pow(q, -s * d);
  }
  return total;
}

}  // namespace dkron
