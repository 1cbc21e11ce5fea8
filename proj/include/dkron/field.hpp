#pragma once

#include <stdexcept>
#include <string>

namespace dkron {

// The digit fields used throughout are Z_q for a prime modulus q. Moduli are
// small (single digits in practice), so a deterministic trial division check
// is all that is needed.
inline bool is_prime_modulus(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

inline void require_prime_modulus(int q) {
  if (!is_prime_modulus(q))
    throw std::invalid_argument("modulus " + std::to_string(q) + " is not prime");
}

inline int mod_reduce(long long v, int q) {
  long long r = v % q;
  return static_cast<int>(r < 0 ? r + q : r);
}

// base^exp for small nonnegative powers, guarded against overflow.
inline long long pow_ll(long long base, int exp) {
  if (exp < 0) throw std::invalid_argument("pow_ll: negative exponent");
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > (1ll << 62) / (base < 0 ? -base : base))
      throw std::overflow_error("pow_ll: result exceeds 2^62");
    r *= base;
  }
  return r;
}

// Inverse in Z_q via extended Euclid; a must be nonzero mod q.
inline int mod_inverse(int a, int q) {
  a = mod_reduce(a, q);
  if (a == 0) throw std::invalid_argument("mod_inverse: zero has no inverse");
  int t = 0, new_t = 1, r = q, new_r = a;
  while (new_r != 0) {
    int quot = r / new_r;
    int tmp = t - quot * new_t; t = new_t; new_t = tmp;
    tmp = r - quot * new_r; r = new_r; new_r = tmp;
  }
  return t < 0 ? t + q : t;
}

// A residue tagged with its modulus. Mixed-modulus arithmetic is a bug, so it
// throws rather than coercing.
struct FieldElement {
  int value;
  int modulus;

  FieldElement(int v, int q) : value(mod_reduce(v, q)), modulus(q) {
    require_prime_modulus(q);
  }

  FieldElement operator+(const FieldElement& o) const {
    check(o); return FieldElement(value + o.value, modulus);
  }
  FieldElement operator-(const FieldElement& o) const {
    check(o); return FieldElement(value - o.value, modulus);
  }
  FieldElement operator*(const FieldElement& o) const {
    check(o); return FieldElement(value * o.value, modulus);
  }
  FieldElement inverse() const { return FieldElement(mod_inverse(value, modulus), modulus); }
  FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
  FieldElement operator-() const { return FieldElement(-value, modulus); }

  bool operator==(const FieldElement& o) const {
    return value == o.value && modulus == o.modulus;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  void check(const FieldElement& o) const {
    if (modulus != o.modulus)
      throw std::invalid_argument("FieldElement: modulus mismatch (" +
                                  std::to_string(modulus) + " vs " +
                                  std::to_string(o.modulus) + ")");
  }
};

}  // namespace dkron
