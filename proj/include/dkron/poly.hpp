#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dkron/field.hpp"

namespace dkron {

// Dense polynomial over Z_q, coefficients stored lowest degree first and kept
// reduced mod q with no trailing zeros. The zero polynomial has an empty
// coefficient vector and a distinguished degree marker.
class Polynomial {
 public:
  static constexpr int kNegInfinityDegree = std::numeric_limits<int>::min();

  Polynomial(int modulus, std::vector<int> coeffs);

  static Polynomial zero(int q) { return Polynomial(q, {}); }
  static Polynomial one(int q) { return Polynomial(q, {1}); }
  static Polynomial x(int q) { return Polynomial(q, {0, 1}); }
  static Polynomial constant(int q, int c) { return Polynomial(q, {c}); }

  // Base-q digit correspondence between nonnegative integers and polynomials:
  // n = n_0 + n_1 q + ... maps to n_0 + n_1 x + ....
  static Polynomial from_index(std::uint64_t n, int q);
  std::uint64_t to_index() const;  // throws on overflow past 64 bits

  int modulus() const { return q_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kNegInfinityDegree : static_cast<int>(c_.size()) - 1; }
  int coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
  }
  int leading_coeff() const;
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const std::vector<int>& coeffs() const { return c_; }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;

  // Quotient/remainder with deg(rem) < deg(divisor); divisor must be nonzero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  Polynomial operator%(const Polynomial& o) const { return divmod(*this, o).second; }
  Polynomial operator/(const Polynomial& o) const { return divmod(*this, o).first; }
  bool divides(const Polynomial& a) const { return (a % *this).is_zero(); }

  // Monic gcd; gcd(0, 0) is undefined and throws.
  static Polynomial gcd(Polynomial a, Polynomial b);
  Polynomial monic() const;

  int eval(int x) const;  // value in Z_q

  bool operator==(const Polynomial& o) const { return q_ == o.q_ && c_ == o.c_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }
  // Ordering by (degree, coefficients high-to-low); used for canonical sets.
  bool operator<(const Polynomial& o) const;

  std::string str() const;

 private:
  void trim();
  void check_same_field(const Polynomial& o) const;

  int q_;
  std::vector<int> c_;
};

}  // namespace dkron
