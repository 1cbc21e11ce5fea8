#include "dkron/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace dkron {

Polynomial::Polynomial(int modulus, std::vector<int> coeffs) : q_(modulus), c_(std::move(coeffs)) {
  require_prime_modulus(q_);
  for (int& c : c_) c = mod_reduce(c, q_);
  trim();
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void Polynomial::check_same_field(const Polynomial& o) const {
  if (q_ != o.q_) throw std::invalid_argument("Polynomial: modulus mismatch");
}

Polynomial Polynomial::from_index(std::uint64_t n, int q) {
  require_prime_modulus(q);
  std::vector<int> c;
  while (n != 0) {
    c.push_back(static_cast<int>(n % q));
    n /= q;
  }
  return Polynomial(q, std::move(c));
}

std::uint64_t Polynomial::to_index() const {
  std::uint64_t v = 0;
  for (int i = degree(); i >= 0; --i) {
    if (v > (std::numeric_limits<std::uint64_t>::max() - c_[i]) / q_)
      throw std::overflow_error("Polynomial::to_index: exceeds 64 bits");
    v = v * q_ + c_[i];
  }
  return v;
}

int Polynomial::leading_coeff() const {
  if (c_.empty()) throw std::invalid_argument("leading_coeff of zero polynomial");
  return c_.back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same_field(o);
  std::vector<int> c(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = mod_reduce(coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i)), q_);
  return Polynomial(q_, std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_same_field(o);
  std::vector<int> c(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = mod_reduce(coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i)), q_);
  return Polynomial(q_, std::move(c));
}

Polynomial Polynomial::operator-() const {
  std::vector<int> c(c_);
  for (int& v : c) v = mod_reduce(-v, q_);
  return Polynomial(q_, std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same_field(o);
  if (is_zero() || o.is_zero()) return zero(q_);
  std::vector<int> c(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j)
      c[i + j] = mod_reduce(c[i + j] + c_[i] * o.c_[j], q_);
  return Polynomial(q_, std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  a.check_same_field(b);
  if (b.is_zero()) throw std::invalid_argument("Polynomial division by zero");
  const int q = a.q_;
  if (a.degree() < b.degree()) return {zero(q), a};
  std::vector<int> rem = a.c_;
  std::vector<int> quot(a.degree() - b.degree() + 1, 0);
  const int inv_lead = mod_inverse(b.leading_coeff(), q);
  for (int i = a.degree(); i >= b.degree(); --i) {
    int cur = rem[i];
    if (cur == 0) continue;
    int factor = mod_reduce(cur * inv_lead, q);
    quot[i - b.degree()] = factor;
    for (int j = 0; j <= b.degree(); ++j)
      rem[i - b.degree() + j] = mod_reduce(rem[i - b.degree() + j] - factor * b.c_[j], q);
  }
  return {Polynomial(q, std::move(quot)), Polynomial(q, std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  a.check_same_field(b);
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    Polynomial r = a % b;
    a = b;
    b = r;
  }
  return a.monic();
}

Polynomial Polynomial::monic() const {
  if (is_zero()) throw std::invalid_argument("monic() of zero polynomial");
  if (is_monic()) return *this;
  const int inv = mod_inverse(leading_coeff(), q_);
  std::vector<int> c(c_);
  for (int& v : c) v = mod_reduce(v * inv, q_);
  return Polynomial(q_, std::move(c));
}

int Polynomial::eval(int x) const {
  int v = 0;
  for (int i = degree(); i >= 0; --i) v = mod_reduce(v * x + c_[i], q_);
  return v;
}

bool Polynomial::operator<(const Polynomial& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
  for (size_t i = c_.size(); i-- > 0;)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c_[i]);
    } else {
      if (c_[i] != 1) out += std::to_string(c_[i]);
      out += (i == 1) ? "x" : "x^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace dkron
