#include "dkron/laurent.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dkron {

LaurentSeries::LaurentSeries(int q, int lead_index, std::vector<int> digits, int precision_end)
    : q_(q), lead_(lead_index), digits_(std::move(digits)), precision_end_(precision_end) {
  require_prime_modulus(q_);
  if (precision_end_ != kExact) {
    if (precision_end_ - lead_ != static_cast<int>(digits_.size()))
      throw std::invalid_argument(
          "LaurentSeries: digits must cover [lead_index, precision_end)");
  }
  for (int& d : digits_) d = mod_reduce(d, q_);
  // Normalize: advance the lead past leading zeros (they are known zeros) and
  // drop trailing zeros (coeff() reports zeros inside the horizon anyway).
  size_t first = 0;
  while (first < digits_.size() && digits_[first] == 0) ++first;
  if (first == digits_.size()) {
    digits_.clear();
  } else {
    digits_.erase(digits_.begin(), digits_.begin() + static_cast<long>(first));
    lead_ += static_cast<int>(first);
    while (!digits_.empty() && digits_.back() == 0) digits_.pop_back();
  }
}

LaurentSeries LaurentSeries::zero(int q, int precision_end) {
  if (precision_end == kExact) return LaurentSeries(q, 0, {}, kExact);
  return LaurentSeries(q, precision_end, {}, precision_end);
}

int LaurentSeries::lead_index() const {
  if (known_zero()) throw std::invalid_argument("lead_index of a zero-prefix series");
  return lead_;
}

int LaurentSeries::coeff(int i) const {
  if (i >= precision_end_)
    throw InsufficientPrecisionError("coefficient at index " + std::to_string(i) +
                                     " is beyond known precision " +
                                     std::to_string(precision_end_));
  if (known_zero()) return 0;
  if (i < lead_) return 0;
  const size_t off = static_cast<size_t>(i - lead_);
  return off < digits_.size() ? digits_[off] : 0;
}

nlohmann::json LaurentSeries::to_json() const {
  nlohmann::json j;
  j["q"] = q_;
  if (known_zero()) {
    j["lead_index"] = exact() ? 1 : precision_end_;
    j["digits"] = nlohmann::json::array();
  } else {
    j["lead_index"] = lead_;
    std::vector<int> d(digits_);
    if (!exact()) d.resize(static_cast<size_t>(precision_end_ - lead_), 0);
    j["digits"] = d;
  }
  if (!exact()) j["precision"] = precision_end_;
  return j;
}

LaurentSeries LaurentSeries::from_json(const nlohmann::json& j) {
  const int q = j.at("q").get<int>();
  const int lead = j.at("lead_index").get<int>();
  std::vector<int> digits = j.at("digits").get<std::vector<int>>();
  if (j.contains("precision")) {
    const int prec = j.at("precision").get<int>();
    if (prec <= lead && !digits.empty())
      throw std::invalid_argument("series literal: precision below lead_index");
    digits.resize(static_cast<size_t>(std::max(0, prec - lead)), 0);
    return LaurentSeries(q, lead, std::move(digits), prec);
  }
  return LaurentSeries(q, lead, std::move(digits));
}

Valuation valuation(const LaurentSeries& g) {
  if (g.known_zero()) return {false, 0, g.precision_end()};
  return {true, -g.lead_index(), 0};
}

bool nu_at_most(const LaurentSeries& g, int m) {
  const Valuation v = valuation(g);
  if (v.finite) return v.nu <= -m;
  // All coefficients below certified_end vanish; the event "a_i = 0 for all
  // i < m" is decided iff the certificate reaches m.
  if (v.certified_end >= m) return true;
  throw InsufficientPrecisionError(
      "valuation threshold " + std::to_string(-m) + " undecidable: zero prefix certified only below " +
      std::to_string(v.certified_end));
}

LaurentSeries fractional_part(const LaurentSeries& g) {
  if (g.known_zero() && g.exact()) return g;
  if (!g.known_zero() && g.lead_index() >= 1) return g;
  if (g.exact()) {
    const int end = g.stored_end();
    std::vector<int> digits;
    digits.reserve(static_cast<size_t>(std::max(0, end - 1)));
    for (int i = 1; i < end; ++i) digits.push_back(g.coeff(i));
    return LaurentSeries(g.modulus(), 1, std::move(digits));
  }
  // Indices <= 0 are removed outright, so the result is certified at least
  // below index 1 even when the input horizon sits lower.
  const int end = std::max(1, g.precision_end());
  std::vector<int> digits;
  digits.reserve(static_cast<size_t>(end - 1));
  for (int i = 1; i < end; ++i) digits.push_back(g.coeff(i));
  return LaurentSeries(g.modulus(), 1, std::move(digits), end);
}

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("add: modulus mismatch");
  const int q = a.modulus();
  const int prec = std::min(a.precision_end(), b.precision_end());
  if (prec == LaurentSeries::kExact) {
    // Both exact: span the union of stored ranges.
    if (a.known_zero()) return b;
    if (b.known_zero()) return a;
    const int lo = std::min(a.lead_index(), b.lead_index());
    const int hi = std::max(a.stored_end(), b.stored_end());
    std::vector<int> digits;
    digits.reserve(static_cast<size_t>(hi - lo));
    for (int i = lo; i < hi; ++i) digits.push_back(mod_reduce(a.coeff(i) + b.coeff(i), q));
    return LaurentSeries(q, lo, std::move(digits));
  }
  int lo;
  if (a.known_zero() && b.known_zero()) return LaurentSeries::zero(q, prec);
  if (a.known_zero()) lo = b.lead_index();
  else if (b.known_zero()) lo = a.lead_index();
  else lo = std::min(a.lead_index(), b.lead_index());
  if (lo >= prec) return LaurentSeries::zero(q, prec);
  std::vector<int> digits;
  digits.reserve(static_cast<size_t>(prec - lo));
  for (int i = lo; i < prec; ++i) digits.push_back(mod_reduce(a.coeff(i) + b.coeff(i), q));
  return LaurentSeries(q, lo, std::move(digits), prec);
}

LaurentSeries poly_mul_series(const Polynomial& k, const LaurentSeries& g) {
  if (k.modulus() != g.modulus())
    throw std::invalid_argument("poly_mul_series: modulus mismatch");
  const int q = g.modulus();
  if (k.is_zero()) return LaurentSeries::zero(q);  // exact annihilation
  const int d = k.degree();
  if (g.known_zero()) {
    if (g.exact()) return LaurentSeries::zero(q);
    return LaurentSeries::zero(q, g.precision_end() - d);
  }
  // (k * g) coefficient at index i is sum_{e=0}^{d} k_e * a_{i+e}; it is known
  // exactly when i + d < precision_end(g).
  const int out_lead = g.lead_index() - d;
  if (g.exact()) {
    const int hi = g.stored_end();
    std::vector<int> digits;
    digits.reserve(static_cast<size_t>(hi - out_lead));
    for (int i = out_lead; i < hi; ++i) {
      int acc = 0;
      for (int e = 0; e <= d; ++e) acc = mod_reduce(acc + k.coeff(e) * g.coeff(i + e), q);
      digits.push_back(acc);
    }
    return LaurentSeries(q, out_lead, std::move(digits));
  }
  const int out_prec = g.precision_end() - d;
  if (out_prec <= out_lead) return LaurentSeries::zero(q, out_prec);
  std::vector<int> digits;
  digits.reserve(static_cast<size_t>(out_prec - out_lead));
  for (int i = out_lead; i < out_prec; ++i) {
    int acc = 0;
    for (int e = 0; e <= d; ++e) acc = mod_reduce(acc + k.coeff(e) * g.coeff(i + e), q);
    digits.push_back(acc);
  }
  return LaurentSeries(q, out_lead, std::move(digits), out_prec);
}

LaurentSeries linear_combination(std::span<const Polynomial> ks,
                                 std::span<const LaurentSeries> gs) {
  if (ks.empty() || ks.size() != gs.size())
    throw std::invalid_argument("linear_combination: mismatched or empty tuples");
  LaurentSeries acc = poly_mul_series(ks[0], gs[0]);
  for (size_t j = 1; j < ks.size(); ++j) acc = add(acc, poly_mul_series(ks[j], gs[j]));
  return acc;
}

double to_unit_interval(const LaurentSeries& g, int m) {
  if (m < 0) throw std::invalid_argument("to_unit_interval: negative digit count");
  const LaurentSeries f = fractional_part(g);
  double v = 0.0;
  const double invq = 1.0 / g.modulus();
  double scale = 1.0;
  for (int k = 1; k <= m; ++k) {
    scale *= invq;
    v += f.coeff(k) * scale;
  }
  return v;
}

int uniform_digit(std::mt19937_64& rng, int q) {
  const std::uint64_t span = (~std::uint64_t{0} / q) * q;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= span);
  return static_cast<int>(v % q);
}

LaurentSeries sample_haar(int q, int precision, std::mt19937_64& rng) {
  require_prime_modulus(q);
  if (precision < 2) throw std::invalid_argument("sample_haar: precision must be >= 2");
  std::vector<int> digits(static_cast<size_t>(precision - 1));
  for (int& d : digits) d = uniform_digit(rng, q);
  return LaurentSeries(q, 1, std::move(digits), precision);
}

}  // namespace dkron
