#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include <json.hpp>

#include "dkron/errors.hpp"
#include "dkron/poly.hpp"

namespace dkron {

// Truncated formal Laurent series in x^{-1} over Z_q:
//
//   g = sum_{k >= lead_index} a_k x^{-k}
//
// Coefficients are known exactly for every index below precision_end and
// unknown beyond it; reading past the horizon throws. A series built from an
// exact finite expansion carries precision_end == kExact, meaning all
// unlisted coefficients are genuinely zero. Leading zeros are normalized
// away, so the first stored digit of a nonzero series is nonzero.
class LaurentSeries {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max() / 2;

  // `digits` lists coefficients for indices lead_index, lead_index+1, ....
  // With finite precision the digits must cover [lead_index, precision_end).
  LaurentSeries(int q, int lead_index, std::vector<int> digits, int precision_end = kExact);

  static LaurentSeries zero(int q, int precision_end = kExact);

  int modulus() const { return q_; }
  int precision_end() const { return precision_end_; }
  bool exact() const { return precision_end_ == kExact; }

  // True when no nonzero coefficient exists below precision_end.
  bool known_zero() const { return digits_.empty(); }
  // Index of the first nonzero coefficient; undefined (throws) if known_zero.
  int lead_index() const;
  // One past the highest nonzero coefficient's index (trailing zeros are
  // trimmed on construction). Meaningful only when !known_zero().
  int stored_end() const { return lead_ + static_cast<int>(digits_.size()); }

  // Coefficient a_i; zero below the lead, throws at or past precision_end.
  int coeff(int i) const;

  nlohmann::json to_json() const;
  // Accepts {"q":..,"digits":[..],"lead_index":..} with optional "precision";
  // without "precision" the listed digits are the entire series.
  static LaurentSeries from_json(const nlohmann::json& j);

 private:
  int q_;
  int lead_;             // index of digits_[0]; meaningful only when !known_zero()
  std::vector<int> digits_;
  int precision_end_;
};

// Valuation nu(g) = -(first nonzero index). When every known coefficient
// vanishes the result reports how far the zero prefix is certified instead;
// certified_end == LaurentSeries::kExact identifies the true zero series
// (nu = -infinity).
struct Valuation {
  bool finite;
  int nu;             // valid when finite
  int certified_end;  // valid when !finite: a_i = 0 for all i < certified_end
};

Valuation valuation(const LaurentSeries& g);

// Decides nu(g) <= -m; throws InsufficientPrecisionError when the known
// prefix is too short to certify either answer.
bool nu_at_most(const LaurentSeries& g, int m);

// Drops all terms with index <= 0. Precision is preserved.
LaurentSeries fractional_part(const LaurentSeries& g);

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b);

// k(x) * g; the product is known only up to precision_end(g) - deg k.
LaurentSeries poly_mul_series(const Polynomial& k, const LaurentSeries& g);

// sum_j k_j * g_j with per-term precision propagation; tuples must be
// nonempty and of equal length.
LaurentSeries linear_combination(std::span<const Polynomial> ks,
                                 std::span<const LaurentSeries> gs);

// Evaluation of the first m fractional digits at x = q:
// sum_{k=1}^m a_k q^{-k}. Requires these digits to be known.
double to_unit_interval(const LaurentSeries& g, int m);

// Draws a_1, ..., a_{precision-1} independently and uniformly from Z_q;
// the result is a fractional series known below `precision`.
LaurentSeries sample_haar(int q, int precision, std::mt19937_64& rng);

// Uniform digit in [0, q) by rejection; stable across platforms, unlike
// std::uniform_int_distribution.
int uniform_digit(std::mt19937_64& rng, int q);

}  // namespace dkron
