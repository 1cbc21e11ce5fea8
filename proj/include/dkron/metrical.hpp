#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dkron/counting.hpp"
#include "dkron/laurent.hpp"
#include "dkron/poly.hpp"
#include "dkron/rational.hpp"

namespace dkron {

// The valuation-threshold event nu({ sum_j k_j f_j }) <= -m over a random
// tuple of direction series: it holds precisely when the fractional
// coefficients 1 .. m-1 of the combination all vanish.
struct EventSpec {
  std::vector<Polynomial> k;
  int m = 1;

  int modulus() const;
  // Prefix length per active coordinate needed to decide the event:
  // m - 1 + max deg k_j over nonzero k_j.
  int prefix_len() const;
  void validate() const;
};

struct MeasureEstimate {
  Rational value;          // exact mode only
  double estimate = 0.0;   // both modes
  bool exact = false;
  long long samples = 0;   // MC draws, or enumerated prefixes in exact mode
  double stderr_value = 0.0;
  int prefix_len = 0;
};

// Exhaustive enumeration of the q^{s_active * L} coefficient prefixes that
// the event depends on; the returned fraction is an exact rational.
MeasureEstimate measure_event_exact(const EventSpec& spec, long long budget = 1ll << 24);

// Monte Carlo estimate drawing the series tuple from the digit-uniform
// (Haar) sampler and evaluating the event through the valuation decision.
MeasureEstimate measure_event_mc(const EventSpec& spec, long long samples,
                                 std::mt19937_64& rng);

// Exact joint measure of two events over the same series tuple.
MeasureEstimate measure_joint_exact(const EventSpec& a, const EventSpec& b,
                                    long long budget = 1ll << 24);

struct PairProductReport {
  MeasureEstimate joint;
  MeasureEstimate marginal_a;
  MeasureEstimate marginal_b;
  Rational marginal_product;
  bool product_form = false;  // joint == marginal_a * marginal_b exactly
};

// One enumeration pass counting both events and their intersection.
PairProductReport measure_pair_product(const EventSpec& a, const EventSpec& b,
                                       long long budget = 1ll << 24);

// Scale threshold attached to a degree tuple (r_1, ..., r_s): F solves
// q^F = q^{sum r} (sum r)^s ln(sum r) with the natural logarithm. Requires
// sum r >= 2 (below that the right side degenerates).
struct Threshold {
  double F = 0.0;
  int m = 0;        // floor(F): digit resolution handed to the functional
  int event_m = 0;  // ceil(F): integer cutoff equivalent to nu <= -F
  long long N = 0;  // q^{m-1}
};

Threshold f_threshold(const std::vector<int>& degrees, int q);

// x * prod_{j=1}^{J} prod_{kappa=1}^{q-1} (1 + kappa x^j).
Polynomial p_filter_polynomial(int q, int J);

// The admissible tuple family: componentwise monic and coprime to the filter
// polynomial, not the all-ones tuple, and (for s >= 2) with tuple gcd 1; a
// single polynomial carries no joint-gcd constraint.
struct PSetFilter {
  int q = 2;
  int s = 1;
  int J = 2;
  int max_total_degree = 8;

  Polynomial p() const { return p_filter_polynomial(q, J); }
};

// Tuples in ascending total degree, then composition order, then coordinate
// index order; deterministic.
void enumerate_P(const PSetFilter& filter,
                 const std::function<void(const std::vector<Polynomial>&)>& yield);
std::vector<std::vector<Polynomial>> enumerate_P_vec(const PSetFilter& filter);

// Count of P tuples of exact total degree d through Moebius inversion over
// the tuple gcd; independent of the enumeration order (cross-check).
long long p_tuple_count_moebius(const PSetFilter& filter, int d);

struct DivergenceReport {
  double T_R = 0.0;              // sum over P tuples, total degree in [2, R]
  double analytic_chain = 0.0;   // comparison lower bound, same range
  std::vector<long long> per_degree_counts;  // index = total degree, 0..R
  std::vector<double> partial_sums;          // T_d for d = 0..R
  long long tuples = 0;
};

// Partial sums of sum q^{-F(deg tuple)} over the tuple family. Total degrees
// 0 and 1 fall outside the threshold's domain and are excluded. The analytic
// chain is (1/2^{rs}) * ((q-1)/4 for s >= 2) * (1/(s-1)!) * sum 1/(d ln d)
// with r = number of distinct irreducible factors of the filter polynomial.
DivergenceReport divergence_partial_sum(const PSetFilter& filter, int R);

struct WitnessCandidate {
  std::vector<Polynomial> ktilde;
  std::vector<int> degrees;
  double F = 0.0;
  int m = 0;        // floor(F)
  long long N = 0;  // q^{m-1}
  // Anchor indices q^{deg+1} + index(ktilde_j) for the test functional.
  std::vector<long long> kstars;
};

struct WitnessScan {
  std::vector<WitnessCandidate> witnesses;
  long long tuples_scanned = 0;
  long long deep_hits = 0;
  double poisson_mean = 0.0;  // sum of q^{1 - ceil(F)} over scanned tuples
};

// Scans the tuple family (restricted to tuples the functional can consume:
// every component of degree >= 1 and floor(F) >= max deg + 2) against a fixed
// series tuple. A tuple is a witness when the deep condition
// nu({sum ktilde_j f_j}) <= -ceil(F) holds and, for every offset vector
// u in [0, u_cap]^s \ {0}, the shifted combination stays shallow:
// nu({sum (ktilde_j + beta_j(u_j)) f_j}) > -floor(sum deg / 2).
WitnessScan witness_search(const std::vector<LaurentSeries>& f,
                           const PSetFilter& filter, int u_cap);

}  // namespace dkron
