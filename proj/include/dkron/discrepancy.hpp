#pragma once

#include <complex>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "dkron/rational.hpp"
#include "dkron/sequence.hpp"
#include "dkron/walsh.hpp"

namespace dkron {

using Complex = std::complex<double>;

// A point set snapshot at digit resolution m: each row holds s grid integers
// y_j in [0, q^m), representing the point (y_1/q^m, ..., y_s/q^m).
struct PointSetView {
  int q = 2;
  int m = 0;
  int s = 1;
  std::span<const std::vector<long long>> rows;

  long long grid() const { return pow_ll(q, m); }        // per-axis resolution
  long long cells() const { return pow_ll(q, m * s); }   // q^{ms}
};

// D(x, N) * q^{ms} as an exact integer, where x = x_num / q^m componentwise
// (numerators in [0, q^m]) and the box [0, x) is half open.
long long local_discrepancy_scaled(const PointSetView& P,
                                   const std::vector<long long>& x_num, long long N);

double local_discrepancy_brute(const PointSetView& P,
                               const std::vector<long long>& x_num, long long N);

// Star discrepancy of the snapshot over [0,1]^s: at every grid corner both
// the open count [0, x) and the closed count [0, x] are compared against the
// expected volume, which captures the one-sided limits where the supremum of
// |D| lives. `value` is normalized by N; `scaled` is max |D| * q^{ms}.
struct StarReport {
  Rational value;
  long long scaled = 0;
  std::vector<long long> argmax;       // corner numerators in [0, q^m]
  bool closed_at_argmax = false;
  long long corners = 0;
  bool lower_bound_only = false;       // set by the sampled variant
};

StarReport star_discrepancy_grid(const PointSetView& P, long long N,
                                 long long corner_budget = 1ll << 22);

// Monte Carlo fallback when the corner grid exceeds the budget: the maximum
// over sampled corners, reported as a lower bound.
StarReport star_discrepancy_sampled(const PointSetView& P, long long N,
                                    long long samples, std::mt19937_64& rng);

// max_x |D(x, N)| over the open-box corners x in Q^s(q^m) only (the grid the
// spectral functional below sums over); scaled by q^{ms}.
struct GridMaxReport {
  long long scaled = 0;
  std::vector<long long> argmax;
};

GridMaxReport max_local_discrepancy_open(const PointSetView& P, long long N,
                                         long long cell_budget = 1ll << 22);

// ---------------------------------------------------------------------------
// Spectral side.
// ---------------------------------------------------------------------------

// Walsh coefficient of the indicator of [0, x) sampled on the q^{-m} grid:
// the defining average (1/q^m) sum_{y < x_num} conj(wal_k(y/q^m)), evaluated
// in closed form. J_0(x) recovers x itself. Requires 0 <= k < q^m.
Complex j_coefficient(long long k, long long x_num, int m, int q);

// Literal defining sum; quadratic-cost oracle for the closed form.
Complex j_coefficient_sum(long long k, long long x_num, int m, int q);

// Digit weights of the index-weighted character sum below: digit c of n is
// paired with coefficient c + 1 of g (the fractional coefficients of g shift
// down by one against the digit positions of n, because digit i of the point
// {n(x) g} is sum_e n_e g_{i+e} and Walsh digit i pairs with coefficient
// i + 1). `offset` parametrizes the pairing for failure-diagnostic runs; 1 is
// the validated value.
std::vector<int> weyl_digit_weights(const LaurentSeries& g, int m, int offset = 1);

// G(N, d) = sum_{n < N} omega^{sum_c n_c d_c} for weight digits d_0..d_{m-1};
// requires N <= q^m. Closed geometric form; equals N when all weights vanish.
Complex g_factor_closed(long long N, const std::vector<int>& weights, int q);

// Literal digit sum, O(N log N); oracle.
Complex g_factor_direct(long long N, const std::vector<int>& weights, int q);

// sum_{n<N} prod_j wal_{k_j}((x_n)_j) computed from generated points; the
// fully independent route for validating the weight extraction above.
Complex weyl_sum_points(const DigitalKroneckerConfig& cfg,
                        const std::vector<long long>& ks, long long N, int m);

struct SpectralOptions {
  int weight_offset = 1;
  double im_tol = 1e-9;
  long long tuple_budget = 1ll << 22;  // number of k-tuples, q^{ms}
};

// Local discrepancy via the Walsh expansion: sum over nonzero k-tuples of
// prod_j J_{k_j}(x_j) * G(N, weights(sum_j k_j f_j)). Must agree with the
// counting route; the imaginary residue is asserted below `im_tol`.
double local_discrepancy_walsh(const DigitalKroneckerConfig& cfg,
                               const std::vector<long long>& x_num,
                               long long N, int m, const SpectralOptions& opt = {});

// Precomputes the J table and per-tuple weights once for full (x, N) sweeps.
class WalshSpectralEvaluator {
 public:
  WalshSpectralEvaluator(const DigitalKroneckerConfig& cfg, int m,
                         const SpectralOptions& opt = {});

  Complex evaluate_complex(const std::vector<long long>& x_num, long long N) const;
  double evaluate(const std::vector<long long>& x_num, long long N) const;

  int dimension() const { return s_; }
  long long grid() const { return qm_; }

 private:
  int q_, m_, s_;
  long long qm_;
  double im_tol_;
  std::vector<Complex> jtab_;              // [k * q^m + x]
  std::vector<std::vector<int>> weights_;  // per flat k-tuple (row 0 unused)
};

// ---------------------------------------------------------------------------
// The test functional Lambda(k*) and its theta/beta ladder.
// ---------------------------------------------------------------------------

// Ladder offsets attached to a reduced index with digit length astar - 1:
// u = 0 keeps it, u = 1 adds q^{astar-1} (restoring the full anchor), and
// u >= 2 with t = (u-2)/(q-1) adds q^{astar-1} + kappa q^{astar+t} where
// kappa = u - t(q-1) - 1 in [1, q-1].
long long beta_offset(int astar, int u, int q);

// theta(k) = sum_{x in Q(q^m)} J_k(x) wal_{kstar}(x) in closed form; zero for
// every k off the three-case ladder anchored at kstar. kstar must decompose
// as q^{a*-1} + q^{a*-2} + l* with a* <= m. Note the scale: these are raw
// grid sums (q^m times the per-point average).
Complex theta_closed(long long k, long long kstar, int m, int q);

// Literal defining sum; oracle.
Complex theta_sum(long long k, long long kstar, int m, int q);

struct LambdaBreakdown {
  Complex total;
  Complex main_term;   // all u_j = 0
  Complex middle;      // not main, all u_j <= u_cap
  Complex tail;        // some u_j > u_cap
  long long terms = 0;
};

// Spectral evaluation of Lambda = sum_{x in Q^s(q^m)} D(x, N) wal_{k*}(x):
// the k-sum collapses to the ladder of indices with nonvanishing theta.
LambdaBreakdown lambda_spectral(const DigitalKroneckerConfig& cfg,
                                const std::vector<long long>& kstars,
                                int m, long long N, int u_cap,
                                const SpectralOptions& opt = {});

// Literal grid sum of D(x, N) wal_{k*}(x); s = 1 runs on prefix sums, s >= 2
// on a cumulative count array (budget-guarded).
Complex lambda_direct(const DigitalKroneckerConfig& cfg,
                      const std::vector<long long>& kstars,
                      int m, long long N, long long cell_budget = 1ll << 22);

struct LambdaCertificate {
  LambdaBreakdown spectral;
  Complex direct;
  double rel_gap = 0.0;        // |spectral - direct| / max(1, |direct|)
  long long grid_points = 0;   // q^{ms}, measured by the direct route
  double lower_bound = 0.0;    // certified max_x |D(x,N)| >= |direct| / grid_points
  GridMaxReport observed;      // argmax of |D| over the same grid
};

LambdaCertificate lambda_functional(const DigitalKroneckerConfig& cfg,
                                    const std::vector<long long>& kstars,
                                    int m, long long N, int u_cap,
                                    long long cell_budget = 1ll << 22);

// First (k-tuple, N) whose closed-form G under the configured weight pairing
// disagrees with the point character sum; localizes interpretation bugs.
struct SpectralMismatch {
  std::vector<long long> k;
  long long N = 0;
  Complex closed_value;
  Complex direct_value;
};

std::optional<SpectralMismatch> diagnose_spectral_mismatch(
    const DigitalKroneckerConfig& cfg, int m, int weight_offset, long long max_N);

}  // namespace dkron
