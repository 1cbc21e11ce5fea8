#include "dkron/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "dkron/errors.hpp"
#include "dkron/field.hpp"
#include "dkron/poly.hpp"

namespace dkron {

namespace {

void check_points(const PointSetView& P) {
  require_prime_modulus(P.q);
  if (P.m < 0 || P.s <= 0) throw std::invalid_argument("point set needs m >= 0, s >= 1");
}

void check_corner(const PointSetView& P, const std::vector<long long>& x_num) {
  if (static_cast<int>(x_num.size()) != P.s)
    throw std::invalid_argument("corner dimension mismatch");
  long long g = P.grid();
  for (long long v : x_num)
    if (v < 0 || v > g) throw std::invalid_argument("corner numerator out of [0, q^m]");
}

long long uniform_below(std::mt19937_64& rng, long long n) {
  uint64_t un = static_cast<uint64_t>(n);
  uint64_t span = (std::numeric_limits<uint64_t>::max() / un) * un;
  uint64_t r;
  do {
    r = rng();
  } while (r >= span);
  return static_cast<long long>(r % un);
}

// Open-box counts A[r] = #{rows before N : y_j < r_j for all j} at every
// corner r in [0, q^m]^s, flattened lowest-axis-first with stride side^j.
std::vector<long long> open_count_prefix(const PointSetView& P, long long N,
                                         long long cell_budget) {
  long long side = P.grid() + 1;
  long long cells = 1;
  for (int j = 0; j < P.s; ++j) {
    if (cells > cell_budget / side)
      throw BudgetExceededError("corner grid exceeds the cell budget");
    cells *= side;
  }
  if (N < 0 || N > static_cast<long long>(P.rows.size()))
    throw std::invalid_argument("N exceeds the stored point count");
  std::vector<long long> a(static_cast<size_t>(cells), 0);
  for (long long n = 0; n < N; ++n) {
    const auto& row = P.rows[static_cast<size_t>(n)];
    if (static_cast<int>(row.size()) != P.s)
      throw std::invalid_argument("point row dimension mismatch");
    long long idx = 0, stride = 1;
    for (int j = 0; j < P.s; ++j) {
      idx += (row[j] + 1) * stride;
      stride *= side;
    }
    ++a[static_cast<size_t>(idx)];
  }
  long long stride = 1;
  for (int j = 0; j < P.s; ++j) {
    for (long long idx = 0; idx < cells; ++idx)
      if ((idx / stride) % side != 0)
        a[static_cast<size_t>(idx)] += a[static_cast<size_t>(idx - stride)];
    stride *= side;
  }
  return a;
}

}  // namespace

long long local_discrepancy_scaled(const PointSetView& P,
                                   const std::vector<long long>& x_num, long long N) {
  check_points(P);
  check_corner(P, x_num);
  if (N < 0 || N > static_cast<long long>(P.rows.size()))
    throw std::invalid_argument("N exceeds the stored point count");
  long long count = 0;
  for (long long n = 0; n < N; ++n) {
    const auto& row = P.rows[static_cast<size_t>(n)];
    bool inside = true;
    for (int j = 0; j < P.s && inside; ++j) inside = row[j] < x_num[j];
    count += inside;
  }
  long long volume_num = 1;
  for (long long v : x_num) volume_num *= v;  // <= q^{ms}, guarded by cells()
  return count * P.cells() - N * volume_num;
}

double local_discrepancy_brute(const PointSetView& P,
                               const std::vector<long long>& x_num, long long N) {
  return static_cast<double>(local_discrepancy_scaled(P, x_num, N)) /
         static_cast<double>(P.cells());
}

StarReport star_discrepancy_grid(const PointSetView& P, long long N,
                                 long long corner_budget) {
  check_points(P);
  if (N <= 0) throw std::invalid_argument("star discrepancy needs N >= 1");
  auto open = open_count_prefix(P, N, corner_budget);
  long long side = P.grid() + 1;
  long long cells = P.cells();

  StarReport rep;
  rep.corners = static_cast<long long>(open.size());
  std::vector<long long> r(P.s, 0);
  std::vector<long long> strides(P.s);
  long long stride = 1;
  for (int j = 0; j < P.s; ++j) {
    strides[j] = stride;
    stride *= side;
  }
  for (long long idx = 0;; ++idx) {
    long long volume_num = 1;
    for (long long v : r) volume_num *= v;
    long long expected = N * volume_num;
    long long closed_idx = 0;
    for (int j = 0; j < P.s; ++j)
      closed_idx += std::min(r[j] + 1, side - 1) * strides[j];
    long long open_gap = std::llabs(open[static_cast<size_t>(idx)] * cells - expected);
    long long closed_gap = std::llabs(open[static_cast<size_t>(closed_idx)] * cells - expected);
    if (std::max(open_gap, closed_gap) > rep.scaled) {
      rep.scaled = std::max(open_gap, closed_gap);
      rep.argmax = r;
      rep.closed_at_argmax = closed_gap >= open_gap;
    }
    int j = 0;
    for (; j < P.s; ++j) {
      if (++r[j] < side) break;
      r[j] = 0;
    }
    if (j == P.s) break;
  }
  rep.value = Rational(rep.scaled, N * cells);
  return rep;
}

StarReport star_discrepancy_sampled(const PointSetView& P, long long N,
                                    long long samples, std::mt19937_64& rng) {
  check_points(P);
  if (N <= 0 || N > static_cast<long long>(P.rows.size()))
    throw std::invalid_argument("star discrepancy needs 1 <= N <= stored points");
  long long side = P.grid() + 1;
  long long cells = P.cells();
  StarReport rep;
  rep.lower_bound_only = true;
  std::vector<long long> r(P.s);
  for (long long it = 0; it < samples; ++it) {
    for (int j = 0; j < P.s; ++j) r[j] = uniform_below(rng, side);
    long long open = 0, closed = 0;
    for (long long n = 0; n < N; ++n) {
      const auto& row = P.rows[static_cast<size_t>(n)];
      bool in_open = true, in_closed = true;
      for (int j = 0; j < P.s; ++j) {
        in_open = in_open && row[j] < r[j];
        in_closed = in_closed && row[j] <= r[j];
      }
      open += in_open;
      closed += in_closed;
    }
    long long volume_num = 1;
    for (long long v : r) volume_num *= v;
    long long expected = N * volume_num;
    long long gap = std::max(std::llabs(open * cells - expected),
                             std::llabs(closed * cells - expected));
    if (gap > rep.scaled) {
      rep.scaled = gap;
      rep.argmax = r;
      rep.closed_at_argmax = std::llabs(closed * cells - expected) >= std::llabs(open * cells - expected);
    }
    ++rep.corners;
  }
  rep.value = Rational(rep.scaled, N * cells);
  return rep;
}

GridMaxReport max_local_discrepancy_open(const PointSetView& P, long long N,
                                         long long cell_budget) {
  check_points(P);
  auto open = open_count_prefix(P, N, cell_budget);
  long long side = P.grid() + 1;
  long long cells = P.cells();
  GridMaxReport rep;
  rep.argmax.assign(P.s, 0);
  std::vector<long long> r(P.s, 0);
  for (;;) {
    long long idx = 0, stride = 1, volume_num = 1;
    for (int j = 0; j < P.s; ++j) {
      idx += r[j] * stride;
      stride *= side;
      volume_num *= r[j];
    }
    long long gap = std::llabs(open[static_cast<size_t>(idx)] * cells - N * volume_num);
    if (gap > rep.scaled) {
      rep.scaled = gap;
      rep.argmax = r;
    }
    int j = 0;
    for (; j < P.s; ++j) {
      if (++r[j] < side - 1) break;  // open corners stay below q^m
      r[j] = 0;
    }
    if (j == P.s) break;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Spectral side.
// ---------------------------------------------------------------------------

namespace {

std::vector<int> grid_digits(long long x_num, int m, int q) {
  std::vector<int> xi(static_cast<size_t>(m) + 1, 0);  // xi[1..m]
  long long rest = x_num;
  for (int c = m; c >= 1; --c) {
    xi[static_cast<size_t>(c)] = static_cast<int>(rest % q);
    rest /= q;
  }
  return xi;
}

Complex omega_fraction(int q, long long num_exp, Complex denom) {
  return omega_power(q, num_exp) / denom;
}

}  // namespace

Complex j_coefficient(long long k, long long x_num, int m, int q) {
  require_prime_modulus(q);
  long long qm = pow_ll(q, m);
  if (k < 0 || k >= qm) throw std::invalid_argument("index k must lie in [0, q^m)");
  if (x_num < 0 || x_num >= qm) throw std::invalid_argument("x numerator must lie in [0, q^m)");
  auto xi = grid_digits(x_num, m, q);

  if (k == 0) {
    // Interpolates the identity: the grid average of the [0,x) indicator.
    Complex acc(0.5 - 0.5 / static_cast<double>(qm), 0.0);
    double scale = 1.0;
    for (int c = 1; c <= m; ++c) {
      scale /= q;
      for (int l = 1; l < q; ++l) {
        Complex denom = omega_power(q, l) - 1.0;
        acc += scale * omega_fraction(q, -static_cast<long long>(l) * xi[static_cast<size_t>(c)], denom);
      }
    }
    return acc;
  }

  WalshIndexParts parts = decompose_index(k, q);
  int a = parts.a;
  long long e_k = wal_exponent_grid(k, x_num, m, q);
  long long e_rest = wal_exponent_grid(parts.rest, x_num, m, q);
  Complex omega_kappa_inv = omega_power(q, -parts.kappa);

  Complex acc = omega_fraction(q, -e_rest, 1.0 - omega_kappa_inv);
  acc += (0.5 + 1.0 / (omega_kappa_inv - 1.0)) * omega_power(q, -e_k);
  double scale = 1.0;
  for (int c = 1; c <= m - a; ++c) {
    scale /= q;
    // wal_{l q^{a+c-1} + k} = omega^{l xi_{a+c}} wal_k: the added digit sits
    // above every digit of k, so the index addition is carry-free.
    for (int l = 1; l < q; ++l) {
      Complex denom = omega_power(q, l) - 1.0;
      acc += scale * omega_fraction(q, -(static_cast<long long>(l) * xi[static_cast<size_t>(a + c)] + e_k), denom);
    }
  }
  acc -= 0.5 / static_cast<double>(pow_ll(q, m - a)) * omega_power(q, -e_k);
  return acc / static_cast<double>(pow_ll(q, a));
}

Complex j_coefficient_sum(long long k, long long x_num, int m, int q) {
  require_prime_modulus(q);
  long long qm = pow_ll(q, m);
  if (k < 0 || k >= qm) throw std::invalid_argument("index k must lie in [0, q^m)");
  if (x_num < 0 || x_num >= qm) throw std::invalid_argument("x numerator must lie in [0, q^m)");
  RootOfUnitySum sum(q);
  for (long long y = 0; y < x_num; ++y) sum.add(-wal_exponent_grid(k, y, m, q));
  return sum.value() / static_cast<double>(qm);
}

std::vector<int> weyl_digit_weights(const LaurentSeries& g, int m, int offset) {
  if (m <= 0) throw std::invalid_argument("weights need m >= 1");
  std::vector<int> d(static_cast<size_t>(m));
  for (int c = 0; c < m; ++c)
    d[static_cast<size_t>(c)] = mod_reduce(g.coeff(c + offset), g.modulus());
  return d;
}

Complex g_factor_closed(long long N, const std::vector<int>& weights, int q) {
  require_prime_modulus(q);
  int m = static_cast<int>(weights.size());
  long long qm = pow_ll(q, m);
  if (N < 0 || N > qm) throw std::invalid_argument("G needs 0 <= N <= q^m");
  int w = 0;
  while (w < m && weights[static_cast<size_t>(w)] % q == 0) ++w;
  if (w == m) return Complex(static_cast<double>(N), 0.0);

  long long qw = pow_ll(q, w);
  long long digits_above = N / qw;  // digits w, w+1, ... of N
  int n_w = static_cast<int>(digits_above % q);
  long long s = 0;
  long long rest = digits_above / q;
  for (int j = w + 1; j < m && rest > 0; ++j, rest /= q)
    s += static_cast<long long>(rest % q) * weights[static_cast<size_t>(j)];

  int b_w = weights[static_cast<size_t>(w)];
  Complex num = omega_power(q, static_cast<long long>(b_w) * n_w) - 1.0;
  Complex den = omega_power(q, b_w) - 1.0;
  double frac = static_cast<double>(N % qw) / static_cast<double>(qw);
  Complex inner = num / den + omega_power(q, static_cast<long long>(b_w) * n_w) * frac;
  return omega_power(q, s) * static_cast<double>(qw) * inner;
}

Complex g_factor_direct(long long N, const std::vector<int>& weights, int q) {
  require_prime_modulus(q);
  if (N < 0) throw std::invalid_argument("G needs N >= 0");
  RootOfUnitySum sum(q);
  for (long long n = 0; n < N; ++n) {
    long long e = 0;
    long long rest = n;
    for (size_t c = 0; c < weights.size() && rest > 0; ++c, rest /= q)
      e += (rest % q) * weights[c];
    if (rest > 0) throw std::invalid_argument("n has digits beyond the weight vector");
    sum.add(e);
  }
  return sum.value();
}

Complex weyl_sum_points(const DigitalKroneckerConfig& cfg,
                        const std::vector<long long>& ks, long long N, int m) {
  cfg.validate();
  if (static_cast<int>(ks.size()) != cfg.dimension())
    throw std::invalid_argument("k-tuple dimension mismatch");
  auto rows = generate_block(cfg, 0, N, m);
  RootOfUnitySum sum(cfg.q);
  for (const auto& row : rows) {
    long long e = 0;
    for (size_t j = 0; j < ks.size(); ++j)
      e += wal_exponent_grid(ks[j], row[j], m, cfg.q);
    sum.add(e);
  }
  return sum.value();
}

WalshSpectralEvaluator::WalshSpectralEvaluator(const DigitalKroneckerConfig& cfg, int m,
                                               const SpectralOptions& opt)
    : q_(cfg.q), m_(m), s_(cfg.dimension()), im_tol_(opt.im_tol) {
  cfg.validate();
  if (m <= 0) throw std::invalid_argument("evaluator needs m >= 1");
  qm_ = pow_ll(q_, m_);
  long long tuples = pow_ll(q_, m_ * s_);
  if (tuples > opt.tuple_budget || qm_ * qm_ > opt.tuple_budget)
    throw BudgetExceededError("k-tuple space exceeds the evaluator budget");

  jtab_.resize(static_cast<size_t>(qm_ * qm_));
  for (long long k = 0; k < qm_; ++k)
    for (long long x = 0; x < qm_; ++x)
      jtab_[static_cast<size_t>(k * qm_ + x)] = j_coefficient(k, x, m_, q_);

  weights_.resize(static_cast<size_t>(tuples));
  std::vector<Polynomial> kp;
  for (long long t = 1; t < tuples; ++t) {
    kp.clear();
    long long rest = t;
    for (int j = 0; j < s_; ++j, rest /= qm_)
      kp.push_back(Polynomial::from_index(static_cast<unsigned long long>(rest % qm_), q_));
    LaurentSeries g = fractional_part(linear_combination(kp, cfg.f));
    weights_[static_cast<size_t>(t)] = weyl_digit_weights(g, m_, opt.weight_offset);
  }
}

Complex WalshSpectralEvaluator::evaluate_complex(const std::vector<long long>& x_num,
                                                 long long N) const {
  if (static_cast<int>(x_num.size()) != s_)
    throw std::invalid_argument("corner dimension mismatch");
  for (long long v : x_num)
    if (v < 0 || v >= qm_) throw std::invalid_argument("corner numerator out of [0, q^m)");
  long long tuples = static_cast<long long>(weights_.size());
  Complex acc(0.0, 0.0);
  for (long long t = 1; t < tuples; ++t) {
    Complex jprod(1.0, 0.0);
    long long rest = t;
    for (int j = 0; j < s_; ++j, rest /= qm_)
      jprod *= jtab_[static_cast<size_t>((rest % qm_) * qm_ + x_num[static_cast<size_t>(j)])];
    acc += jprod * g_factor_closed(N, weights_[static_cast<size_t>(t)], q_);
  }
  return acc;
}

double WalshSpectralEvaluator::evaluate(const std::vector<long long>& x_num,
                                        long long N) const {
  Complex v = evaluate_complex(x_num, N);
  if (std::abs(v.imag()) > im_tol_ * std::max(1.0, std::abs(v.real())))
    throw std::runtime_error("spectral local discrepancy has an imaginary residue");
  return v.real();
}

double local_discrepancy_walsh(const DigitalKroneckerConfig& cfg,
                               const std::vector<long long>& x_num,
                               long long N, int m, const SpectralOptions& opt) {
  WalshSpectralEvaluator eval(cfg, m, opt);
  return eval.evaluate(x_num, N);
}

long long beta_offset(int astar, int u, int q) {
  require_prime_modulus(q);
  if (astar < 3 || u < 0) throw std::invalid_argument("beta needs astar >= 3, u >= 0");
  if (u == 0) return 0;
  if (u == 1) return pow_ll(q, astar - 1);
  int t = (u - 2) / (q - 1);
  int kappa = u - t * (q - 1) - 1;
  return pow_ll(q, astar - 1) + static_cast<long long>(kappa) * pow_ll(q, astar + t);
}

Complex theta_closed(long long k, long long kstar, int m, int q) {
  require_prime_modulus(q);
  KStarIndex ks = parse_k_star(kstar, q);
  if (!ks.valid || ks.a > m) throw std::invalid_argument("kstar is not an admissible anchor");
  long long qm = pow_ll(q, m);
  if (k < 0 || k >= qm) throw std::invalid_argument("index k must lie in [0, q^m)");
  if (k == 0) return Complex(0.0, 0.0);
  double head = static_cast<double>(qm) / static_cast<double>(pow_ll(q, ks.a));
  if (k == kstar) {
    Complex omega_inv = omega_power(q, -1);
    return head * (0.5 + 1.0 / (omega_inv - 1.0)) - 0.5;
  }
  if (k == ks.reduced) return head / (omega_power(q, 1) - 1.0);
  WalshIndexParts parts = decompose_index(k, q);
  if (parts.rest == kstar) {
    double scale = static_cast<double>(qm) / static_cast<double>(pow_ll(q, parts.a));
    return scale / (1.0 - omega_power(q, -parts.kappa));
  }
  return Complex(0.0, 0.0);
}

Complex theta_sum(long long k, long long kstar, int m, int q) {
  require_prime_modulus(q);
  long long qm = pow_ll(q, m);
  if (k < 0 || k >= qm) throw std::invalid_argument("index k must lie in [0, q^m)");
  Complex acc(0.0, 0.0);
  for (long long x = 0; x < qm; ++x)
    acc += j_coefficient(k, x, m, q) * wal_grid(kstar, x, m, q);
  return acc;
}

namespace {

struct LadderRung {
  int u;
  long long k;
  Complex theta;
};

std::vector<LadderRung> build_ladder(long long kstar, int m, int q) {
  KStarIndex ks = parse_k_star(kstar, q);
  if (!ks.valid || ks.a > m) throw std::invalid_argument("kstar is not an admissible anchor");
  long long qm = pow_ll(q, m);
  // Rungs u = 0 and u = 1 fit whenever a <= m; a rung with u >= 2 has top
  // digit at position a + t, so it fits exactly when t <= m - a - 1. The
  // largest admissible u is therefore 1 + (q - 1)(m - a).
  int u_max = 1 + (q - 1) * (m - ks.a);
  std::vector<LadderRung> rungs;
  for (int u = 0; u <= u_max; ++u) {
    long long k = ks.reduced + beta_offset(ks.a, u, q);
    if (k >= qm) throw std::logic_error("ladder rung escaped the index range");
    rungs.push_back({u, k, theta_closed(k, kstar, m, q)});
  }
  return rungs;
}

Complex lambda_direct_points(const PointSetView& P,
                             const std::vector<long long>& kstars, long long N,
                             long long cell_budget) {
  auto open = open_count_prefix(P, N, cell_budget);
  long long side = P.grid() + 1;
  long long qm = P.grid();
  double cells = static_cast<double>(P.cells());
  // Per-axis Walsh values at every grid coordinate.
  std::vector<std::vector<int>> exps(static_cast<size_t>(P.s));
  for (int j = 0; j < P.s; ++j) {
    exps[static_cast<size_t>(j)].resize(static_cast<size_t>(qm));
    for (long long y = 0; y < qm; ++y)
      exps[static_cast<size_t>(j)][static_cast<size_t>(y)] =
          wal_exponent_grid(kstars[static_cast<size_t>(j)], y, P.m, P.q);
  }
  Complex acc(0.0, 0.0);
  std::vector<long long> r(P.s, 0);
  for (;;) {
    long long idx = 0, stride = 1, volume_num = 1, e = 0;
    for (int j = 0; j < P.s; ++j) {
      idx += r[j] * stride;
      stride *= side;
      volume_num *= r[j];
      e += exps[static_cast<size_t>(j)][static_cast<size_t>(r[j])];
    }
    double d = static_cast<double>(open[static_cast<size_t>(idx)]) -
               static_cast<double>(N) * static_cast<double>(volume_num) / cells;
    acc += d * omega_power(P.q, e);
    int j = 0;
    for (; j < P.s; ++j) {
      if (++r[j] < qm) break;
      r[j] = 0;
    }
    if (j == P.s) break;
  }
  return acc;
}

}  // namespace

LambdaBreakdown lambda_spectral(const DigitalKroneckerConfig& cfg,
                                const std::vector<long long>& kstars,
                                int m, long long N, int u_cap,
                                const SpectralOptions& opt) {
  cfg.validate();
  int s = cfg.dimension();
  if (static_cast<int>(kstars.size()) != s)
    throw std::invalid_argument("anchor tuple dimension mismatch");
  std::vector<std::vector<LadderRung>> ladders;
  for (long long kstar : kstars) ladders.push_back(build_ladder(kstar, m, cfg.q));

  LambdaBreakdown out;
  std::vector<size_t> pos(static_cast<size_t>(s), 0);
  std::vector<Polynomial> kp(static_cast<size_t>(s), Polynomial::zero(cfg.q));
  for (;;) {
    Complex theta_prod(1.0, 0.0);
    bool all_zero = true, within_cap = true;
    for (int j = 0; j < s; ++j) {
      const LadderRung& rung = ladders[static_cast<size_t>(j)][pos[static_cast<size_t>(j)]];
      theta_prod *= rung.theta;
      all_zero = all_zero && rung.u == 0;
      within_cap = within_cap && rung.u <= u_cap;
      kp[static_cast<size_t>(j)] =
          Polynomial::from_index(static_cast<unsigned long long>(rung.k), cfg.q);
    }
    LaurentSeries g = fractional_part(linear_combination(kp, cfg.f));
    Complex term =
        theta_prod * g_factor_closed(N, weyl_digit_weights(g, m, opt.weight_offset), cfg.q);
    if (all_zero)
      out.main_term += term;
    else if (within_cap)
      out.middle += term;
    else
      out.tail += term;
    ++out.terms;
    int j = 0;
    for (; j < s; ++j) {
      if (++pos[static_cast<size_t>(j)] < ladders[static_cast<size_t>(j)].size()) break;
      pos[static_cast<size_t>(j)] = 0;
    }
    if (j == s) break;
  }
  out.total = out.main_term + out.middle + out.tail;
  return out;
}

Complex lambda_direct(const DigitalKroneckerConfig& cfg,
                      const std::vector<long long>& kstars,
                      int m, long long N, long long cell_budget) {
  cfg.validate();
  if (static_cast<int>(kstars.size()) != cfg.dimension())
    throw std::invalid_argument("anchor tuple dimension mismatch");
  auto rows = generate_block(cfg, 0, N, m);
  PointSetView P{cfg.q, m, cfg.dimension(), rows};
  return lambda_direct_points(P, kstars, N, cell_budget);
}

LambdaCertificate lambda_functional(const DigitalKroneckerConfig& cfg,
                                    const std::vector<long long>& kstars,
                                    int m, long long N, int u_cap,
                                    long long cell_budget) {
  cfg.validate();
  LambdaCertificate cert;
  auto rows = generate_block(cfg, 0, N, m);
  PointSetView P{cfg.q, m, cfg.dimension(), rows};
  cert.direct = lambda_direct_points(P, kstars, N, cell_budget);
  cert.spectral = lambda_spectral(cfg, kstars, m, N, u_cap);
  cert.rel_gap = std::abs(cert.spectral.total - cert.direct) /
                 std::max(1.0, std::abs(cert.direct));
  cert.grid_points = P.cells();
  cert.lower_bound = std::abs(cert.direct) / static_cast<double>(cert.grid_points);
  cert.observed = max_local_discrepancy_open(P, N, cell_budget);
  return cert;
}

std::optional<SpectralMismatch> diagnose_spectral_mismatch(
    const DigitalKroneckerConfig& cfg, int m, int weight_offset, long long max_N) {
  cfg.validate();
  int s = cfg.dimension();
  long long qm = pow_ll(cfg.q, m);
  long long tuples = pow_ll(cfg.q, m * s);
  if (tuples > (1 << 16)) throw BudgetExceededError("diagnostic k-tuple space too large");
  if (max_N > qm) max_N = qm;
  std::vector<Polynomial> kp;
  std::vector<long long> ks(static_cast<size_t>(s));
  for (long long t = 1; t < tuples; ++t) {
    kp.clear();
    long long rest = t;
    for (int j = 0; j < s; ++j, rest /= qm) {
      ks[static_cast<size_t>(j)] = rest % qm;
      kp.push_back(Polynomial::from_index(static_cast<unsigned long long>(rest % qm), cfg.q));
    }
    LaurentSeries g = fractional_part(linear_combination(kp, cfg.f));
    auto weights = weyl_digit_weights(g, m, weight_offset);
    for (long long N = 1; N <= max_N; ++N) {
      Complex closed = g_factor_closed(N, weights, cfg.q);
      Complex direct = weyl_sum_points(cfg, ks, N, m);
      if (std::abs(closed - direct) > 1e-9 * std::max(1.0, std::abs(direct)))
        return SpectralMismatch{ks, N, closed, direct};
    }
  }
  return std::nullopt;
}

}  // namespace dkron
