#include "dkron/metrical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "dkron/discrepancy.hpp"
#include "dkron/errors.hpp"
#include "dkron/field.hpp"

namespace dkron {

int EventSpec::modulus() const {
  if (k.empty()) throw std::invalid_argument("event needs a nonempty tuple");
  return k.front().modulus();
}

int EventSpec::prefix_len() const {
  if (m <= 1) return 0;
  int maxdeg = -1;
  for (const auto& kj : k)
    if (!kj.is_zero()) maxdeg = std::max(maxdeg, kj.degree());
  if (maxdeg < 0) throw std::invalid_argument("event needs a nonzero tuple");
  return m - 1 + maxdeg;
}

void EventSpec::validate() const {
  int q = modulus();
  require_prime_modulus(q);
  if (m < 1) throw std::invalid_argument("event threshold m must be >= 1");
  bool nonzero = false;
  for (const auto& kj : k) {
    if (kj.modulus() != q) throw std::invalid_argument("mixed moduli in event tuple");
    nonzero = nonzero || !kj.is_zero();
  }
  if (!nonzero) throw std::invalid_argument("event needs a nonzero tuple");
}

namespace {

struct FormTouch {
  int event;
  int form;
  int coeff;
};

struct ExactCounts {
  long long total = 0;
  std::vector<long long> per_event;
  long long joint = 0;
  int prefix_len = 0;
};

// Enumerates every length-L digit prefix of the active coordinates once,
// maintaining the constrained coefficient forms incrementally along the
// odometer walk (each increment touches O(1) digits amortized).
ExactCounts count_events_exact(const std::vector<EventSpec>& events, long long budget) {
  if (events.empty()) throw std::invalid_argument("no events");
  int q = events.front().modulus();
  int s = static_cast<int>(events.front().k.size());
  int L = 0;
  for (const auto& ev : events) {
    ev.validate();
    if (ev.modulus() != q || static_cast<int>(ev.k.size()) != s)
      throw std::invalid_argument("events address different tuple spaces");
    L = std::max(L, ev.prefix_len());
  }

  // Active coordinates: those some event reads.
  std::vector<int> coord_slot(static_cast<size_t>(s), -1);
  int active = 0;
  for (int j = 0; j < s; ++j) {
    bool used = false;
    for (const auto& ev : events) used = used || !ev.k[static_cast<size_t>(j)].is_zero();
    if (used) coord_slot[static_cast<size_t>(j)] = active++;
  }

  long long positions = static_cast<long long>(active) * L;
  long long total = 1;
  for (long long i = 0; i < positions; ++i) {
    if (total > budget / q) throw BudgetExceededError("prefix space exceeds the budget");
    total *= q;
  }

  // touch[p]: forms whose value shifts when the digit at flat position p
  // (slot * L + t, prefix digit a_{t+1}) changes.
  std::vector<std::vector<FormTouch>> touch(static_cast<size_t>(std::max<long long>(positions, 1)));
  std::vector<std::vector<int>> vals;
  std::vector<int> nonzero_forms;
  for (size_t e = 0; e < events.size(); ++e) {
    const EventSpec& ev = events[e];
    int forms = std::max(0, ev.m - 1);
    vals.push_back(std::vector<int>(static_cast<size_t>(forms), 0));
    nonzero_forms.push_back(0);
    for (int i = 1; i < ev.m; ++i) {
      for (int j = 0; j < s; ++j) {
        const Polynomial& kj = ev.k[static_cast<size_t>(j)];
        if (kj.is_zero()) continue;
        for (int d = 0; d <= kj.degree(); ++d) {
          int c = kj.coeff(d);
          if (c == 0) continue;
          long long pos = static_cast<long long>(coord_slot[static_cast<size_t>(j)]) * L + (i + d - 1);
          touch[static_cast<size_t>(pos)].push_back({static_cast<int>(e), i - 1, c});
        }
      }
    }
  }

  ExactCounts out;
  out.total = total;
  out.per_event.assign(events.size(), 0);
  out.prefix_len = L;
  std::vector<int> digits(static_cast<size_t>(std::max<long long>(positions, 1)), 0);
  for (long long it = 0; it < total; ++it) {
    bool all = true;
    for (size_t e = 0; e < events.size(); ++e) {
      if (nonzero_forms[e] == 0)
        ++out.per_event[e];
      else
        all = false;
    }
    if (all) ++out.joint;
    // Odometer increment with carries.
    for (long long p = 0; p < positions; ++p) {
      int old_digit = digits[static_cast<size_t>(p)];
      int new_digit = old_digit + 1 == q ? 0 : old_digit + 1;
      digits[static_cast<size_t>(p)] = new_digit;
      int delta = new_digit - old_digit;  // -(q-1) on wrap, else +1
      for (const FormTouch& ft : touch[static_cast<size_t>(p)]) {
        int& v = vals[static_cast<size_t>(ft.event)][static_cast<size_t>(ft.form)];
        int old_v = v;
        v = mod_reduce(v + ft.coeff * delta, q);
        if (old_v != 0 && v == 0) --nonzero_forms[static_cast<size_t>(ft.event)];
        if (old_v == 0 && v != 0) ++nonzero_forms[static_cast<size_t>(ft.event)];
      }
      if (new_digit != 0) break;
    }
  }
  return out;
}

MeasureEstimate from_counts(long long count, const ExactCounts& c) {
  MeasureEstimate est;
  est.value = Rational(count, c.total);
  est.estimate = est.value.value();
  est.exact = true;
  est.samples = c.total;
  est.prefix_len = c.prefix_len;
  return est;
}

}  // namespace

MeasureEstimate measure_event_exact(const EventSpec& spec, long long budget) {
  spec.validate();
  auto counts = count_events_exact({spec}, budget);
  return from_counts(counts.per_event[0], counts);
}

MeasureEstimate measure_event_mc(const EventSpec& spec, long long samples,
                                 std::mt19937_64& rng) {
  spec.validate();
  if (samples <= 0) throw std::invalid_argument("need samples >= 1");
  int q = spec.modulus();
  int L = spec.prefix_len();
  long long hits = 0;
  std::vector<LaurentSeries> f;
  for (long long it = 0; it < samples; ++it) {
    f.clear();
    for (size_t j = 0; j < spec.k.size(); ++j) f.push_back(sample_haar(q, L + 2, rng));
    LaurentSeries g = fractional_part(linear_combination(spec.k, f));
    if (nu_at_most(g, spec.m)) ++hits;
  }
  MeasureEstimate est;
  est.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  est.samples = samples;
  est.stderr_value =
      std::sqrt(std::max(0.0, est.estimate * (1.0 - est.estimate)) / static_cast<double>(samples));
  est.prefix_len = L;
  return est;
}

MeasureEstimate measure_joint_exact(const EventSpec& a, const EventSpec& b,
                                    long long budget) {
  auto counts = count_events_exact({a, b}, budget);
  return from_counts(counts.joint, counts);
}

PairProductReport measure_pair_product(const EventSpec& a, const EventSpec& b,
                                       long long budget) {
  auto counts = count_events_exact({a, b}, budget);
  PairProductReport rep;
  rep.joint = from_counts(counts.joint, counts);
  rep.marginal_a = from_counts(counts.per_event[0], counts);
  rep.marginal_b = from_counts(counts.per_event[1], counts);
  rep.marginal_product = rep.marginal_a.value * rep.marginal_b.value;
  rep.product_form = rep.joint.value == rep.marginal_product;
  return rep;
}

Threshold f_threshold(const std::vector<int>& degrees, int q) {
  require_prime_modulus(q);
  if (degrees.empty()) throw std::invalid_argument("empty degree tuple");
  long long r = 0;
  for (int d : degrees) {
    if (d < 0) throw std::invalid_argument("negative degree");
    r += d;
  }
  if (r < 2) throw std::invalid_argument("threshold needs total degree >= 2");
  int s = static_cast<int>(degrees.size());
  double lr = std::log(static_cast<double>(r));
  Threshold th;
  th.F = static_cast<double>(r) + (s * lr + std::log(lr)) / std::log(static_cast<double>(q));
  th.m = static_cast<int>(std::floor(th.F));
  th.event_m = static_cast<int>(std::ceil(th.F));
  th.N = pow_ll(q, th.m - 1);
  return th;
}

Polynomial p_filter_polynomial(int q, int J) {
  require_prime_modulus(q);
  if (J < 0) throw std::invalid_argument("J must be >= 0");
  Polynomial p = Polynomial::x(q);
  for (int j = 1; j <= J; ++j) {
    for (int kappa = 1; kappa < q; ++kappa) {
      std::vector<int> c(static_cast<size_t>(j) + 1, 0);
      c[0] = 1;
      c[static_cast<size_t>(j)] = kappa;
      p = p * Polynomial(q, c);
    }
  }
  return p;
}

namespace {

void compositions(int total, int parts, std::vector<int>& acc,
                  const std::function<void(const std::vector<int>&)>& yield) {
  if (parts == 1) {
    acc.push_back(total);
    yield(acc);
    acc.pop_back();
    return;
  }
  for (int a = 0; a <= total; ++a) {
    acc.push_back(a);
    compositions(total - a, parts - 1, acc, yield);
    acc.pop_back();
  }
}

}  // namespace

void enumerate_P(const PSetFilter& filter,
                 const std::function<void(const std::vector<Polynomial>&)>& yield) {
  require_prime_modulus(filter.q);
  if (filter.s < 1) throw std::invalid_argument("need s >= 1");
  Polynomial p = filter.p();
  Polynomial one = Polynomial::one(filter.q);
  std::map<int, std::vector<Polynomial>> pool;  // degree -> coprime monics
  auto coprime_of_degree = [&](int d) -> const std::vector<Polynomial>& {
    auto it = pool.find(d);
    if (it == pool.end()) it = pool.emplace(d, monic_coprime(d, filter.q, p)).first;
    return it->second;
  };

  std::vector<int> acc;
  for (int d = 0; d <= filter.max_total_degree; ++d) {
    compositions(d, filter.s, acc, [&](const std::vector<int>& degs) {
      std::vector<const std::vector<Polynomial>*> lists;
      for (int a : degs) {
        lists.push_back(&coprime_of_degree(a));
        if (lists.back()->empty()) return;
      }
      std::vector<size_t> pos(static_cast<size_t>(filter.s), 0);
      std::vector<Polynomial> tuple;
      for (;;) {
        tuple.clear();
        for (int j = 0; j < filter.s; ++j)
          tuple.push_back((*lists[static_cast<size_t>(j)])[pos[static_cast<size_t>(j)]]);
        bool all_ones = true;
        for (const auto& kj : tuple) all_ones = all_ones && kj == one;
        bool ok = !all_ones;
        if (ok && filter.s >= 2) {
          Polynomial g = tuple.front();
          for (int j = 1; j < filter.s; ++j) g = Polynomial::gcd(g, tuple[static_cast<size_t>(j)]);
          ok = g == one;
        }
        if (ok) yield(tuple);
        int j = 0;
        for (; j < filter.s; ++j) {
          if (++pos[static_cast<size_t>(j)] < lists[static_cast<size_t>(j)]->size()) break;
          pos[static_cast<size_t>(j)] = 0;
        }
        if (j == filter.s) break;
      }
    });
  }
}

std::vector<std::vector<Polynomial>> enumerate_P_vec(const PSetFilter& filter) {
  std::vector<std::vector<Polynomial>> out;
  enumerate_P(filter, [&](const std::vector<Polynomial>& t) { out.push_back(t); });
  return out;
}

long long p_tuple_count_moebius(const PSetFilter& filter, int d) {
  require_prime_modulus(filter.q);
  if (d < 0) throw std::invalid_argument("degree must be >= 0");
  Polynomial p = filter.p();
  auto int_count = [&](int b) -> long long {
    Rational c = coprime_count_formula(b, p);
    if (c.den() != 1) throw std::logic_error("coprime count is not an integer");
    return c.num();
  };
  if (filter.s == 1) return d == 0 ? 0 : int_count(d);

  long long sum = 0;
  std::vector<int> acc;
  compositions(d, filter.s, acc, [&](const std::vector<int>& degs) {
    int min_a = *std::min_element(degs.begin(), degs.end());
    for (int b = 0; b <= min_a; ++b) {
      MonicEnumerator en(b, filter.q, p);
      while (auto l = en.next()) {
        int mu = moebius_q(*l);
        if (mu == 0) continue;
        long long prod = 1;
        for (int a : degs) prod *= int_count(a - b);
        sum += mu * prod;
      }
    }
  });
  // The all-ones tuple sits at total degree zero and is excluded by fiat.
  if (d == 0) sum -= 1;
  return sum;
}

DivergenceReport divergence_partial_sum(const PSetFilter& filter, int R) {
  if (R < 0) throw std::invalid_argument("R must be >= 0");
  PSetFilter local = filter;
  local.max_total_degree = R;
  DivergenceReport rep;
  rep.per_degree_counts.assign(static_cast<size_t>(R) + 1, 0);
  enumerate_P(local, [&](const std::vector<Polynomial>& tuple) {
    int d = 0;
    for (const auto& kj : tuple) d += std::max(0, kj.degree());
    ++rep.per_degree_counts[static_cast<size_t>(d)];
    ++rep.tuples;
  });

  int s = filter.s;
  rep.partial_sums.assign(static_cast<size_t>(R) + 1, 0.0);
  double t = 0.0;
  for (int d = 0; d <= R; ++d) {
    if (d >= 2) {
      double weight = std::pow(static_cast<double>(filter.q), -static_cast<double>(d)) /
                      (std::pow(static_cast<double>(d), s) * std::log(static_cast<double>(d)));
      t += static_cast<double>(rep.per_degree_counts[static_cast<size_t>(d)]) * weight;
    }
    rep.partial_sums[static_cast<size_t>(d)] = t;
  }
  rep.T_R = t;

  int r = static_cast<int>(factorize(filter.p()).size());
  double factorial = 1.0;
  for (int i = 2; i <= s - 1; ++i) factorial *= i;
  double head = std::pow(2.0, -static_cast<double>(r) * s) / factorial;
  if (s >= 2) head *= static_cast<double>(filter.q - 1) / 4.0;
  double chain = 0.0;
  for (int d = 2; d <= R; ++d)
    chain += 1.0 / (static_cast<double>(d) * std::log(static_cast<double>(d)));
  rep.analytic_chain = head * chain;
  return rep;
}

WitnessScan witness_search(const std::vector<LaurentSeries>& f,
                           const PSetFilter& filter, int u_cap) {
  if (static_cast<int>(f.size()) != filter.s)
    throw std::invalid_argument("series tuple dimension mismatch");
  for (const auto& fj : f)
    if (fj.modulus() != filter.q) throw std::invalid_argument("series modulus mismatch");
  if (u_cap < 1) throw std::invalid_argument("need u_cap >= 1");

  WitnessScan scan;
  enumerate_P(filter, [&](const std::vector<Polynomial>& tuple) {
    std::vector<int> degrees;
    int maxdeg = 0, total = 0;
    for (const auto& kj : tuple) {
      degrees.push_back(kj.degree());
      maxdeg = std::max(maxdeg, kj.degree());
      total += kj.degree();
    }
    for (int dg : degrees)
      if (dg < 1) return;  // the functional needs anchors q^{deg+1} + index
    Threshold th = f_threshold(degrees, filter.q);
    if (th.m < maxdeg + 2) return;  // anchor must fit under the resolution

    ++scan.tuples_scanned;
    scan.poisson_mean +=
        std::pow(static_cast<double>(filter.q), 1.0 - static_cast<double>(th.event_m));

    LaurentSeries g = fractional_part(linear_combination(tuple, f));
    if (!nu_at_most(g, th.event_m)) return;
    ++scan.deep_hits;

    int mhalf = total / 2;
    std::vector<int> u(static_cast<size_t>(filter.s), 0);
    std::vector<Polynomial> shifted(tuple);
    bool shallow_ok = true;
    for (;;) {
      int j = 0;
      for (; j < filter.s; ++j) {
        if (++u[static_cast<size_t>(j)] <= u_cap) break;
        u[static_cast<size_t>(j)] = 0;
      }
      if (j == filter.s) break;
      for (int i = 0; i < filter.s; ++i) {
        int ui = u[static_cast<size_t>(i)];
        const Polynomial& ki = tuple[static_cast<size_t>(i)];
        if (ui == 0) {
          shifted[static_cast<size_t>(i)] = ki;
        } else {
          // The offset's digits sit strictly above deg ktilde, so integer
          // index addition is the polynomial sum.
          long long idx = static_cast<long long>(ki.to_index()) +
                          beta_offset(ki.degree() + 2, ui, filter.q);
          shifted[static_cast<size_t>(i)] =
              Polynomial::from_index(static_cast<unsigned long long>(idx), filter.q);
        }
      }
      LaurentSeries gu = fractional_part(linear_combination(shifted, f));
      if (nu_at_most(gu, mhalf)) {
        shallow_ok = false;
        break;
      }
    }
    if (!shallow_ok) return;

    WitnessCandidate w;
    w.ktilde = tuple;
    w.degrees = degrees;
    w.F = th.F;
    w.m = th.m;
    w.N = th.N;
    for (const auto& kj : tuple)
      w.kstars.push_back(static_cast<long long>(kj.to_index()) +
                         pow_ll(filter.q, kj.degree() + 1));
    scan.witnesses.push_back(std::move(w));
  });
  return scan;
}

}  // namespace dkron
