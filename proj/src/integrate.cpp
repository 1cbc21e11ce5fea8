#include "dkron/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dkron {

const std::vector<Integrand>& integrand_registry() {
  static const std::vector<Integrand> registry = {
      {"one", [](const std::vector<double>&) { return 1.0; },
       [](int) { return 1.0; }},
      {"mean_linear",
       [](const std::vector<double>& x) {
         double s = 0.0;
         for (double v : x) s += v;
         return s / static_cast<double>(x.size());
       },
       [](int) { return 0.5; }},
      {"prod_linear",
       [](const std::vector<double>& x) {
         double p = 1.0;
         for (double v : x) p *= v;
         return p;
       },
       [](int s) { return std::pow(0.5, s); }},
      {"prod_sine",
       [](const std::vector<double>& x) {
         double p = 1.0;
         for (double v : x) p *= std::sin(std::numbers::pi * v);
         return p;
       },
       [](int s) { return std::pow(2.0 / std::numbers::pi, s); }},
  };
  return registry;
}

const Integrand& find_integrand(const std::string& name) {
  for (const auto& g : integrand_registry())
    if (g.name == name) return g;
  throw std::invalid_argument("unknown integrand: " + name);
}

namespace {

std::vector<QmcRow> table_from_points(
    const std::function<std::vector<double>(long long)>& point,
    const Integrand& g, const std::vector<long long>& Ns, int s) {
  std::vector<long long> sorted(Ns);
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty() || sorted.front() <= 0)
    throw std::invalid_argument("sample counts must be positive");
  std::vector<QmcRow> rows;
  double acc = 0.0;
  long long n = 0;
  for (long long target : sorted) {
    for (; n < target; ++n) acc += g.f(point(n));
    QmcRow row;
    row.N = target;
    row.estimate = acc / static_cast<double>(target);
    row.error = std::abs(row.estimate - g.exact(s));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<QmcRow> qmc_error_table(const DigitalKroneckerConfig& cfg,
                                    const Integrand& g,
                                    const std::vector<long long>& Ns, int m) {
  cfg.validate();
  return table_from_points(
      [&](long long n) { return point_via_laurent(cfg, n, m); }, g, Ns,
      cfg.dimension());
}

std::vector<QmcRow> classical_error_table(const std::vector<double>& alphas,
                                          const Integrand& g,
                                          const std::vector<long long>& Ns) {
  if (alphas.empty()) throw std::invalid_argument("need at least one direction");
  return table_from_points(
      [&](long long n) { return classical_kronecker_point(alphas, n); }, g, Ns,
      static_cast<int>(alphas.size()));
}

}  // namespace dkron
