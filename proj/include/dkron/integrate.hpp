#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dkron/sequence.hpp"

namespace dkron {

// Test integrands over [0,1]^s with known integrals.
struct Integrand {
  std::string name;
  std::function<double(const std::vector<double>&)> f;
  std::function<double(int)> exact;  // integral as a function of dimension
};

const std::vector<Integrand>& integrand_registry();
const Integrand& find_integrand(const std::string& name);

struct QmcRow {
  long long N = 0;
  double estimate = 0.0;
  double error = 0.0;
};

// Equal-weight averages over the first N points of the digital sequence at
// digit resolution m, one row per requested N.
std::vector<QmcRow> qmc_error_table(const DigitalKroneckerConfig& cfg,
                                    const Integrand& g,
                                    const std::vector<long long>& Ns, int m);

// Baseline: the classical Kronecker sequence ({n alpha_1}, ..., {n alpha_s}).
std::vector<QmcRow> classical_error_table(const std::vector<double>& alphas,
                                          const Integrand& g,
                                          const std::vector<long long>& Ns);

}  // namespace dkron
