#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dkron/laurent.hpp"
#include "dkron/poly.hpp"

namespace dkron {

// A digital Kronecker configuration: prime base q and the tuple of direction
// series f_1, ..., f_s. The n-th point is ({n(x) f_1}, ..., {n(x) f_s})
// evaluated at x = q, where n(x) carries the base-q digits of n.
struct DigitalKroneckerConfig {
  int q = 2;
  std::vector<LaurentSeries> f;
  std::string name;

  int dimension() const { return static_cast<int>(f.size()); }
  void validate() const;

  nlohmann::json to_json() const;
  static DigitalKroneckerConfig from_json(const nlohmann::json& j);

  // Stable dump used to fingerprint reports.
  std::string canonical_string() const;
};

// m x m matrix over Z_q whose 1-based (r, c) entry is the coefficient of f at
// index r + c - 1. Multiplying the digit vector of n (lowest digit first)
// yields the first m digits of {n(x) f}; the Hankel structure is exactly the
// shift action of multiplication by x.
class GeneratingMatrix {
 public:
  GeneratingMatrix(const LaurentSeries& f, int m);

  int size() const { return m_; }
  int modulus() const { return q_; }
  int entry(int r, int c) const;  // 1-based

  // Grid integer sum_k xi_k q^{m-k} of the mapped digits; requires n < q^m.
  long long map_index(long long n) const;

 private:
  int q_, m_;
  std::vector<int> a_;  // row-major
};

std::vector<GeneratingMatrix> generating_matrices(const DigitalKroneckerConfig& cfg, int m);

// n-th point to m digits through series arithmetic, components in [0, 1).
std::vector<double> point_via_laurent(const DigitalKroneckerConfig& cfg, long long n, int m);

// Same point as grid integers y_j in [0, q^m); y_j / q^m recovers the value.
std::vector<long long> point_grid_via_laurent(const DigitalKroneckerConfig& cfg,
                                              long long n, int m);

std::vector<long long> point_grid_via_matrices(const std::vector<GeneratingMatrix>& mats,
                                               long long n);

// Rows n0 .. n0+count-1, each a vector of s grid integers at resolution q^m.
std::vector<std::vector<long long>> generate_block(const DigitalKroneckerConfig& cfg,
                                                   long long n0, long long count, int m);

// Classical Kronecker point ({n a_1}, ..., {n a_s}) for real directions.
std::vector<double> classical_kronecker_point(const std::vector<double>& alphas, long long n);

}  // namespace dkron
