#include "dkron/sequence.hpp"

#include <cmath>
#include <stdexcept>

namespace dkron {

void DigitalKroneckerConfig::validate() const {
  require_prime_modulus(q);
  if (f.empty()) throw std::invalid_argument("config: direction tuple is empty");
  for (const LaurentSeries& g : f)
    if (g.modulus() != q)
      throw std::invalid_argument("config: direction series modulus differs from base");
}

nlohmann::json DigitalKroneckerConfig::to_json() const {
  nlohmann::json j;
  j["q"] = q;
  j["f"] = nlohmann::json::array();
  for (const LaurentSeries& g : f) j["f"].push_back(g.to_json());
  if (!name.empty()) j["name"] = name;
  return j;
}

DigitalKroneckerConfig DigitalKroneckerConfig::from_json(const nlohmann::json& j) {
  DigitalKroneckerConfig cfg;
  cfg.q = j.at("q").get<int>();
  for (const nlohmann::json& item : j.at("f")) {
    nlohmann::json literal = item;
    if (!literal.contains("q")) literal["q"] = cfg.q;
    cfg.f.push_back(LaurentSeries::from_json(literal));
  }
  if (j.contains("name")) cfg.name = j.at("name").get<std::string>();
  cfg.validate();
  return cfg;
}

std::string DigitalKroneckerConfig::canonical_string() const {
  return to_json().dump();
}

GeneratingMatrix::GeneratingMatrix(const LaurentSeries& f, int m)
    : q_(f.modulus()), m_(m), a_(static_cast<size_t>(m) * m, 0) {
  if (m < 1) throw std::invalid_argument("GeneratingMatrix: size must be positive");
  for (int r = 1; r <= m; ++r)
    for (int c = 1; c <= m; ++c)
      a_[static_cast<size_t>(r - 1) * m + (c - 1)] = f.coeff(r + c - 1);
}

int GeneratingMatrix::entry(int r, int c) const {
  if (r < 1 || r > m_ || c < 1 || c > m_)
    throw std::out_of_range("GeneratingMatrix: index out of range");
  return a_[static_cast<size_t>(r - 1) * m_ + (c - 1)];
}

long long GeneratingMatrix::map_index(long long n) const {
  if (n < 0 || n >= pow_ll(q_, m_))
    throw std::invalid_argument("GeneratingMatrix: index outside [0, q^m)");
  std::vector<int> nd(static_cast<size_t>(m_), 0);
  long long rest = n;
  for (int c = 0; c < m_ && rest > 0; ++c, rest /= q_)
    nd[static_cast<size_t>(c)] = static_cast<int>(rest % q_);
  long long y = 0;
  for (int r = 1; r <= m_; ++r) {
    long long acc = 0;
    for (int c = 1; c <= m_; ++c)
      acc += static_cast<long long>(a_[static_cast<size_t>(r - 1) * m_ + (c - 1)]) *
             nd[static_cast<size_t>(c - 1)];
    y = y * q_ + mod_reduce(acc, q_);
  }
  return y;
}

std::vector<GeneratingMatrix> generating_matrices(const DigitalKroneckerConfig& cfg, int m) {
  cfg.validate();
  std::vector<GeneratingMatrix> mats;
  mats.reserve(cfg.f.size());
  for (const LaurentSeries& g : cfg.f) mats.emplace_back(g, m);
  return mats;
}

std::vector<long long> point_grid_via_laurent(const DigitalKroneckerConfig& cfg,
                                              long long n, int m) {
  cfg.validate();
  if (n < 0) throw std::invalid_argument("point index must be nonnegative");
  const Polynomial np = Polynomial::from_index(static_cast<std::uint64_t>(n), cfg.q);
  std::vector<long long> out;
  out.reserve(cfg.f.size());
  for (const LaurentSeries& g : cfg.f) {
    const LaurentSeries prod = poly_mul_series(np, g);
    long long y = 0;
    for (int k = 1; k <= m; ++k) y = y * cfg.q + prod.coeff(k);
    out.push_back(y);
  }
  return out;
}

std::vector<double> point_via_laurent(const DigitalKroneckerConfig& cfg, long long n, int m) {
  const std::vector<long long> grid = point_grid_via_laurent(cfg, n, m);
  const double scale = 1.0 / static_cast<double>(pow_ll(cfg.q, m));
  std::vector<double> out;
  out.reserve(grid.size());
  for (long long y : grid) out.push_back(static_cast<double>(y) * scale);
  return out;
}

std::vector<long long> point_grid_via_matrices(const std::vector<GeneratingMatrix>& mats,
                                               long long n) {
  std::vector<long long> out;
  out.reserve(mats.size());
  for (const GeneratingMatrix& c : mats) out.push_back(c.map_index(n));
  return out;
}

std::vector<std::vector<long long>> generate_block(const DigitalKroneckerConfig& cfg,
                                                   long long n0, long long count, int m) {
  cfg.validate();
  if (n0 < 0 || count < 0) throw std::invalid_argument("generate_block: negative range");
  std::vector<std::vector<long long>> rows;
  rows.reserve(static_cast<size_t>(count));
  for (long long n = n0; n < n0 + count; ++n)
    rows.push_back(point_grid_via_laurent(cfg, n, m));
  return rows;
}

std::vector<double> classical_kronecker_point(const std::vector<double>& alphas, long long n) {
  std::vector<double> out;
  out.reserve(alphas.size());
  for (double a : alphas) {
    long double v = std::fmod(static_cast<long double>(n) * static_cast<long double>(a), 1.0L);
    if (v < 0) v += 1.0L;
    out.push_back(static_cast<double>(v));
  }
  return out;
}

}  // namespace dkron
