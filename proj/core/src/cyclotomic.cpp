#include "stplus/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace stp {

namespace {

std::vector<long long> poly_divexact(std::vector<long long> a, const std::vector<long long>& m) {
  // m monic
  std::size_t dm = m.size() - 1;
  if (a.size() < m.size()) throw std::logic_error("cyclotomic division degree");
  std::vector<long long> quo(a.size() - dm, 0);
  for (std::size_t i = a.size(); i-- > dm;) {
    long long c = a[i];
    quo[i - dm] = c;
    for (std::size_t j = 0; j <= dm; ++j) a[i - dm + j] -= c * m[j];
  }
  for (std::size_t i = 0; i < dm; ++i)
    if (a[i] != 0) throw std::logic_error("cyclotomic division not exact");
  return quo;
}

}  // namespace

const std::vector<long long>& cyclotomic_poly(unsigned M) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<long long>> cache;
  if (M == 0) throw std::invalid_argument("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(mu);
  // divisors in increasing order, so every proper divisor is cached first
  for (unsigned d = 1; d <= M; ++d) {
    if (M % d || cache.count(d)) continue;
    std::vector<long long> g(d + 1, 0);
    g[0] = -1;
    g[d] = 1;
    for (unsigned e = 1; e < d; ++e)
      if (d % e == 0) g = poly_divexact(g, cache.at(e));
    cache[d] = std::move(g);
  }
  return cache.at(M);
}

Cyclotomic::Cyclotomic(unsigned M) : M_(M) {
  c_.assign(cyclotomic_poly(M).size() - 1, 0);
}

Cyclotomic Cyclotomic::root_power(unsigned M, long long k, long long coeff) {
  Cyclotomic z(M);
  z.add_power(k, coeff);
  return z;
}

void Cyclotomic::reduce(std::vector<long long> full) {
  const auto& phi = cyclotomic_poly(M_);
  std::size_t deg = phi.size() - 1;
  for (std::size_t i = full.size(); i-- > deg;) {
    long long c = full[i];
    if (!c) continue;
    for (std::size_t j = 0; j <= deg; ++j) full[i - deg + j] -= c * phi[j];
  }
  full.resize(deg);
  c_ = std::move(full);
}

void Cyclotomic::add_power(long long k, long long coeff) {
  long long m = static_cast<long long>(M_);
  k = ((k % m) + m) % m;
  std::vector<long long> full(std::max<std::size_t>(c_.size(), static_cast<std::size_t>(k) + 1), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) full[i] = c_[i];
  full[k] += coeff;
  reduce(std::move(full));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  if (o.M_ != M_) throw std::invalid_argument("cyclotomic orders differ");
  Cyclotomic r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
  if (o.M_ != M_) throw std::invalid_argument("cyclotomic orders differ");
  Cyclotomic r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (o.M_ != M_) throw std::invalid_argument("cyclotomic orders differ");
  std::vector<long long> full(c_.size() + o.c_.size(), 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) full[i + j] += c_[i] * o.c_[j];
  Cyclotomic r(M_);
  r.reduce(std::move(full));
  return r;
}

std::optional<long long> Cyclotomic::as_integer() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return std::nullopt;
  return c_.empty() ? 0 : c_[0];
}

Cyclotomic from_exponent_sums(unsigned M, const std::vector<long long>& c) {
  Cyclotomic z(M);
  std::vector<long long> full(std::max<std::size_t>(c.size(), z.c_.size()), 0);
  for (std::size_t k = 0; k < c.size(); ++k) full[k % M] += c[k];
  z.reduce(std::move(full));
  return z;
}

}  // namespace stp
