#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace stp {

// Coefficients of the M-th cyclotomic polynomial, low to high.
const std::vector<long long>& cyclotomic_poly(unsigned M);

// Element of Z[zeta_M] in the power basis 1, zeta, ..., zeta^{phi(M)-1}.
class Cyclotomic {
 public:
  explicit Cyclotomic(unsigned M);
  static Cyclotomic root_power(unsigned M, long long k, long long coeff = 1);

  unsigned order() const { return M_; }
  const std::vector<long long>& coeffs() const { return c_; }
  // Adds coeff * zeta^k.
  void add_power(long long k, long long coeff);
  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  bool operator==(const Cyclotomic& o) const { return M_ == o.M_ && c_ == o.c_; }
  // Value if the element lies in Z.
  std::optional<long long> as_integer() const;

 private:
  friend Cyclotomic from_exponent_sums(unsigned M, const std::vector<long long>& c);
  void reduce(std::vector<long long> full);
  unsigned M_;
  std::vector<long long> c_;
};

// Reduces sum_k c[k] zeta_M^k (k in [0, M)) into the power basis.
Cyclotomic from_exponent_sums(unsigned M, const std::vector<long long>& c);

}  // namespace stp
