#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace stp {

// Field elements are integer codes: the element sum c_i x^i (c_i in [0,p))
// is stored as sum c_i p^i. Codes 0..p-1 are the prime subfield.
using Elem = std::uint32_t;
using Poly = std::vector<Elem>;  // coefficients low to high

class Field;
using FieldPtr = std::shared_ptr<const Field>;

constexpr std::uint64_t kDefaultFieldBound = 1u << 20;

bool is_prime(std::uint64_t n);

class Field {
 public:
  static FieldPtr make(unsigned p, unsigned k, std::uint64_t bound = kDefaultFieldBound);

  unsigned p() const { return p_; }
  unsigned k() const { return k_; }
  Elem q() const { return q_; }
  bool odd() const { return p_ != 2; }
  // Monic modulus over GF(p), length k+1.
  const std::vector<unsigned>& modulus() const { return modulus_; }
  std::string name() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem from_int(long long v) const;

  bool is_square(Elem a) const;
  std::optional<Elem> sqrt(Elem a) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }
  // Smallest-code generator of the multiplicative group.
  Elem primitive() const { return primitive_; }
  // Smallest-code non-square (q odd only).
  Elem nonsquare() const;
  // Absolute trace to GF(p), returned as a prime-field code.
  Elem abs_trace(Elem a) const;
  unsigned digit(Elem a, unsigned i) const;
  std::uint32_t mult_order(Elem a) const;
  std::string to_string(Elem a) const;

  // Polynomial helpers over this field.
  Poly poly_trim(Poly f) const;
  Poly poly_mul(const Poly& a, const Poly& b) const;
  Poly poly_mod(const Poly& a, const Poly& m) const;
  Poly poly_divexact(const Poly& a, const Poly& m) const;  // throws if remainder nonzero
  std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& m) const;
  Poly poly_gcd(Poly a, Poly b) const;  // monic
  Poly poly_powmod(const Poly& base, std::uint64_t e, const Poly& m) const;
  Poly poly_monic(const Poly& f) const;
  bool poly_irreducible(const Poly& f) const;
  Elem poly_eval(const Poly& f, Elem x) const;

 private:
  Field(unsigned p, unsigned k);
  Elem slow_mul(Elem a, Elem b) const;
  void build_tables();

  unsigned p_, k_;
  Elem q_;
  std::vector<unsigned> modulus_;
  std::vector<Elem> pw_;  // p^i
  bool tables_ = false;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  Elem primitive_ = 1;
};

// Value-semantics wrapper for readable arithmetic in tests and examples.
class FieldElement {
 public:
  FieldElement(FieldPtr f, Elem v) : f_(std::move(f)), v_(v) {}
  Elem code() const { return v_; }
  const FieldPtr& field() const { return f_; }
  FieldElement operator+(const FieldElement& o) const { return {f_, f_->add(v_, o.v_)}; }
  FieldElement operator-(const FieldElement& o) const { return {f_, f_->sub(v_, o.v_)}; }
  FieldElement operator*(const FieldElement& o) const { return {f_, f_->mul(v_, o.v_)}; }
  FieldElement operator/(const FieldElement& o) const { return {f_, f_->div(v_, o.v_)}; }
  FieldElement operator-() const { return {f_, f_->neg(v_)}; }
  FieldElement pow(std::uint64_t e) const { return {f_, f_->pow(v_, e)}; }
  FieldElement inv() const { return {f_, f_->inv(v_)}; }
  bool operator==(const FieldElement& o) const { return v_ == o.v_; }
  bool is_square() const { return f_->is_square(v_); }
  std::optional<FieldElement> sqrt() const;
  FieldElement frobenius() const { return {f_, f_->frobenius(v_)}; }

 private:
  FieldPtr f_;
  Elem v_;
};

// A fixed embedding of GF(p^k) into GF(p^K), k | K, with relative trace, norm
// and coordinates of the big field as a vector space over the small one.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr sub, FieldPtr super);

  const FieldPtr& sub() const { return sub_; }
  const FieldPtr& super() const { return super_; }
  unsigned degree() const { return m_; }
  Elem apply(Elem a) const;
  // Inverse of apply on the image; throws if x is not in the image.
  Elem preimage(Elem x) const;
  bool in_image(Elem x) const { return back_.count(x) != 0; }
  Elem trace(Elem x) const;
  Elem norm(Elem x) const;
  // Element of the big field whose powers theta^0..theta^{m-1} form the basis.
  Elem basis_generator() const { return theta_; }
  std::vector<Elem> coords(Elem x) const;  // m sub-field codes
  Elem from_coords(const std::vector<Elem>& c) const;

 private:
  FieldPtr sub_, super_;
  unsigned m_;
  Elem gen_image_;
  Elem theta_;
  std::vector<Elem> image_;  // sub code -> super code
  std::unordered_map<Elem, Elem> back_;
  std::vector<std::vector<unsigned>> coord_inv_;  // GF(p) matrix, K x K
};

}  // namespace stp
