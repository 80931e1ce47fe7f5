#include "stplus/gf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace stp {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

Field::Field(unsigned p, unsigned k) : p_(p), k_(k) {
  std::uint64_t q = 1;
  pw_.push_back(1);
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    pw_.push_back(static_cast<Elem>(q));
  }
  q_ = static_cast<Elem>(q);
}

FieldPtr Field::make(unsigned p, unsigned k, std::uint64_t bound) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw std::invalid_argument("field degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > bound) throw std::invalid_argument("field size " + std::to_string(p) + "^" + std::to_string(k) + " exceeds bound " + std::to_string(bound));
  }
  std::shared_ptr<Field> f(new Field(p, k));
  if (k == 1) {
    f->modulus_ = {0, 1};
  } else {
    FieldPtr prime = make(p, 1, bound);
    bool found = false;
    for (std::uint64_t code = 0; code < q && !found; ++code) {
      Poly cand(k + 1);
      std::uint64_t c = code;
      for (unsigned i = 0; i < k; ++i) {
        cand[i] = static_cast<Elem>(c % p);
        c /= p;
      }
      cand[k] = 1;
      if (prime->poly_irreducible(cand)) {
        f->modulus_.assign(cand.begin(), cand.end());
        found = true;
      }
    }
    if (!found) throw std::logic_error("no irreducible modulus found");
  }
  f->build_tables();
  return f;
}

std::string Field::name() const {
  std::ostringstream os;
  os << "GF(" << q_ << ")";
  return os.str();
}

unsigned Field::digit(Elem a, unsigned i) const { return (a / pw_[i]) % p_; }

Elem Field::add(Elem a, Elem b) const {
  if (k_ == 1) {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (p_ == 2) return a ^ b;
  Elem r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    unsigned d = (digit(a, i) + digit(b, i)) % p_;
    r += d * pw_[i];
  }
  return r;
}

Elem Field::neg(Elem a) const {
  if (p_ == 2) return a;
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  Elem r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    unsigned d = digit(a, i);
    r += ((p_ - d) % p_) * pw_[i];
  }
  return r;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::slow_mul(Elem a, Elem b) const {
  if (k_ == 1) return static_cast<Elem>((std::uint64_t)a * b % p_);
  std::vector<std::uint64_t> r(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    unsigned ai = digit(a, i);
    if (!ai) continue;
    for (unsigned j = 0; j < k_; ++j) r[i + j] += (std::uint64_t)ai * digit(b, j);
  }
  for (auto& x : r) x %= p_;
  for (int d = 2 * (int)k_ - 2; d >= (int)k_; --d) {
    std::uint64_t c = r[d] % p_;
    if (!c) continue;
    r[d] = 0;
    for (unsigned i = 0; i < k_; ++i) r[d - k_ + i] = (r[d - k_ + i] + (p_ - c) * modulus_[i]) % p_;
  }
  Elem out = 0;
  for (unsigned i = 0; i < k_; ++i) out += static_cast<Elem>(r[i] % p_) * pw_[i];
  return out;
}

void Field::build_tables() {
  std::uint64_t n = q_ - 1;
  auto facs = prime_factors(n);
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  if (q_ == 2) {
    primitive_ = 1;
  } else {
    for (Elem g = 2; g < q_; ++g) {
      bool ok = true;
      for (auto r : facs)
        if (slow_pow(g, n / r) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        primitive_ = g;
        break;
      }
    }
  }
  if (q_ <= (1u << 16)) {
    tables_ = true;
    exp_.assign(2 * n + 1, 0);
    log_.assign(q_, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      exp_[i] = x;
      log_[x] = static_cast<std::uint32_t>(i);
      x = slow_mul(x, primitive_);
    }
    for (std::uint64_t i = n; i < 2 * n + 1; ++i) exp_[i] = exp_[i - n];
  }
}

Elem Field::mul(Elem a, Elem b) const {
  if (k_ == 1) return static_cast<Elem>((std::uint64_t)a * b % p_);
  if (a == 0 || b == 0) return 0;
  if (tables_) return exp_[log_[a] + log_[b]];
  return slow_mul(a, b);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (tables_) return exp_[static_cast<std::size_t>((std::uint64_t)log_[a] * (e % (q_ - 1)) % (q_ - 1))];
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero in " + name());
  if (tables_) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

Elem Field::from_int(long long v) const {
  long long r = v % (long long)p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

bool Field::is_square(Elem a) const {
  if (!odd() || a == 0) return true;
  if (tables_) return log_[a] % 2 == 0;
  return pow(a, (q_ - 1) / 2) == 1;
}

std::optional<Elem> Field::sqrt(Elem a) const {
  if (a == 0) return Elem{0};
  if (!odd()) return pow(a, q_ / 2);
  if (!is_square(a)) return std::nullopt;
  if (tables_) return exp_[log_[a] / 2];
  // Tonelli-Shanks
  std::uint64_t Q = q_ - 1;
  unsigned S = 0;
  while (Q % 2 == 0) {
    Q /= 2;
    ++S;
  }
  Elem z = nonsquare();
  Elem c = pow(z, Q), t = pow(a, Q), r = pow(a, (Q + 1) / 2);
  unsigned M = S;
  while (t != 1) {
    unsigned i = 0;
    Elem tt = t;
    while (tt != 1) {
      tt = mul(tt, tt);
      ++i;
    }
    Elem b = c;
    for (unsigned j = 0; j + 1 < M - i; ++j) b = mul(b, b);
    M = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  return r;
}

Elem Field::nonsquare() const {
  if (!odd()) throw std::logic_error("no non-squares in characteristic 2");
  for (Elem a = 1; a < q_; ++a)
    if (!is_square(a)) return a;
  throw std::logic_error("non-square search failed");
}

Elem Field::abs_trace(Elem a) const {
  Elem s = 0, x = a;
  for (unsigned i = 0; i < k_; ++i) {
    s = add(s, x);
    x = frobenius(x);
  }
  return s;
}

std::uint32_t Field::mult_order(Elem a) const {
  if (a == 0) throw std::domain_error("order of zero");
  std::uint64_t n = q_ - 1;
  for (auto r : prime_factors(q_ - 1))
    while (n % r == 0 && pow(a, n / r) == 1) n /= r;
  return static_cast<std::uint32_t>(n);
}

std::string Field::to_string(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  std::string s;
  for (int i = (int)k_ - 1; i >= 0; --i) {
    unsigned d = digit(a, i);
    if (!d) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || d != 1) s += std::to_string(d);
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

Poly Field::poly_trim(Poly f) const {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Poly Field::poly_mul(const Poly& a, const Poly& b) const {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
  }
  return poly_trim(r);
}

std::pair<Poly, Poly> Field::poly_divmod(const Poly& a, const Poly& m) const {
  Poly mm = poly_trim(m);
  if (mm.empty()) throw std::domain_error("polynomial division by zero");
  Poly r = poly_trim(a);
  if (r.size() < mm.size()) return {{}, r};
  Poly quo(r.size() - mm.size() + 1, 0);
  Elem lead_inv = inv(mm.back());
  for (std::size_t d = r.size(); d-- >= mm.size();) {
    Elem c = mul(r[d], lead_inv);
    if (c) {
      std::size_t shift = d - (mm.size() - 1);
      quo[shift] = c;
      for (std::size_t i = 0; i < mm.size(); ++i) r[shift + i] = sub(r[shift + i], mul(c, mm[i]));
    }
    if (d == 0) break;
  }
  return {poly_trim(quo), poly_trim(r)};
}

Poly Field::poly_mod(const Poly& a, const Poly& m) const { return poly_divmod(a, m).second; }

Poly Field::poly_divexact(const Poly& a, const Poly& m) const {
  auto [quo, rem] = poly_divmod(a, m);
  if (!rem.empty()) throw std::logic_error("inexact polynomial division");
  return quo;
}

Poly Field::poly_monic(const Poly& f) const {
  Poly g = poly_trim(f);
  if (g.empty()) return g;
  Elem c = inv(g.back());
  for (auto& x : g) x = mul(x, c);
  return g;
}

Poly Field::poly_gcd(Poly a, Poly b) const {
  a = poly_trim(a);
  b = poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

Poly Field::poly_powmod(const Poly& base, std::uint64_t e, const Poly& m) const {
  Poly r{1};
  Poly b = poly_mod(base, m);
  r = poly_mod(r, m);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, b), m);
    b = poly_mod(poly_mul(b, b), m);
    e >>= 1;
  }
  return r;
}

Elem Field::poly_eval(const Poly& f, Elem x) const {
  Elem r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = add(mul(r, x), f[i]);
  return r;
}

bool Field::poly_irreducible(const Poly& f0) const {
  Poly f = poly_monic(f0);
  if (f.size() < 2) return false;
  std::size_t n = f.size() - 1;
  if (n == 1) return true;
  // Rabin: x^{q^n} = x mod f and gcd(x^{q^{n/r}} - x, f) = 1 for primes r | n.
  std::vector<Poly> xq(n + 1);
  xq[0] = poly_mod(Poly{0, 1}, f);
  for (std::size_t i = 1; i <= n; ++i) xq[i] = poly_powmod(xq[i - 1], q_, f);
  if (poly_trim(xq[n]) != poly_trim(xq[0])) return false;
  for (auto r : prime_factors(n)) {
    Poly h = xq[n / r];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = sub(h[1], 1);
    if (poly_gcd(h, f).size() != 1) return false;
  }
  return true;
}

std::optional<FieldElement> FieldElement::sqrt() const {
  auto r = f_->sqrt(v_);
  if (!r) return std::nullopt;
  return FieldElement(f_, *r);
}

// ---------------------------------------------------------------------------

FieldEmbedding::FieldEmbedding(FieldPtr sub, FieldPtr super) : sub_(std::move(sub)), super_(std::move(super)) {
  if (sub_->p() != super_->p() || super_->k() % sub_->k() != 0)
    throw std::invalid_argument("incompatible field degrees for embedding " + sub_->name() + " -> " + super_->name());
  m_ = super_->k() / sub_->k();
  const Field& L = *super_;
  unsigned k = sub_->k(), K = L.k(), p = L.p();
  if (k == 1) {
    gen_image_ = 0;
  } else {
    Poly mod(sub_->modulus().begin(), sub_->modulus().end());
    bool found = false;
    for (Elem r = 0; r < L.q(); ++r)
      if (L.poly_eval(mod, r) == 0) {
        gen_image_ = r;
        found = true;
        break;
      }
    if (!found) throw std::logic_error("no root of subfield modulus");
  }
  image_.resize(sub_->q());
  for (Elem a = 0; a < sub_->q(); ++a) {
    Elem v = 0, pw = 1;
    for (unsigned i = 0; i < k; ++i) {
      v = L.add(v, L.mul(sub_->digit(a, i), pw));
      pw = L.mul(pw, gen_image_);
    }
    if (k == 1) v = a;
    image_[a] = v;
    back_[v] = a;
  }
  theta_ = L.primitive();
  // Columns: image(x^i) * theta^j expressed over GF(p); invert mod p.
  std::vector<std::vector<long long>> A(K, std::vector<long long>(2 * K, 0));
  Elem tj = 1;
  for (unsigned j = 0; j < m_; ++j) {
    for (unsigned i = 0; i < k; ++i) {
      Elem sub_code = 1;
      for (unsigned t = 0; t < i; ++t) sub_code *= p;
      Elem v = L.mul(image_[sub_code], tj);
      unsigned col = i + k * j;
      for (unsigned r = 0; r < K; ++r) A[r][col] = L.digit(v, r);
    }
    tj = L.mul(tj, theta_);
  }
  for (unsigned r = 0; r < K; ++r) A[r][K + r] = 1;
  for (unsigned c = 0; c < K; ++c) {
    unsigned piv = c;
    while (piv < K && A[piv][c] % p == 0) ++piv;
    if (piv == K) throw std::logic_error("relative basis is singular");
    std::swap(A[piv], A[c]);
    long long iv = 1;
    for (long long t = 1; t < (long long)p; ++t)
      if ((A[c][c] * t) % p == 1) iv = t;
    for (auto& x : A[c]) x = (x * iv) % p;
    for (unsigned r = 0; r < K; ++r) {
      if (r == c || A[r][c] == 0) continue;
      long long f = A[r][c];
      for (unsigned t = 0; t < 2 * K; ++t) A[r][t] = ((A[r][t] - f * A[c][t]) % (long long)p + p) % p;
    }
  }
  coord_inv_.assign(K, std::vector<unsigned>(K));
  for (unsigned r = 0; r < K; ++r)
    for (unsigned c = 0; c < K; ++c) coord_inv_[r][c] = static_cast<unsigned>(A[r][K + c]);
}

Elem FieldEmbedding::apply(Elem a) const {
  if (a >= image_.size()) throw std::out_of_range("element outside subfield");
  return image_[a];
}

Elem FieldEmbedding::preimage(Elem x) const {
  auto it = back_.find(x);
  if (it == back_.end()) throw std::domain_error("element not in embedded subfield");
  return it->second;
}

Elem FieldEmbedding::trace(Elem x) const {
  const Field& L = *super_;
  Elem s = 0, y = x;
  for (unsigned i = 0; i < m_; ++i) {
    s = L.add(s, y);
    y = L.pow(y, sub_->q());
  }
  return preimage(s);
}

Elem FieldEmbedding::norm(Elem x) const {
  const Field& L = *super_;
  std::uint64_t e = (std::uint64_t(L.q()) - 1) / (sub_->q() - 1);
  return preimage(L.pow(x, e));
}

std::vector<Elem> FieldEmbedding::coords(Elem x) const {
  const Field& L = *super_;
  unsigned K = L.k(), k = sub_->k(), p = L.p();
  std::vector<unsigned> d(K);
  for (unsigned r = 0; r < K; ++r) d[r] = L.digit(x, r);
  std::vector<Elem> out(m_, 0);
  for (unsigned col = 0; col < K; ++col) {
    std::uint64_t s = 0;
    for (unsigned r = 0; r < K; ++r) s += (std::uint64_t)coord_inv_[col][r] * d[r];
    unsigned c = static_cast<unsigned>(s % p);
    unsigned i = col % k, j = col / k;
    Elem pw = 1;
    for (unsigned t = 0; t < i; ++t) pw *= p;
    out[j] += c * pw;
  }
  return out;
}

Elem FieldEmbedding::from_coords(const std::vector<Elem>& c) const {
  const Field& L = *super_;
  Elem s = 0, tj = 1;
  for (unsigned j = 0; j < m_; ++j) {
    s = L.add(s, L.mul(apply(c.at(j)), tj));
    tj = L.mul(tj, theta_);
  }
  return s;
}

}  // namespace stp
