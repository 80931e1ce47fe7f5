#include "stplus/packed.hpp"

#include <stdexcept>

namespace stp {

namespace {
int bits_for(unsigned q) {
  int b = 0;
  while ((1u << b) < q) ++b;
  return b;
}
}  // namespace

bool Packer::fits(const Field& F, int n) { return n * n * bits_for(F.q()) <= 128 && F.q() <= 256; }

Packer::Packer(const Field& F, int n) : n_(n), bits_(bits_for(F.q())) {
  if (!fits(F, n))
    throw std::invalid_argument("a " + std::to_string(n) + "x" + std::to_string(n) + " matrix over " + F.name() +
                                " does not fit in 128 bits");
  mask_ = static_cast<std::uint8_t>((1u << bits_) - 1);
}

u128 Packer::pack_from(const std::uint8_t* in) const {
  u128 w = 0;
  int nn = n_ * n_;
  for (int i = nn - 1; i >= 0; --i) w = (w << bits_) | in[i];
  return w;
}

void Packer::unpack_to(u128 w, std::uint8_t* out) const {
  int nn = n_ * n_;
  for (int i = 0; i < nn; ++i) {
    out[i] = static_cast<std::uint8_t>(w) & mask_;
    w >>= bits_;
  }
}

u128 Packer::pack(const Matrix& M) const {
  std::uint8_t buf[128];
  for (int i = 0; i < n_ * n_; ++i) buf[i] = static_cast<std::uint8_t>(M.a[i]);
  return pack_from(buf);
}

Matrix Packer::unpack(u128 w) const {
  std::uint8_t buf[128];
  unpack_to(w, buf);
  Matrix M(n_, n_);
  for (int i = 0; i < n_ * n_; ++i) M.a[i] = buf[i];
  return M;
}

PackedArith::PackedArith(const Field& F, int n) : n_(n), p_(F.p()), prime_(F.k() == 1), q_(F.q()) {
  if (!prime_) {
    mul_.resize(q_ * q_);
    add_.resize(q_ * q_);
    for (unsigned a = 0; a < q_; ++a)
      for (unsigned b = 0; b < q_; ++b) {
        mul_[a * q_ + b] = static_cast<std::uint8_t>(F.mul(a, b));
        add_[a * q_ + b] = static_cast<std::uint8_t>(F.add(a, b));
      }
  }
}

void PackedArith::mul(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const {
  const int n = n_;
  if (prime_) {
    for (int i = 0; i < n; ++i) {
      unsigned acc[16] = {0};
      for (int t = 0; t < n; ++t) {
        unsigned x = a[i * n + t];
        if (!x) continue;
        const std::uint8_t* br = b + t * n;
        for (int j = 0; j < n; ++j) acc[j] += x * br[j];
      }
      for (int j = 0; j < n; ++j) out[i * n + j] = static_cast<std::uint8_t>(acc[j] % p_);
    }
    return;
  }
  for (int i = 0; i < n; ++i) {
    std::uint8_t acc[16] = {0};
    for (int t = 0; t < n; ++t) {
      unsigned x = a[i * n + t];
      if (!x) continue;
      const std::uint8_t* br = b + t * n;
      const std::uint8_t* mrow = mul_.data() + x * q_;
      for (int j = 0; j < n; ++j) acc[j] = add_[acc[j] * q_ + mrow[br[j]]];
    }
    for (int j = 0; j < n; ++j) out[i * n + j] = acc[j];
  }
}

std::uint64_t hash128(u128 x) {
  std::uint64_t lo = static_cast<std::uint64_t>(x), hi = static_cast<std::uint64_t>(x >> 64);
  std::uint64_t h = lo ^ (hi * 0x9E3779B97F4A7C15ull);
  h ^= h >> 31;
  h *= 0xBF58476D1CE4E5B9ull;
  h ^= h >> 29;
  h *= 0x94D049BB133111EBull;
  h ^= h >> 32;
  return h;
}

void PackedIndex::reset(std::size_t expected) {
  std::size_t cap = 16;
  while (cap < expected * 2) cap <<= 1;
  slots_.assign(cap, 0);
  mask_ = cap - 1;
  count_ = 0;
}

std::uint32_t PackedIndex::find_or_insert(u128 key, std::uint32_t pos, const std::vector<u128>& elems) {
  if ((count_ + 1) * 2 > slots_.size()) {
    // grow: reinsert existing positions
    std::vector<std::uint32_t> old;
    old.swap(slots_);
    std::size_t cap = old.size() * 2;
    slots_.assign(cap, 0);
    mask_ = cap - 1;
    for (auto s : old) {
      if (!s) continue;
      std::size_t h = hash128(elems[s - 1]) & mask_;
      while (slots_[h]) h = (h + 1) & mask_;
      slots_[h] = s;
    }
  }
  std::size_t h = hash128(key) & mask_;
  while (true) {
    std::uint32_t s = slots_[h];
    if (!s) {
      slots_[h] = pos + 1;
      ++count_;
      return pos;
    }
    if (elems[s - 1] == key) return s - 1;
    h = (h + 1) & mask_;
  }
}

std::int64_t PackedIndex::find(u128 key, const std::vector<u128>& elems) const {
  if (slots_.empty()) return -1;
  std::size_t h = hash128(key) & mask_;
  while (true) {
    std::uint32_t s = slots_[h];
    if (!s) return -1;
    if (elems[s - 1] == key) return s - 1;
    h = (h + 1) & mask_;
  }
}

void PackedIndex::rebuild(const std::vector<u128>& elems) {
  reset(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    std::size_t h = hash128(elems[i]) & mask_;
    while (slots_[h]) h = (h + 1) & mask_;
    slots_[h] = static_cast<std::uint32_t>(i + 1);
  }
  count_ = elems.size();
}

}  // namespace stp
