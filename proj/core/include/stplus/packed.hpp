#pragma once

#include <cstdint>
#include <vector>

#include "stplus/linalg.hpp"

namespace stp {

using u128 = unsigned __int128;

// Row-major packing of an n x n matrix with ceil(log2 q) bits per entry into
// one 128-bit word. The zero word never encodes an invertible matrix.
class Packer {
 public:
  Packer() = default;
  Packer(const Field& F, int n);

  int dim() const { return n_; }
  int bits() const { return bits_; }
  u128 pack(const Matrix& M) const;
  Matrix unpack(u128 w) const;
  void unpack_to(u128 w, std::uint8_t* out) const;
  u128 pack_from(const std::uint8_t* in) const;

  static bool fits(const Field& F, int n);

 private:
  int n_ = 0;
  int bits_ = 0;
  std::uint8_t mask_ = 0;
};

// Multiplication of packed matrices using small lookup tables.
class PackedArith {
 public:
  PackedArith() = default;
  PackedArith(const Field& F, int n);

  // out = a * b for unpacked n x n arrays of field codes.
  void mul(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const;

 private:
  int n_ = 0;
  unsigned p_ = 0;
  bool prime_ = true;
  unsigned q_ = 0;
  std::vector<std::uint8_t> mul_, add_;
};

std::uint64_t hash128(u128 x);

// Open-addressing index over a sorted (or insertion-ordered) element vector.
class PackedIndex {
 public:
  void reset(std::size_t expected);
  // Returns existing index or inserts `pos` and returns it.
  std::uint32_t find_or_insert(u128 key, std::uint32_t pos, const std::vector<u128>& elems);
  std::int64_t find(u128 key, const std::vector<u128>& elems) const;
  void rebuild(const std::vector<u128>& elems);
  std::size_t capacity() const { return slots_.size(); }

 private:
  std::vector<std::uint32_t> slots_;  // index+1, 0 = empty
  std::size_t mask_ = 0;
  std::size_t count_ = 0;
};

}  // namespace stp
