#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stplus/packed.hpp"
#include "stplus/quadspace.hpp"

namespace stp {

using BigInt = boost::multiprecision::cpp_int;

enum class GroupKind { O, SO, Omega, Sp, GL, Unitary, Torus, Generated };

std::string to_string(GroupKind k);
GroupKind parse_group_kind(const std::string& s);

struct EnumOptions {
  std::uint64_t max_order = 20'000'000;
  std::string cache_dir;  // empty: STB_CACHE_DIR if set, else no caching
  bool use_cache = true;
  bool verbose = false;
};

// Closed-form orders.
BigInt order_sp(int dim, std::uint64_t q);
BigInt order_so_even(int dim, FormType type, std::uint64_t q);  // q odd SO, or q even Omega
BigInt group_order(const QuadraticSpace& space, GroupKind kind);

struct ConjClass {
  u128 rep = 0;
  std::uint64_t size = 0;
  std::uint64_t element_order = 0;
  bool semisimple = false;
  std::uint64_t centralizer_order = 0;
  std::uint32_t inverse_class = 0;
};

// Standard alternating form [[0,I],[-I,0]].
Matrix standard_symplectic_gram(const Field& F, int dim);

// A finite matrix group given by generators, optionally carrying the form it
// preserves, with lazily computed element set and conjugacy classes.
class MatGroup {
 public:
  MatGroup(FieldPtr field, int dim, GroupKind kind, std::vector<Matrix> generators);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int dim() const { return dim_; }
  GroupKind kind() const { return kind_; }
  std::string label() const;
  const std::vector<Matrix>& generators() const { return gens_; }

  const std::optional<QuadraticSpace>& quadratic() const { return quad_; }
  const std::optional<Matrix>& alternating() const { return alt_; }
  void set_quadratic(QuadraticSpace s) { quad_ = std::move(s); }
  void set_alternating(Matrix g) { alt_ = std::move(g); }
  void set_expected_order(std::optional<BigInt> n) { expected_ = std::move(n); }
  const std::optional<BigInt>& expected_order() const { return expected_; }

  const Packer& packer() const { return packer_; }
  u128 encode(const Matrix& M) const { return packer_.pack(M); }
  Matrix decode(u128 w) const { return packer_.unpack(w); }

  bool enumerated() const { return !elements_.empty(); }
  void enumerate(const EnumOptions& opts = {});
  std::uint64_t order() const;
  const std::vector<u128>& elements() const { return elements_; }
  Matrix element(std::size_t i) const { return decode(elements_.at(i)); }
  std::int64_t index_of(const Matrix& M) const { return index_.find(encode(M), elements_); }
  std::int64_t index_of(u128 w) const { return index_.find(w, elements_); }
  bool contains(const Matrix& M) const { return index_of(M) >= 0; }

  bool has_classes() const { return !classes_.empty(); }
  void compute_classes(const EnumOptions& opts = {});
  const std::vector<ConjClass>& classes() const { return classes_; }
  std::uint32_t class_of_index(std::size_t i) const { return class_of_.at(i); }
  std::uint32_t class_of(const Matrix& M) const;
  Matrix class_rep(std::uint32_t c) const { return decode(classes_.at(c).rep); }
  // |C_G(g)| by direct count over the element set.
  std::uint64_t centralizer_order_direct(const Matrix& g) const;

  // Cache hooks.
  std::string cache_stem() const;
  bool load_cache(const std::string& dir, bool want_classes);
  void save_cache(const std::string& dir) const;

 private:
  void bfs(const std::vector<Matrix>& gens, std::uint64_t cap);

  FieldPtr field_;
  int dim_;
  GroupKind kind_;
  std::vector<Matrix> gens_;
  std::optional<QuadraticSpace> quad_;
  std::optional<Matrix> alt_;
  std::optional<BigInt> expected_;
  Packer packer_;
  PackedArith arith_;
  std::vector<u128> elements_;
  PackedIndex index_;
  std::vector<std::uint32_t> class_of_;
  std::vector<ConjClass> classes_;
};

// Builds O/SO/Omega(space) from random products of reflections (and Siegel
// transformations when q is even), checked against the closed-form order.
MatGroup build_group(const QuadraticSpace& space, GroupKind kind, const EnumOptions& opts = {});
MatGroup build_symplectic(int dim, FieldPtr field, const EnumOptions& opts = {});
MatGroup generated_group(FieldPtr field, int dim, GroupKind kind, std::vector<Matrix> gens,
                         const EnumOptions& opts = {});

// Generators of the classical groups (no enumeration).
std::vector<Matrix> classical_generators(const QuadraticSpace& space, GroupKind kind, int count, std::uint64_t seed);

Matrix reflection(const QuadraticSpace& space, const Vec& v);
Matrix siegel(const QuadraticSpace& space, const Vec& u, const Vec& w);
Matrix symplectic_transvection(const Field& F, const Matrix& J, const Vec& v, Elem c);

struct JordanParts {
  Matrix s, u;
};
JordanParts jordan(const Field& F, const Matrix& g);
long long element_order(const Field& F, const Matrix& g);
bool is_semisimple(const Field& F, const Matrix& g);

// Vectors v_1..v_r with g = tau_{v_1} ... tau_{v_r} (q odd).
std::vector<Vec> reflection_factorization(const QuadraticSpace& space, const Matrix& g);
// Square class of prod Q(v_i) over a reflection factorization: +1 / -1 (q odd).
int spinor_norm(const QuadraticSpace& space, const Matrix& g);
// Same invariant from the discriminant of the Wall form on (1-g)V.
int spinor_norm_wall(const QuadraticSpace& space, const Matrix& g);
// rank(g - 1) mod 2 (q even).
int dickson(const QuadraticSpace& space, const Matrix& g);

// Embedding of O(small) into O(big) where big = small + one dimension and
// small is the orthogonal complement of a line (or the perp of the radical
// when q is even and dim small is odd).
class Codim1Embedding {
 public:
  // big = small (+) <w> with the extra coordinate carrying value c:
  // q odd or small even-dim q even: Q(w) = c, w orthogonal to small;
  // q even, small odd-dim: Q'(x + t w) = Q(x) + t B'(x,w) + c t^2.
  static Codim1Embedding extend(const QuadraticSpace& small, Elem c);
  // Chooses c so that the big space has the requested type.
  static Codim1Embedding extend_to_type(const QuadraticSpace& small, FormType big_type);
  // small = restriction of big to the subspace U (U nondegenerate, codim 1).
  static Codim1Embedding from_big(const QuadraticSpace& big, const Subspace& U);

  const QuadraticSpace& small() const { return small_; }
  const QuadraticSpace& big() const { return big_; }
  Elem extra_value() const { return c_; }
  Matrix lift(const Matrix& g) const;

 private:
  QuadraticSpace small_, big_;
  Matrix M_, Minv_;  // big coords = M * (small coords, t)
  bool search_lift_ = false;
  Elem c_ = 0;
};

// GL_n(q) -> SO+_{2n}(q) on the standard plus space.
class GLEmbedding {
 public:
  GLEmbedding(int n, FieldPtr field);
  const QuadraticSpace& big() const { return big_; }
  Matrix lift(const Matrix& g) const;
  MatGroup build_gl(const EnumOptions& opts = {}) const;

 private:
  int n_;
  FieldPtr field_;
  QuadraticSpace big_;
};

// U_n(q) -> O_{2n}(q): GF(q^2)^n with hermitian form sum x_i y_i^q, viewed
// over GF(q) with Q(w) = H(w,w), then moved onto the standard space.
class UnitaryEmbedding {
 public:
  UnitaryEmbedding(int n, FieldPtr field);
  const FieldPtr& big_field() const { return ext_field_; }
  const QuadraticSpace& big() const { return big_; }
  FormType type() const { return type_; }
  // g: n x n matrix over GF(q^2).
  Matrix lift(const Matrix& g) const;
  bool is_unitary(const Matrix& g) const;
  Elem herm(const Vec& x, const Vec& y) const;
  // GU_n(q) as a group of n x n matrices over GF(q^2).
  MatGroup build_unitary(const EnumOptions& opts = {}) const;
  static BigInt order_gu(int n, std::uint64_t q);

 private:
  int n_;
  FieldPtr field_, ext_field_;
  std::shared_ptr<FieldEmbedding> emb_;
  QuadraticSpace model_, big_;
  Matrix M_, Minv_;
  FormType type_;
};

std::string resolve_cache_dir(const EnumOptions& opts);

}  // namespace stp
