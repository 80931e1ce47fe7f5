#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stplus/matgrp.hpp"
#include "stplus/tori.hpp"

namespace stp::chars {

using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Centralizer shapes

enum class FactorKind { GL, U, SOplus, SOminus, SOodd, Sp };
std::string to_string(FactorKind k);

// GL/U: size = matrix size a over GF(q^degree). SO/Sp: size = dimension.
struct ShapeFactor {
  FactorKind kind;
  int size = 0;
  int degree = 1;
  bool operator==(const ShapeFactor& o) const = default;
};

BigInt factor_order(const ShapeFactor& f, std::uint64_t q);
int factor_rank(const ShapeFactor& f);

struct CentralizerShape {
  std::vector<ShapeFactor> factors;
  int outer_index = 1;

  BigInt connected_order(std::uint64_t q) const;
  BigInt predicted_order(std::uint64_t q) const { return outer_index * connected_order(q); }
  int fq_rank() const;
  int eps() const { return fq_rank() % 2 ? -1 : 1; }
  std::string to_string() const;
};

// Monic irreducible factors with multiplicities, by increasing degree.
std::vector<std::pair<Poly, int>> factor_poly(const Field& F, const Poly& f);

CentralizerShape centralizer_shape(const QuadraticSpace& space, const Matrix& g);
CentralizerShape centralizer_shape_symplectic(const Field& F, const Matrix& J, const Matrix& g);
// Dispatches on the form carried by the group.
CentralizerShape centralizer_shape(const MatGroup& G, const Matrix& g);

BigInt p_part(BigInt n, unsigned p);

// SO for q odd, Omega for q even.
GroupKind natural_kind(const Field& F);

// ---------------------------------------------------------------------------
// Class functions

// One integer value per conjugacy class of an enumerated group. The group
// must outlive the class function.
struct ClassFunction {
  const MatGroup* group = nullptr;
  std::vector<long long> values;

  long long operator[](std::size_t c) const { return values.at(c); }
  long long at(const Matrix& g) const { return values.at(group->class_of(g)); }
  bool operator==(const ClassFunction& o) const { return group == o.group && values == o.values; }
};

Rational inner_product(const ClassFunction& a, const ClassFunction& b);
ClassFunction trivial_character(const MatGroup& G);
// The linear character g -> spinor norm (q odd orthogonal groups).
ClassFunction spinor_character(const MatGroup& G);
ClassFunction pointwise_product(const ClassFunction& a, const ClassFunction& b);

// 0 off semisimple classes, eps_G eps_C |C_G(h)|_p on them; 1_G when the
// group is orthogonal of dimension <= 2.
ClassFunction steinberg(const MatGroup& G);
// Classes where the shape-predicted centralizer order differs from the
// enumerated one (empty when the shape oracle agrees).
std::vector<std::string> shape_oracle_mismatches(const MatGroup& G);

// St_H restricted to G = SO(V) (Omega(V) for q even), H the group of the
// extended space, and the dual omega_G.
class SteinbergPlus {
 public:
  SteinbergPlus(const MatGroup& G, Codim1Embedding emb);

  const MatGroup& group() const { return *G_; }
  const Codim1Embedding& embedding() const { return emb_; }
  CentralizerShape h_shape(const Matrix& g) const;
  long long st_h(const Matrix& g) const;

  const ClassFunction& st_g() const { return st_g_; }
  ClassFunction stplus() const;
  // St_H(s) / St_G(s), s the semisimple part.
  ClassFunction omega_quotient() const;
  // sign(eps quotient) * q^[dim V^s / 2].
  ClassFunction omega_power() const;
  // Both paths; throws if they disagree anywhere.
  ClassFunction omega() const;
  // Recomputes St_H on G from an enumerated H; number of disagreeing classes,
  // or nullopt when |H| exceeds opts.max_order.
  std::optional<std::size_t> cross_check_h(const EnumOptions& opts) const;

 private:
  const MatGroup* G_;
  Codim1Embedding emb_;
  ClassFunction st_g_;
  int eps_h_;
};

// Convenience: G built on space with its default one-dimension-larger space.
SteinbergPlus make_stplus(const MatGroup& G, Elem c = 1);

// Multiplicity of each irreducible character of T in f|_T.
std::map<std::vector<std::uint64_t>, long long> restrict_decompose(const ClassFunction& f,
                                                                   const tori::ExplicitTorus& T);

// ---------------------------------------------------------------------------
// Whole-group checks

struct MultReport {
  std::string split;  // e.g. "(1,sq)+(3,nsq)"
  int d1 = 0, d2 = 0;
  bool factor_q = false;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
};
// omega_G(g1 g2) against omega_G1(g1) omega_G2(g2) (times q when both parts
// are odd-dimensional) over all of G1 x G2, V = V1 + V2 with dim V1 = d1.
// One report per isometry type of the pair (V1, V2).
std::vector<MultReport> verify_product_law(const QuadraticSpace& V, int d1, const EnumOptions& opts = {});

struct ComparisonReport {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
};
// omega on the image of GL_n(q) in SO+_2n(q) against q^{dim fix}.
ComparisonReport compare_gl(int n, FieldPtr F, const EnumOptions& opts = {});
// omega on the image of U_n(q) against (-1)^n (-q)^{dim W^g}.
ComparisonReport compare_unitary(int n, FieldPtr F, const EnumOptions& opts = {});

// ---------------------------------------------------------------------------
// Series census

struct SeriesReport {
  std::string s_rep;
  std::uint64_t order_s = 1;
  std::uint64_t class_size = 1;
  int dim_fix = 0;
  int defect = -1;  // -1 when not applicable
  std::string tag;
  int m = 0;
  std::uint64_t predicted_norm = 0;
  std::uint64_t predicted_count = 0;
  std::uint64_t max_mult = 0;
};

struct InnerProductReport {
  Rational st, st_minus, one, one_minus;
  std::string expected;  // human-readable expected quadruple
  bool match = false;
};

struct CensusReport {
  std::string group;
  std::uint64_t q = 0;
  int dim = 0;
  std::string type;
  std::string dual;
  std::vector<SeriesReport> series;
  std::uint64_t predicted_norm_sum = 0;
  Rational bruteforce_norm;
  bool match = false;
  std::optional<InnerProductReport> inner_products;
};

// Series-by-series prediction of <St+, St+> over the semisimple classes of
// the dual group, against the brute-force inner product.
CensusReport census(const QuadraticSpace& V, const EnumOptions& opts = {});
// The four inner products of St+ with St, St (x) spinor, 1 and the spinor
// character, against the closed-form values (q odd).
InnerProductReport inner_product_check(const MatGroup& G, const ClassFunction& stplus);

// ---------------------------------------------------------------------------
// Structural checks

// Orbit sizes of G on the totally singular k-subspaces, sorted.
std::vector<std::uint64_t> singular_subspace_orbits(const MatGroup& G, int k);
// Some element of T has spinor norm -1 (q odd).
bool torus_has_spinor_minus(const tori::ExplicitTorus& T);

std::string encode_hex(const MatGroup& G, const Matrix& M);
std::string to_string(const Rational& r);

}  // namespace stp::chars
