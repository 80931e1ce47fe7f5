#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stplus/cyclotomic.hpp"
#include "stplus/quadspace.hpp"
#include "stplus/weyl.hpp"

namespace stp::tori {

// Block data of a maximal torus: d[i] plus blocks of dimension 2i, e[j]
// minus blocks of dimension 2j, and a fixed line when dim0 = 1.
struct OrthoDecomp {
  std::vector<int> d, e;  // indexed by block half-size, index 0 unused
  int dim0 = 0;

  int k() const;
  int l() const;
  int dim() const;
  weyl::ClassLabel label() const;
  std::string to_string() const;
  bool operator==(const OrthoDecomp& o) const = default;
};

OrthoDecomp from_label(const weyl::ClassLabel& lab, int dim0);

enum class TorusClass { Generic, Neutral, Exceptional };
std::string to_string(TorusClass c);

struct TorusSpec {
  OrthoDecomp decomp;
  int dim = 0;
  FormType type = FormType::Odd;
  int branch = 0;  // 1 or 2 for the two classes of an exceptional torus in SO+, else 0

  std::string to_string() const;
};

weyl::Ambient ambient_of(FormType type);
// All decompositions for the given ambient space, exceptional ones in the plus
// case listed twice with branches 1 and 2.
std::vector<TorusSpec> enumerate_decomps(int dim, FormType type);

std::uint64_t torus_order(const TorusSpec& spec, std::uint64_t q);
TorusClass classify(const TorusSpec& spec);
std::uint64_t weyl_order(const TorusSpec& spec);

struct TorusFactor {
  bool plus = true;
  int size = 0;             // i (plus) or j (minus); the block has dimension 2*size
  std::uint64_t order = 1;  // q^i - 1 or q^j + 1
  Matrix gen;               // generator, acting on the whole space
  Subspace block;
};

// A torus realized inside SO(space) for space = standard_space(dim, type).
struct ExplicitTorus {
  TorusSpec spec;
  QuadraticSpace space;
  std::vector<TorusFactor> factors;

  std::uint64_t order() const;
  std::uint64_t exponent() const;
  std::vector<std::uint64_t> factor_orders() const;
  // prod gen_r^{a_r}
  Matrix element(const std::vector<std::uint64_t>& a) const;
  // All exponent tuples in lexicographic order (the element and the
  // character index sets).
  std::vector<std::vector<std::uint64_t>> tuples() const;
  std::vector<Matrix> elements() const;
  Subspace fixed_space() const;
};

ExplicitTorus build_torus(const TorusSpec& spec, FieldPtr field);

// theta_a(t_b) = zeta_M^{sum a_r b_r M / o_r}, M = exponent.
std::uint64_t character_exponent(const ExplicitTorus& T, const std::vector<std::uint64_t>& a,
                                 const std::vector<std::uint64_t>& b);
Cyclotomic character_value(const ExplicitTorus& T, const std::vector<std::uint64_t>& a,
                           const std::vector<std::uint64_t>& b);

// <f|_T, theta> for every theta, for an integer-valued class function given by
// its values on the elements of T (in tuples() order). Throws if a
// multiplicity is not an integer.
std::map<std::vector<std::uint64_t>, long long> multiplicities(const ExplicitTorus& T,
                                                               const std::vector<long long>& values);

// Closed-form multiplicity of theta in omega restricted to T: 0 if a minus
// component is trivial, otherwise 2^(number of trivial plus components).
long long omega_pattern(const ExplicitTorus& T, const std::vector<std::uint64_t>& theta);

}  // namespace stp::tori
