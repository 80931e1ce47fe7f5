#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace stp::weyl {

enum class WType { B, D };
enum class Ambient { B, Dplus, Dminus };

std::string to_string(WType t);

// Monomial model: w(b_i) = sign[i] * b_{perm[i]} (0-based).
struct SignedPerm {
  std::vector<std::uint8_t> perm;
  std::vector<std::int8_t> sign;

  static SignedPerm identity(int n);
  int n() const { return static_cast<int>(perm.size()); }
  bool operator==(const SignedPerm& o) const = default;
  bool in_D() const;
  SignedPerm inverse() const;
};

// a * b = a o b (apply b first).
SignedPerm compose(const SignedPerm& a, const SignedPerm& b);
SignedPerm conjugate(const SignedPerm& x, const SignedPerm& g);  // g x g^-1

// Rank in W(B_n): Lehmer code * 2^n + sign bits.
std::uint64_t rank(const SignedPerm& w);
SignedPerm unrank(int n, std::uint64_t r);

std::uint64_t group_order(WType t, int n);
std::vector<SignedPerm> elements(WType t, int n);
std::vector<SignedPerm> generators(WType t, int n);

// d[i], e[j] for cycle lengths 1..n (index 0 unused).
struct ClassLabel {
  std::vector<int> d, e;
  int k() const;  // number of positive cycles
  int l() const;  // number of negative cycles
  bool operator==(const ClassLabel& o) const = default;
  bool operator<(const ClassLabel& o) const;
  std::string to_string() const;
  std::string d_string() const;
  std::string e_string() const;
};

ClassLabel class_label(const SignedPerm& w);
ClassLabel make_label(int n, const std::vector<std::pair<int, int>>& d, const std::vector<std::pair<int, int>>& e);
// All labels (d,e) with sum i d_i + sum j e_j = n.
std::vector<ClassLabel> all_labels(int n);
// Splitting of a B-class inside W(D_n): l = 0 and every i with d_i > 0 even.
bool label_splits(const ClassLabel& lab);

struct WeylClass {
  ClassLabel label;
  std::uint64_t size = 0;
  std::uint64_t centralizer = 0;
  SignedPerm rep;
  bool splits = false;  // D only: the B-class is a union of two D-classes
};

// Explicit orbit partition under conjugation.
std::vector<WeylClass> conjugacy_classes(WType t, int n);
// Class id of each element of W(B_n) indexed by rank (UINT32_MAX outside W).
std::vector<std::uint32_t> class_index_table(WType t, int n, std::vector<WeylClass>* classes = nullptr);

std::uint64_t centralizer_order_formula(const ClassLabel& lab, WType t);
std::uint64_t torus_weyl_order(Ambient amb, const ClassLabel& lab, bool exceptional);
// Same quantity by brute force in the signed-permutation model.
std::uint64_t torus_weyl_order_bruteforce(Ambient amb, const SignedPerm& w);

std::vector<SignedPerm> subgroup_elements(const std::vector<SignedPerm>& gens, int n);
// |A \ W / B| by orbit counting.
std::uint64_t double_coset_count(WType t, int n, const std::vector<SignedPerm>& A_gens,
                                 const std::vector<SignedPerm>& B_gens);
// (1_A^W, 1_B^W) via permutation-character values; returned as numerator
// over |A||B| reduced to an integer (throws if not integral).
std::uint64_t induced_inner_product(WType t, int n, const std::vector<SignedPerm>& A_gens,
                                    const std::vector<SignedPerm>& B_gens);

std::vector<SignedPerm> symmetric_generators(int m);  // S_m with all signs +
std::uint64_t self_norm(int m, WType t);
std::uint64_t cross_norm(int m);

void write_class_csv(std::ostream& os, WType t, int n);

}  // namespace stp::weyl
