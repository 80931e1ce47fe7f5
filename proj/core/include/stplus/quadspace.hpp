#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stplus/linalg.hpp"

namespace stp {

enum class FormType { Plus, Minus, Odd };

std::string to_string(FormType t);
FormType parse_form_type(const std::string& s);

// Vector space with a quadratic form Q(x) = sum_{i<=j} c_ij x_i x_j.
class QuadraticSpace {
 public:
  QuadraticSpace() = default;
  QuadraticSpace(FieldPtr field, Matrix qform);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int dim() const { return qform_.rows; }
  const Matrix& qform() const { return qform_; }
  const Matrix& gram() const { return gram_; }

  Elem Q(const Vec& v) const;
  Elem B(const Vec& u, const Vec& v) const;
  std::vector<Vec> radical() const;
  // q odd: B nondegenerate. q even: B nondegenerate (even dim) or a 1-dim
  // radical on which Q does not vanish (odd dim).
  bool nondegenerate() const;
  bool is_isometry(const Matrix& g) const;
  // The space with form x -> Q(M x).
  QuadraticSpace pullback(const Matrix& M) const;
  std::uint64_t hash() const;

 private:
  FieldPtr field_;
  Matrix qform_;
  Matrix gram_;
};

// Subspace of a space of dimension `ambient`, with basis rows in RREF.
struct Subspace {
  int ambient = 0;
  std::vector<Vec> basis;

  int dim() const { return static_cast<int>(basis.size()); }
  bool operator==(const Subspace& o) const { return ambient == o.ambient && basis == o.basis; }
  bool operator<(const Subspace& o) const { return basis < o.basis; }
};

Subspace span(const Field& F, const std::vector<Vec>& vectors, int ambient);
bool contains(const Field& F, const Subspace& S, const Vec& v);

struct WittData {
  int index = 0;
  int defect = -1;  // -1 when not applicable (odd dimension)
  int anisotropic_dim = 0;
  bool operator==(const WittData& o) const = default;
};

QuadraticSpace standard_space(int dim, FormType type, FieldPtr field);
WittData witt_decompose(const QuadraticSpace& space);
FormType form_type(const QuadraticSpace& space);
// Square class of the discriminant for q odd (true if square); true for q even.
bool discriminant_is_square(const QuadraticSpace& space);

Subspace fixed_space(const QuadraticSpace& space, const Matrix& g);
Subspace eigenspace(const QuadraticSpace& space, const Matrix& g, Elem lambda);
Subspace moved_space(const QuadraticSpace& space, const Matrix& g);
Subspace orthogonal_complement(const QuadraticSpace& space, const Subspace& sub);
QuadraticSpace restrict(const QuadraticSpace& space, const Subspace& sub);
QuadraticSpace orthogonal_sum(const QuadraticSpace& a, const QuadraticSpace& b);
bool is_totally_singular(const QuadraticSpace& space, const Subspace& sub);

// All k-dimensional subspaces in RREF, each exactly once; throws if the
// Grassmannian has more than max_count members.
std::vector<Subspace> all_subspaces(const Field& F, int n, int k, std::uint64_t max_count = 1u << 22);
std::vector<Subspace> totally_singular_subspaces(const QuadraticSpace& space, int k,
                                                 std::uint64_t max_count = 1u << 22);

// First nonzero singular vector in enumeration order, if any.
std::optional<Vec> find_singular_vector(const QuadraticSpace& space);
// Invertible M with to.Q(M x) = from.Q(x), if the spaces are isometric.
std::optional<Matrix> find_isometry(const QuadraticSpace& from, const QuadraticSpace& to);
// First nondegenerate subspace of dimension k (in enumeration order) whose
// restriction and complement satisfy the predicate.
std::optional<Subspace> find_nondegenerate_subspace(
    const QuadraticSpace& space, int k,
    const std::function<bool(const QuadraticSpace& sub, const QuadraticSpace& complement)>& pred);

// Matrix whose columns are the basis vectors of sub followed by those of other.
Matrix basis_matrix(const std::vector<Vec>& cols, int n);

}  // namespace stp
