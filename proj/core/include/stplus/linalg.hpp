#pragma once

#include <string>
#include <vector>

#include "stplus/gf.hpp"

namespace stp {

using Vec = std::vector<Elem>;

// Dense matrix over a finite field; the field is passed to each operation.
// Matrices act on column vectors.
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<Elem> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  Elem& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  Elem operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator<(const Matrix& o) const { return a < o.a; }
  Vec row(int i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
  Vec col(int j) const;
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<Vec>& rows, int ncols);
};

namespace la {

Matrix mul(const Field& F, const Matrix& A, const Matrix& B);
Matrix add(const Field& F, const Matrix& A, const Matrix& B);
Matrix sub(const Field& F, const Matrix& A, const Matrix& B);
Matrix scale(const Field& F, const Matrix& A, Elem c);
Matrix transpose(const Matrix& A);
Matrix power(const Field& F, const Matrix& A, long long e);
Matrix inverse(const Field& F, const Matrix& A);  // throws if singular
Vec apply(const Field& F, const Matrix& A, const Vec& v);
Vec vadd(const Field& F, const Vec& u, const Vec& v);
Vec vsub(const Field& F, const Vec& u, const Vec& v);
Vec vscale(const Field& F, const Vec& u, Elem c);
bool is_zero(const Vec& v);
Elem det(const Field& F, const Matrix& A);
int rank(const Field& F, const Matrix& A);
// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(const Field& F, Matrix& A);
// Basis rows (RREF) of the row space spanned by `rows`.
std::vector<Vec> row_space(const Field& F, const std::vector<Vec>& rows, int ncols);
// Basis rows (RREF) of {x : A x = 0}.
std::vector<Vec> kernel(const Field& F, const Matrix& A);
// Basis rows (RREF) of the column space of A.
std::vector<Vec> image(const Field& F, const Matrix& A);
// Solve A x = b; returns false if inconsistent.
bool solve(const Field& F, const Matrix& A, const Vec& b, Vec& x);
// Characteristic polynomial det(xI - A), monic, low to high.
Poly charpoly(const Field& F, const Matrix& A);
// f(A) for a polynomial f.
Matrix poly_eval(const Field& F, const Poly& f, const Matrix& A);
long long order(const Field& F, const Matrix& A, long long limit = 1LL << 40);
std::string to_string(const Field& F, const Matrix& A);

}  // namespace la
}  // namespace stp
