#include "stplus/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace stp {

Vec Matrix::col(int j) const {
  Vec v(rows);
  for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::identity(int n) {
  Matrix I(n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rs, int ncols) {
  Matrix M(static_cast<int>(rs.size()), ncols);
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (int j = 0; j < ncols; ++j) M(static_cast<int>(i), j) = rs[i].at(j);
  return M;
}

namespace la {

Matrix mul(const Field& F, const Matrix& A, const Matrix& B) {
  if (A.cols != B.rows) throw std::invalid_argument("matrix shape mismatch in product");
  Matrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int t = 0; t < A.cols; ++t) {
      Elem x = A(i, t);
      if (!x) continue;
      for (int j = 0; j < B.cols; ++j) C(i, j) = F.add(C(i, j), F.mul(x, B(t, j)));
    }
  return C;
}

Matrix add(const Field& F, const Matrix& A, const Matrix& B) {
  Matrix C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
  return C;
}

Matrix sub(const Field& F, const Matrix& A, const Matrix& B) {
  Matrix C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
  return C;
}

Matrix scale(const Field& F, const Matrix& A, Elem c) {
  Matrix C = A;
  for (auto& x : C.a) x = F.mul(x, c);
  return C;
}

Matrix transpose(const Matrix& A) {
  Matrix T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

Matrix inverse(const Field& F, const Matrix& A) {
  int n = A.rows;
  if (A.cols != n) throw std::invalid_argument("inverse of non-square matrix");
  Matrix M(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = A(i, j);
    M(i, n + i) = 1;
  }
  auto piv = rref(F, M);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
  Matrix R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(i, j) = M(i, n + j);
  return R;
}

Matrix power(const Field& F, const Matrix& A, long long e) {
  if (e < 0) return power(F, inverse(F, A), -e);
  Matrix R = Matrix::identity(A.rows), B = A;
  while (e) {
    if (e & 1) R = mul(F, R, B);
    B = mul(F, B, B);
    e >>= 1;
  }
  return R;
}

Vec apply(const Field& F, const Matrix& A, const Vec& v) {
  Vec r(A.rows, 0);
  for (int i = 0; i < A.rows; ++i) {
    Elem s = 0;
    for (int j = 0; j < A.cols; ++j) s = F.add(s, F.mul(A(i, j), v[j]));
    r[i] = s;
  }
  return r;
}

Vec vadd(const Field& F, const Vec& u, const Vec& v) {
  Vec r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = F.add(u[i], v[i]);
  return r;
}

Vec vsub(const Field& F, const Vec& u, const Vec& v) {
  Vec r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = F.sub(u[i], v[i]);
  return r;
}

Vec vscale(const Field& F, const Vec& u, Elem c) {
  Vec r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = F.mul(u[i], c);
  return r;
}

bool is_zero(const Vec& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

std::vector<int> rref(const Field& F, Matrix& A) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < A.cols && r < A.rows; ++c) {
    int s = r;
    while (s < A.rows && A(s, c) == 0) ++s;
    if (s == A.rows) continue;
    if (s != r)
      for (int j = 0; j < A.cols; ++j) std::swap(A(s, j), A(r, j));
    Elem iv = F.inv(A(r, c));
    for (int j = 0; j < A.cols; ++j) A(r, j) = F.mul(A(r, j), iv);
    for (int i = 0; i < A.rows; ++i) {
      if (i == r || A(i, c) == 0) continue;
      Elem f = A(i, c);
      for (int j = c; j < A.cols; ++j) A(i, j) = F.sub(A(i, j), F.mul(f, A(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

Elem det(const Field& F, const Matrix& A0) {
  Matrix A = A0;
  int n = A.rows;
  Elem d = 1;
  for (int c = 0; c < n; ++c) {
    int s = c;
    while (s < n && A(s, c) == 0) ++s;
    if (s == n) return 0;
    if (s != c) {
      for (int j = 0; j < n; ++j) std::swap(A(s, j), A(c, j));
      d = F.neg(d);
    }
    d = F.mul(d, A(c, c));
    Elem iv = F.inv(A(c, c));
    for (int i = c + 1; i < n; ++i) {
      if (!A(i, c)) continue;
      Elem f = F.mul(A(i, c), iv);
      for (int j = c; j < n; ++j) A(i, j) = F.sub(A(i, j), F.mul(f, A(c, j)));
    }
  }
  return d;
}

int rank(const Field& F, const Matrix& A) {
  Matrix B = A;
  return static_cast<int>(rref(F, B).size());
}

std::vector<Vec> row_space(const Field& F, const std::vector<Vec>& rows, int ncols) {
  if (rows.empty()) return {};
  Matrix M = Matrix::from_rows(rows, ncols);
  auto piv = rref(F, M);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(M.row(static_cast<int>(i)));
  return out;
}

std::vector<Vec> kernel(const Field& F, const Matrix& A0) {
  Matrix A = A0;
  auto piv = rref(F, A);
  std::vector<bool> is_piv(A.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < A.cols; ++f) {
    if (is_piv[f]) continue;
    Vec v(A.cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(A(static_cast<int>(i), f));
    basis.push_back(v);
  }
  return row_space(F, basis, A.cols);
}

std::vector<Vec> image(const Field& F, const Matrix& A) {
  Matrix T = transpose(A);
  std::vector<Vec> rows;
  for (int i = 0; i < T.rows; ++i) rows.push_back(T.row(i));
  return row_space(F, rows, A.rows);
}

bool solve(const Field& F, const Matrix& A, const Vec& b, Vec& x) {
  Matrix M(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) M(i, j) = A(i, j);
    M(i, A.cols) = b[i];
  }
  auto piv = rref(F, M);
  if (!piv.empty() && piv.back() == A.cols) return false;
  x.assign(A.cols, 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = M(static_cast<int>(i), A.cols);
  return true;
}

Poly charpoly(const Field& F, const Matrix& A0) {
  // Hessenberg reduction followed by the standard recurrence.
  int n = A0.rows;
  Matrix H = A0;
  for (int m = 1; m < n - 1; ++m) {
    int i = m;
    while (i < n && H(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (int j = 0; j < n; ++j) std::swap(H(i, j), H(m, j));
      for (int j = 0; j < n; ++j) std::swap(H(j, i), H(j, m));
    }
    Elem iv = F.inv(H(m, m - 1));
    for (int r = m + 1; r < n; ++r) {
      Elem u = F.mul(H(r, m - 1), iv);
      if (!u) continue;
      for (int j = 0; j < n; ++j) H(r, j) = F.sub(H(r, j), F.mul(u, H(m, j)));
      for (int j = 0; j < n; ++j) H(j, m) = F.add(H(j, m), F.mul(u, H(j, r)));
    }
  }
  std::vector<Poly> P(n + 1);
  P[0] = {1};
  for (int m = 1; m <= n; ++m) {
    // P[m] = (x - h_mm) P[m-1] - sum_{i<m} h_{i,m} * prod_{j=i+1}^{m} h_{j,j-1} * P[i-1]
    Poly a = F.poly_mul(Poly{F.neg(H(m - 1, m - 1)), 1}, P[m - 1]);
    Elem t = 1;
    for (int i = m - 1; i >= 1; --i) {
      t = F.mul(t, H(i, i - 1));
      Elem c = F.mul(t, H(i - 1, m - 1));
      if (!c) continue;
      Poly b = P[i - 1];
      for (auto& x : b) x = F.mul(x, c);
      b.resize(std::max(a.size(), b.size()), 0);
      a.resize(b.size(), 0);
      for (std::size_t k = 0; k < b.size(); ++k) a[k] = F.sub(a[k], b[k]);
    }
    P[m] = F.poly_trim(a);
  }
  return P[n];
}

Matrix poly_eval(const Field& F, const Poly& f, const Matrix& A) {
  Matrix R(A.rows, A.cols);
  for (std::size_t i = f.size(); i-- > 0;) {
    R = mul(F, R, A);
    for (int d = 0; d < A.rows; ++d) R(d, d) = F.add(R(d, d), f[i]);
  }
  return R;
}

long long order(const Field& F, const Matrix& A, long long limit) {
  Matrix I = Matrix::identity(A.rows), B = A;
  for (long long k = 1; k <= limit; ++k) {
    if (B == I) return k;
    B = mul(F, B, A);
  }
  throw std::runtime_error("matrix order exceeds limit");
}

std::string to_string(const Field& F, const Matrix& A) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < A.rows; ++i) {
    if (i) os << ";";
    for (int j = 0; j < A.cols; ++j) os << (j ? " " : "") << F.to_string(A(i, j));
  }
  os << "]";
  return os.str();
}

}  // namespace la
}  // namespace stp
