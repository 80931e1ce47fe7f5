#include "stplus/quadspace.hpp"

#include <cmath>
#include <stdexcept>

namespace stp {

std::string to_string(FormType t) {
  switch (t) {
    case FormType::Plus: return "+";
    case FormType::Minus: return "-";
    case FormType::Odd: return "odd";
  }
  return "?";
}

FormType parse_form_type(const std::string& s) {
  if (s == "+" || s == "plus") return FormType::Plus;
  if (s == "-" || s == "minus") return FormType::Minus;
  if (s == "odd" || s == "0") return FormType::Odd;
  throw std::invalid_argument("unknown form type '" + s + "' (expected +, - or odd)");
}

QuadraticSpace::QuadraticSpace(FieldPtr field, Matrix qform) : field_(std::move(field)) {
  const Field& F = *field_;
  int n = qform.rows;
  if (qform.cols != n) throw std::invalid_argument("quadratic form matrix must be square");
  qform_ = Matrix(n, n);
  for (int i = 0; i < n; ++i) {
    qform_(i, i) = qform(i, i);
    for (int j = i + 1; j < n; ++j) qform_(i, j) = F.add(qform(i, j), qform(j, i));
  }
  gram_ = Matrix(n, n);
  for (int i = 0; i < n; ++i) {
    gram_(i, i) = F.add(qform_(i, i), qform_(i, i));
    for (int j = i + 1; j < n; ++j) gram_(i, j) = gram_(j, i) = qform_(i, j);
  }
}

Elem QuadraticSpace::Q(const Vec& v) const {
  const Field& F = *field_;
  Elem s = 0;
  int n = dim();
  for (int i = 0; i < n; ++i) {
    if (!v[i]) continue;
    Elem t = 0;
    for (int j = i; j < n; ++j) t = F.add(t, F.mul(qform_(i, j), v[j]));
    s = F.add(s, F.mul(v[i], t));
  }
  return s;
}

Elem QuadraticSpace::B(const Vec& u, const Vec& v) const {
  const Field& F = *field_;
  Elem s = 0;
  int n = dim();
  for (int i = 0; i < n; ++i) {
    if (!u[i]) continue;
    Elem t = 0;
    for (int j = 0; j < n; ++j) t = F.add(t, F.mul(gram_(i, j), v[j]));
    s = F.add(s, F.mul(u[i], t));
  }
  return s;
}

std::vector<Vec> QuadraticSpace::radical() const { return la::kernel(*field_, gram_); }

bool QuadraticSpace::nondegenerate() const {
  auto rad = radical();
  if (rad.empty()) return true;
  if (field_->odd() || dim() % 2 == 0) return false;
  return rad.size() == 1 && Q(rad[0]) != 0;
}

bool QuadraticSpace::is_isometry(const Matrix& g) const {
  const Field& F = *field_;
  if (g.rows != dim() || g.cols != dim()) return false;
  if (la::det(F, g) == 0) return false;
  for (int i = 0; i < dim(); ++i) {
    Vec ci = g.col(i);
    if (Q(ci) != qform_(i, i)) return false;
    for (int j = i + 1; j < dim(); ++j)
      if (B(ci, g.col(j)) != gram_(i, j)) return false;
  }
  return true;
}

QuadraticSpace QuadraticSpace::pullback(const Matrix& M) const {
  int k = M.cols;
  Matrix c(k, k);
  std::vector<Vec> cols;
  for (int j = 0; j < k; ++j) cols.push_back(M.col(j));
  for (int i = 0; i < k; ++i) {
    c(i, i) = Q(cols[i]);
    for (int j = i + 1; j < k; ++j) c(i, j) = B(cols[i], cols[j]);
  }
  return QuadraticSpace(field_, c);
}

std::uint64_t QuadraticSpace::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  mix(field_->p());
  mix(field_->k());
  mix(static_cast<std::uint64_t>(dim()));
  for (auto x : qform_.a) mix(x);
  return h;
}

Subspace span(const Field& F, const std::vector<Vec>& vectors, int ambient) {
  Subspace S;
  S.ambient = ambient;
  S.basis = la::row_space(F, vectors, ambient);
  return S;
}

bool contains(const Field& F, const Subspace& S, const Vec& v) {
  auto rows = S.basis;
  rows.push_back(v);
  return static_cast<int>(la::row_space(F, rows, S.ambient).size()) == S.dim();
}

QuadraticSpace standard_space(int dim, FormType type, FieldPtr field) {
  const Field& F = *field;
  if (type == FormType::Odd) {
    if (dim % 2 != 1) throw std::invalid_argument("odd type requires odd dimension");
  } else if (dim % 2 != 0 || dim < 2) {
    throw std::invalid_argument("+/- type requires even dimension >= 2");
  }
  Matrix c(dim, dim);
  int n = dim / 2;
  if (type == FormType::Plus) {
    for (int i = 0; i < n; ++i) c(i, n + i) = 1;
  } else if (type == FormType::Odd) {
    for (int i = 0; i < n; ++i) c(i, n + i) = 1;
    c(dim - 1, dim - 1) = 1;
  } else {
    int h = n - 1;
    for (int i = 0; i < h; ++i) c(i, h + i) = 1;
    int u = dim - 2, v = dim - 1;
    c(u, u) = 1;
    if (F.odd()) {
      c(v, v) = F.neg(F.nonsquare());
    } else {
      Elem alpha = 0;
      for (Elem a = 1; a < F.q(); ++a)
        if (F.abs_trace(a) == 1) {
          alpha = a;
          break;
        }
      c(u, v) = 1;
      c(v, v) = alpha;
    }
  }
  return QuadraticSpace(field, c);
}

std::optional<Vec> find_singular_vector(const QuadraticSpace& space) {
  const Field& F = space.field();
  int n = space.dim();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= F.q();
  Vec v(n);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t t = idx;
    int lead = -1;
    for (int i = 0; i < n; ++i) {
      v[i] = static_cast<Elem>(t % F.q());
      t /= F.q();
    }
    for (int i = 0; i < n; ++i)
      if (v[i]) {
        lead = i;
        break;
      }
    if (v[lead] != 1) continue;
    if (space.Q(v) == 0) return v;
  }
  return std::nullopt;
}

WittData witt_decompose(const QuadraticSpace& space0) {
  if (!space0.nondegenerate()) throw std::invalid_argument("witt_decompose needs a nondegenerate space");
  const Field& F = space0.field();
  QuadraticSpace space = space0;
  WittData w;
  while (true) {
    auto v = find_singular_vector(space);
    if (!v) break;
    int n = space.dim();
    Vec u;
    for (int i = 0; i < n && u.empty(); ++i) {
      Vec e(n, 0);
      e[i] = 1;
      Elem b = space.B(*v, e);
      if (b) u = la::vscale(F, e, F.inv(b));
    }
    if (u.empty()) throw std::logic_error("singular vector lies in the radical");
    Subspace plane = span(F, {*v, u}, n);
    space = restrict(space, orthogonal_complement(space, plane));
    ++w.index;
  }
  w.anisotropic_dim = space.dim();
  if (space0.dim() % 2 == 0) w.defect = space.dim() / 2;
  return w;
}

FormType form_type(const QuadraticSpace& space) {
  if (space.dim() % 2 == 1) return FormType::Odd;
  return witt_decompose(space).defect == 0 ? FormType::Plus : FormType::Minus;
}

bool discriminant_is_square(const QuadraticSpace& space) {
  const Field& F = space.field();
  if (!F.odd()) return true;
  return F.is_square(la::det(F, space.gram()));
}

Subspace eigenspace(const QuadraticSpace& space, const Matrix& g, Elem lambda) {
  const Field& F = space.field();
  if (lambda >= F.q()) throw std::invalid_argument("eigenvalue outside the field");
  Matrix M = g;
  for (int i = 0; i < M.rows; ++i) M(i, i) = F.sub(M(i, i), lambda);
  Subspace S;
  S.ambient = space.dim();
  S.basis = la::kernel(F, M);
  return S;
}

Subspace fixed_space(const QuadraticSpace& space, const Matrix& g) { return eigenspace(space, g, 1); }

Subspace moved_space(const QuadraticSpace& space, const Matrix& g) {
  const Field& F = space.field();
  Matrix M = la::sub(F, Matrix::identity(g.rows), g);
  Subspace S;
  S.ambient = space.dim();
  S.basis = la::image(F, M);
  return S;
}

Subspace orthogonal_complement(const QuadraticSpace& space, const Subspace& sub) {
  const Field& F = space.field();
  int n = space.dim();
  Subspace S;
  S.ambient = n;
  if (sub.basis.empty()) {
    for (int i = 0; i < n; ++i) {
      Vec e(n, 0);
      e[i] = 1;
      S.basis.push_back(e);
    }
    return S;
  }
  Matrix M(sub.dim(), n);
  for (int r = 0; r < sub.dim(); ++r) {
    Vec gb = la::apply(F, space.gram(), sub.basis[r]);
    for (int j = 0; j < n; ++j) M(r, j) = gb[j];
  }
  S.basis = la::kernel(F, M);
  return S;
}

Matrix basis_matrix(const std::vector<Vec>& cols, int n) {
  Matrix M(n, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < n; ++i) M(i, static_cast<int>(j)) = cols[j][i];
  return M;
}

QuadraticSpace restrict(const QuadraticSpace& space, const Subspace& sub) {
  return space.pullback(basis_matrix(sub.basis, space.dim()));
}

QuadraticSpace orthogonal_sum(const QuadraticSpace& a, const QuadraticSpace& b) {
  if (a.field().q() != b.field().q()) throw std::invalid_argument("orthogonal sum over different fields");
  int n = a.dim() + b.dim();
  Matrix c(n, n);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c(i, j) = a.qform()(i, j);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) c(a.dim() + i, a.dim() + j) = b.qform()(i, j);
  return QuadraticSpace(a.field_ptr(), c);
}

bool is_totally_singular(const QuadraticSpace& space, const Subspace& sub) {
  for (int i = 0; i < sub.dim(); ++i) {
    if (space.Q(sub.basis[i]) != 0) return false;
    for (int j = i + 1; j < sub.dim(); ++j)
      if (space.B(sub.basis[i], sub.basis[j]) != 0) return false;
  }
  return true;
}

std::vector<Subspace> all_subspaces(const Field& F, int n, int k, std::uint64_t max_count) {
  if (k < 0 || k > n) throw std::invalid_argument("subspace dimension out of range");
  // Gaussian binomial as a size guard.
  long double count = 1;
  for (int i = 0; i < k; ++i) count *= ((long double)std::pow((long double)F.q(), n - i) - 1) / ((long double)std::pow((long double)F.q(), i + 1) - 1);
  if (count > (long double)max_count) throw std::runtime_error("too many subspaces to enumerate");
  std::vector<Subspace> out;
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    std::vector<bool> is_piv(n, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::pair<int, int>> free;
    for (int r = 0; r < k; ++r)
      for (int c = piv[r] + 1; c < n; ++c)
        if (!is_piv[c]) free.push_back({r, c});
    std::uint64_t fills = 1;
    for (std::size_t i = 0; i < free.size(); ++i) fills *= F.q();
    for (std::uint64_t f = 0; f < fills; ++f) {
      Subspace S;
      S.ambient = n;
      S.basis.assign(k, Vec(n, 0));
      for (int r = 0; r < k; ++r) S.basis[r][piv[r]] = 1;
      std::uint64_t t = f;
      for (auto [r, c] : free) {
        S.basis[r][c] = static_cast<Elem>(t % F.q());
        t /= F.q();
      }
      out.push_back(std::move(S));
    }
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

std::vector<Subspace> totally_singular_subspaces(const QuadraticSpace& space, int k, std::uint64_t max_count) {
  std::vector<Subspace> out;
  for (auto& S : all_subspaces(space.field(), space.dim(), k, max_count))
    if (is_totally_singular(space, S)) out.push_back(std::move(S));
  return out;
}

namespace {

struct IsoSearch {
  const QuadraticSpace& from;
  const QuadraticSpace& to;
  const Field& F;
  int n;
  std::vector<std::vector<Vec>> by_value;
  std::vector<Vec> img;
  std::vector<Vec> echelon;
  std::vector<int> pivots;

  bool independent_push(const Vec& u) {
    Vec r = u;
    for (std::size_t i = 0; i < echelon.size(); ++i) {
      Elem c = r[pivots[i]];
      if (c) r = la::vsub(F, r, la::vscale(F, echelon[i], c));
    }
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (r[i]) {
        p = i;
        break;
      }
    if (p < 0) return false;
    r = la::vscale(F, r, F.inv(r[p]));
    echelon.push_back(r);
    pivots.push_back(p);
    return true;
  }

  bool rec(int i) {
    if (i == n) return true;
    const auto& cands = by_value[from.qform()(i, i)];
    for (const Vec& u : cands) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (to.B(u, img[j]) != from.gram()(i, j)) ok = false;
      if (!ok) continue;
      if (!independent_push(u)) continue;
      img.push_back(u);
      if (rec(i + 1)) return true;
      img.pop_back();
      echelon.pop_back();
      pivots.pop_back();
    }
    return false;
  }
};

}  // namespace

std::optional<Matrix> find_isometry(const QuadraticSpace& from, const QuadraticSpace& to) {
  const Field& F = from.field();
  int n = from.dim();
  if (to.dim() != n || to.field().q() != F.q()) return std::nullopt;
  if (from.nondegenerate() != to.nondegenerate()) return std::nullopt;
  if (from.nondegenerate()) {
    if (form_type(from) != form_type(to)) return std::nullopt;
    if (n % 2 == 1 && discriminant_is_square(from) != discriminant_is_square(to)) return std::nullopt;
  }
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= F.q();
  if (total > (1u << 23)) throw std::runtime_error("isometry search space too large");
  IsoSearch s{from, to, F, n, std::vector<std::vector<Vec>>(F.q()), {}, {}, {}};
  Vec v(n);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (int i = 0; i < n; ++i) {
      v[i] = static_cast<Elem>(t % F.q());
      t /= F.q();
    }
    s.by_value[to.Q(v)].push_back(v);
  }
  if (!s.rec(0)) return std::nullopt;
  return basis_matrix(s.img, n);
}

std::optional<Subspace> find_nondegenerate_subspace(
    const QuadraticSpace& space, int k,
    const std::function<bool(const QuadraticSpace&, const QuadraticSpace&)>& pred) {
  const Field& F = space.field();
  int n = space.dim();
  for (auto& S : all_subspaces(F, n, k)) {
    QuadraticSpace a = restrict(space, S);
    if (!a.nondegenerate()) continue;
    Subspace C = orthogonal_complement(space, S);
    if (C.dim() != n - k) continue;
    auto both = S.basis;
    both.insert(both.end(), C.basis.begin(), C.basis.end());
    if (static_cast<int>(la::row_space(F, both, n).size()) != n) continue;
    QuadraticSpace b = restrict(space, C);
    if (!b.nondegenerate()) continue;
    if (pred(a, b)) return S;
  }
  return std::nullopt;
}

}  // namespace stp
