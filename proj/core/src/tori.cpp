#include "stplus/tori.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "stplus/matgrp.hpp"

namespace stp::tori {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Matrix of x -> lambda x on GF(q^m) in the basis theta^0..theta^{m-1}.
Matrix mult_matrix(const FieldEmbedding& emb, Elem lambda) {
  const Field& K = *emb.super();
  int m = static_cast<int>(emb.degree());
  Matrix M(m, m);
  Elem theta = emb.basis_generator();
  Elem b = 1;
  for (int c = 0; c < m; ++c) {
    auto col = emb.coords(K.mul(lambda, b));
    for (int r = 0; r < m; ++r) M(r, c) = col[r];
    b = K.mul(b, theta);
  }
  return M;
}

void place(Matrix& big, const Matrix& blk, int off) {
  for (int r = 0; r < blk.rows; ++r)
    for (int c = 0; c < blk.cols; ++c) big(off + r, off + c) = blk(r, c);
}

struct Block {
  bool plus;
  int size;
  std::uint64_t order;
  Matrix qform;  // 2*size square, upper triangular
  Matrix gen;
};

Block plus_block(FieldPtr F, int i) {
  Block b{true, i, ipow(F->q(), i) - 1, Matrix(2 * i, 2 * i), Matrix::identity(2 * i)};
  for (int a = 0; a < i; ++a) b.qform(a, i + a) = 1;
  Matrix h(1, 1);
  if (i == 1) {
    h(0, 0) = F->primitive();
  } else {
    auto K = Field::make(F->p(), F->k() * i);
    FieldEmbedding emb(F, K);
    h = mult_matrix(emb, K->primitive());
  }
  Matrix hit = la::transpose(la::inverse(*F, h));
  place(b.gen, h, 0);
  place(b.gen, hit, i);
  return b;
}

Block minus_block(FieldPtr F, int j) {
  const std::uint64_t q = F->q();
  auto K = Field::make(F->p(), F->k() * 2 * j);
  FieldEmbedding emb(F, K);
  const std::uint64_t qj = ipow(q, j);
  auto Qx = [&](Elem x) {
    Elem y = K->pow(x, qj + 1);
    Elem tr = 0, z = y;
    for (int r = 0; r < j; ++r) {
      tr = K->add(tr, z);
      z = K->pow(z, q);
    }
    return emb.preimage(tr);
  };
  int m = 2 * j;
  Block b{false, j, qj + 1, Matrix(m, m), Matrix()};
  std::vector<Elem> basis(m);
  Elem theta = emb.basis_generator(), cur = 1;
  for (int c = 0; c < m; ++c) {
    basis[c] = cur;
    cur = K->mul(cur, theta);
  }
  for (int a = 0; a < m; ++a) {
    b.qform(a, a) = Qx(basis[a]);
    for (int c = a + 1; c < m; ++c) {
      Elem s = Qx(K->add(basis[a], basis[c]));
      b.qform(a, c) = F->sub(F->sub(s, Qx(basis[a])), Qx(basis[c]));
    }
  }
  if (form_type(QuadraticSpace(F, b.qform)) != FormType::Minus) throw std::logic_error("trace form is not of minus type");
  Elem t = K->pow(K->primitive(), qj - 1);
  b.gen = mult_matrix(emb, t);
  return b;
}

}  // namespace

int OrthoDecomp::k() const { return std::accumulate(d.begin(), d.end(), 0); }
int OrthoDecomp::l() const { return std::accumulate(e.begin(), e.end(), 0); }

int OrthoDecomp::dim() const {
  int s = dim0;
  for (std::size_t i = 1; i < d.size(); ++i) s += 2 * static_cast<int>(i) * d[i];
  for (std::size_t j = 1; j < e.size(); ++j) s += 2 * static_cast<int>(j) * e[j];
  return s;
}

weyl::ClassLabel OrthoDecomp::label() const { return weyl::ClassLabel{d, e}; }

std::string OrthoDecomp::to_string() const {
  weyl::ClassLabel lab{d, e};
  std::string s;
  if (lab.k() > 0) s = "d=[" + lab.d_string() + "]";
  if (lab.l() > 0) s += std::string(s.empty() ? "" : ",") + "e=[" + lab.e_string() + "]";
  if (s.empty()) s = "trivial";
  return s;
}

OrthoDecomp from_label(const weyl::ClassLabel& lab, int dim0) { return OrthoDecomp{lab.d, lab.e, dim0}; }

std::string to_string(TorusClass c) {
  switch (c) {
    case TorusClass::Generic:
      return "generic";
    case TorusClass::Neutral:
      return "neutral";
    case TorusClass::Exceptional:
      return "exceptional";
  }
  return "?";
}

std::string TorusSpec::to_string() const {
  std::string s = decomp.to_string();
  if (branch) s += " #" + std::to_string(branch);
  return s;
}

weyl::Ambient ambient_of(FormType type) {
  switch (type) {
    case FormType::Odd:
      return weyl::Ambient::B;
    case FormType::Plus:
      return weyl::Ambient::Dplus;
    case FormType::Minus:
      return weyl::Ambient::Dminus;
  }
  return weyl::Ambient::B;
}

std::vector<TorusSpec> enumerate_decomps(int dim, FormType type) {
  if (dim < 1) throw std::invalid_argument("torus ambient needs dim >= 1");
  if ((type == FormType::Odd) != (dim % 2 == 1))
    throw std::invalid_argument("form type does not match the parity of dim");
  int n = dim / 2;
  if (n > 6) throw std::invalid_argument("torus enumeration limited to rank 6");
  std::vector<TorusSpec> out;
  for (auto& lab : weyl::all_labels(n)) {
    int l = lab.l();
    if (type == FormType::Plus && l % 2) continue;
    if (type == FormType::Minus && l % 2 == 0) continue;
    TorusSpec s{from_label(lab, dim % 2), dim, type, 0};
    if (type == FormType::Plus && n > 0 && weyl::label_splits(lab)) {
      s.branch = 1;
      out.push_back(s);
      s.branch = 2;
    }
    out.push_back(s);
  }
  return out;
}

std::uint64_t torus_order(const TorusSpec& spec, std::uint64_t q) {
  std::uint64_t r = 1;
  for (std::size_t i = 1; i < spec.decomp.d.size(); ++i) r *= ipow(ipow(q, static_cast<int>(i)) - 1, spec.decomp.d[i]);
  for (std::size_t j = 1; j < spec.decomp.e.size(); ++j) r *= ipow(ipow(q, static_cast<int>(j)) + 1, spec.decomp.e[j]);
  return r;
}

TorusClass classify(const TorusSpec& spec) {
  auto lab = spec.decomp.label();
  if (lab.l() != 0) return TorusClass::Generic;
  return weyl::label_splits(lab) ? TorusClass::Exceptional : TorusClass::Neutral;
}

std::uint64_t weyl_order(const TorusSpec& spec) {
  auto amb = ambient_of(spec.type);
  bool exc = amb == weyl::Ambient::Dplus && classify(spec) == TorusClass::Exceptional;
  return weyl::torus_weyl_order(amb, spec.decomp.label(), exc);
}

std::uint64_t ExplicitTorus::order() const {
  std::uint64_t r = 1;
  for (auto& f : factors) r *= f.order;
  return r;
}

std::uint64_t ExplicitTorus::exponent() const {
  std::uint64_t r = 1;
  for (auto& f : factors) r = std::lcm(r, f.order);
  return r;
}

std::vector<std::uint64_t> ExplicitTorus::factor_orders() const {
  std::vector<std::uint64_t> o;
  for (auto& f : factors) o.push_back(f.order);
  return o;
}

Matrix ExplicitTorus::element(const std::vector<std::uint64_t>& a) const {
  if (a.size() != factors.size()) throw std::invalid_argument("exponent tuple of wrong length");
  const Field& F = space.field();
  Matrix g = Matrix::identity(space.dim());
  for (std::size_t r = 0; r < factors.size(); ++r)
    g = la::mul(F, g, la::power(F, factors[r].gen, static_cast<long long>(a[r] % factors[r].order)));
  return g;
}

std::vector<std::vector<std::uint64_t>> ExplicitTorus::tuples() const {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> cur(factors.size(), 0);
  while (true) {
    out.push_back(cur);
    std::size_t r = factors.size();
    while (r > 0) {
      --r;
      if (++cur[r] < factors[r].order) break;
      cur[r] = 0;
      if (r == 0) return out;
    }
    if (factors.empty()) return out;
  }
}

std::vector<Matrix> ExplicitTorus::elements() const {
  std::vector<Matrix> out;
  for (auto& a : tuples()) out.push_back(element(a));
  return out;
}

Subspace ExplicitTorus::fixed_space() const {
  const Field& F = space.field();
  int n = space.dim();
  std::vector<Vec> rows;
  for (auto& f : factors) {
    Matrix D = la::sub(F, f.gen, Matrix::identity(n));
    for (int r = 0; r < n; ++r) rows.push_back(D.row(r));
  }
  if (rows.empty()) return span(F, {}, n);
  auto ker = la::kernel(F, Matrix::from_rows(rows, n));
  return span(F, ker, n);
}

ExplicitTorus build_torus(const TorusSpec& spec, FieldPtr field) {
  const auto& dc = spec.decomp;
  if (dc.dim() != spec.dim) throw std::invalid_argument("decomposition does not match dim " + std::to_string(spec.dim));
  if ((spec.dim % 2) != dc.dim0) throw std::invalid_argument("fixed line present iff dim is odd");
  int l = dc.l();
  if (spec.type == FormType::Plus && l % 2) throw std::invalid_argument("plus type needs an even number of minus blocks");
  if (spec.type == FormType::Minus && l % 2 == 0)
    throw std::invalid_argument("minus type needs an odd number of minus blocks");

  std::vector<Block> blocks;
  for (std::size_t i = 1; i < dc.d.size(); ++i)
    for (int c = 0; c < dc.d[i]; ++c) blocks.push_back(plus_block(field, static_cast<int>(i)));
  for (std::size_t j = 1; j < dc.e.size(); ++j)
    for (int c = 0; c < dc.e[j]; ++c) blocks.push_back(minus_block(field, static_cast<int>(j)));

  const int n = spec.dim;
  QuadraticSpace target = standard_space(n, spec.type, field);
  std::vector<Elem> tail_values{1};
  if (dc.dim0 && field->odd()) tail_values.push_back(field->nonsquare());

  for (Elem c0 : tail_values) {
    Matrix qf(n, n);
    int off = 0;
    for (auto& b : blocks) {
      place(qf, b.qform, off);
      off += b.qform.rows;
    }
    if (dc.dim0) qf(n - 1, n - 1) = c0;
    QuadraticSpace blockspace(field, qf);
    if (!blockspace.nondegenerate()) throw std::logic_error("torus block space is degenerate");
    auto M = find_isometry(blockspace, target);
    if (!M) continue;
    Matrix Minv = la::inverse(*field, *M);

    ExplicitTorus T;
    T.spec = spec;
    T.space = target;
    off = 0;
    for (auto& b : blocks) {
      Matrix g = Matrix::identity(n);
      place(g, b.gen, off);
      if (!blockspace.is_isometry(g)) throw std::logic_error("torus factor is not an isometry");
      TorusFactor f;
      f.plus = b.plus;
      f.size = b.size;
      f.order = b.order;
      f.gen = la::mul(*field, la::mul(*field, *M, g), Minv);
      std::vector<Vec> cols;
      for (int c = 0; c < b.qform.rows; ++c) cols.push_back(M->col(off + c));
      f.block = span(*field, cols, n);
      T.factors.push_back(std::move(f));
      off += b.qform.rows;
    }
    if (spec.branch == 2) {
      // second class: conjugate by an isometry outside SO
      std::optional<Vec> v;
      Vec x(n, 0);
      for (int i = 0; i < n && !v; ++i) {
        for (int c = 0; c < n && !v; ++c) {
          std::fill(x.begin(), x.end(), 0);
          x[i] = 1;
          x[c] = field->add(x[c], 1);
          if (!la::is_zero(x) && target.Q(x) != 0) v = x;
        }
      }
      if (!v) throw std::logic_error("no anisotropic vector for the second torus class");
      Matrix r = reflection(target, *v);
      for (auto& f : T.factors) {
        f.gen = la::mul(*field, la::mul(*field, r, f.gen), r);
        std::vector<Vec> cols;
        for (auto& b : f.block.basis) cols.push_back(la::apply(*field, r, b));
        f.block = span(*field, cols, n);
      }
    }
    for (auto& f : T.factors) {
      if (!target.is_isometry(f.gen)) throw std::logic_error("torus generator is not an isometry");
      if (la::det(*field, f.gen) != 1) throw std::logic_error("torus generator outside SO");
      if (static_cast<std::uint64_t>(la::order(*field, f.gen)) != f.order)
        throw std::logic_error("torus generator has the wrong order");
    }
    return T;
  }
  throw std::logic_error("torus block space not isometric to the ambient space");
}

std::uint64_t character_exponent(const ExplicitTorus& T, const std::vector<std::uint64_t>& a,
                                 const std::vector<std::uint64_t>& b) {
  std::uint64_t M = T.exponent(), s = 0;
  for (std::size_t r = 0; r < T.factors.size(); ++r) {
    std::uint64_t o = T.factors[r].order;
    s = (s + (a[r] % o) * (b[r] % o) % o * (M / o)) % M;
  }
  return s;
}

Cyclotomic character_value(const ExplicitTorus& T, const std::vector<std::uint64_t>& a,
                           const std::vector<std::uint64_t>& b) {
  return Cyclotomic::root_power(static_cast<unsigned>(T.exponent()), static_cast<long long>(character_exponent(T, a, b)));
}

std::map<std::vector<std::uint64_t>, long long> multiplicities(const ExplicitTorus& T,
                                                               const std::vector<long long>& values) {
  auto tup = T.tuples();
  if (values.size() != tup.size()) throw std::invalid_argument("one value per torus element required");
  const std::uint64_t M = T.exponent();
  const long long order = static_cast<long long>(T.order());
  std::map<std::vector<std::uint64_t>, long long> out;
  for (auto& theta : tup) {
    // sum_t f(t) conj(theta(t)) = sum_t f(t) zeta^{-e}
    std::vector<long long> c(M, 0);
    for (std::size_t i = 0; i < tup.size(); ++i) {
      std::uint64_t e = character_exponent(T, theta, tup[i]);
      c[(M - e) % M] += values[i];
    }
    auto z = from_exponent_sums(static_cast<unsigned>(M), c);
    auto v = z.as_integer();
    if (!v || *v % order != 0) throw std::logic_error("non-integral torus multiplicity");
    out[theta] = *v / order;
  }
  return out;
}

long long omega_pattern(const ExplicitTorus& T, const std::vector<std::uint64_t>& theta) {
  int trivial_plus = 0;
  for (std::size_t r = 0; r < T.factors.size(); ++r) {
    bool trivial = theta[r] % T.factors[r].order == 0;
    if (!trivial) continue;
    if (!T.factors[r].plus) return 0;
    ++trivial_plus;
  }
  return 1LL << trivial_plus;
}

}  // namespace stp::tori
