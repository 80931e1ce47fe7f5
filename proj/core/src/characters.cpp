#include "stplus/characters.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "stplus/weyl.hpp"

namespace stp::chars {

namespace {

BigInt bpow(std::uint64_t q, long long e) {
  BigInt r = 1;
  for (long long i = 0; i < e; ++i) r *= q;
  return r;
}

long long ipow_ll(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly reciprocal(const Field& F, const Poly& f) {
  Poly r(f.rbegin(), f.rend());
  return F.poly_monic(r);
}

void require_classes(const MatGroup& G) {
  if (!G.has_classes()) throw std::logic_error("conjugacy classes of " + G.label() + " not computed");
}

bool orthogonal(const MatGroup& G) { return G.quadratic().has_value(); }

}  // namespace

// ---------------------------------------------------------------------------
// Shapes

std::string to_string(FactorKind k) {
  switch (k) {
    case FactorKind::GL:
      return "GL";
    case FactorKind::U:
      return "U";
    case FactorKind::SOplus:
      return "SO+";
    case FactorKind::SOminus:
      return "SO-";
    case FactorKind::SOodd:
      return "SO";
    case FactorKind::Sp:
      return "Sp";
  }
  return "?";
}

BigInt factor_order(const ShapeFactor& f, std::uint64_t q) {
  const int a = f.size;
  switch (f.kind) {
    case FactorKind::GL: {
      BigInt Q = bpow(q, f.degree);
      BigInt r = 1;
      for (int i = 0; i < a; ++i) r *= pow(Q, static_cast<unsigned>(a)) - pow(Q, static_cast<unsigned>(i));
      return r;
    }
    case FactorKind::U: {
      BigInt Q = bpow(q, f.degree);
      BigInt r = pow(Q, static_cast<unsigned>(a * (a - 1) / 2));
      for (int i = 1; i <= a; ++i) {
        BigInt t = pow(Q, static_cast<unsigned>(i));
        r *= (i % 2) ? BigInt(t + 1) : BigInt(t - 1);
      }
      return r;
    }
    case FactorKind::SOplus:
      return order_so_even(a, FormType::Plus, q);
    case FactorKind::SOminus:
      return order_so_even(a, FormType::Minus, q);
    case FactorKind::SOodd:
      return order_sp(a - 1, q);
    case FactorKind::Sp:
      return order_sp(a, q);
  }
  return 1;
}

int factor_rank(const ShapeFactor& f) {
  switch (f.kind) {
    case FactorKind::GL:
      return f.size;
    case FactorKind::U:
      return f.size / 2;
    case FactorKind::SOplus:
      return f.size / 2;
    case FactorKind::SOminus:
      return f.size / 2 - 1;
    case FactorKind::SOodd:
      return (f.size - 1) / 2;
    case FactorKind::Sp:
      return f.size / 2;
  }
  return 0;
}

BigInt CentralizerShape::connected_order(std::uint64_t q) const {
  BigInt r = 1;
  for (auto& f : factors) r *= factor_order(f, q);
  return r;
}

int CentralizerShape::fq_rank() const {
  int r = 0;
  for (auto& f : factors) r += factor_rank(f);
  return r;
}

std::string CentralizerShape::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (i) os << " x ";
    os << chars::to_string(f.kind) << "_" << f.size;
    if (f.degree > 1) os << "(q^" << f.degree << ")";
  }
  if (factors.empty()) os << "1";
  if (outer_index > 1) os << " .2";
  return os.str();
}

std::vector<std::pair<Poly, int>> factor_poly(const Field& F, const Poly& f0) {
  Poly P = F.poly_monic(F.poly_trim(f0));
  std::vector<std::pair<Poly, int>> out;
  const std::uint64_t q = F.q();
  for (int d = 1; deg(P) > 0; ++d) {
    if (deg(P) < 2 * d) {
      out.emplace_back(P, 1);
      break;
    }
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    Poly cand(d + 1, 0);
    cand[d] = 1;
    for (std::uint64_t idx = 0; idx < total && deg(P) >= d; ++idx) {
      std::uint64_t t = idx;
      for (int i = 0; i < d; ++i) {
        cand[i] = static_cast<Elem>(t % q);
        t /= q;
      }
      if (cand[0] == 0) continue;  // x never divides here
      int mult = 0;
      while (deg(P) >= d) {
        auto [quo, rem] = F.poly_divmod(P, cand);
        if (!F.poly_trim(rem).empty()) break;
        P = F.poly_trim(quo);
        ++mult;
      }
      if (mult) out.emplace_back(cand, mult);
    }
  }
  return out;
}

namespace {

struct EigenSplit {
  std::vector<ShapeFactor> other;  // GL and U factors
  bool has_plus1 = false, has_minus1 = false;
};

EigenSplit split_charpoly(const Field& F, const Matrix& g) {
  if (!is_semisimple(F, g)) throw std::invalid_argument("centralizer shape needs a semisimple element");
  EigenSplit es;
  auto fac = factor_poly(F, la::charpoly(F, g));
  const Poly x_minus_1{F.neg(1), 1}, x_plus_1{1, 1};
  std::vector<Poly> done;
  for (auto& [f, a] : fac) {
    if (f == x_minus_1) {
      es.has_plus1 = true;
      continue;
    }
    if (F.odd() && f == x_plus_1) {
      es.has_minus1 = true;
      continue;
    }
    Poly r = reciprocal(F, f);
    if (r == f) {
      if (deg(f) % 2) throw std::logic_error("self-reciprocal factor of odd degree");
      es.other.push_back({FactorKind::U, a, deg(f) / 2});
    } else if (std::find(done.begin(), done.end(), r) == done.end()) {
      es.other.push_back({FactorKind::GL, a, deg(f)});
      done.push_back(f);
    }
  }
  return es;
}

ShapeFactor orth_factor(const QuadraticSpace& sub) {
  int n = sub.dim();
  if (n % 2) return {FactorKind::SOodd, n, 1};
  return {form_type(sub) == FormType::Plus ? FactorKind::SOplus : FactorKind::SOminus, n, 1};
}

}  // namespace

CentralizerShape centralizer_shape(const QuadraticSpace& space, const Matrix& g) {
  const Field& F = space.field();
  auto es = split_charpoly(F, g);
  CentralizerShape sh;
  if (es.has_plus1) sh.factors.push_back(orth_factor(restrict(space, eigenspace(space, g, 1))));
  if (es.has_minus1) sh.factors.push_back(orth_factor(restrict(space, eigenspace(space, g, F.neg(1)))));
  sh.factors.insert(sh.factors.end(), es.other.begin(), es.other.end());
  if (F.odd() && es.has_plus1 && es.has_minus1) sh.outer_index = 2;
  return sh;
}

CentralizerShape centralizer_shape_symplectic(const Field& F, const Matrix& J, const Matrix& g) {
  (void)J;
  auto es = split_charpoly(F, g);
  CentralizerShape sh;
  int n = g.rows;
  auto eig_dim = [&](Elem lam) {
    Matrix D = la::sub(F, g, la::scale(F, Matrix::identity(n), lam));
    return n - la::rank(F, D);
  };
  if (es.has_plus1) sh.factors.push_back({FactorKind::Sp, eig_dim(1), 1});
  if (es.has_minus1) sh.factors.push_back({FactorKind::Sp, eig_dim(F.neg(1)), 1});
  sh.factors.insert(sh.factors.end(), es.other.begin(), es.other.end());
  return sh;
}

CentralizerShape centralizer_shape(const MatGroup& G, const Matrix& g) {
  if (G.quadratic()) return centralizer_shape(*G.quadratic(), g);
  if (G.alternating()) return centralizer_shape_symplectic(G.field(), *G.alternating(), g);
  throw std::invalid_argument(G.label() + " carries no form");
}

BigInt p_part(BigInt n, unsigned p) {
  BigInt r = 1;
  if (n == 0) throw std::invalid_argument("p-part of zero");
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

GroupKind natural_kind(const Field& F) { return F.odd() ? GroupKind::SO : GroupKind::Omega; }

// ---------------------------------------------------------------------------
// Class functions

Rational inner_product(const ClassFunction& a, const ClassFunction& b) {
  if (!a.group || a.group != b.group) throw std::invalid_argument("class functions on different groups");
  const MatGroup& G = *a.group;
  require_classes(G);
  BigInt s = 0;
  const auto& cls = G.classes();
  for (std::size_t c = 0; c < cls.size(); ++c)
    s += BigInt(cls[c].size) * a.values[c] * b.values[cls[c].inverse_class];
  return Rational(s, BigInt(G.order()));
}

ClassFunction trivial_character(const MatGroup& G) {
  require_classes(G);
  return ClassFunction{&G, std::vector<long long>(G.classes().size(), 1)};
}

ClassFunction spinor_character(const MatGroup& G) {
  require_classes(G);
  if (!G.quadratic() || !G.field().odd()) throw std::invalid_argument("spinor character needs an orthogonal group, q odd");
  ClassFunction f{&G, {}};
  for (std::size_t c = 0; c < G.classes().size(); ++c)
    f.values.push_back(spinor_norm(*G.quadratic(), G.class_rep(static_cast<std::uint32_t>(c))));
  return f;
}

ClassFunction pointwise_product(const ClassFunction& a, const ClassFunction& b) {
  if (a.group != b.group) throw std::invalid_argument("class functions on different groups");
  ClassFunction r{a.group, a.values};
  for (std::size_t c = 0; c < r.values.size(); ++c) r.values[c] *= b.values[c];
  return r;
}

ClassFunction steinberg(const MatGroup& G) {
  require_classes(G);
  const auto& cls = G.classes();
  ClassFunction st{&G, std::vector<long long>(cls.size(), 0)};
  if (orthogonal(G) && G.dim() <= 2) {
    std::fill(st.values.begin(), st.values.end(), 1);
    return st;
  }
  int eps_g = centralizer_shape(G, Matrix::identity(G.dim())).eps();
  for (std::size_t c = 0; c < cls.size(); ++c) {
    if (!cls[c].semisimple) continue;
    auto sh = centralizer_shape(G, G.class_rep(static_cast<std::uint32_t>(c)));
    BigInt pp = p_part(BigInt(cls[c].centralizer_order), G.field().p());
    st.values[c] = eps_g * sh.eps() * pp.convert_to<long long>();
  }
  return st;
}

std::vector<std::string> shape_oracle_mismatches(const MatGroup& G) {
  require_classes(G);
  std::vector<std::string> bad;
  const auto& cls = G.classes();
  for (std::size_t c = 0; c < cls.size(); ++c) {
    if (!cls[c].semisimple) continue;
    auto sh = centralizer_shape(G, G.class_rep(static_cast<std::uint32_t>(c)));
    BigInt pred = sh.predicted_order(G.field().q());
    if (pred != BigInt(cls[c].centralizer_order)) {
      std::ostringstream os;
      os << "class " << c << " [" << sh.to_string() << "]: predicted " << pred << ", enumerated "
         << cls[c].centralizer_order;
      bad.push_back(os.str());
    }
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Steinberg-plus and omega

SteinbergPlus::SteinbergPlus(const MatGroup& G, Codim1Embedding emb) : G_(&G), emb_(std::move(emb)) {
  require_classes(G);
  if (!G.quadratic()) throw std::invalid_argument("St+ needs an orthogonal group");
  if (!(G.quadratic()->qform() == emb_.small().qform()))
    throw std::invalid_argument("embedding does not start from the space of " + G.label());
  st_g_ = steinberg(G);
  eps_h_ = centralizer_shape(emb_.big(), Matrix::identity(emb_.big().dim())).eps();
}

CentralizerShape SteinbergPlus::h_shape(const Matrix& g) const { return centralizer_shape(emb_.big(), emb_.lift(g)); }

long long SteinbergPlus::st_h(const Matrix& g) const {
  const Field& F = G_->field();
  if (emb_.big().dim() <= 2) return 1;
  if (!is_semisimple(F, g)) return 0;
  auto sh = h_shape(g);
  return eps_h_ * sh.eps() * p_part(sh.predicted_order(F.q()), F.p()).convert_to<long long>();
}

ClassFunction SteinbergPlus::stplus() const {
  ClassFunction f{G_, {}};
  for (std::size_t c = 0; c < G_->classes().size(); ++c) f.values.push_back(st_h(G_->class_rep(static_cast<std::uint32_t>(c))));
  return f;
}

ClassFunction SteinbergPlus::omega_quotient() const {
  const Field& F = G_->field();
  ClassFunction f{G_, {}};
  for (std::size_t c = 0; c < G_->classes().size(); ++c) {
    Matrix s = jordan(F, G_->class_rep(static_cast<std::uint32_t>(c))).s;
    long long num = st_h(s), den = st_g_.at(s);
    if (den == 0 || num % den != 0) throw std::logic_error("St_H(s)/St_G(s) is not an integer");
    f.values.push_back(num / den);
  }
  return f;
}

ClassFunction SteinbergPlus::omega_power() const {
  const Field& F = G_->field();
  const QuadraticSpace& V = *G_->quadratic();
  int eps_g = centralizer_shape(V, Matrix::identity(V.dim())).eps();
  ClassFunction f{G_, {}};
  for (std::size_t c = 0; c < G_->classes().size(); ++c) {
    Matrix s = jordan(F, G_->class_rep(static_cast<std::uint32_t>(c))).s;
    int sign = eps_h_ * h_shape(s).eps() * eps_g * centralizer_shape(V, s).eps();
    int e = fixed_space(V, s).dim() / 2;
    f.values.push_back(sign * ipow_ll(static_cast<long long>(F.q()), e));
  }
  return f;
}

ClassFunction SteinbergPlus::omega() const {
  auto a = omega_quotient();
  auto b = omega_power();
  for (std::size_t c = 0; c < a.values.size(); ++c)
    if (a.values[c] != b.values[c])
      throw std::logic_error("omega paths disagree on class " + std::to_string(c) + " of " + G_->label() + ": " +
                             std::to_string(a.values[c]) + " vs " + std::to_string(b.values[c]));
  return a;
}

std::optional<std::size_t> SteinbergPlus::cross_check_h(const EnumOptions& opts) const {
  const auto& big = emb_.big();
  GroupKind kind = G_->kind() == GroupKind::Omega ? GroupKind::Omega : GroupKind::SO;
  if (group_order(big, kind) > BigInt(opts.max_order)) return std::nullopt;
  MatGroup H = build_group(big, kind, opts);
  H.compute_classes(opts);
  auto st = steinberg(H);
  std::size_t bad = 0;
  for (std::uint32_t c = 0; c < G_->classes().size(); ++c) {
    Matrix g = G_->class_rep(c);
    if (st.at(emb_.lift(g)) != st_h(g)) ++bad;
  }
  return bad;
}

SteinbergPlus make_stplus(const MatGroup& G, Elem c) {
  if (!G.quadratic()) throw std::invalid_argument("St+ needs an orthogonal group");
  return SteinbergPlus(G, Codim1Embedding::extend(*G.quadratic(), c));
}

std::map<std::vector<std::uint64_t>, long long> restrict_decompose(const ClassFunction& f,
                                                                   const tori::ExplicitTorus& T) {
  std::vector<long long> vals;
  for (auto& t : T.elements()) vals.push_back(f.at(t));
  return tori::multiplicities(T, vals);
}

// ---------------------------------------------------------------------------
// Whole-group checks

namespace {

struct Prepared {
  MatGroup G;
  ClassFunction omega;
};

MatGroup classes_group(const QuadraticSpace& V, const EnumOptions& opts) {
  MatGroup G = build_group(V, natural_kind(V.field()), opts);
  G.compute_classes(opts);
  return G;
}

ClassFunction omega_of(const MatGroup& G) { return make_stplus(G).omega(); }

}  // namespace

namespace {

std::string space_tag(const QuadraticSpace& S) {
  std::string t = "(" + std::to_string(S.dim()) + ",";
  if (S.dim() % 2 == 0) return t + (form_type(S) == FormType::Plus ? "+)" : "-)");
  if (!S.field().odd()) return t + "odd)";
  return t + (discriminant_is_square(S) ? "sq)" : "nsq)");
}

}  // namespace

std::vector<MultReport> verify_product_law(const QuadraticSpace& V, int d1, const EnumOptions& opts) {
  const Field& F = V.field();
  const int n = V.dim();
  if (d1 <= 0 || d1 >= n) throw std::invalid_argument("split dimension out of range");
  if (!F.odd() && (d1 % 2 || n % 2)) throw std::invalid_argument("q even needs even-dimensional parts");

  MatGroup G = classes_group(V, opts);
  auto w = omega_of(G);
  std::vector<MultReport> out;
  std::set<std::string> seen;
  for (;;) {
    auto U = find_nondegenerate_subspace(V, d1, [&](const QuadraticSpace& a, const QuadraticSpace& b) {
      return !seen.count(space_tag(a) + "+" + space_tag(b));
    });
    if (!U) break;
    Subspace C = orthogonal_complement(V, *U);
    QuadraticSpace V1 = restrict(V, *U), V2 = restrict(V, C);
    MultReport rep;
    rep.split = space_tag(V1) + "+" + space_tag(V2);
    seen.insert(rep.split);

    MatGroup G1 = classes_group(V1, opts);
    MatGroup G2 = classes_group(V2, opts);
    auto w1 = omega_of(G1), w2 = omega_of(G2);
    auto cols = U->basis;
    cols.insert(cols.end(), C.basis.begin(), C.basis.end());
    Matrix P = basis_matrix(cols, n), Pi = la::inverse(F, P);

    rep.d1 = d1;
    rep.d2 = n - d1;
    rep.factor_q = d1 % 2 == 1 && (n - d1) % 2 == 1;
    const long long factor = rep.factor_q ? static_cast<long long>(F.q()) : 1;
    for (std::size_t i = 0; i < G1.order(); ++i) {
      Matrix g1 = G1.element(i);
      long long a = w1.at(g1);
      for (std::size_t j = 0; j < G2.order(); ++j) {
        Matrix g2 = G2.element(j);
        Matrix D(n, n);
        for (int r = 0; r < d1; ++r)
          for (int c = 0; c < d1; ++c) D(r, c) = g1(r, c);
        for (int r = 0; r < n - d1; ++r)
          for (int c = 0; c < n - d1; ++c) D(d1 + r, d1 + c) = g2(r, c);
        Matrix g = la::mul(F, P, la::mul(F, D, Pi));
        ++rep.checked;
        if (w.at(g) != factor * a * w2.at(g2)) ++rep.violations;
      }
    }
    out.push_back(std::move(rep));
  }
  if (out.empty()) throw std::logic_error("no nondegenerate subspace of dimension " + std::to_string(d1));
  return out;
}

ComparisonReport compare_gl(int n, FieldPtr F, const EnumOptions& opts) {
  GLEmbedding E(n, F);
  MatGroup GL = E.build_gl(opts);
  MatGroup G = classes_group(E.big(), opts);
  auto w = omega_of(G);
  ComparisonReport rep;
  for (std::size_t i = 0; i < GL.order(); ++i) {
    Matrix g = GL.element(i);
    if (!is_semisimple(*F, g)) continue;
    int fix = n - la::rank(*F, la::sub(*F, g, Matrix::identity(n)));
    ++rep.checked;
    if (w.at(E.lift(g)) != ipow_ll(static_cast<long long>(F->q()), fix)) ++rep.violations;
  }
  return rep;
}

ComparisonReport compare_unitary(int n, FieldPtr F, const EnumOptions& opts) {
  UnitaryEmbedding E(n, F);
  MatGroup U = E.build_unitary(opts);
  MatGroup G = classes_group(E.big(), opts);
  auto w = omega_of(G);
  const Field& L = *E.big_field();
  ComparisonReport rep;
  const long long q = static_cast<long long>(F->q());
  for (std::size_t i = 0; i < U.order(); ++i) {
    Matrix g = U.element(i);
    if (!is_semisimple(L, g)) continue;
    int fix = n - la::rank(L, la::sub(L, g, Matrix::identity(n)));
    long long expect = (n % 2 ? -1 : 1) * ipow_ll(-q, fix);
    ++rep.checked;
    if (w.at(E.lift(g)) != expect) ++rep.violations;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Census

std::string encode_hex(const MatGroup& G, const Matrix& M) {
  u128 x = G.encode(M);
  if (x == 0) return "0x0";
  std::string s;
  while (x) {
    s += "0123456789abcdef"[static_cast<unsigned>(x & 15)];
    x >>= 4;
  }
  std::reverse(s.begin(), s.end());
  return "0x" + s;
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

InnerProductReport inner_product_check(const MatGroup& G, const ClassFunction& stplus) {
  if (!G.field().odd()) throw std::invalid_argument("the spinor character needs q odd");
  auto st = steinberg(G);
  auto one = trivial_character(G);
  auto sp = spinor_character(G);
  auto st_minus = pointwise_product(st, sp);
  InnerProductReport r;
  r.st = inner_product(stplus, st);
  r.st_minus = inner_product(stplus, st_minus);
  r.one = inner_product(stplus, one);
  r.one_minus = inner_product(stplus, sp);
  const int dim = G.dim();
  if (dim % 2) {
    int n = dim / 2;
    r.expected = std::string("(1, 1, ") + (n == 1 ? "nonzero" : "0") + ", 0)";
    r.match = r.st == 1 && r.st_minus == 1 && ((r.one != 0) == (n == 1)) && r.one_minus == 0;
  } else {
    int alpha = form_type(*G.quadratic()) == FormType::Plus ? 1 : -1;
    r.expected = "(" + std::to_string(1 + alpha) + ", 1, 0, 0)";
    r.match = r.st == 1 + alpha && r.st_minus == 1 && r.one == 0 && r.one_minus == 0;
  }
  return r;
}

CensusReport census(const QuadraticSpace& V, const EnumOptions& opts) {
  const Field& F = V.field();
  const int dim = V.dim();
  if (dim < 2) throw std::invalid_argument("census needs dim >= 2");
  MatGroup G = classes_group(V, opts);
  const bool odd_dim = dim % 2 == 1;
  std::optional<MatGroup> dual_holder;
  if (odd_dim) {
    dual_holder.emplace(build_symplectic(dim - 1, V.field_ptr(), opts));
    dual_holder->compute_classes(opts);
  }
  const MatGroup& Gs = odd_dim ? *dual_holder : G;

  CensusReport rep;
  rep.group = G.label();
  rep.q = F.q();
  rep.dim = dim;
  rep.type = to_string(form_type(V));
  rep.dual = Gs.label();

  std::map<std::pair<int, int>, std::uint64_t> norm_cache;
  auto self = [&](int m, weyl::WType t) {
    auto key = std::make_pair(m, t == weyl::WType::B ? 0 : 1);
    auto it = norm_cache.find(key);
    if (it != norm_cache.end()) return it->second;
    return norm_cache[key] = weyl::self_norm(m, t);
  };

  const auto& cls = Gs.classes();
  const int n = Gs.dim();
  for (std::size_t c = 0; c < cls.size(); ++c) {
    if (!cls[c].semisimple) continue;
    Matrix s = Gs.class_rep(static_cast<std::uint32_t>(c));
    SeriesReport sr;
    sr.s_rep = encode_hex(Gs, s);
    sr.order_s = cls[c].element_order;
    sr.class_size = cls[c].size;
    Matrix D = la::sub(F, s, Matrix::identity(n));
    sr.dim_fix = n - la::rank(F, D);
    sr.m = sr.dim_fix / 2;
    bool minus1 = F.odd() && la::rank(F, la::add(F, s, Matrix::identity(n))) < n;
    if (!odd_dim && sr.dim_fix > 0) {
      auto fix = restrict(V, fixed_space(V, s));
      sr.defect = form_type(fix) == FormType::Minus ? 1 : 0;
    }
    if (sr.dim_fix == 0) {
      sr.tag = "regular";
      sr.predicted_norm = sr.predicted_count = sr.max_mult = 1;
    } else if (sr.defect == 1) {
      sr.tag = "zero";
    } else if (odd_dim) {
      sr.tag = "odd_induced";
      std::uint64_t N = self(sr.m, weyl::WType::B);
      sr.predicted_norm = sr.predicted_count = N;
      sr.max_mult = 1;
    } else if (minus1) {
      // the relative Weyl group of the Levi is of type B here
      sr.tag = "even_minus1";
      std::uint64_t N = self(sr.m, weyl::WType::B);
      sr.predicted_norm = sr.predicted_count = N;
      sr.max_mult = 1;
    } else if (sr.m % 2 == 1) {
      sr.tag = "even_mult2";
      std::uint64_t N = self(sr.m, weyl::WType::D);
      sr.predicted_norm = 4 * N;
      sr.predicted_count = N;
      sr.max_mult = 2;
    } else {
      sr.tag = "even_twolevi";
      std::uint64_t N = self(sr.m, weyl::WType::D), X = weyl::cross_norm(sr.m);
      sr.predicted_norm = 2 * N + 2 * X;
      sr.predicted_count = 2 * N - X;
      sr.max_mult = X > 0 ? 2 : 1;
    }
    rep.predicted_norm_sum += sr.predicted_norm;
    rep.series.push_back(std::move(sr));
  }

  auto sp = make_stplus(G);
  auto stp = sp.stplus();
  rep.bruteforce_norm = inner_product(stp, stp);
  rep.match = rep.bruteforce_norm == Rational(rep.predicted_norm_sum);
  if (F.odd() && (odd_dim || dim >= 4)) rep.inner_products = inner_product_check(G, stp);
  return rep;
}

// ---------------------------------------------------------------------------
// Structural checks

std::vector<std::uint64_t> singular_subspace_orbits(const MatGroup& G, int k) {
  if (!G.quadratic()) throw std::invalid_argument("needs an orthogonal group");
  const QuadraticSpace& V = *G.quadratic();
  const Field& F = V.field();
  auto subs = totally_singular_subspaces(V, k);
  std::map<std::vector<Vec>, std::size_t> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index[subs[i].basis] = i;
  std::vector<std::size_t> parent(subs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto& g : G.generators())
    for (std::size_t i = 0; i < subs.size(); ++i) {
      std::vector<Vec> img;
      for (auto& b : subs[i].basis) img.push_back(la::apply(F, g, b));
      auto key = la::row_space(F, img, V.dim());
      auto it = index.find(key);
      if (it == index.end()) throw std::logic_error("image of a totally singular subspace is not one");
      parent[find(i)] = find(it->second);
    }
  std::map<std::size_t, std::uint64_t> sizes;
  for (std::size_t i = 0; i < subs.size(); ++i) sizes[find(i)]++;
  std::vector<std::uint64_t> out;
  for (auto& [r, s] : sizes) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

bool torus_has_spinor_minus(const tori::ExplicitTorus& T) {
  if (!T.space.field().odd()) throw std::invalid_argument("spinor norm needs q odd");
  for (auto& t : T.elements())
    if (spinor_norm(T.space, t) == -1) return true;
  return false;
}

}  // namespace stp::chars
