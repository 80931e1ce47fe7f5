#include "stplus/matgrp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace stp {

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::O: return "O";
    case GroupKind::SO: return "SO";
    case GroupKind::Omega: return "Omega";
    case GroupKind::Sp: return "Sp";
    case GroupKind::GL: return "GL";
    case GroupKind::Unitary: return "GU";
    case GroupKind::Torus: return "torus";
    case GroupKind::Generated: return "generated";
  }
  return "?";
}

GroupKind parse_group_kind(const std::string& s) {
  if (s == "O") return GroupKind::O;
  if (s == "SO") return GroupKind::SO;
  if (s == "Omega" || s == "omega") return GroupKind::Omega;
  if (s == "Sp") return GroupKind::Sp;
  throw std::invalid_argument("unknown group kind '" + s + "' (expected O, SO, Omega or Sp)");
}

namespace {

BigInt ipow(std::uint64_t q, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= q;
  return r;
}

}  // namespace

BigInt order_sp(int dim, std::uint64_t q) {
  if (dim % 2) throw std::invalid_argument("symplectic dimension must be even");
  int m = dim / 2;
  BigInt r = ipow(q, m * m);
  for (int i = 1; i <= m; ++i) r *= ipow(q, 2 * i) - 1;
  return r;
}

BigInt order_so_even(int dim, FormType type, std::uint64_t q) {
  if (dim % 2 || type == FormType::Odd) throw std::invalid_argument("even orthogonal order needs even dimension and a +/- type");
  int m = dim / 2;
  if (m == 0) return 1;
  BigInt r = ipow(q, m * (m - 1));
  r *= type == FormType::Plus ? ipow(q, m) - 1 : ipow(q, m) + 1;
  for (int i = 1; i < m; ++i) r *= ipow(q, 2 * i) - 1;
  return r;
}

BigInt group_order(const QuadraticSpace& space, GroupKind kind) {
  const Field& F = space.field();
  std::uint64_t q = F.q();
  int n = space.dim();
  if (kind == GroupKind::Sp) return order_sp(n, q);
  if (kind != GroupKind::O && kind != GroupKind::SO && kind != GroupKind::Omega)
    throw std::invalid_argument("no closed-form order for kind " + to_string(kind));
  if (n % 2 == 1) {
    BigInt so = order_sp(n - 1, q);
    if (!F.odd()) return so;
    if (kind == GroupKind::O) return 2 * so;
    if (kind == GroupKind::Omega) return n == 1 ? so : so / 2;
    return so;
  }
  BigInt base = order_so_even(n, form_type(space), q);
  if (F.odd()) {
    if (kind == GroupKind::O) return 2 * base;
    if (kind == GroupKind::Omega) return base / 2;
    return base;
  }
  if (kind == GroupKind::Omega) return base;
  return 2 * base;
}

Matrix standard_symplectic_gram(const Field& F, int dim) {
  if (dim % 2) throw std::invalid_argument("symplectic dimension must be even");
  int m = dim / 2;
  Matrix J(dim, dim);
  for (int i = 0; i < m; ++i) {
    J(i, m + i) = 1;
    J(m + i, i) = F.neg(1);
  }
  return J;
}

// ---------------------------------------------------------------------------
// MatGroup

MatGroup::MatGroup(FieldPtr field, int dim, GroupKind kind, std::vector<Matrix> generators)
    : field_(std::move(field)),
      dim_(dim),
      kind_(kind),
      gens_(std::move(generators)),
      packer_(*field_, dim),
      arith_(*field_, dim) {}

std::string MatGroup::label() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (quad_ && dim_ % 2 == 0 && dim_ > 0) os << (form_type(*quad_) == FormType::Plus ? "+" : "-");
  os << "_" << dim_ << "(" << field_->q() << ")";
  return os.str();
}

std::uint64_t MatGroup::order() const {
  if (!enumerated()) throw std::logic_error("group not enumerated");
  return elements_.size();
}

void MatGroup::bfs(const std::vector<Matrix>& gens, std::uint64_t cap) {
  const int nn = dim_ * dim_;
  std::vector<std::vector<std::uint8_t>> g(gens.size(), std::vector<std::uint8_t>(nn));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int j = 0; j < nn; ++j) g[i][j] = static_cast<std::uint8_t>(gens[i].a[j]);
  elements_.clear();
  std::size_t expect = 1024;
  if (expected_ && *expected_ < BigInt(cap)) expect = static_cast<std::size_t>(*expected_);
  index_.reset(expect);
  u128 id = packer_.pack(Matrix::identity(dim_));
  index_.find_or_insert(id, 0, elements_);
  elements_.push_back(id);
  std::uint8_t a[128], out[128];
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    packer_.unpack_to(elements_[i], a);
    for (const auto& gi : g) {
      arith_.mul(a, gi.data(), out);
      u128 w = packer_.pack_from(out);
      auto pos = static_cast<std::uint32_t>(elements_.size());
      if (index_.find_or_insert(w, pos, elements_) == pos) {
        elements_.push_back(w);
        if (elements_.size() > cap) {
          elements_.clear();
          index_.reset(1);
          throw std::runtime_error("group " + label() + " exceeds the enumeration cap " + std::to_string(cap) +
                                   (expected_ ? "; required cap: " + expected_->str() : std::string()));
        }
      }
    }
  }
  std::sort(elements_.begin(), elements_.end());
  index_.rebuild(elements_);
  class_of_.clear();
  classes_.clear();
}

std::string resolve_cache_dir(const EnumOptions& opts) {
  if (!opts.use_cache) return "";
  if (!opts.cache_dir.empty()) return opts.cache_dir;
  const char* env = std::getenv("STB_CACHE_DIR");
  return env ? std::string(env) : std::string();
}

void MatGroup::enumerate(const EnumOptions& opts) {
  if (enumerated()) return;
  if (expected_ && *expected_ > BigInt(opts.max_order))
    throw std::runtime_error("group " + label() + " has order " + expected_->str() + ", above the cap " +
                             std::to_string(opts.max_order) + "; rerun with --max-order " + expected_->str());
  std::string dir = resolve_cache_dir(opts);
  bool cacheable = !dir.empty() && (quad_ || alt_) && expected_;
  if (cacheable && load_cache(dir, false)) return;
  bfs(gens_, opts.max_order);
  if (cacheable && BigInt(elements_.size()) == *expected_) save_cache(dir);
}

std::uint32_t MatGroup::class_of(const Matrix& M) const {
  auto i = index_of(M);
  if (i < 0) throw std::invalid_argument("matrix is not an element of " + label());
  return class_of_.at(static_cast<std::size_t>(i));
}

void MatGroup::compute_classes(const EnumOptions& opts) {
  if (has_classes()) return;
  enumerate(opts);
  std::string dir = resolve_cache_dir(opts);
  bool cacheable = !dir.empty() && (quad_ || alt_) && expected_;
  const std::size_t N = elements_.size();
  const int nn = dim_ * dim_;
  bool loaded = cacheable && load_cache(dir, true) && class_of_.size() == N;
  if (!loaded) {
    class_of_.assign(N, UINT32_MAX);
    std::vector<std::vector<std::uint8_t>> g, gi;
    for (const auto& M : gens_) {
      Matrix Mi = la::inverse(*field_, M);
      g.emplace_back(M.a.begin(), M.a.end());
      gi.emplace_back(Mi.a.begin(), Mi.a.end());
    }
    std::vector<std::uint32_t> stack;
    std::uint8_t a[128], t[128], out[128];
    std::uint32_t nclasses = 0;
    for (std::size_t i = 0; i < N; ++i) {
      if (class_of_[i] != UINT32_MAX) continue;
      std::uint32_t c = nclasses++;
      class_of_[i] = c;
      stack.assign(1, static_cast<std::uint32_t>(i));
      while (!stack.empty()) {
        std::uint32_t x = stack.back();
        stack.pop_back();
        packer_.unpack_to(elements_[x], a);
        for (std::size_t k = 0; k < g.size(); ++k) {
          arith_.mul(g[k].data(), a, t);
          arith_.mul(t, gi[k].data(), out);
          auto y = index_.find(packer_.pack_from(out), elements_);
          if (y < 0) throw std::logic_error("conjugate left the group");
          if (class_of_[y] == UINT32_MAX) {
            class_of_[y] = c;
            stack.push_back(static_cast<std::uint32_t>(y));
          }
        }
      }
    }
  }
  (void)nn;
  std::uint32_t nclasses = 0;
  for (auto c : class_of_) nclasses = std::max(nclasses, c + 1);
  classes_.assign(nclasses, ConjClass{});
  std::vector<bool> seen(nclasses, false);
  for (std::size_t i = 0; i < N; ++i) {
    auto c = class_of_[i];
    if (!seen[c]) {
      seen[c] = true;
      classes_[c].rep = elements_[i];
    }
    ++classes_[c].size;
  }
  const Field& F = *field_;
  for (auto& cl : classes_) {
    Matrix r = decode(cl.rep);
    cl.element_order = static_cast<std::uint64_t>(element_order(F, r));
    cl.semisimple = std::gcd<std::uint64_t>(cl.element_order, F.p()) == 1;
    cl.centralizer_order = N / cl.size;
    cl.inverse_class = class_of(la::inverse(F, r));
  }
  if (cacheable && !loaded) save_cache(dir);
}

std::uint64_t MatGroup::centralizer_order_direct(const Matrix& g) const {
  const Field& F = *field_;
  std::uint64_t c = 0;
  for (auto w : elements_) {
    Matrix x = decode(w);
    if (la::mul(F, x, g) == la::mul(F, g, x)) ++c;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Cache

namespace {

constexpr char kElemMagic[8] = {'S', 'T', 'P', 'L', 'U', 'S', 'G', '\0'};
constexpr char kClassMagic[8] = {'S', 'T', 'P', 'L', 'U', 'S', 'C', '\0'};
constexpr std::uint32_t kCacheVersion = 1;

template <class T>
void put(std::ostream& os, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) os.put(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
}

template <class T>
bool get(std::istream& is, T& v) {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    int c = is.get();
    if (c == EOF) return false;
    x |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  v = static_cast<T>(x);
  return true;
}

std::string hex128(u128 x) {
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16) << static_cast<std::uint64_t>(x >> 64) << std::setw(16)
     << static_cast<std::uint64_t>(x);
  return os.str();
}

}  // namespace

std::string MatGroup::cache_stem() const {
  std::uint64_t h = 0;
  if (quad_) {
    h = quad_->hash();
  } else if (alt_) {
    h = 1469598103934665603ull;
    for (auto x : alt_->a) h = (h ^ x) * 1099511628211ull;
  }
  std::ostringstream os;
  os << to_string(kind_) << "-p" << field_->p() << "-k" << field_->k() << "-d" << dim_ << "-" << std::hex
     << std::setfill('0') << std::setw(16) << h;
  return os.str();
}

bool MatGroup::load_cache(const std::string& dir, bool want_classes) {
  namespace fs = std::filesystem;
  fs::path base = fs::path(dir) / cache_stem();
  auto warn = [&](const std::string& what) {
    std::cerr << "warning: cache " << what << " for " << label() << " is unusable; re-deriving\n";
    return false;
  };
  if (!want_classes) {
    fs::path f = base.string() + ".elems";
    if (!fs::exists(f)) return false;
    std::ifstream in(f, std::ios::binary);
    char magic[8];
    in.read(magic, 8);
    std::uint32_t ver, p, k, d, kind;
    std::uint64_t count;
    if (!in || !std::equal(magic, magic + 8, kElemMagic)) return warn("header");
    if (!get(in, ver) || !get(in, p) || !get(in, k) || !get(in, d) || !get(in, kind) || !get(in, count))
      return warn("header");
    if (ver != kCacheVersion || p != field_->p() || k != field_->k() || (int)d != dim_ ||
        kind != static_cast<std::uint32_t>(kind_))
      return warn("header");
    if (expected_ && BigInt(count) != *expected_) return warn("element count");
    std::vector<u128> elems(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint64_t lo, hi;
      if (!get(in, lo) || !get(in, hi)) return warn("payload");
      elems[i] = (static_cast<u128>(hi) << 64) | lo;
      if (i && elems[i] <= elems[i - 1]) return warn("ordering");
    }
    if (in.peek() != EOF) return warn("payload length");
    elements_.swap(elems);
    index_.rebuild(elements_);
    bool ok = contains(Matrix::identity(dim_));
    for (const auto& g : gens_) ok = ok && contains(g);
    if (!ok) {
      elements_.clear();
      index_.reset(1);
      return warn("contents");
    }
    return true;
  }
  fs::path f = base.string() + ".cls";
  if (!fs::exists(f)) return false;
  std::ifstream in(f, std::ios::binary);
  char magic[8];
  in.read(magic, 8);
  std::uint32_t ver;
  std::uint64_t count;
  if (!in || !std::equal(magic, magic + 8, kClassMagic) || !get(in, ver) || !get(in, count) || ver != kCacheVersion ||
      count != elements_.size())
    return warn("class header");
  std::vector<std::uint32_t> ids(count);
  std::uint32_t next = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!get(in, ids[i])) return warn("class payload");
    // class ids are assigned in order of first occurrence
    if (ids[i] > next) return warn("class payload");
    if (ids[i] == next) ++next;
  }
  if (in.peek() != EOF) return warn("class payload length");
  class_of_.swap(ids);
  return true;
}

void MatGroup::save_cache(const std::string& dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  fs::path base = fs::path(dir) / cache_stem();
  {
    fs::path tmp = base.string() + ".elems.tmp";
    std::ofstream out(tmp, std::ios::binary);
    out.write(kElemMagic, 8);
    put<std::uint32_t>(out, kCacheVersion);
    put<std::uint32_t>(out, field_->p());
    put<std::uint32_t>(out, field_->k());
    put<std::uint32_t>(out, static_cast<std::uint32_t>(dim_));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(kind_));
    put<std::uint64_t>(out, elements_.size());
    for (auto w : elements_) {
      put<std::uint64_t>(out, static_cast<std::uint64_t>(w));
      put<std::uint64_t>(out, static_cast<std::uint64_t>(w >> 64));
    }
    out.close();
    if (out) fs::rename(tmp, base.string() + ".elems", ec);
  }
  if (!class_of_.empty()) {
    fs::path tmp = base.string() + ".cls.tmp";
    std::ofstream out(tmp, std::ios::binary);
    out.write(kClassMagic, 8);
    put<std::uint32_t>(out, kCacheVersion);
    put<std::uint64_t>(out, class_of_.size());
    for (auto c : class_of_) put<std::uint32_t>(out, c);
    out.close();
    if (out) fs::rename(tmp, base.string() + ".cls", ec);
    std::ofstream csv(base.string() + ".classes.csv");
    csv << "rep_encoding,size,order,semisimple,centralizer_order\n";
    for (const auto& c : classes_)
      csv << hex128(c.rep) << "," << c.size << "," << c.element_order << "," << (c.semisimple ? 1 : 0) << ","
          << c.centralizer_order << "\n";
  }
}

// ---------------------------------------------------------------------------
// Generators

Matrix reflection(const QuadraticSpace& space, const Vec& v) {
  const Field& F = space.field();
  Elem qv = space.Q(v);
  if (qv == 0) throw std::invalid_argument("reflection in a singular vector");
  int n = space.dim();
  Matrix R(n, n);
  for (int j = 0; j < n; ++j) {
    Vec e(n, 0);
    e[j] = 1;
    Elem c = F.div(space.B(e, v), qv);
    for (int i = 0; i < n; ++i) R(i, j) = F.sub(e[i], F.mul(c, v[i]));
  }
  return R;
}

Matrix siegel(const QuadraticSpace& space, const Vec& u, const Vec& w) {
  const Field& F = space.field();
  if (space.Q(u) != 0 || space.B(u, w) != 0) throw std::invalid_argument("siegel transformation needs u singular, w perp u");
  int n = space.dim();
  Elem qw = space.Q(w);
  Matrix R(n, n);
  for (int j = 0; j < n; ++j) {
    Vec e(n, 0);
    e[j] = 1;
    Elem bu = space.B(e, u), bw = space.B(e, w);
    for (int i = 0; i < n; ++i) {
      Elem x = F.add(e[i], F.mul(bu, w[i]));
      x = F.sub(x, F.mul(bw, u[i]));
      x = F.sub(x, F.mul(F.mul(qw, bu), u[i]));
      R(i, j) = x;
    }
  }
  return R;
}

Matrix symplectic_transvection(const Field& F, const Matrix& J, const Vec& v, Elem c) {
  int n = J.rows;
  Vec Jv = la::apply(F, J, v);
  Matrix T = Matrix::identity(n);
  for (int j = 0; j < n; ++j) {
    // column j: e_j + c <e_j, v> v with <x,v> = x^T J v
    Elem s = F.mul(c, Jv[j]);
    for (int i = 0; i < n; ++i) T(i, j) = F.add(T(i, j), F.mul(s, v[i]));
  }
  return T;
}

namespace {

struct RandomForm {
  const QuadraticSpace& space;
  std::mt19937_64 rng;

  Vec random_vec() {
    const Field& F = space.field();
    Vec v(space.dim());
    for (auto& x : v) x = static_cast<Elem>(rng() % F.q());
    return v;
  }
  Vec anisotropic() {
    const Field& F = space.field();
    for (int tries = 0; tries < 100000; ++tries) {
      Vec v = random_vec();
      if (space.Q(v) == 0) continue;
      if (!F.odd()) {
        bool rad = true;
        for (int i = 0; i < space.dim() && rad; ++i) {
          Vec e(space.dim(), 0);
          e[i] = 1;
          if (space.B(v, e)) rad = false;
        }
        if (rad && space.dim() > 1) continue;
      }
      return v;
    }
    throw std::logic_error("no anisotropic vector found");
  }
  std::optional<Matrix> random_siegel() {
    const Field& F = space.field();
    for (int tries = 0; tries < 2000; ++tries) {
      Vec u = random_vec();
      if (la::is_zero(u) || space.Q(u) != 0) continue;
      Vec w = random_vec();
      Elem b = space.B(u, w);
      if (b) {
        // project w onto u^perp using a vector with B(u, .) != 0 is not needed:
        // subtract a multiple of u does not change B(u, w); retry instead
        continue;
      }
      (void)F;
      Matrix S = siegel(space, u, w);
      if (S == Matrix::identity(space.dim())) continue;
      return S;
    }
    return std::nullopt;
  }
};

}  // namespace

std::vector<Matrix> classical_generators(const QuadraticSpace& space, GroupKind kind, int count, std::uint64_t seed) {
  const Field& F = space.field();
  int n = space.dim();
  RandomForm R{space, std::mt19937_64(seed)};
  std::vector<Matrix> gens;
  if (n == 0) return gens;
  if (n == 1) {
    if (kind == GroupKind::O && F.odd()) gens.push_back(reflection(space, Vec{1}));
    else gens.push_back(Matrix::identity(1));
    return gens;
  }
  auto is_square = [&](Elem a) { return F.is_square(a); };
  for (int g = 0; g < count; ++g) {
    Matrix M = Matrix::identity(n);
    if (F.odd()) {
      if (kind == GroupKind::Omega) {
        for (int r = 0; r < n; ++r) {
          Vec u = R.anisotropic(), v = R.anisotropic();
          while (!is_square(F.mul(space.Q(u), space.Q(v)))) v = R.anisotropic();
          M = la::mul(F, M, la::mul(F, reflection(space, u), reflection(space, v)));
        }
      } else {
        for (int r = 0; r < 2 * n; ++r) M = la::mul(F, M, reflection(space, R.anisotropic()));
        if (g == 0 && spinor_norm(space, M) == 1) {
          Vec u = R.anisotropic(), v = R.anisotropic();
          while (is_square(F.mul(space.Q(u), space.Q(v)))) v = R.anisotropic();
          M = la::mul(F, M, la::mul(F, reflection(space, u), reflection(space, v)));
        }
        if (kind == GroupKind::O && g == 0) M = la::mul(F, M, reflection(space, R.anisotropic()));
      }
    } else {
      bool odd_dim = n % 2 == 1;
      bool need_even = kind == GroupKind::Omega && !odd_dim;
      int reflections = 2 * n + ((g == 0 && !need_even) ? 1 : 0);
      for (int r = 0; r < reflections; ++r) {
        M = la::mul(F, M, reflection(space, R.anisotropic()));
        if (auto S = R.random_siegel()) M = la::mul(F, M, *S);
      }
    }
    if (!space.is_isometry(M)) throw std::logic_error("generator is not an isometry");
    gens.push_back(M);
  }
  // One short element so that small groups are not missed by random products.
  Matrix S;
  bool reflections_inside = kind == GroupKind::O || (!F.odd() && (kind == GroupKind::SO || n % 2 == 1));
  if (reflections_inside) {
    S = reflection(space, R.anisotropic());
  } else {
    Vec u = R.anisotropic(), v = R.anisotropic();
    bool want_square = kind == GroupKind::Omega || !F.odd();
    for (int tries = 0; tries < 10000; ++tries) {
      bool sq = F.odd() ? is_square(F.mul(space.Q(u), space.Q(v))) : true;
      if (sq == want_square && !(la::mul(F, reflection(space, u), reflection(space, v)) == Matrix::identity(n))) break;
      v = R.anisotropic();
    }
    S = la::mul(F, reflection(space, u), reflection(space, v));
  }
  gens.push_back(S);
  return gens;
}

MatGroup build_group(const QuadraticSpace& space, GroupKind kind, const EnumOptions& opts) {
  if (!space.nondegenerate()) throw std::invalid_argument("build_group needs a nondegenerate space");
  if (kind == GroupKind::Sp) return build_symplectic(space.dim() - space.dim() % 2, space.field_ptr(), opts);
  BigInt N = group_order(space, kind);
  std::uint64_t seed = 0x5eed0000ull ^ (space.hash() * 31) ^ static_cast<std::uint64_t>(kind);
  int count = 2;
  auto gens = classical_generators(space, kind, count, seed);
  MatGroup G(space.field_ptr(), space.dim(), kind, gens);
  G.set_quadratic(space);
  G.set_expected_order(N);
  for (int attempt = 0; attempt < 6; ++attempt) {
    G.enumerate(opts);
    if (BigInt(G.order()) == N) return G;
    if (opts.verbose)
      std::cerr << "note: " << G.label() << " generated order " << G.order() << " < " << N << "; adding a generator\n";
    ++count;
    gens = classical_generators(space, kind, count, seed + 7919 * attempt);
    MatGroup H(space.field_ptr(), space.dim(), kind, gens);
    H.set_quadratic(space);
    H.set_expected_order(N);
    G = std::move(H);
  }
  throw std::logic_error("generator set for " + G.label() + " fails the order check");
}

MatGroup build_symplectic(int dim, FieldPtr field, const EnumOptions& opts) {
  const Field& F = *field;
  Matrix J = standard_symplectic_gram(F, dim);
  BigInt N = order_sp(dim, F.q());
  std::mt19937_64 rng(0x5e1c7ull + dim * 131 + F.q());
  auto make = [&](int count) {
    std::vector<Matrix> gens;
    for (int g = 0; g < count; ++g) {
      Matrix M = Matrix::identity(dim);
      for (int r = 0; r < 2 * dim + 1; ++r) {
        Vec v(dim);
        do {
          for (auto& x : v) x = static_cast<Elem>(rng() % F.q());
        } while (la::is_zero(v));
        Elem c = static_cast<Elem>(1 + rng() % (F.q() - 1));
        M = la::mul(F, M, symplectic_transvection(F, J, v, c));
      }
      gens.push_back(M);
    }
    MatGroup G(field, dim, GroupKind::Sp, gens);
    G.set_alternating(J);
    G.set_expected_order(N);
    return G;
  };
  if (dim == 0) {
    MatGroup G(field, 0, GroupKind::Sp, {});
    return G;
  }
  for (int count = 2; count < 8; ++count) {
    MatGroup G = make(count);
    G.enumerate(opts);
    if (BigInt(G.order()) == N) return G;
  }
  throw std::logic_error("symplectic generators fail the order check");
}

MatGroup generated_group(FieldPtr field, int dim, GroupKind kind, std::vector<Matrix> gens, const EnumOptions& opts) {
  MatGroup G(std::move(field), dim, kind, std::move(gens));
  G.enumerate(opts);
  return G;
}

// ---------------------------------------------------------------------------
// Element-level invariants

long long element_order(const Field& F, const Matrix& g) { return la::order(F, g); }

bool is_semisimple(const Field& F, const Matrix& g) { return element_order(F, g) % F.p() != 0; }

JordanParts jordan(const Field& F, const Matrix& g) {
  long long n = element_order(F, g);
  long long pa = 1, m = n;
  while (m % F.p() == 0) {
    m /= F.p();
    pa *= F.p();
  }
  // A*pa + B*m = 1
  long long old_r = pa, r = m, old_s = 1, s = 0;
  while (r) {
    long long qt = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - qt * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - qt * s);
  }
  long long A = old_s;
  long long B = (1 - A * pa) / m;
  auto md = [&](long long x) { return ((x % n) + n) % n; };
  return {la::power(F, g, md(A * pa)), la::power(F, g, md(B * m))};
}

std::vector<Vec> reflection_factorization(const QuadraticSpace& space, const Matrix& g) {
  const Field& F = space.field();
  if (!F.odd()) throw std::invalid_argument("reflection factorization is implemented for odd q only");
  if (!space.is_isometry(g)) throw std::invalid_argument("factorization of a non-isometry");
  int n = space.dim();
  Matrix I = Matrix::identity(n);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= F.q();
  auto vec_of = [&](std::uint64_t idx) {
    Vec x(n);
    for (int i = 0; i < n; ++i) {
      x[i] = static_cast<Elem>(idx % F.q());
      idx /= F.q();
    }
    return x;
  };
  std::mt19937_64 rng(0xfac7ull);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix h = g;
    std::vector<Vec> used;
    bool ok = true;
    for (int steps = 0; !(h == I); ++steps) {
      if (steps > 4 * n + 4) {
        ok = false;
        break;
      }
      // Greedy: first vector x (enumeration order) with u = h x - x
      // anisotropic, preferring choices after which the moved space is not
      // totally singular.
      std::optional<Vec> u, fallback;
      for (std::uint64_t idx = 1; idx < total && !u; ++idx) {
        Vec x = vec_of(idx);
        Vec d = la::vsub(F, la::apply(F, h, x), x);
        if (la::is_zero(d) || space.Q(d) == 0) continue;
        if (!fallback) fallback = d;
        Matrix next = la::mul(F, reflection(space, d), h);
        Subspace W = moved_space(space, next);
        if (W.dim() == 0 || !is_totally_singular(space, W)) u = d;
      }
      if (!u) u = fallback;
      if (!u) {
        // Moved space is totally singular: multiply by a reflection first.
        Vec a;
        do {
          a = vec_of(1 + rng() % (total - 1));
        } while (space.Q(a) == 0);
        u = a;
      }
      h = la::mul(F, reflection(space, *u), h);
      used.push_back(*u);
    }
    if (ok) return used;
  }
  throw std::logic_error("reflection factorization did not terminate");
}

int spinor_norm(const QuadraticSpace& space, const Matrix& g) {
  const Field& F = space.field();
  Elem prod = 1;
  for (const auto& v : reflection_factorization(space, g)) prod = F.mul(prod, space.Q(v));
  return F.is_square(prod) ? 1 : -1;
}

int spinor_norm_wall(const QuadraticSpace& space, const Matrix& g) {
  const Field& F = space.field();
  if (!F.odd()) throw std::invalid_argument("spinor norm is defined here for odd q only");
  int n = space.dim();
  Matrix A = la::sub(F, Matrix::identity(n), g);
  auto W = la::image(F, A);
  int r = static_cast<int>(W.size());
  if (r == 0) return 1;
  std::vector<Vec> Y(r);
  for (int j = 0; j < r; ++j)
    if (!la::solve(F, A, W[j], Y[j])) throw std::logic_error("moved space preimage missing");
  Matrix chi(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) chi(i, j) = space.B(W[i], Y[j]);
  return F.is_square(la::det(F, chi)) ? 1 : -1;
}

int dickson(const QuadraticSpace& space, const Matrix& g) {
  const Field& F = space.field();
  return la::rank(F, la::sub(F, g, Matrix::identity(space.dim()))) % 2;
}

// ---------------------------------------------------------------------------
// Embeddings

Codim1Embedding Codim1Embedding::extend(const QuadraticSpace& small, Elem c) {
  const Field& F = small.field();
  int n = small.dim();
  if (c == 0) throw std::invalid_argument("extension vector must be anisotropic");
  Matrix qf(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) qf(i, j) = small.qform()(i, j);
  qf(n, n) = c;
  Codim1Embedding E;
  E.small_ = small;
  E.c_ = c;
  if (!F.odd() && n % 2 == 1) {
    auto rad = small.radical();
    if (rad.size() != 1) throw std::invalid_argument("odd-dimensional space must have a one-dimensional radical");
    int j = 0;
    while (rad[0][j] == 0) ++j;
    qf(j, n) = F.inv(rad[0][j]);
    E.search_lift_ = true;
  }
  E.big_ = QuadraticSpace(small.field_ptr(), qf);
  if (!E.big_.nondegenerate()) throw std::logic_error("extended space is degenerate");
  E.M_ = Matrix::identity(n + 1);
  E.Minv_ = E.M_;
  return E;
}

Codim1Embedding Codim1Embedding::extend_to_type(const QuadraticSpace& small, FormType big_type) {
  const Field& F = small.field();
  for (Elem c = 1; c < F.q(); ++c) {
    auto E = extend(small, c);
    if (form_type(E.big()) == big_type) return E;
  }
  throw std::invalid_argument("no extension of the requested type");
}

Codim1Embedding Codim1Embedding::from_big(const QuadraticSpace& big, const Subspace& U) {
  const Field& F = big.field();
  int n = big.dim();
  if (U.dim() != n - 1) throw std::invalid_argument("subspace must have codimension one");
  Subspace C = orthogonal_complement(big, U);
  if (C.dim() != 1) throw std::invalid_argument("complement must be a line");
  auto cols = U.basis;
  cols.push_back(C.basis[0]);
  Codim1Embedding E;
  E.M_ = basis_matrix(cols, n);
  if (la::det(F, E.M_) == 0) throw std::invalid_argument("subspace contains its complement");
  E.Minv_ = la::inverse(F, E.M_);
  E.small_ = restrict(big, U);
  if (!E.small_.nondegenerate()) throw std::invalid_argument("subspace is degenerate");
  E.big_ = big;
  E.c_ = big.Q(C.basis[0]);
  return E;
}

Matrix Codim1Embedding::lift(const Matrix& g) const {
  const Field& F = small_.field();
  int n = small_.dim();
  if (g.rows != n) throw std::invalid_argument("lift: dimension mismatch");
  Matrix L(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) L(i, j) = g(i, j);
  if (!search_lift_) {
    L(n, n) = 1;
    return la::mul(F, M_, la::mul(F, L, Minv_));
  }
  std::uint64_t total = 1;
  for (int i = 0; i <= n; ++i) total *= F.q();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (int i = 0; i <= n; ++i) {
      L(i, n) = static_cast<Elem>(t % F.q());
      t /= F.q();
    }
    if (big_.is_isometry(L) && dickson(big_, L) == 0) return L;
  }
  throw std::logic_error("no Dickson-invariant-zero lift exists");
}

GLEmbedding::GLEmbedding(int n, FieldPtr field)
    : n_(n), field_(std::move(field)), big_(standard_space(2 * n, FormType::Plus, field_)) {}

Matrix GLEmbedding::lift(const Matrix& g) const {
  const Field& F = *field_;
  Matrix gi = la::transpose(la::inverse(F, g));
  Matrix L(2 * n_, 2 * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      L(i, j) = g(i, j);
      L(n_ + i, n_ + j) = gi(i, j);
    }
  return L;
}

MatGroup GLEmbedding::build_gl(const EnumOptions& opts) const {
  const Field& F = *field_;
  std::vector<Matrix> gens;
  Matrix D = Matrix::identity(n_);
  D(0, 0) = F.primitive();
  gens.push_back(D);
  if (n_ > 1) {
    Matrix T = Matrix::identity(n_);
    T(0, 1) = 1;
    gens.push_back(T);
    Matrix P(n_, n_);
    for (int i = 0; i < n_; ++i) P((i + 1) % n_, i) = 1;
    gens.push_back(P);
  }
  MatGroup G(field_, n_, GroupKind::GL, gens);
  BigInt N = 1;
  for (int i = 0; i < n_; ++i) N *= ipow(F.q(), n_) - ipow(F.q(), i);
  G.set_expected_order(N);
  G.enumerate(opts);
  if (BigInt(G.order()) != N) throw std::logic_error("GL generators fail the order check");
  return G;
}

BigInt UnitaryEmbedding::order_gu(int n, std::uint64_t q) {
  BigInt r = ipow(q, n * (n - 1) / 2);
  for (int i = 1; i <= n; ++i) r *= (i % 2) ? ipow(q, i) + 1 : ipow(q, i) - 1;
  return r;
}

UnitaryEmbedding::UnitaryEmbedding(int n, FieldPtr field) : n_(n), field_(std::move(field)) {
  const Field& F = *field_;
  ext_field_ = Field::make(F.p(), 2 * F.k());
  emb_ = std::make_shared<FieldEmbedding>(field_, ext_field_);
  int N = 2 * n;
  std::vector<Vec> basis;  // GF(q^2)^n vectors for the GF(q)-basis
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < 2; ++t) {
      Vec v(n, 0);
      std::vector<Elem> c(2, 0);
      c[t] = 1;
      v[i] = emb_->from_coords(c);
      basis.push_back(v);
    }
  auto Qv = [&](const Vec& v) { return emb_->preimage(herm(v, v)); };
  Matrix qf(N, N);
  const Field& L = *ext_field_;
  for (int i = 0; i < N; ++i) {
    qf(i, i) = Qv(basis[i]);
    for (int j = i + 1; j < N; ++j) {
      Vec s = la::vadd(L, basis[i], basis[j]);
      qf(i, j) = F.sub(F.sub(Qv(s), Qv(basis[i])), Qv(basis[j]));
    }
  }
  model_ = QuadraticSpace(field_, qf);
  type_ = form_type(model_);
  big_ = standard_space(N, type_, field_);
  auto M = find_isometry(model_, big_);
  if (!M) throw std::logic_error("unitary model is not isometric to the standard space");
  M_ = *M;
  Minv_ = la::inverse(F, M_);
}

Elem UnitaryEmbedding::herm(const Vec& x, const Vec& y) const {
  const Field& L = *ext_field_;
  Elem s = 0;
  for (int i = 0; i < n_; ++i) s = L.add(s, L.mul(x[i], L.pow(y[i], field_->q())));
  return s;
}

bool UnitaryEmbedding::is_unitary(const Matrix& g) const {
  const Field& L = *ext_field_;
  if (la::det(L, g) == 0) return false;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Vec ei(n_, 0), ej(n_, 0);
      ei[i] = 1;
      ej[j] = 1;
      if (herm(g.col(i), g.col(j)) != herm(ei, ej)) return false;
    }
  return true;
}

Matrix UnitaryEmbedding::lift(const Matrix& g) const {
  const Field& F = *field_;
  const Field& L = *ext_field_;
  int N = 2 * n_;
  Matrix R(N, N);
  for (int j = 0; j < N; ++j) {
    Vec v(n_, 0);
    std::vector<Elem> c(2, 0);
    c[j % 2] = 1;
    v[j / 2] = emb_->from_coords(c);
    Vec gv = la::apply(L, g, v);
    for (int i = 0; i < n_; ++i) {
      auto cc = emb_->coords(gv[i]);
      R(2 * i, j) = cc[0];
      R(2 * i + 1, j) = cc[1];
    }
  }
  return la::mul(F, M_, la::mul(F, R, Minv_));
}

MatGroup UnitaryEmbedding::build_unitary(const EnumOptions& opts) const {
  const Field& L = *ext_field_;
  std::uint64_t q = field_->q();
  std::vector<Matrix> gens;
  Elem zeta = L.pow(L.primitive(), q - 1);  // generator of the norm-one group
  Elem trace_zero = 0;
  for (Elem a = 1; a < L.q(); ++a)
    if (L.add(a, L.pow(a, q)) == 0) {
      trace_zero = a;
      break;
    }
  std::uint64_t total = 1;
  for (int i = 0; i < n_; ++i) total *= L.q();
  Vec v(n_);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (int i = 0; i < n_; ++i) {
      v[i] = static_cast<Elem>(t % L.q());
      t /= L.q();
    }
    int lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;
    Elem hv = herm(v, v);
    Matrix T = Matrix::identity(n_);
    for (int j = 0; j < n_; ++j) {
      Vec e(n_, 0);
      e[j] = 1;
      Elem c = hv ? L.div(L.mul(L.sub(zeta, 1), herm(e, v)), hv) : L.mul(trace_zero, herm(e, v));
      for (int i = 0; i < n_; ++i) T(i, j) = L.add(T(i, j), L.mul(c, v[i]));
    }
    if (!is_unitary(T)) throw std::logic_error("unitary generator check failed");
    if (!(T == Matrix::identity(n_))) gens.push_back(T);
  }
  MatGroup G(ext_field_, n_, GroupKind::Unitary, gens);
  BigInt N = order_gu(n_, q);
  G.set_expected_order(N);
  G.enumerate(opts);
  if (BigInt(G.order()) != N) throw std::logic_error("unitary generators fail the order check");
  return G;
}

}  // namespace stp
