#include "stplus/weyl.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace stp::weyl {

namespace {

constexpr int kMaxN = 10;
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

void check_n(int n) {
  if (n < 0 || n > kMaxN) throw std::invalid_argument("Weyl group rank " + std::to_string(n) + " out of range");
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool member(WType t, const SignedPerm& w) { return t == WType::B || w.in_D(); }

std::string part_string(const std::vector<int>& m) {
  std::string s;
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += ' ';
    s += std::to_string(i);
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

void partitions(int n, int maxpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, maxpart); p >= 1; --p) {
    ++cur[p];
    partitions(n - p, p, cur, out);
    --cur[p];
  }
}

}  // namespace

std::string to_string(WType t) { return t == WType::B ? "B" : "D"; }

SignedPerm SignedPerm::identity(int n) {
  SignedPerm w;
  w.perm.resize(n);
  w.sign.assign(n, 1);
  for (int i = 0; i < n; ++i) w.perm[i] = static_cast<std::uint8_t>(i);
  return w;
}

bool SignedPerm::in_D() const {
  int neg = 0;
  for (auto s : sign) neg += s < 0;
  return neg % 2 == 0;
}

SignedPerm SignedPerm::inverse() const {
  SignedPerm r = *this;
  for (int i = 0; i < n(); ++i) {
    r.perm[perm[i]] = static_cast<std::uint8_t>(i);
    r.sign[perm[i]] = sign[i];
  }
  return r;
}

SignedPerm compose(const SignedPerm& a, const SignedPerm& b) {
  if (a.n() != b.n()) throw std::invalid_argument("signed permutations of different rank");
  SignedPerm r = b;
  for (int i = 0; i < b.n(); ++i) {
    r.perm[i] = a.perm[b.perm[i]];
    r.sign[i] = static_cast<std::int8_t>(b.sign[i] * a.sign[b.perm[i]]);
  }
  return r;
}

SignedPerm conjugate(const SignedPerm& x, const SignedPerm& g) { return compose(compose(g, x), g.inverse()); }

std::uint64_t rank(const SignedPerm& w) {
  const int n = w.n();
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i) {
    int c = 0;
    for (int j = i + 1; j < n; ++j) c += w.perm[j] < w.perm[i];
    r = r * static_cast<std::uint64_t>(n - i) + static_cast<std::uint64_t>(c);
  }
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i)
    if (w.sign[i] < 0) bits |= 1ull << i;
  return (r << n) | bits;
}

SignedPerm unrank(int n, std::uint64_t r) {
  check_n(n);
  SignedPerm w = SignedPerm::identity(n);
  std::uint64_t bits = r & ((1ull << n) - 1);
  std::uint64_t code = r >> n;
  if (code >= factorial(n)) throw std::out_of_range("rank out of range");
  std::vector<int> digits(n);
  for (int i = n - 1; i >= 0; --i) {
    std::uint64_t base = static_cast<std::uint64_t>(n - i);
    digits[i] = static_cast<int>(code % base);
    code /= base;
  }
  std::vector<int> avail(n);
  for (int i = 0; i < n; ++i) avail[i] = i;
  for (int i = 0; i < n; ++i) {
    w.perm[i] = static_cast<std::uint8_t>(avail[digits[i]]);
    avail.erase(avail.begin() + digits[i]);
    w.sign[i] = (bits >> i & 1) ? -1 : 1;
  }
  return w;
}

std::uint64_t group_order(WType t, int n) {
  check_n(n);
  std::uint64_t b = ipow(2, n) * factorial(n);
  if (t == WType::B) return b;
  return n == 0 ? 1 : b / 2;
}

std::vector<SignedPerm> elements(WType t, int n) {
  check_n(n);
  std::uint64_t total = ipow(2, n) * factorial(n);
  std::vector<SignedPerm> out;
  out.reserve(group_order(t, n));
  for (std::uint64_t r = 0; r < total; ++r) {
    SignedPerm w = unrank(n, r);
    if (member(t, w)) out.push_back(std::move(w));
  }
  return out;
}

std::vector<SignedPerm> generators(WType t, int n) {
  check_n(n);
  std::vector<SignedPerm> g;
  for (int i = 0; i + 1 < n; ++i) {
    SignedPerm s = SignedPerm::identity(n);
    std::swap(s.perm[i], s.perm[i + 1]);
    g.push_back(s);
  }
  if (t == WType::B && n >= 1) {
    SignedPerm s = SignedPerm::identity(n);
    s.sign[0] = -1;
    g.push_back(s);
  } else if (t == WType::D && n >= 2) {
    SignedPerm s = SignedPerm::identity(n);
    std::swap(s.perm[0], s.perm[1]);
    s.sign[0] = s.sign[1] = -1;
    g.push_back(s);
  }
  return g;
}

int ClassLabel::k() const {
  int s = 0;
  for (std::size_t i = 1; i < d.size(); ++i) s += d[i];
  return s;
}

int ClassLabel::l() const {
  int s = 0;
  for (std::size_t i = 1; i < e.size(); ++i) s += e[i];
  return s;
}

bool ClassLabel::operator<(const ClassLabel& o) const { return std::tie(d, e) < std::tie(o.d, o.e); }

std::string ClassLabel::d_string() const { return part_string(d); }
std::string ClassLabel::e_string() const { return part_string(e); }

std::string ClassLabel::to_string() const {
  std::string s = "d=[" + d_string() + "]";
  if (l() > 0) s += ",e=[" + e_string() + "]";
  return s;
}

ClassLabel class_label(const SignedPerm& w) {
  const int n = w.n();
  ClassLabel lab;
  lab.d.assign(n + 1, 0);
  lab.e.assign(n + 1, 0);
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, sgn = 1, j = i;
    while (!seen[j]) {
      seen[j] = 1;
      sgn *= w.sign[j];
      j = w.perm[j];
      ++len;
    }
    (sgn > 0 ? lab.d : lab.e)[len]++;
  }
  return lab;
}

ClassLabel make_label(int n, const std::vector<std::pair<int, int>>& d, const std::vector<std::pair<int, int>>& e) {
  ClassLabel lab;
  lab.d.assign(n + 1, 0);
  lab.e.assign(n + 1, 0);
  int total = 0;
  for (auto [i, m] : d) {
    if (i < 1 || i > n) throw std::invalid_argument("cycle length out of range");
    lab.d[i] += m;
    total += i * m;
  }
  for (auto [j, m] : e) {
    if (j < 1 || j > n) throw std::invalid_argument("cycle length out of range");
    lab.e[j] += m;
    total += j * m;
  }
  if (total != n) throw std::invalid_argument("label does not sum to " + std::to_string(n));
  return lab;
}

std::vector<ClassLabel> all_labels(int n) {
  check_n(n);
  std::vector<ClassLabel> out;
  for (int a = n; a >= 0; --a) {
    std::vector<std::vector<int>> P, R;
    std::vector<int> cur(n + 1, 0);
    partitions(a, a, cur, P);
    cur.assign(n + 1, 0);
    partitions(n - a, n - a, cur, R);
    for (auto& p : P)
      for (auto& r : R) out.push_back(ClassLabel{p, r});
  }
  return out;
}

bool label_splits(const ClassLabel& lab) {
  if (lab.l() != 0) return false;
  for (std::size_t i = 1; i < lab.d.size(); ++i)
    if (lab.d[i] > 0 && i % 2 == 1) return false;
  return true;
}

std::vector<std::uint32_t> class_index_table(WType t, int n, std::vector<WeylClass>* classes) {
  check_n(n);
  if (n > 8) throw std::invalid_argument("explicit class table limited to n <= 8");
  const std::uint64_t total = ipow(2, n) * factorial(n);
  const std::uint64_t worder = group_order(t, n);
  std::vector<std::uint32_t> id(total, kNone);
  auto gens = generators(t, n);
  std::vector<SignedPerm> ginv;
  for (auto& g : gens) ginv.push_back(g.inverse());
  std::vector<WeylClass> cls;
  for (std::uint64_t r = 0; r < total; ++r) {
    if (id[r] != kNone) continue;
    SignedPerm w = unrank(n, r);
    if (!member(t, w)) continue;
    auto c = static_cast<std::uint32_t>(cls.size());
    id[r] = c;
    std::uint64_t size = 1;
    std::deque<SignedPerm> queue{w};
    while (!queue.empty()) {
      SignedPerm x = std::move(queue.front());
      queue.pop_front();
      for (std::size_t g = 0; g < gens.size(); ++g) {
        SignedPerm y = compose(compose(gens[g], x), ginv[g]);
        std::uint64_t ry = rank(y);
        if (id[ry] != kNone) continue;
        id[ry] = c;
        ++size;
        queue.push_back(std::move(y));
      }
    }
    WeylClass wc;
    wc.label = class_label(w);
    wc.size = size;
    wc.centralizer = worder / size;
    wc.rep = w;
    cls.push_back(std::move(wc));
  }
  if (t == WType::D) {
    std::map<ClassLabel, int> count;
    for (auto& c : cls) count[c.label]++;
    for (auto& c : cls) {
      int m = count[c.label];
      if (m > 2) throw std::logic_error("B-class meets more than two D-classes");
      c.splits = m == 2;
    }
  }
  if (classes) *classes = std::move(cls);
  return id;
}

std::vector<WeylClass> conjugacy_classes(WType t, int n) {
  std::vector<WeylClass> cls;
  class_index_table(t, n, &cls);
  return cls;
}

std::uint64_t centralizer_order_formula(const ClassLabel& lab, WType t) {
  std::uint64_t prod = 1;
  for (std::size_t i = 1; i < lab.d.size(); ++i) prod *= ipow(2 * i, lab.d[i]) * factorial(lab.d[i]);
  for (std::size_t j = 1; j < lab.e.size(); ++j) prod *= ipow(2 * j, lab.e[j]) * factorial(lab.e[j]);
  if (t == WType::B) return prod;
  if (lab.l() % 2) throw std::invalid_argument("label " + lab.to_string() + " is not in W(D)");
  return label_splits(lab) ? prod : prod / 2;
}

std::uint64_t torus_weyl_order(Ambient amb, const ClassLabel& lab, bool exceptional) {
  std::uint64_t prod = centralizer_order_formula(lab, WType::B);
  switch (amb) {
    case Ambient::B:
      return prod;
    case Ambient::Dplus:
      if (lab.l() % 2) throw std::invalid_argument("plus-type ambient needs an even number of negative cycles");
      if (exceptional) {
        if (!label_splits(lab)) throw std::invalid_argument("label " + lab.to_string() + " is not exceptional");
        return prod;
      }
      return prod / 2;
    case Ambient::Dminus:
      if (lab.l() % 2 == 0) throw std::invalid_argument("minus-type ambient needs an odd number of negative cycles");
      return prod / 2;
  }
  return 0;
}

std::uint64_t torus_weyl_order_bruteforce(Ambient amb, const SignedPerm& w) {
  const int n = w.n();
  std::uint64_t total = ipow(2, n) * factorial(n);
  std::uint64_t count = 0;
  for (std::uint64_t r = 0; r < total; ++r) {
    SignedPerm x = unrank(n, r);
    if (amb != Ambient::B && !x.in_D()) continue;
    if (compose(x, w) == compose(w, x)) ++count;
  }
  return count;
}

std::vector<SignedPerm> subgroup_elements(const std::vector<SignedPerm>& gens, int n) {
  std::map<std::uint64_t, SignedPerm> seen;
  SignedPerm id = SignedPerm::identity(n);
  seen.emplace(rank(id), id);
  std::deque<SignedPerm> queue{id};
  while (!queue.empty()) {
    SignedPerm x = std::move(queue.front());
    queue.pop_front();
    for (auto& g : gens) {
      if (g.n() != n) throw std::invalid_argument("generator of wrong rank");
      SignedPerm y = compose(x, g);
      if (seen.emplace(rank(y), y).second) queue.push_back(std::move(y));
    }
  }
  std::vector<SignedPerm> out;
  out.reserve(seen.size());
  for (auto& [r, w] : seen) out.push_back(w);
  return out;
}

std::uint64_t double_coset_count(WType t, int n, const std::vector<SignedPerm>& A_gens,
                                 const std::vector<SignedPerm>& B_gens) {
  check_n(n);
  if (n > 8) throw std::invalid_argument("double coset count limited to n <= 8");
  for (auto* gs : {&A_gens, &B_gens})
    for (auto& g : *gs)
      if (!member(t, g)) throw std::invalid_argument("subgroup generator outside W");
  const std::uint64_t total = ipow(2, n) * factorial(n);
  std::vector<char> seen(total, 0);
  std::uint64_t orbits = 0;
  for (std::uint64_t r = 0; r < total; ++r) {
    if (seen[r]) continue;
    SignedPerm w = unrank(n, r);
    if (!member(t, w)) continue;
    ++orbits;
    seen[r] = 1;
    std::deque<SignedPerm> queue{w};
    while (!queue.empty()) {
      SignedPerm x = std::move(queue.front());
      queue.pop_front();
      auto visit = [&](SignedPerm y) {
        std::uint64_t ry = rank(y);
        if (seen[ry]) return;
        seen[ry] = 1;
        queue.push_back(std::move(y));
      };
      for (auto& a : A_gens) visit(compose(a, x));
      for (auto& b : B_gens) visit(compose(x, b));
    }
  }
  return orbits;
}

std::uint64_t induced_inner_product(WType t, int n, const std::vector<SignedPerm>& A_gens,
                                    const std::vector<SignedPerm>& B_gens) {
  std::vector<WeylClass> cls;
  auto id = class_index_table(t, n, &cls);
  auto A = subgroup_elements(A_gens, n);
  auto B = subgroup_elements(B_gens, n);
  std::vector<std::uint64_t> inA(cls.size(), 0), inB(cls.size(), 0);
  for (auto& a : A) {
    auto c = id[rank(a)];
    if (c == kNone) throw std::invalid_argument("subgroup element outside W");
    inA[c]++;
  }
  for (auto& b : B) {
    auto c = id[rank(b)];
    if (c == kNone) throw std::invalid_argument("subgroup element outside W");
    inB[c]++;
  }
  // (1/|W|) sum_w pi_A(w) pi_B(w), pi_X(w) = |C_W(w)| |X cap w^W| / |X|
  std::uint64_t num = 0;
  for (std::size_t c = 0; c < cls.size(); ++c) num += cls[c].centralizer * inA[c] * inB[c];
  std::uint64_t den = A.size() * B.size();
  if (num % den) throw std::logic_error("non-integral permutation-character inner product");
  return num / den;
}

std::vector<SignedPerm> symmetric_generators(int m) {
  std::vector<SignedPerm> g;
  for (int i = 0; i + 1 < m; ++i) {
    SignedPerm s = SignedPerm::identity(m);
    std::swap(s.perm[i], s.perm[i + 1]);
    g.push_back(s);
  }
  return g;
}

std::uint64_t self_norm(int m, WType t) {
  auto S = symmetric_generators(m);
  return double_coset_count(t, m, S, S);
}

std::uint64_t cross_norm(int m) {
  auto S = symmetric_generators(m);
  if (m == 0) return 1;
  SignedPerm tt = SignedPerm::identity(m);
  tt.sign[0] = -1;
  std::vector<SignedPerm> S2;
  for (auto& s : S) S2.push_back(conjugate(s, tt));
  return double_coset_count(WType::D, m, S, S2);
}

void write_class_csv(std::ostream& os, WType t, int n) {
  auto cls = conjugacy_classes(t, n);
  os << "label_d,label_e,size,centralizer,splits\n";
  for (auto& c : cls)
    os << '"' << c.label.d_string() << "\",\"" << c.label.e_string() << "\"," << c.size << ',' << c.centralizer << ','
       << (c.splits ? 1 : 0) << '\n';
}

}  // namespace stp::weyl
