#include "verify.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "stplus/characters.hpp"
#include "stplus/tori.hpp"
#include "stplus/weyl.hpp"

namespace stp::cli {

namespace {

using chars::to_string;

constexpr std::uint64_t kQuickOrderLimit = 2'000'000;

std::vector<Target> default_targets() {
  auto F3 = Field::make(3, 1), F2 = Field::make(2, 1);
  return {{F3, 3, FormType::Odd},  {F3, 4, FormType::Plus}, {F3, 4, FormType::Minus}, {F3, 5, FormType::Odd},
          {F2, 4, FormType::Plus}, {F2, 4, FormType::Minus}, {F2, 5, FormType::Odd}};
}

std::vector<Target> targets(const VerifyConfig& cfg) {
  if (cfg.target) return {*cfg.target};
  return default_targets();
}

std::string target_name(const Target& t) {
  std::string kind = t.field->odd() ? "SO" : "Omega";
  std::string sign = t.type == FormType::Plus ? "+" : t.type == FormType::Minus ? "-" : "";
  return kind + sign + "_" + std::to_string(t.dim) + "(" + std::to_string(t.field->q()) + ")";
}

class Runner {
 public:
  explicit Runner(std::string suite) : suite_(std::move(suite)) {}

  // fn returns an empty string on success, else a failure description.
  void check(const std::string& name, const std::function<std::string()>& fn) {
    CheckResult r{suite_, name, false, ""};
    try {
      r.detail = fn();
      r.pass = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out_.push_back(std::move(r));
  }
  // Passing check that still reports a detail line.
  void check_info(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    CheckResult r{suite_, name, false, ""};
    try {
      auto [ok, d] = fn();
      r.pass = ok;
      r.detail = d;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out_.push_back(std::move(r));
  }
  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::string suite_;
  std::vector<CheckResult> out_;
};

template <class T>
std::string expect_eq(const T& got, const T& want, const std::string& what) {
  if (got == want) return "";
  std::ostringstream os;
  os << what << ": got " << got << ", expected " << want;
  return os.str();
}

MatGroup classes_group(const Target& t, const EnumOptions& opts) {
  auto V = standard_space(t.dim, t.type, t.field);
  MatGroup G = build_group(V, chars::natural_kind(*t.field), opts);
  G.compute_classes(opts);
  return G;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> suite_fields(const VerifyConfig& cfg) {
  Runner R("fields");
  std::vector<std::pair<unsigned, unsigned>> fields{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3},
                                                    {3, 2}, {2, 4}, {5, 2}, {3, 3}, {7, 2}};
  if (cfg.target) fields = {{cfg.target->field->p(), cfg.target->field->k()}};
  for (auto [p, k] : fields) {
    auto F = Field::make(p, k);
    const Elem q = F->q();
    R.check(F->name() + " primitive element", [&] {
      return expect_eq<std::uint64_t>(F->mult_order(F->primitive()), q - 1, "order of the primitive element");
    });
    R.check(F->name() + " Frobenius fixes GF(p) only", [&] {
      std::uint64_t fixed = 0, bad = 0;
      for (Elem a = 0; a < q; ++a) {
        if (F->frobenius(a) == a) ++fixed;
        if (F->pow(a, q) != a) ++bad;
      }
      if (bad) return std::string("a^q != a for some a");
      return expect_eq<std::uint64_t>(fixed, p, "Frobenius fixed points");
    });
    R.check(F->name() + " field axioms", [&] {
      for (Elem a = 0; a < q; ++a) {
        if (a && F->mul(a, F->inv(a)) != 1) return std::string("inverse fails");
        for (Elem b = 0; b < q && b < 64; ++b) {
          if (F->mul(a, b) != F->mul(b, a)) return std::string("multiplication not commutative");
          Elem c = (a * 7 + b * 3) % q;
          if (F->mul(a, F->add(b, c)) != F->add(F->mul(a, b), F->mul(a, c))) return std::string("distributivity fails");
        }
      }
      return std::string();
    });
    R.check(F->name() + " square count", [&] {
      std::uint64_t sq = 0;
      for (Elem a = 1; a < q; ++a) sq += F->is_square(a);
      return expect_eq<std::uint64_t>(sq, F->odd() ? (q - 1) / 2 : q - 1, "nonzero squares");
    });
  }
  return R.take();
}

std::vector<CheckResult> suite_spaces(const VerifyConfig& cfg) {
  Runner R("spaces");
  std::vector<Target> list;
  if (cfg.target) {
    list.push_back(*cfg.target);
  } else {
    for (unsigned p : {2u, 3u, 5u})
      for (int d = 1; d <= 6; ++d) {
        auto F = Field::make(p, 1);
        if (d % 2) list.push_back({F, d, FormType::Odd});
        else {
          list.push_back({F, d, FormType::Plus});
          list.push_back({F, d, FormType::Minus});
        }
      }
  }
  for (auto& t : list) {
    R.check("standard space " + std::to_string(t.dim) + to_string(t.type) + " over " + t.field->name(), [&] {
      auto V = standard_space(t.dim, t.type, t.field);
      if (!V.nondegenerate()) return std::string("degenerate");
      if (form_type(V) != t.type) return std::string("wrong type");
      auto w = witt_decompose(V);
      if (t.dim % 2 == 0 && w.index + w.defect != t.dim / 2) return std::string("index + defect != dim/2");
      if (t.dim % 2 == 0 && w.defect != (t.type == FormType::Minus ? 1 : 0)) return std::string("wrong defect");
      int k = t.dim / 2;
      auto sub = totally_singular_subspaces(V, 1);
      // singular points against the closed count
      std::uint64_t q = t.field->q();
      long long expect;
      if (t.dim % 2) expect = (ipow(q, 2 * k) - 1) / (q - 1);
      else {
        long long e = t.type == FormType::Plus ? 1 : -1;
        expect = (ipow(q, k) - e) * (ipow(q, k - 1) + e) / (q - 1);
      }
      return expect_eq<long long>(static_cast<long long>(sub.size()), expect, "singular points");
    });
  }
  return R.take();
}

std::vector<CheckResult> suite_groups(const VerifyConfig& cfg) {
  Runner R("groups");
  struct Item {
    QuadraticSpace V;
    GroupKind kind;
    bool symplectic;
    int dim;
    FieldPtr F;
  };
  std::vector<Item> items;
  auto add_space = [&](FieldPtr F, int d, FormType t) {
    auto V = standard_space(d, t, F);
    std::vector<GroupKind> kinds = F->odd() ? std::vector<GroupKind>{GroupKind::O, GroupKind::SO, GroupKind::Omega}
                                            : std::vector<GroupKind>{GroupKind::O, GroupKind::Omega};
    for (auto k : kinds) items.push_back({V, k, false, d, F});
  };
  const std::uint64_t limit = cfg.target ? cfg.opts.max_order : std::min<std::uint64_t>(cfg.opts.max_order, kQuickOrderLimit);
  if (cfg.target) {
    add_space(cfg.target->field, cfg.target->dim, cfg.target->type);
    if (cfg.target->dim % 2 == 0) items.push_back({{}, GroupKind::Sp, true, cfg.target->dim, cfg.target->field});
  } else {
    for (unsigned p : {2u, 3u, 5u}) {
      auto F = Field::make(p, 1);
      for (int d = 2; d <= 6; ++d) {
        if (d % 2) add_space(F, d, FormType::Odd);
        else {
          add_space(F, d, FormType::Plus);
          add_space(F, d, FormType::Minus);
          items.push_back({{}, GroupKind::Sp, true, d, F});
        }
      }
    }
  }
  for (auto& it : items) {
    BigInt expect = it.symplectic ? order_sp(it.dim, it.F->q()) : group_order(it.V, it.kind);
    if (expect > BigInt(limit)) continue;
    std::string name = it.symplectic ? "Sp_" + std::to_string(it.dim) + "(" + std::to_string(it.F->q()) + ")"
                                     : to_string(it.kind) + to_string(form_type(it.V)) + "_" + std::to_string(it.dim) +
                                           "(" + std::to_string(it.F->q()) + ")";
    R.check(name + " order", [&] {
      MatGroup G = it.symplectic ? build_symplectic(it.dim, it.F, cfg.opts) : build_group(it.V, it.kind, cfg.opts);
      G.enumerate(cfg.opts);
      return expect_eq<BigInt>(BigInt(G.order()), expect, "enumerated order");
    });
  }
  return R.take();
}

std::vector<CheckResult> suite_weyl(const VerifyConfig&) {
  Runner R("weyl");
  using namespace weyl;
  for (int n = 1; n <= 6; ++n)
    for (auto t : {WType::B, WType::D}) {
      R.check("W(" + to_string(t) + std::to_string(n) + ") centralizer formulas", [&] {
        auto cls = conjugacy_classes(t, n);
        std::uint64_t total = 0;
        for (auto& c : cls) {
          total += c.size;
          if (centralizer_order_formula(c.label, t) != c.centralizer) return "class " + c.label.to_string() + " centralizer";
          if (t == WType::D && c.splits != label_splits(c.label)) return "class " + c.label.to_string() + " splitting";
        }
        return expect_eq<std::uint64_t>(total, group_order(t, n), "sum of class sizes");
      });
    }
  const std::map<int, std::pair<std::uint64_t, std::uint64_t>> known{{4, {2, 3}}, {6, {3, 4}}};
  for (auto& [m, v] : known) {
    R.check("double cosets m=" + std::to_string(m), [&, m = m, v = v] {
      auto c = cross_norm(m), s = self_norm(m, WType::D);
      if (c != v.first) return expect_eq(c, v.first, "cross");
      return expect_eq(s, v.second, "self");
    });
  }
  for (int m = 1; m <= 4; ++m)
    R.check("orbit count equals permutation-character product m=" + std::to_string(m), [m] {
      auto S = symmetric_generators(m);
      return expect_eq(induced_inner_product(WType::D, m, S, S), self_norm(m, WType::D), "Burnside vs orbits");
    });
  return R.take();
}

std::vector<CheckResult> suite_tori(const VerifyConfig& cfg) {
  Runner R("tori");
  for (auto& t : targets(cfg)) {
    std::optional<MatGroup> G;
    std::optional<chars::ClassFunction> w;
    R.check(target_name(t) + " group and omega", [&] {
      G.emplace(classes_group(t, cfg.opts));
      w = chars::make_stplus(*G).omega();
      return std::string();
    });
    if (!w) continue;
    for (auto& spec : tori::enumerate_decomps(t.dim, t.type)) {
      R.check(target_name(t) + " torus " + spec.to_string(), [&] {
        auto T = tori::build_torus(spec, t.field);
        if (T.order() != tori::torus_order(spec, t.field->q())) return std::string("order differs from closed form");
        for (auto& e : T.elements())
          if (!G->contains(e)) return std::string("torus element outside the group");
        auto mult = chars::restrict_decompose(*w, T);
        for (auto& [theta, m] : mult)
          if (m != tori::omega_pattern(T, theta)) return std::string("omega multiplicity pattern differs");
        return std::string();
      });
    }
  }
  return R.take();
}

std::vector<CheckResult> suite_omega(const VerifyConfig& cfg) {
  Runner R("omega");
  for (auto& t : targets(cfg)) {
    R.check(target_name(t) + " two paths and values", [&] {
      MatGroup G = classes_group(t, cfg.opts);
      auto w = chars::make_stplus(G).omega();  // throws on disagreement
      const long long q = static_cast<long long>(t.field->q());
      const int n = t.dim;
      auto r = expect_eq<long long>(w.at(Matrix::identity(n)), ipow(q, n / 2), "omega(1)");
      if (!r.empty()) return r;
      for (std::size_t c = 0; c < G.classes().size(); ++c) {
        Matrix g = G.class_rep(static_cast<std::uint32_t>(c));
        Matrix s = jordan(G.field(), g).s;
        if (w[c] != w.at(s)) return std::string("omega(su) != omega(s)");
      }
      Matrix m1 = la::scale(G.field(), Matrix::identity(n), G.field().neg(1));
      if (t.field->odd() && n % 2 == 0 && G.contains(m1)) {
        long long alpha = t.type == FormType::Plus ? 1 : -1;
        return expect_eq<long long>(w.at(m1), alpha, "omega(-Id)");
      }
      return std::string();
    });
    R.check_info(target_name(t) + " St_H from an enumerated H", [&] {
      MatGroup G = classes_group(t, cfg.opts);
      EnumOptions o = cfg.opts;
      o.max_order = std::min<std::uint64_t>(o.max_order, kQuickOrderLimit);
      auto bad = chars::make_stplus(G).cross_check_h(o);
      if (!bad) return std::make_pair(true, std::string("H above the quick limit, skipped"));
      return std::make_pair(*bad == 0, std::to_string(*bad) + " disagreeing classes");
    });
    if (t.dim == 3 && t.field->odd()) {
      R.check(target_name(t) + " torus values", [&] {
        MatGroup G = classes_group(t, cfg.opts);
        auto w = chars::make_stplus(G).omega();
        for (auto& spec : tori::enumerate_decomps(3, FormType::Odd)) {
          auto T = tori::build_torus(spec, t.field);
          long long want = spec.decomp.k() ? 1 : -1;
          for (auto& e : T.elements())
            if (!(e == Matrix::identity(3)) && w.at(e) != want)
              return "torus " + spec.to_string() + " value " + std::to_string(w.at(e));
        }
        return std::string();
      });
    }
  }
  return R.take();
}

std::vector<CheckResult> suite_multiplication(const VerifyConfig& cfg) {
  Runner R("multiplication");
  std::vector<Target> list;
  if (cfg.target) list.push_back(*cfg.target);
  else {
    auto F3 = Field::make(3, 1);
    list = {{F3, 4, FormType::Plus}, {F3, 4, FormType::Minus}, {F3, 5, FormType::Odd}};
  }
  for (auto& t : list) {
    auto V = standard_space(t.dim, t.type, t.field);
    for (int d1 = 1; d1 < t.dim; ++d1) {
      if (!t.field->odd() && (d1 % 2 || t.dim % 2)) continue;
      std::vector<chars::MultReport> reps;
      std::string err;
      try {
        reps = chars::verify_product_law(V, d1, cfg.opts);
      } catch (const std::exception& e) {
        err = e.what();
      }
      if (!err.empty()) {
        R.check(target_name(t) + " split d1=" + std::to_string(d1), [&] { return "exception: " + err; });
        continue;
      }
      for (auto& r : reps)
        R.check_info(target_name(t) + " split " + r.split, [&] {
          std::ostringstream os;
          os << r.checked << " pairs, " << r.violations << " violations" << (r.factor_q ? ", factor q" : "");
          return std::make_pair(r.violations == 0 && r.checked > 0, os.str());
        });
    }
  }
  return R.take();
}

std::vector<CheckResult> suite_census(const VerifyConfig& cfg) {
  Runner R("census");
  for (auto& t : targets(cfg)) {
    R.check_info(target_name(t) + " census", [&] {
      auto V = standard_space(t.dim, t.type, t.field);
      auto c = chars::census(V, cfg.opts);
      bool zero_ok = true;
      for (auto& s : c.series)
        if (s.tag == "zero" && s.predicted_norm != 0) zero_ok = false;
      std::ostringstream os;
      os << "predicted " << c.predicted_norm_sum << ", brute force " << to_string(c.bruteforce_norm);
      return std::make_pair(c.match && zero_ok, os.str());
    });
  }
  return R.take();
}

std::vector<CheckResult> suite_inner_products(const VerifyConfig& cfg) {
  Runner R("inner-products");
  for (auto& t : targets(cfg)) {
    if (!t.field->odd()) continue;
    R.check_info(target_name(t) + " inner products", [&] {
      MatGroup G = classes_group(t, cfg.opts);
      auto stp = chars::make_stplus(G).stplus();
      auto r = chars::inner_product_check(G, stp);
      std::ostringstream os;
      os << "(" << to_string(r.st) << ", " << to_string(r.st_minus) << ", " << to_string(r.one) << ", "
         << to_string(r.one_minus) << ") expected " << r.expected;
      return std::make_pair(r.match, os.str());
    });
  }
  return R.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"fields", "spaces",         "groups", "weyl", "tori",
                                              "omega",  "multiplication", "census", "inner-products"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& cfg) {
  if (suite == "all") {
    std::vector<CheckResult> all;
    for (auto& s : suite_names()) {
      auto r = run_suite(s, cfg);
      all.insert(all.end(), r.begin(), r.end());
    }
    return all;
  }
  if (suite == "fields") return suite_fields(cfg);
  if (suite == "spaces") return suite_spaces(cfg);
  if (suite == "groups") return suite_groups(cfg);
  if (suite == "weyl") return suite_weyl(cfg);
  if (suite == "tori") return suite_tori(cfg);
  if (suite == "omega") return suite_omega(cfg);
  if (suite == "multiplication") return suite_multiplication(cfg);
  if (suite == "census") return suite_census(cfg);
  if (suite == "inner-products" || suite == "co4") return suite_inner_products(cfg);
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace stp::cli
