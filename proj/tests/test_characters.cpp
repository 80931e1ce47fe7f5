#include "doctest.h"
#include "stplus/characters.hpp"

using namespace stp;
using namespace stp::chars;

namespace {

MatGroup classes_group(int dim, FormType t, unsigned p) {
  auto V = standard_space(dim, t, Field::make(p, 1));
  auto G = build_group(V, natural_kind(V.field()));
  G.compute_classes();
  return G;
}

BigInt p_part_of(std::uint64_t n, unsigned p) {
  BigInt r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

}  // namespace

TEST_CASE("polynomial factorization") {
  auto F = Field::make(3, 1);
  // (x - 1)^2 (x + 1) (x^2 + 1)
  Poly f = F->poly_mul(F->poly_mul(Poly{2, 1}, Poly{2, 1}), F->poly_mul(Poly{1, 1}, Poly{1, 0, 1}));
  auto fac = factor_poly(*F, f);
  REQUIRE(fac.size() == 3);
  CHECK(fac[0] == std::make_pair(Poly{1, 1}, 1));
  CHECK(fac[1] == std::make_pair(Poly{2, 1}, 2));
  CHECK(fac[2] == std::make_pair(Poly{1, 0, 1}, 1));
}

TEST_CASE("rank table") {
  CHECK(factor_rank({FactorKind::SOplus, 2, 1}) == 1);
  CHECK(factor_rank({FactorKind::SOminus, 2, 1}) == 0);
  CHECK(factor_rank({FactorKind::GL, 1, 2}) == 1);
  CHECK(factor_rank({FactorKind::Sp, 4, 1}) == 2);
  CHECK(factor_rank({FactorKind::U, 3, 1}) == 1);
  CHECK(factor_order({FactorKind::U, 2, 1}, 3) == 96);
  CHECK(factor_order({FactorKind::GL, 2, 1}, 3) == 48);
}

TEST_CASE("centralizer shapes of particular elements") {
  auto G5 = classes_group(5, FormType::Odd, 3);
  auto sh = centralizer_shape(G5, Matrix::identity(5));
  REQUIRE(sh.factors.size() == 1);
  CHECK(sh.factors[0] == ShapeFactor{FactorKind::SOodd, 5, 1});
  CHECK(sh.fq_rank() == 2);

  auto G4 = classes_group(4, FormType::Minus, 3);
  const Field& F = G4.field();
  sh = centralizer_shape(G4, la::scale(F, Matrix::identity(4), F.neg(1)));
  REQUIRE(sh.factors.size() == 1);
  CHECK(sh.factors[0] == ShapeFactor{FactorKind::SOminus, 4, 1});

  bool found = false;
  for (std::uint32_t c = 0; c < G4.classes().size(); ++c) {
    if (G4.classes()[c].element_order != 10) continue;
    auto s = centralizer_shape(G4, G4.class_rep(c));
    REQUIRE(s.factors.size() == 1);
    CHECK(s.factors[0] == ShapeFactor{FactorKind::U, 1, 2});
    CHECK(s.predicted_order(3) == 10);
    CHECK(G4.classes()[c].centralizer_order == 10);
    found = true;
  }
  CHECK(found);
  // both eigenvalues +1 and -1 in odd dimension: the centralizer is disconnected
  Matrix d = Matrix::identity(3);
  auto V3 = standard_space(3, FormType::Odd, Field::make(3, 1));
  auto G3 = build_group(V3, GroupKind::SO);
  G3.compute_classes();
  for (std::uint32_t c = 0; c < G3.classes().size(); ++c) {
    Matrix g = G3.class_rep(c);
    if (G3.classes()[c].element_order == 2) CHECK(centralizer_shape(G3, g).outer_index == 2);
  }
}

TEST_CASE("shape oracle matches enumerated centralizers") {
  for (auto [dim, t, p] : std::vector<std::tuple<int, FormType, unsigned>>{{3, FormType::Odd, 3},
                                                                           {4, FormType::Plus, 3},
                                                                           {4, FormType::Minus, 3},
                                                                           {5, FormType::Odd, 3},
                                                                           {4, FormType::Plus, 2},
                                                                           {4, FormType::Minus, 2},
                                                                           {5, FormType::Odd, 2},
                                                                           {3, FormType::Odd, 5},
                                                                           {4, FormType::Minus, 5}}) {
    auto G = classes_group(dim, t, p);
    CAPTURE(G.label());
    CHECK(shape_oracle_mismatches(G).empty());
  }
  auto Sp = build_symplectic(4, Field::make(3, 1));
  Sp.compute_classes();
  CHECK(shape_oracle_mismatches(Sp).empty());
}

TEST_CASE("Steinberg character") {
  for (auto [dim, t] : std::vector<std::pair<int, FormType>>{{5, FormType::Odd}, {4, FormType::Plus}, {4, FormType::Minus}}) {
    auto G = classes_group(dim, t, 3);
    auto st = steinberg(G);
    CHECK(inner_product(st, st) == 1);
    CHECK(inner_product(st, trivial_character(G)) == 0);
  }
  auto G5 = classes_group(5, FormType::Odd, 3);
  CHECK(steinberg(G5).at(Matrix::identity(5)) == 81);
  auto Sp = build_symplectic(4, Field::make(3, 1));
  Sp.compute_classes();
  auto st = steinberg(Sp);
  CHECK(inner_product(st, st) == 1);
  CHECK(st.at(Matrix::identity(4)) == 81);
  // dimension two: trivial by convention
  auto G2 = classes_group(2, FormType::Minus, 3);
  for (auto v : steinberg(G2).values) CHECK(v == 1);
}

TEST_CASE("Steinberg values on the tori of SO3") {
  for (unsigned p : {3u, 5u}) {
    auto G = classes_group(3, FormType::Odd, p);
    auto st = steinberg(G);
    for (auto& spec : tori::enumerate_decomps(3, FormType::Odd)) {
      auto T = tori::build_torus(spec, G.field_ptr());
      long long want = spec.decomp.k() ? 1 : -1;
      for (auto& g : T.elements())
        if (!(g == Matrix::identity(3))) CHECK(st.at(g) == want);
    }
  }
}

TEST_CASE("Steinberg-plus against brute-force centralizers in the bigger group") {
  auto F = Field::make(3, 1);
  auto V = standard_space(3, FormType::Odd, F);
  auto G = build_group(V, GroupKind::SO);
  G.compute_classes();
  std::vector<ClassFunction> both;
  for (auto t : {FormType::Plus, FormType::Minus}) {
    auto E = Codim1Embedding::extend_to_type(V, t);
    SteinbergPlus sp(G, E);
    auto H = build_group(E.big(), GroupKind::SO);
    H.enumerate();
    auto f = sp.stplus();
    for (std::size_t i = 0; i < G.order(); ++i) {
      Matrix g = G.element(i);
      Matrix h = E.lift(g);
      long long v = f.at(g);
      if (!is_semisimple(*F, g)) {
        CHECK(v == 0);
        continue;
      }
      CHECK(BigInt(v < 0 ? -v : v) == p_part_of(H.centralizer_order_direct(h), 3));
    }
    CHECK(inner_product(f, f) == 4);
    CHECK(f.at(Matrix::identity(3)) == 9);
    both.push_back(f);
  }
  CHECK(both[0] == both[1]);
}

TEST_CASE("St_H from shapes agrees with an enumerated H") {
  for (auto [dim, t, p] : std::vector<std::tuple<int, FormType, unsigned>>{{3, FormType::Odd, 3},
                                                                           {4, FormType::Plus, 3},
                                                                           {4, FormType::Minus, 3},
                                                                           {4, FormType::Plus, 2},
                                                                           {4, FormType::Minus, 2},
                                                                           {5, FormType::Odd, 2},
                                                                           {3, FormType::Odd, 5}}) {
    auto G = classes_group(dim, t, p);
    CAPTURE(G.label());
    EnumOptions o;
    o.max_order = 1'000'000;
    auto bad = make_stplus(G).cross_check_h(o);
    REQUIRE(bad.has_value());
    CHECK(*bad == 0);
  }
  auto G = classes_group(5, FormType::Odd, 3);
  EnumOptions o;
  o.max_order = 1'000'000;
  CHECK_FALSE(make_stplus(G).cross_check_h(o).has_value());
}

TEST_CASE("omega: both paths and special values") {
  for (auto [dim, t, p] : std::vector<std::tuple<int, FormType, unsigned>>{{3, FormType::Odd, 3},
                                                                           {4, FormType::Plus, 3},
                                                                           {4, FormType::Minus, 3},
                                                                           {5, FormType::Odd, 3},
                                                                           {4, FormType::Plus, 2},
                                                                           {4, FormType::Minus, 2},
                                                                           {5, FormType::Odd, 2}}) {
    auto G = classes_group(dim, t, p);
    auto sp = make_stplus(G);
    auto a = sp.omega_quotient(), b = sp.omega_power();
    CHECK(a == b);
    long long q = p, expect = 1;
    for (int i = 0; i < dim / 2; ++i) expect *= q;
    CHECK(a.at(Matrix::identity(dim)) == expect);
  }
  for (auto [t, alpha] : std::vector<std::pair<FormType, long long>>{{FormType::Plus, 1}, {FormType::Minus, -1}}) {
    auto G = classes_group(4, t, 3);
    const Field& F = G.field();
    CHECK(make_stplus(G).omega().at(la::scale(F, Matrix::identity(4), F.neg(1))) == alpha);
  }
  // rank-one groups: regular character plus or minus the trivial one
  for (auto [t, sign] : std::vector<std::pair<FormType, long long>>{{FormType::Plus, 1}, {FormType::Minus, -1}}) {
    auto G = classes_group(2, t, 5);
    auto w = make_stplus(G).omega();
    for (std::uint32_t c = 0; c < G.classes().size(); ++c) {
      bool id = G.class_rep(c) == Matrix::identity(2);
      CHECK(w[c] == (id ? static_cast<long long>(G.order()) + sign : sign));
    }
  }
}

TEST_CASE("omega restricted to tori") {
  auto G = classes_group(5, FormType::Odd, 3);
  auto w = make_stplus(G).omega();
  for (auto& spec : tori::enumerate_decomps(5, FormType::Odd)) {
    auto T = tori::build_torus(spec, G.field_ptr());
    auto mult = restrict_decompose(w, T);
    std::vector<std::uint64_t> trivial(T.factors.size(), 0);
    auto name = spec.decomp.to_string();
    if (name == "e=[2]") {
      for (auto& [th, m] : mult) CHECK(m == (th == trivial ? 0 : 1));
    }
    if (name == "d=[2]") {
      for (auto& [th, m] : mult) CHECK(m == (th == trivial ? 2 : 1));
    }
    for (auto& [th, m] : mult) CHECK(m == tori::omega_pattern(T, th));
  }
}

TEST_CASE("product law over orthogonal splittings") {
  auto F = Field::make(3, 1);
  for (auto t : {FormType::Plus, FormType::Minus}) {
    auto V = standard_space(4, t, F);
    for (int d1 = 1; d1 <= 3; ++d1)
      for (auto& r : verify_product_law(V, d1)) {
        CAPTURE(r.split);
        CHECK(r.factor_q == (d1 % 2 == 1));
        CHECK(r.checked > 0);
        CHECK(r.violations == 0);
      }
  }
  auto reps = verify_product_law(standard_space(5, FormType::Odd, F), 1);
  CHECK(reps.size() == 2);
  for (auto& r : reps) CHECK(r.violations == 0);
}

TEST_CASE("omega on the GL and unitary subgroups") {
  auto F = Field::make(3, 1);
  auto g = compare_gl(2, F);
  CHECK(g.checked > 0);
  CHECK(g.violations == 0);
  auto u = compare_unitary(2, F);
  CHECK(u.checked > 0);
  CHECK(u.violations == 0);
}

TEST_CASE("omega restricts to omega on codimension-one subgroups") {
  for (auto [p, t] : std::vector<std::pair<unsigned, FormType>>{
           {3, FormType::Plus}, {3, FormType::Minus}, {2, FormType::Plus}, {2, FormType::Minus}}) {
    auto F = Field::make(p, 1);
    auto X4 = standard_space(4, t, F);
    auto X = build_group(X4, natural_kind(*F));
    X.compute_classes();
    auto E = Codim1Embedding::extend(X4, 1);
    auto G = build_group(E.big(), natural_kind(*F));
    G.compute_classes();
    auto wX = make_stplus(X).omega(), wG = make_stplus(G).omega();
    for (std::size_t i = 0; i < X.order(); ++i) {
      Matrix x = X.element(i);
      REQUIRE(wG.at(E.lift(x)) == wX.at(x));
    }
  }
}

TEST_CASE("series census") {
  auto F3 = Field::make(3, 1), F2 = Field::make(2, 1);
  auto c = census(standard_space(3, FormType::Odd, F3));
  CHECK(c.predicted_norm_sum == 4);
  CHECK(c.bruteforce_norm == 4);
  CHECK(c.dual == "Sp_2(3)");
  const std::vector<std::tuple<int, FormType, FieldPtr, std::uint64_t>> cases{
      {4, FormType::Plus, F3, 14}, {4, FormType::Minus, F3, 12}, {5, FormType::Odd, F3, 13},
      {4, FormType::Plus, F2, 8},  {4, FormType::Minus, F2, 6},  {5, FormType::Odd, F2, 7}};
  for (auto& [dim, t, F, norm] : cases) {
    auto r = census(standard_space(dim, t, F));
    CAPTURE(r.group);
    CHECK(r.match);
    CHECK(r.predicted_norm_sum == norm);
    for (auto& s : r.series)
      if (s.defect == 1) CHECK(s.predicted_norm == 0);
  }
  auto m = census(standard_space(4, FormType::Minus, F3));
  bool mult2 = false;
  for (auto& s : m.series)
    if (s.tag == "even_mult2") {
      mult2 = true;
      CHECK(s.predicted_norm == 4);
    }
  CHECK(mult2);
}

TEST_CASE("inner products with the defect-zero and linear characters") {
  auto F = Field::make(3, 1);
  struct Want {
    int dim;
    FormType t;
    Rational st, st_minus, one, one_minus;
  };
  for (auto& w : {Want{5, FormType::Odd, 1, 1, 0, 0}, Want{4, FormType::Plus, 2, 1, 0, 0},
                  Want{4, FormType::Minus, 0, 1, 0, 0}}) {
    auto G = classes_group(w.dim, w.t, 3);
    auto r = inner_product_check(G, make_stplus(G).stplus());
    CHECK(r.match);
    CHECK(r.st == w.st);
    CHECK(r.st_minus == w.st_minus);
    CHECK(r.one == w.one);
    CHECK(r.one_minus == w.one_minus);
  }
  auto G3 = classes_group(3, FormType::Odd, 3);
  auto r = inner_product_check(G3, make_stplus(G3).stplus());
  CHECK(r.match);
  CHECK(r.one != 0);
  (void)F;
}

TEST_CASE("structural facts") {
  auto F = Field::make(3, 1);
  auto G = build_group(standard_space(4, FormType::Plus, F), GroupKind::SO);
  G.enumerate();
  CHECK(singular_subspace_orbits(G, 2) == std::vector<std::uint64_t>{4, 4});
  for (auto& s : tori::enumerate_decomps(5, FormType::Odd)) {
    auto T = tori::build_torus(s, F);
    CHECK(torus_has_spinor_minus(T));
  }
}

TEST_CASE("errors") {
  auto G = classes_group(4, FormType::Plus, 3);
  Matrix u = Matrix::identity(4);
  // a unipotent element is rejected by the shape computation
  for (std::uint32_t c = 0; c < G.classes().size(); ++c)
    if (!G.classes()[c].semisimple) {
      u = G.class_rep(c);
      break;
    }
  CHECK_THROWS_AS(centralizer_shape(G, u), std::invalid_argument);
  auto Sp = build_symplectic(2, Field::make(3, 1));
  Sp.compute_classes();
  CHECK_THROWS(make_stplus(Sp));
  CHECK_THROWS(verify_product_law(standard_space(4, FormType::Plus, Field::make(3, 1)), 4));
}
