#include "doctest.h"
#include "stplus/matgrp.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace stp;

namespace {

// Closed forms written out independently of the library helpers.
std::uint64_t sp_order(int m, std::uint64_t q) {
  std::uint64_t r = 1;
  for (int i = 0; i < m * m; ++i) r *= q;
  for (int i = 1; i <= m; ++i) {
    std::uint64_t t = 1;
    for (int j = 0; j < 2 * i; ++j) t *= q;
    r *= t - 1;
  }
  return r;
}

std::uint64_t o_even_order(int m, int eps, std::uint64_t q) {
  std::uint64_t r = 2;
  for (int i = 0; i < m * (m - 1); ++i) r *= q;
  std::uint64_t qm = 1;
  for (int i = 0; i < m; ++i) qm *= q;
  r *= eps > 0 ? qm - 1 : qm + 1;
  for (int i = 1; i < m; ++i) {
    std::uint64_t t = 1;
    for (int j = 0; j < 2 * i; ++j) t *= q;
    r *= t - 1;
  }
  return r;
}

MatGroup enumerated(int dim, FormType t, unsigned p, GroupKind kind) {
  auto V = standard_space(dim, t, Field::make(p, 1));
  auto G = build_group(V, kind);
  EnumOptions o;
  o.use_cache = false;
  G.enumerate(o);
  return G;
}

}  // namespace

TEST_CASE("enumerated orders agree with closed forms") {
  struct Row {
    int dim;
    FormType t;
    unsigned p;
    GroupKind kind;
    std::uint64_t order;
  };
  const std::vector<Row> rows{
      {3, FormType::Odd, 3, GroupKind::SO, sp_order(1, 3)},
      {3, FormType::Odd, 3, GroupKind::O, 2 * sp_order(1, 3)},
      {3, FormType::Odd, 3, GroupKind::Omega, sp_order(1, 3) / 2},
      {4, FormType::Plus, 3, GroupKind::SO, o_even_order(2, 1, 3) / 2},
      {4, FormType::Minus, 3, GroupKind::SO, o_even_order(2, -1, 3) / 2},
      {4, FormType::Minus, 3, GroupKind::Omega, o_even_order(2, -1, 3) / 4},
      {5, FormType::Odd, 3, GroupKind::SO, sp_order(2, 3)},
      {4, FormType::Plus, 2, GroupKind::Omega, o_even_order(2, 1, 2) / 2},
      {4, FormType::Minus, 2, GroupKind::Omega, o_even_order(2, -1, 2) / 2},
      {4, FormType::Plus, 2, GroupKind::O, o_even_order(2, 1, 2)},
      {5, FormType::Odd, 2, GroupKind::Omega, sp_order(2, 2)},
      {3, FormType::Odd, 5, GroupKind::SO, sp_order(1, 5)},
      {2, FormType::Minus, 5, GroupKind::SO, 6},
      {2, FormType::Plus, 5, GroupKind::SO, 4},
  };
  for (auto& r : rows) {
    auto G = enumerated(r.dim, r.t, r.p, r.kind);
    CAPTURE(G.label());
    CHECK(G.order() == r.order);
    CHECK(group_order(*G.quadratic(), r.kind) == BigInt(r.order));
  }
  auto Sp = build_symplectic(4, Field::make(3, 1));
  Sp.enumerate();
  CHECK(Sp.order() == sp_order(2, 3));
  CHECK(Sp.order() == 51840);
}

TEST_CASE("every element preserves the form") {
  auto G = enumerated(4, FormType::Minus, 3, GroupKind::SO);
  const auto& V = *G.quadratic();
  for (std::size_t i = 0; i < G.order(); ++i) {
    Matrix g = G.element(i);
    REQUIRE(V.is_isometry(g));
    REQUIRE(la::det(G.field(), g) == 1);
  }
}

TEST_CASE("class equation and centralizers") {
  auto G = enumerated(5, FormType::Odd, 3, GroupKind::SO);
  G.compute_classes();
  std::uint64_t total = 0;
  for (std::uint32_t c = 0; c < G.classes().size(); ++c) {
    const auto& cl = G.classes()[c];
    total += cl.size;
    CHECK(cl.size * cl.centralizer_order == G.order());
    Matrix rep = G.class_rep(c);
    CHECK(G.class_of(la::inverse(G.field(), rep)) == cl.inverse_class);
    CHECK(cl.element_order == static_cast<std::uint64_t>(element_order(G.field(), rep)));
  }
  CHECK(total == G.order());
  CHECK(G.classes().size() == 25);
  auto H = enumerated(3, FormType::Odd, 3, GroupKind::SO);
  H.compute_classes();
  for (std::uint32_t c = 0; c < H.classes().size(); ++c)
    CHECK(H.centralizer_order_direct(H.class_rep(c)) == H.classes()[c].centralizer_order);
}

TEST_CASE("spinor norm is a homomorphism with kernel Omega") {
  auto G = enumerated(4, FormType::Plus, 3, GroupKind::SO);
  const auto& V = *G.quadratic();
  std::uint64_t kernel = 0;
  for (std::size_t i = 0; i < G.order(); ++i) {
    Matrix g = G.element(i);
    int a = spinor_norm(V, g);
    CHECK(a == spinor_norm_wall(V, g));
    kernel += a == 1;
  }
  CHECK(kernel == G.order() / 2);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix g = G.element(rng() % G.order()), h = G.element(rng() % G.order());
    CHECK(spinor_norm(V, la::mul(G.field(), g, h)) == spinor_norm(V, g) * spinor_norm(V, h));
  }
}

TEST_CASE("Dickson invariant for q even") {
  auto O = enumerated(4, FormType::Minus, 2, GroupKind::O);
  const auto& V = *O.quadratic();
  std::uint64_t zero = 0;
  for (std::size_t i = 0; i < O.order(); ++i) zero += dickson(V, O.element(i)) == 0;
  CHECK(zero == O.order() / 2);
}

TEST_CASE("Jordan decomposition") {
  auto G = enumerated(4, FormType::Plus, 3, GroupKind::SO);
  const Field& F = G.field();
  for (std::size_t i = 0; i < G.order(); i += 7) {
    Matrix g = G.element(i);
    auto [s, u] = jordan(F, g);
    CHECK(la::mul(F, s, u) == g);
    CHECK(la::mul(F, u, s) == g);
    CHECK(is_semisimple(F, s));
    CHECK(element_order(F, s) % 3 != 0);
    long long ou = element_order(F, u);
    CHECK((ou == 1 || ou == 3 || ou == 9));
    CHECK(G.contains(s));
  }
}

TEST_CASE("codimension-one embedding is an injective homomorphism into the big group") {
  auto F = Field::make(3, 1);
  auto V = standard_space(3, FormType::Odd, F);
  for (auto t : {FormType::Plus, FormType::Minus}) {
    auto E = Codim1Embedding::extend_to_type(V, t);
    CHECK(form_type(E.big()) == t);
    auto G = build_group(V, GroupKind::SO);
    G.enumerate();
    for (std::size_t i = 0; i < G.order(); ++i)
      for (std::size_t j = 0; j < G.order(); j += 5) {
        Matrix a = G.element(i), b = G.element(j);
        Matrix la_ = E.lift(a), lb = E.lift(b);
        REQUIRE(E.big().is_isometry(la_));
        CHECK(E.lift(la::mul(*F, a, b)) == la::mul(*F, la_, lb));
      }
  }
}

TEST_CASE("GL and unitary embeddings land in the orthogonal group") {
  auto F = Field::make(3, 1);
  GLEmbedding E(2, F);
  auto GL = E.build_gl();
  CHECK(GL.order() == 48);
  CHECK(form_type(E.big()) == FormType::Plus);
  for (std::size_t i = 0; i < GL.order(); ++i) CHECK(E.big().is_isometry(E.lift(GL.element(i))));
  UnitaryEmbedding U(2, F);
  auto GU = U.build_unitary();
  CHECK(BigInt(GU.order()) == UnitaryEmbedding::order_gu(2, 3));
  CHECK(GU.order() == 96);
  for (std::size_t i = 0; i < GU.order(); ++i) {
    Matrix g = GU.element(i);
    CHECK(U.is_unitary(g));
    CHECK(U.big().is_isometry(U.lift(g)));
  }
}

TEST_CASE("order cap refuses before enumerating") {
  auto V = standard_space(5, FormType::Odd, Field::make(3, 1));
  EnumOptions o;
  o.max_order = 1000;
  o.use_cache = false;
  CHECK_THROWS_WITH_AS(build_group(V, GroupKind::SO, o), doctest::Contains("--max-order 51840"), std::runtime_error);
}

TEST_CASE("group cache round trip and recovery from corruption") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "stplus-cache-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  EnumOptions o;
  o.cache_dir = dir.string();
  auto V = standard_space(4, FormType::Minus, Field::make(3, 1));
  auto A = build_group(V, GroupKind::SO, o);
  A.compute_classes(o);
  REQUIRE(!fs::is_empty(dir));
  auto B = build_group(V, GroupKind::SO, o);
  B.compute_classes(o);
  CHECK(A.elements() == B.elements());
  CHECK(A.classes().size() == B.classes().size());
  for (auto& entry : fs::directory_iterator(dir)) {
    std::ofstream f(entry.path(), std::ios::binary | std::ios::trunc);
    f << "garbage";
  }
  auto C = build_group(V, GroupKind::SO, o);
  C.compute_classes(o);
  CHECK(C.order() == 720);
  CHECK(C.classes().size() == A.classes().size());
  fs::remove_all(dir);
}
