#include "doctest.h"
#include "stplus/matgrp.hpp"
#include "stplus/tori.hpp"

#include <set>

using namespace stp;
using namespace stp::tori;

namespace {

std::uint64_t closed_order(const OrthoDecomp& d, std::uint64_t q) {
  std::uint64_t r = 1;
  for (std::size_t i = 1; i < d.d.size(); ++i)
    for (int c = 0; c < d.d[i]; ++c) {
      std::uint64_t t = 1;
      for (std::size_t j = 0; j < i; ++j) t *= q;
      r *= t - 1;
    }
  for (std::size_t i = 1; i < d.e.size(); ++i)
    for (int c = 0; c < d.e[i]; ++c) {
      std::uint64_t t = 1;
      for (std::size_t j = 0; j < i; ++j) t *= q;
      r *= t + 1;
    }
  return r;
}

}  // namespace

TEST_CASE("catalog sizes and classification") {
  CHECK(enumerate_decomps(5, FormType::Odd).size() == 5);
  CHECK(enumerate_decomps(4, FormType::Plus).size() == 4);  // d=[2] counted twice
  CHECK(enumerate_decomps(4, FormType::Minus).size() == 2);
  for (auto& s : enumerate_decomps(6, FormType::Minus)) CHECK(s.decomp.l() % 2 == 1);
  for (auto& s : enumerate_decomps(6, FormType::Plus)) CHECK(s.decomp.l() % 2 == 0);
  for (auto& s : enumerate_decomps(5, FormType::Odd)) {
    if (s.decomp.to_string() == "d=[2]") CHECK(classify(s) == TorusClass::Exceptional);
    if (s.decomp.to_string() == "d=[1^2]") CHECK(classify(s) == TorusClass::Neutral);
    if (s.decomp.to_string() == "e=[2]") CHECK(classify(s) == TorusClass::Generic);
  }
}

TEST_CASE("Weyl orders of tori") {
  for (auto& s : enumerate_decomps(5, FormType::Odd)) {
    auto str = s.decomp.to_string();
    if (str == "d=[2]" || str == "e=[2]" || str == "d=[1],e=[1]") CHECK(weyl_order(s) == 4);
    if (str == "d=[1^2]" || str == "e=[1^2]") CHECK(weyl_order(s) == 8);
  }
  for (auto& s : enumerate_decomps(4, FormType::Plus)) {
    if (!s.branch) continue;
    auto str = s.decomp.to_string();
    if (str == "d=[2]") CHECK(weyl_order(s) == 4);
    if (str == "d=[1^2]") CHECK(weyl_order(s) == 8);
  }
  for (auto& s : enumerate_decomps(4, FormType::Minus))
    if (s.decomp.to_string() == "e=[2]") CHECK(weyl_order(s) == 2);
}

TEST_CASE("explicit tori are abelian subgroups of the right order") {
  struct Case {
    int dim;
    FormType t;
    unsigned p;
  };
  for (auto c : {Case{5, FormType::Odd, 3}, Case{4, FormType::Plus, 3}, Case{4, FormType::Minus, 3},
                 Case{4, FormType::Plus, 2}, Case{4, FormType::Minus, 2}, Case{6, FormType::Minus, 2}}) {
    auto F = Field::make(c.p, 1);
    auto V = standard_space(c.dim, c.t, F);
    for (auto& s : enumerate_decomps(c.dim, c.t)) {
      CAPTURE(s.to_string());
      auto T = build_torus(s, F);
      CHECK(T.order() == closed_order(s.decomp, F->q()));
      CHECK(T.order() == torus_order(s, F->q()));
      auto els = T.elements();
      std::set<std::vector<Elem>> distinct;
      for (auto& g : els) {
        distinct.insert(g.a);
        CHECK(V.is_isometry(g));
        CHECK(la::det(*F, g) == 1);
      }
      CHECK(distinct.size() == T.order());
      for (auto& f : T.factors)
        for (auto& h : T.factors) CHECK(la::mul(*F, f.gen, h.gen) == la::mul(*F, h.gen, f.gen));
    }
  }
}

TEST_CASE("odd-dimensional tori fix a line") {
  auto F = Field::make(3, 1);
  for (auto& s : enumerate_decomps(5, FormType::Odd)) CHECK(build_torus(s, F).fixed_space().dim() == 1);
}

TEST_CASE("the two classes of an exceptional torus are not conjugate in SO") {
  auto F = Field::make(3, 1);
  auto V = standard_space(4, FormType::Plus, F);
  auto G = build_group(V, GroupKind::SO);
  G.compute_classes();
  std::vector<std::set<std::uint32_t>> sets;
  for (auto& s : enumerate_decomps(4, FormType::Plus)) {
    if (!s.branch) continue;
    std::set<std::uint32_t> cls;
    for (auto& g : build_torus(s, F).elements()) cls.insert(G.class_of(g));
    sets.push_back(cls);
  }
  REQUIRE(sets.size() == 2);
  CHECK(sets[0] != sets[1]);
}

TEST_CASE("characters of a torus are orthogonal") {
  auto F = Field::make(3, 1);
  TorusSpec spec;
  for (auto& s : enumerate_decomps(5, FormType::Odd))
    if (s.decomp.to_string() == "d=[1],e=[1]") spec = s;
  auto T = build_torus(spec, F);
  auto tuples = T.tuples();
  for (auto& a : tuples)
    for (auto& b : tuples) {
      // sum_t theta_a(t) conj(theta_b(t))
      std::vector<long long> sums(T.exponent(), 0);
      for (auto& t : tuples) {
        long long e = static_cast<long long>(character_exponent(T, a, t)) - static_cast<long long>(character_exponent(T, b, t));
        long long M = static_cast<long long>(T.exponent());
        sums[((e % M) + M) % M] += 1;
      }
      auto v = from_exponent_sums(static_cast<unsigned>(T.exponent()), sums).as_integer();
      REQUIRE(v);
      CHECK(*v == (a == b ? static_cast<long long>(T.order()) : 0));
    }
  // the regular character has multiplicity one everywhere
  std::vector<long long> reg(T.order(), 0);
  reg[0] = static_cast<long long>(T.order());
  for (auto& [theta, m] : multiplicities(T, reg)) CHECK(m == 1);
}
