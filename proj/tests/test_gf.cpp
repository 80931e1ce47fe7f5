#include "doctest.h"
#include "stplus/gf.hpp"

#include <vector>

using namespace stp;

namespace {

// Schoolbook product of digit vectors reduced by the field's own modulus.
Elem slow_product(const Field& F, Elem a, Elem b) {
  const unsigned p = F.p(), k = F.k();
  std::vector<long long> x(k), y(k), z(2 * k, 0);
  for (unsigned i = 0; i < k; ++i) {
    x[i] = F.digit(a, i);
    y[i] = F.digit(b, i);
  }
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
  const auto& m = F.modulus();
  for (int d = 2 * static_cast<int>(k) - 2; d >= static_cast<int>(k); --d) {
    long long c = z[d];
    if (!c) continue;
    for (unsigned i = 0; i <= k; ++i) z[d - k + i] = ((z[d - k + i] - c * m[i]) % (long long)p + p) % p;
  }
  Elem r = 0, pw = 1;
  for (unsigned i = 0; i < k; ++i, pw *= p) r += static_cast<Elem>(z[i]) * pw;
  return r;
}

}  // namespace

TEST_CASE("prime fields agree with modular integers") {
  for (unsigned p : {2u, 3u, 5u, 7u, 13u}) {
    auto F = Field::make(p, 1);
    for (Elem a = 0; a < p; ++a)
      for (Elem b = 0; b < p; ++b) {
        CHECK(F->add(a, b) == (a + b) % p);
        CHECK(F->mul(a, b) == (a * b) % p);
        CHECK(F->sub(a, b) == (a + p - b) % p);
      }
  }
}

TEST_CASE("extension field multiplication matches polynomial arithmetic") {
  for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}}) {
    auto F = Field::make(p, k);
    CAPTURE(F->name());
    for (Elem a = 0; a < F->q(); ++a)
      for (Elem b = 0; b < F->q(); ++b) REQUIRE(F->mul(a, b) == slow_product(*F, a, b));
  }
}

TEST_CASE("inverses, powers and the multiplicative group") {
  for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{3, 1}, {2, 3}, {3, 2}, {7, 2}}) {
    auto F = Field::make(p, k);
    const Elem q = F->q();
    for (Elem a = 1; a < q; ++a) {
      CHECK(F->mul(a, F->inv(a)) == 1);
      CHECK(F->pow(a, q - 1) == 1);
      CHECK((q - 1) % F->mult_order(a) == 0);
    }
    CHECK(F->mult_order(F->primitive()) == q - 1);
    CHECK_THROWS(F->inv(0));
  }
}

TEST_CASE("squares and square roots") {
  auto F = Field::make(3, 2);
  int squares = 0;
  for (Elem a = 1; a < 9; ++a) {
    bool brute = false;
    for (Elem x = 1; x < 9; ++x) brute = brute || F->mul(x, x) == a;
    CHECK(F->is_square(a) == brute);
    squares += brute;
    auto r = F->sqrt(a);
    CHECK(r.has_value() == brute);
    if (r) CHECK(F->mul(*r, *r) == a);
  }
  CHECK(squares == 4);
  CHECK_FALSE(F->is_square(F->nonsquare()));
  auto F8 = Field::make(2, 3);
  for (Elem a = 0; a < 8; ++a) CHECK(F8->is_square(a));
}

TEST_CASE("Frobenius and absolute trace") {
  auto F = Field::make(2, 4);
  int trace_zero = 0;
  for (Elem a = 0; a < 16; ++a) {
    Elem t = a, s = 0;
    for (int i = 0; i < 4; ++i) {
      s = F->add(s, t);
      t = F->frobenius(t);
    }
    CHECK(t == a);
    CHECK(s == F->abs_trace(a));
    trace_zero += s == 0;
  }
  CHECK(trace_zero == 8);
}

TEST_CASE("polynomial helpers") {
  auto F = Field::make(3, 1);
  Poly f{1, 0, 1};  // x^2 + 1, irreducible mod 3
  CHECK(F->poly_irreducible(f));
  CHECK_FALSE(F->poly_irreducible(Poly{2, 0, 1}));  // x^2 - 1
  Poly g = F->poly_mul(f, Poly{1, 1});
  auto [quo, rem] = F->poly_divmod(g, f);
  CHECK(F->poly_trim(rem).empty());
  CHECK(quo == Poly{1, 1});
  CHECK(F->poly_gcd(g, f) == f);
}

TEST_CASE("subfield embedding: trace and norm") {
  auto F3 = Field::make(3, 1), F9 = Field::make(3, 2);
  FieldEmbedding E(F3, F9);
  for (Elem x = 0; x < 9; ++x) {
    CHECK(E.apply(E.trace(x)) == F9->add(x, F9->frobenius(x)));
    CHECK(E.apply(E.norm(x)) == F9->mul(x, F9->frobenius(x)));
    CHECK(E.from_coords(E.coords(x)) == x);
  }
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS(Field::make(4, 1));
  CHECK_THROWS(Field::make(1, 1));
}
