#include "doctest.h"
#include "stplus/weyl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

using namespace stp::weyl;

namespace {

// Naive conjugacy classes: close each element under conjugation by all elements.
std::vector<std::vector<std::uint64_t>> naive_classes(WType t, int n) {
  auto els = elements(t, n);
  std::set<std::uint64_t> seen;
  std::vector<std::vector<std::uint64_t>> out;
  for (auto& x : els) {
    if (seen.count(rank(x))) continue;
    std::set<std::uint64_t> orbit;
    for (auto& g : els) orbit.insert(rank(conjugate(x, g)));
    seen.insert(orbit.begin(), orbit.end());
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

// |A \ W / B| by listing the sets A w B.
std::size_t naive_double_cosets(WType t, int n, const std::vector<SignedPerm>& A, const std::vector<SignedPerm>& B) {
  std::set<std::set<std::uint64_t>> cosets;
  for (auto& w : elements(t, n)) {
    std::set<std::uint64_t> s;
    for (auto& a : A)
      for (auto& b : B) s.insert(rank(compose(a, compose(w, b))));
    cosets.insert(s);
  }
  return cosets.size();
}

}  // namespace

TEST_CASE("group orders and element lists") {
  CHECK(group_order(WType::B, 3) == 48);
  CHECK(group_order(WType::D, 4) == 192);
  CHECK(elements(WType::D, 3).size() == 24);
  for (auto& w : elements(WType::B, 3)) {
    CHECK(unrank(3, rank(w)) == w);
    CHECK(compose(w, w.inverse()) == SignedPerm::identity(3));
  }
  CHECK(subgroup_elements(generators(WType::D, 4), 4).size() == 192);
}

TEST_CASE("orbit classes agree with a naive partition") {
  for (int n = 1; n <= 4; ++n)
    for (auto t : {WType::B, WType::D}) {
      auto cls = conjugacy_classes(t, n);
      auto naive = naive_classes(t, n);
      CHECK(cls.size() == naive.size());
      std::multiset<std::uint64_t> a, b;
      for (auto& c : cls) a.insert(c.size);
      for (auto& c : naive) b.insert(c.size());
      CHECK(a == b);
    }
}

TEST_CASE("class counts for ranks up to six") {
  const std::vector<std::size_t> B{2, 5, 10, 20, 36, 65}, D{1, 4, 5, 13, 18, 37};
  for (int n = 1; n <= 6; ++n) {
    CHECK(conjugacy_classes(WType::B, n).size() == B[n - 1]);
    CHECK(conjugacy_classes(WType::D, n).size() == D[n - 1]);
  }
}

TEST_CASE("centralizer formulas and class splitting") {
  for (int n = 1; n <= 6; ++n)
    for (auto t : {WType::B, WType::D}) {
      for (auto& c : conjugacy_classes(t, n)) {
        CAPTURE(c.label.to_string());
        CHECK(centralizer_order_formula(c.label, t) == c.centralizer);
        CHECK(c.size * c.centralizer == group_order(t, n));
        if (t == WType::D) {
          CHECK(c.label.l() % 2 == 0);
          CHECK(c.splits == label_splits(c.label));
        }
      }
    }
  // l = 0 with all positive cycles even
  CHECK(label_splits(make_label(4, {{2, 2}}, {})));
  CHECK_FALSE(label_splits(make_label(4, {{1, 2}, {2, 1}}, {})));
  CHECK_FALSE(label_splits(make_label(4, {}, {{2, 2}})));
}

TEST_CASE("labels") {
  auto lab = make_label(5, {{2, 1}, {1, 1}}, {{1, 2}});
  CHECK(lab.k() == 2);
  CHECK(lab.l() == 2);
  CHECK(lab.d_string() == "1 2");
  CHECK(lab.e_string() == "1^2");
  CHECK(all_labels(3).size() == 10);
}

TEST_CASE("torus Weyl orders agree with brute force") {
  for (int n = 1; n <= 4; ++n) {
    for (auto& c : conjugacy_classes(WType::B, n)) {
      CHECK(torus_weyl_order_bruteforce(Ambient::B, c.rep) == torus_weyl_order(Ambient::B, c.label, false));
      auto amb = c.label.l() % 2 ? Ambient::Dminus : Ambient::Dplus;
      bool exc = label_splits(c.label);
      CHECK(torus_weyl_order_bruteforce(amb, c.rep) == torus_weyl_order(amb, c.label, exc));
    }
  }
}

TEST_CASE("double coset norms") {
  for (int m = 1; m <= 4; ++m) {
    auto S = symmetric_generators(m);
    auto A = subgroup_elements(S, m);
    CHECK(self_norm(m, WType::D) == naive_double_cosets(WType::D, m, A, A));
    CHECK(self_norm(m, WType::B) == naive_double_cosets(WType::B, m, A, A));
    CHECK(self_norm(m, WType::B) == static_cast<std::uint64_t>(m + 1));
    CHECK(induced_inner_product(WType::D, m, S, S) == self_norm(m, WType::D));
  }
  CHECK(cross_norm(4) == 2);
  CHECK(self_norm(4, WType::D) == 3);
  CHECK(cross_norm(6) == 3);
  CHECK(self_norm(6, WType::D) == 4);
  // B-type norm splits into the D-type self and cross pieces
  for (int m = 1; m <= 5; ++m) CHECK(self_norm(m, WType::B) == self_norm(m, WType::D) + cross_norm(m));
}

TEST_CASE("class csv") {
  std::ostringstream os;
  write_class_csv(os, WType::B, 2);
  std::string s = os.str();
  CHECK(s.rfind("label_d,label_e,size,centralizer,splits\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 6);
}
