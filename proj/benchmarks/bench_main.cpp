#include <benchmark/benchmark.h>

#include "stplus/characters.hpp"
#include "stplus/tori.hpp"
#include "stplus/weyl.hpp"

using namespace stp;

namespace {

EnumOptions no_cache() {
  EnumOptions o;
  o.use_cache = false;
  return o;
}

FormType type_arg(std::int64_t t) { return t == 0 ? FormType::Odd : t > 0 ? FormType::Plus : FormType::Minus; }

void BM_FieldMul(benchmark::State& st) {
  auto F = Field::make(2, static_cast<unsigned>(st.range(0)));
  Elem a = F->primitive(), acc = 1;
  for (auto _ : st) {
    acc = F->mul(acc, a);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul)->Arg(4)->Arg(8);

// args: p, dim, type
void BM_Enumerate(benchmark::State& st) {
  auto F = Field::make(static_cast<unsigned>(st.range(0)), 1);
  auto V = standard_space(static_cast<int>(st.range(1)), type_arg(st.range(2)), F);
  for (auto _ : st) {
    auto G = build_group(V, chars::natural_kind(*F), no_cache());
    benchmark::DoNotOptimize(G.order());
  }
}
BENCHMARK(BM_Enumerate)->Args({3, 4, 1})->Args({3, 4, -1})->Args({3, 5, 0})->Args({2, 6, 1})->Unit(benchmark::kMillisecond);

void BM_Classes(benchmark::State& st) {
  auto F = Field::make(static_cast<unsigned>(st.range(0)), 1);
  auto V = standard_space(static_cast<int>(st.range(1)), type_arg(st.range(2)), F);
  auto base = build_group(V, chars::natural_kind(*F), no_cache());
  for (auto _ : st) {
    auto G = base;
    G.compute_classes(no_cache());
    benchmark::DoNotOptimize(G.classes().size());
  }
}
BENCHMARK(BM_Classes)->Args({3, 4, 1})->Args({3, 5, 0})->Unit(benchmark::kMillisecond);

void BM_Omega(benchmark::State& st) {
  auto F = Field::make(3, 1);
  auto G = build_group(standard_space(5, FormType::Odd, F), GroupKind::SO, no_cache());
  G.compute_classes(no_cache());
  for (auto _ : st) {
    auto w = chars::make_stplus(G).omega();
    benchmark::DoNotOptimize(w.values.data());
  }
}
BENCHMARK(BM_Omega)->Unit(benchmark::kMillisecond);

void BM_Census(benchmark::State& st) {
  auto V = standard_space(5, FormType::Odd, Field::make(3, 1));
  for (auto _ : st) {
    auto c = chars::census(V, no_cache());
    benchmark::DoNotOptimize(c.predicted_norm_sum);
  }
}
BENCHMARK(BM_Census)->Unit(benchmark::kMillisecond);

void BM_WeylClasses(benchmark::State& st) {
  for (auto _ : st) {
    auto c = weyl::conjugacy_classes(weyl::WType::B, static_cast<int>(st.range(0)));
    benchmark::DoNotOptimize(c.size());
  }
}
BENCHMARK(BM_WeylClasses)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_DoubleCosets(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(weyl::self_norm(static_cast<int>(st.range(0)), weyl::WType::D));
}
BENCHMARK(BM_DoubleCosets)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_TorusBuild(benchmark::State& st) {
  auto F = Field::make(3, 1);
  auto specs = tori::enumerate_decomps(5, FormType::Odd);
  for (auto _ : st)
    for (auto& s : specs) benchmark::DoNotOptimize(tori::build_torus(s, F).order());
}
BENCHMARK(BM_TorusBuild)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
