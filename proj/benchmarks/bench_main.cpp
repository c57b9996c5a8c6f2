#include <benchmark/benchmark.h>

#include <vector>

#include "bohr/estimator.hpp"
#include "bohr/families.hpp"
#include "bohr/majorant.hpp"
#include "bohr/spaces.hpp"
#include "bohr/sup_norm.hpp"

using namespace bohr;

static void BM_LorentzNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto space = SpaceDescriptor::lorentz(2, 1, n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 / (1.0 + i);
  for (auto _ : state) benchmark::DoNotOptimize(space.base_norm(x));
}
BENCHMARK(BM_LorentzNorm)->RangeMultiplier(4)->Range(4, 256);

static void BM_OrliczNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto space = SpaceDescriptor::orlicz(OrliczFunction("x^2+x^3"), n);
  std::vector<double> x(n, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(space.base_norm(x));
}
BENCHMARK(BM_OrliczNorm)->RangeMultiplier(4)->Range(4, 256);

static void BM_NumericEmbed(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = SpaceDescriptor::minkowski(1.5, n), b = SpaceDescriptor::minkowski(4, n);
  for (auto _ : state) benchmark::DoNotOptimize(embed_norm(a, b, EmbedMethod::numeric).value);
}
BENCHMARK(BM_NumericEmbed)->Arg(2)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_SupNormQuadratic(benchmark::State& state) {
  auto f = quadratic_form_member(2);
  f.clear_known_sup_norm();
  const auto space = SpaceDescriptor::polydisc(2);
  for (auto _ : state) benchmark::DoNotOptimize(sup_norm(f, space).value);
}
BENCHMARK(BM_SupNormQuadratic)->Unit(benchmark::kMillisecond);

static void BM_MajorantL2(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto space = SpaceDescriptor::minkowski(2, n);
  const auto members = monomial_members(space, 3);
  const auto u = BoundedOperatorU::identity_scaled();
  PluriharmonicPoly f(n);
  for (const auto& m : members)
    for (const auto& [alpha, c] : m.a()) f.add_a(alpha, c);
  for (auto _ : state) benchmark::DoNotOptimize(majorant_sum(f, u, space, 0.5, 1).value);
}
BENCHMARK(BM_MajorantL2)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_EstimateMobius(benchmark::State& state) {
  const auto disc = SpaceDescriptor::polydisc(1);
  const auto family = mobius_members(disc, default_mobius_parameters());
  const auto u = BoundedOperatorU::identity_scaled();
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_radius(disc, family, u, 1, 1).upper_bracket);
}
BENCHMARK(BM_EstimateMobius)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
