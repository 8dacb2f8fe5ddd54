#include <benchmark/benchmark.h>

#include "chogen/catalog.hpp"
#include "chogen/constructions.hpp"
#include "chogen/contrast.hpp"
#include "chogen/optimality.hpp"

using namespace chogen;

namespace {

void BM_CstarProduct(benchmark::State& state) {
    const auto d = theorem2_design(static_cast<int>(state.range(0)), 4);
    const auto model = ModelSpec::broader_main_effects(d.factors());
    std::vector<FactorialEffect> effects = model.interest();
    effects.insert(effects.end(), model.nuisance().begin(), model.nuisance().end());
    for (auto _ : state) benchmark::DoNotOptimize(detail::cstar_by_product(d, effects));
}
BENCHMARK(BM_CstarProduct)->Arg(6)->Arg(9)->Arg(12);

void BM_CstarBySets(benchmark::State& state) {
    const auto d = theorem2_design(static_cast<int>(state.range(0)), 4);
    const auto model = ModelSpec::broader_main_effects(d.factors());
    std::vector<FactorialEffect> effects = model.interest();
    effects.insert(effects.end(), model.nuisance().begin(), model.nuisance().end());
    for (auto _ : state) benchmark::DoNotOptimize(detail::cstar_by_sets(d, effects));
}
BENCHMARK(BM_CstarBySets)->Arg(6)->Arg(9)->Arg(12);

void BM_VerifyBroader(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto d = theorem1_design(n, 6);
    const auto model = ModelSpec::broader_main_effects(n);
    for (auto _ : state) benchmark::DoNotOptimize(verify(d, model));
}
BENCHMARK(BM_VerifyBroader)->Arg(4)->Arg(8)->Arg(12);

void BM_VerifySpecifiedAll(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto d = specified_design(n, 4, SpecifiedScope::AllOrdersOneFactor);
    const auto model = ModelSpec::specified_one_factor(n);
    for (auto _ : state) benchmark::DoNotOptimize(verify(d, model));
}
BENCHMARK(BM_VerifySpecifiedAll)->Arg(4)->Arg(5);

void BM_TableBlock(benchmark::State& state) {
    const auto block = static_cast<TableBlock>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(reproduce_table1({block}));
}
BENCHMARK(BM_TableBlock)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
