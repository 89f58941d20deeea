// Serial reference path against the OpenMP path for the four parallel kernels.
// The second benchmark argument selects the policy: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "mixsing/degeneracy.hpp"
#include "mixsing/family.hpp"
#include "mixsing/probe.hpp"
#include "mixsing/tameness.hpp"

using namespace mixsing;

namespace {

ExecPolicy policy_of(const benchmark::State& state) {
    return state.range(0) == 0 ? ExecPolicy::serial : ExecPolicy::parallel;
}

const char* kEdge = "~z2^4 + z1*z2^2";
const char* kTame = "~z1^2*z2^3 + z1^3*~z2^2 + 2*z1^2*z2^4";
const char* kFamily = "~z1^2*z2^3 + z1^3*~z2^2 + t*z1^2*z2^4";

void BM_TorusSearch(benchmark::State& state) {
    const auto f = parse_mixed(kEdge, 2);
    SearchConfig cfg;
    cfg.policy = policy_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(search_torus_critical_points(f, cfg));
}

void BM_Tameness(benchmark::State& state) {
    const auto f = parse_mixed(kTame, 2);
    TamenessConfig cfg;
    cfg.inner.policy = policy_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(tameness_summary(f, cfg));
}

void BM_Admissibility(benchmark::State& state) {
    const auto F = parse_family(kFamily, 2);
    AdmissibilityConfig cfg;
    cfg.sampling.rings = 2;
    cfg.sampling.angles_per_ring = 4;
    cfg.search.multistarts = 128;
    cfg.search.policy = policy_of(state);
    cfg.smoothness_samples = 60;
    for (auto _ : state) benchmark::DoNotOptimize(check_admissibility(F, 1.0, cfg));
}

void BM_Spotcheck(benchmark::State& state) {
    const auto F = parse_family(kFamily, 2);
    SpotcheckConfig cfg;
    cfg.policy = policy_of(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(spotcheck_regularity(F, SpotMode::nearby_fibres, SpotRegion{}, cfg));
}

}  // namespace

BENCHMARK(BM_TorusSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Tameness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Admissibility)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime()->Iterations(1);
BENCHMARK(BM_Spotcheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
