#include <benchmark/benchmark.h>

#include "klsum/closed_form.hpp"
#include "klsum/hecke.hpp"
#include "klsum/rand.hpp"

using namespace klsum;

namespace {

void BM_kl3_closed(benchmark::State& state) {
    u64 p = static_cast<u64>(state.range(0));
    u64 q = p * p;
    u64 seed = 42;
    for (auto _ : state) {
        u64 a = splitmix64(seed) % q;
        if (a == 0 || a % p == 0) a = 1;
        benchmark::DoNotOptimize(kl3_closed(a, p, 2));
    }
}
BENCHMARK(BM_kl3_closed)->Arg(101)->Arg(1009)->Arg(10007);

void BM_kl3_brute(benchmark::State& state) {
    u64 p = static_cast<u64>(state.range(0));
    u64 q = p * p;
    u64 seed = 42;
    for (auto _ : state) {
        u64 a = splitmix64(seed) % q;
        if (a == 0 || a % p == 0) a = 1;
        benchmark::DoNotOptimize(hyper_kloosterman_brute(3, a, q, 2e8));
    }
}
BENCHMARK(BM_kl3_brute)->Arg(13)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_kl4_via_kl3(benchmark::State& state) {
    u64 p = static_cast<u64>(state.range(0));
    u64 seed = 7;
    for (auto _ : state) {
        u64 a = splitmix64(seed) % (p * p);
        if (a == 0 || a % p == 0) a = 1;
        benchmark::DoNotOptimize(kl4_via_kl3(a, p, 2));
    }
}
BENCHMARK(BM_kl4_via_kl3)->Arg(13)->Arg(101);

void BM_tau_table(benchmark::State& state) {
    u64 N = static_cast<u64>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(CoefficientTable::delta(N));
}
BENCHMARK(BM_tau_table)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
