// Serial reference against the OpenMP kernels: matvec, oracle enumeration, first-clique tally.

#include <benchmark/benchmark.h>

#include "uniconc/fixtures.hpp"
#include "uniconc/kernels.hpp"
#include "uniconc/oracle.hpp"
#include "uniconc/sampling.hpp"

using namespace uniconc;

namespace {

Digraph random_graph(std::size_t n) {
    Digraph g;
    g.succ.resize(n);
    Rng rng(n);
    for (auto& row : g.succ)
        for (int k = 0; k < 4; ++k) row.push_back(rng.next() % n);
    return g;
}

template <bool Serial>
void matvec(benchmark::State& state) {
    const Digraph g = random_graph(static_cast<std::size_t>(state.range(0)));
    std::vector<double> v(g.size(), 1.0), y(g.size());
    for (auto _ : state) {
        if (Serial) kernels::shifted_matvec_serial(g, v, y);
        else kernels::shifted_matvec(g, v, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}

template <bool Serial>
void oracle(benchmark::State& state) {
    const ConcurrentSystem sys = fixtures::tm1();
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_executions(sys, 0, n, kDefaultOracleCap, Serial).size());
}

template <bool Serial>
void tally(benchmark::State& state) {
    const UniformSampler sampler(fixtures::aztec(), 1, 20);
    const auto samples = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tally_first_cliques(sampler, samples, 7, Serial));
}

}  // namespace

BENCHMARK(matvec<true>)->Name("matvec/serial")->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(matvec<false>)->Name("matvec/openmp")->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(oracle<true>)->Name("oracle/serial")->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(oracle<false>)->Name("oracle/openmp")->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(tally<true>)->Name("tally/serial")->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(tally<false>)->Name("tally/openmp")->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
