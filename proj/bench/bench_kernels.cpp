// Parallel kernels against their serial references.
#include "flatcurve/flatgeom.hpp"
#include "flatcurve/veech.hpp"
#include "flatcurve/zseq.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace flatcurve;

ZeroWindow lattice(double radius, Mode mode = Mode::Exact)
{
    GeneratorSpec spec;
    spec.kind = SequenceKind::GaussianLattice;
    return generate(spec, radius, mode);
}

void BM_saddles(benchmark::State& state)
{
    auto w = lattice(double(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(saddle_connections(w, 2));
    state.counters["points"] = double(w.size());
}

void BM_saddles_reference(benchmark::State& state)
{
    auto w = lattice(double(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(saddle_connections_reference(w, 2));
    state.counters["points"] = double(w.size());
}

void BM_saddles_float(benchmark::State& state)
{
    auto w = lattice(double(state.range(0)), Mode::Float);
    for (auto _ : state) benchmark::DoNotOptimize(saddle_connections(w, 2));
}

void BM_stabilizers(benchmark::State& state)
{
    auto w = lattice(double(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(stabilizer_candidates(w));
}

void BM_stabilizers_reference(benchmark::State& state)
{
    auto w = lattice(double(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(stabilizer_candidates_reference(w));
}

}  // namespace

BENCHMARK(BM_saddles)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_saddles_reference)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_saddles_float)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_stabilizers)->Arg(9)->Arg(15)->Arg(21)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_stabilizers_reference)->Arg(9)->Arg(15)->Arg(21)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
