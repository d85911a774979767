#include "qcoh/catalog.hpp"
#include "qcoh/sixterm.hpp"

#include <benchmark/benchmark.h>

using namespace qcoh;

static void BM_CohomologyDihedral4(benchmark::State& state)
{
    const int n = int(state.range(0));
    auto d4 = build_dihedral(4);
    auto t = trivial_module(d4, ring_mod(2), 1);
    for (auto _ : state) {
        CohomologyContext ctx; // fresh memo per iteration
        auto h = ctx.cohomology(d4, t, n);
        benchmark::DoNotOptimize(h->divisors().size());
    }
}
BENCHMARK(BM_CohomologyDihedral4)->Arg(1)->Arg(2)->Arg(3);

static void BM_VerifyDihedral(benchmark::State& state)
{
    const int k = int(state.range(0));
    for (auto _ : state) {
        ExactQuadruple q = catalog_build("dihedral", k);
        QuadrupleReport r = verify(q);
        benchmark::DoNotOptimize(r.complex_ok);
    }
}
BENCHMARK(BM_VerifyDihedral)->Arg(4)->Arg(8)->Arg(12);

static void BM_SixTermCyclic2(benchmark::State& state)
{
    ExactQuadruple q = catalog_build("cyclic", 2);
    auto t2 = trivial_module(q.group(), ring_mod(4), 1);
    for (auto _ : state) {
        CohomologyContext ctx;
        SixTermReport rep = six_term(ctx, q, t2, 0);
        benchmark::DoNotOptimize(rep.gates_passed);
    }
}
BENCHMARK(BM_SixTermCyclic2);

static void BM_SolveHomotopySigma(benchmark::State& state)
{
    ExactQuadruple q = catalog_build("sigma", 8, 2);
    for (auto _ : state) {
        auto h = solve_homotopy(q, 2);
        benchmark::DoNotOptimize(h.has_value());
    }
}
BENCHMARK(BM_SolveHomotopySigma);

BENCHMARK_MAIN();
