#include "qcoh/intmat.hpp"
#include "qcoh/modmat.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace qcoh;

namespace {

IntMatrix random_int_matrix(int rows, int cols, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> entry(-5, 5);
    IntMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = entry(rng);
    return m;
}

ModMatrix random_mod_matrix(int rows, int cols, std::int64_t n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::int64_t> entry(0, n - 1);
    ModMatrix m(rows, cols, n);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = entry(rng);
    return m;
}

} // namespace

static void BM_Snf(benchmark::State& state)
{
    const int dim = int(state.range(0));
    IntMatrix a = random_int_matrix(dim, dim, 42);
    for (auto _ : state) {
        SnfResult f = snf(a);
        benchmark::DoNotOptimize(f.rank);
    }
}
BENCHMARK(BM_Snf)->Arg(6)->Arg(12)->Arg(24);

static void BM_HowellForm(benchmark::State& state)
{
    const int dim = int(state.range(0));
    ModMatrix a = random_mod_matrix(dim, dim, 4, 7);
    for (auto _ : state) {
        ModMatrix h = howell(a);
        benchmark::DoNotOptimize(h.rows());
    }
}
BENCHMARK(BM_HowellForm)->Arg(16)->Arg(64)->Arg(128);

static void BM_KernelMod2Stream(benchmark::State& state)
{
    // tall sparse stream into the packed GF(2) path
    const int cols = int(state.range(0));
    const int rows = cols * 16;
    std::mt19937 rng(11);
    for (auto _ : state) {
        RowSpan span(2, cols);
        SparseRow row;
        for (int r = 0; r < rows; ++r) {
            row.clear();
            for (int k = 0; k < 4; ++k) row.push_back({int(rng() % cols), 1});
            span.add_sparse(row);
        }
        ModMatrix k = span.kernel();
        benchmark::DoNotOptimize(k.cols());
    }
}
BENCHMARK(BM_KernelMod2Stream)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
