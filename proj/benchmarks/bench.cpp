#include <benchmark/benchmark.h>

#include "fcover/covering.hpp"
#include "fcover/parse.hpp"
#include "fcover/transforms.hpp"

using namespace fcover;

namespace {

GridConfig cfg_1d(double wc, std::int64_t nc, double wa, std::int64_t na) {
    GridConfig cfg;
    cfg.constraint_grid = GridSpec::symmetric(1, wc, nc);
    cfg.atom_grid = GridSpec::symmetric(1, wa, na);
    return cfg;
}

void BM_AssembleGaussian1d(benchmark::State& state) {
    FunctionExpr g0 = parse_expr("gauss(1)");
    GridConfig cfg = cfg_1d(6.0, state.range(0), 8.0, state.range(0) * 4 / 3);
    for (auto _ : state) {
        CoveringInstance inst = build_instance(g0, g0, FunctionExpr::one(), cfg);
        benchmark::DoNotOptimize(inst.matrix.a.data());
    }
}
BENCHMARK(BM_AssembleGaussian1d)->Arg(121)->Arg(241)->Arg(481);

void BM_SolveCoveringGaussian1d(benchmark::State& state) {
    FunctionExpr f = parse_expr("gauss(0.5)");
    FunctionExpr g = parse_expr("gauss(1)");
    CoveringInstance inst =
        build_instance(f, g, FunctionExpr::one(), cfg_1d(6.0, state.range(0), 8.0, state.range(0) * 4 / 3));
    for (auto _ : state) {
        LpSolution s = solve(inst.matrix);
        benchmark::DoNotOptimize(s.primal_value);
    }
}
BENCHMARK(BM_SolveCoveringGaussian1d)->Arg(81)->Arg(161)->Arg(241)->Unit(benchmark::kMillisecond);

void BM_SolveCoveringGaussian2d(benchmark::State& state) {
    FunctionExpr f = parse_expr("gauss2(0.5,0.2,1)");
    FunctionExpr g = parse_expr("gauss2(1,0,1)");
    GridConfig cfg;
    cfg.constraint_grid = GridSpec::symmetric(2, 3.0, state.range(0));
    cfg.atom_grid = GridSpec::symmetric(2, 4.0, state.range(0) * 4 / 3);
    CoveringInstance inst = build_instance(f, g, FunctionExpr::one(), cfg);
    for (auto _ : state) {
        LpSolution s = solve(inst.matrix);
        benchmark::DoNotOptimize(s.primal_value);
    }
}
BENCHMARK(BM_SolveCoveringGaussian2d)->Arg(13)->Arg(19)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_Legendre1d(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    GridSpec grid = GridSpec::make_1d(-8.0, 8.0, n);
    GridSpec dual = GridSpec::make_1d(-6.0, 6.0, n);
    std::vector<double> phi(static_cast<size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const double x = grid.node(i)[0];
        phi[static_cast<size_t>(i)] = x * x / 2.0;
    }
    for (auto _ : state) {
        std::vector<double> out = legendre(grid, phi, dual);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_Legendre1d)->Arg(1601)->Arg(6401)->Arg(25601);

void BM_Legendre2d(benchmark::State& state) {
    GridSpec grid = GridSpec::symmetric(2, 4.0, state.range(0));
    GridSpec dual = GridSpec::symmetric(2, 3.0, state.range(0));
    std::vector<double> phi(static_cast<size_t>(grid.size()));
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const Point p = grid.node(i);
        phi[static_cast<size_t>(i)] = p.dot(p) / 2.0;
    }
    for (auto _ : state) {
        std::vector<double> out = legendre(grid, phi, dual);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_Legendre2d)->Arg(33)->Arg(65)->Arg(129);

void BM_SupConvolve1d(benchmark::State& state) {
    FunctionExpr g0 = parse_expr("gauss(1)");
    SampledFunction fs = evaluate(g0, GridSpec::symmetric(1, 8.0, state.range(0)));
    for (auto _ : state) {
        SampledFunction out = sup_convolve(fs, g0);
        benchmark::DoNotOptimize(out.values.data());
    }
}
BENCHMARK(BM_SupConvolve1d)->Arg(201)->Arg(401)->Arg(801)->Unit(benchmark::kMillisecond);

void BM_Convolve1d(benchmark::State& state) {
    FunctionExpr g0 = parse_expr("gauss(1)");
    SampledFunction fs = evaluate(g0, GridSpec::symmetric(1, 8.0, state.range(0)));
    for (auto _ : state) {
        SampledFunction out = convolve(fs, g0);
        benchmark::DoNotOptimize(out.values.data());
    }
}
BENCHMARK(BM_Convolve1d)->Arg(201)->Arg(401)->Arg(801)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
