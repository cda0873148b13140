// Parallel kernels vs the serial reference on a mid-sized surface fit.

#include <benchmark/benchmark.h>

#include "lspia/kernels.hpp"
#include "lspia/solver.hpp"
#include "lspia/synth.hpp"

using namespace lspia;

namespace {

FitProblem make_surface_problem(int grid, int controls) {
    synth::SyntheticSpec spec;
    spec.kind = synth::Kind::grid_samples;
    spec.dim = 2;
    spec.samples = {grid, grid, 0};
    DataSet data = synth::synthesize(spec);
    BasisSpace space({KnotVector::clamped_uniform(controls, 3),
                      KnotVector::clamped_uniform(controls, 3)});
    data = parameterize(std::move(data), ParamMode::given, space);
    return make_problem(std::move(space), std::move(data));
}

const FitProblem& problem() {
    static FitProblem p = make_surface_problem(160, 40);
    return p;
}

}  // namespace

static void BM_apply_parallel(benchmark::State& state) {
    const FitProblem& p = problem();
    Mat P(p.A.cols, 3, 0.5), Y(p.A.rows, 3);
    for (auto _ : state) {
        kernels::apply(p.A, P, Y);
        benchmark::DoNotOptimize(Y.data());
    }
}
BENCHMARK(BM_apply_parallel);

static void BM_apply_serial(benchmark::State& state) {
    const FitProblem& p = problem();
    Mat P(p.A.cols, 3, 0.5), Y(p.A.rows, 3);
    for (auto _ : state) {
        kernels::serial::apply(p.A, P, Y);
        benchmark::DoNotOptimize(Y.data());
    }
}
BENCHMARK(BM_apply_serial);

static void BM_apply_transpose_parallel(benchmark::State& state) {
    const FitProblem& p = problem();
    Mat R(p.A.rows, 3, 0.25), Z(p.A.cols, 3);
    for (auto _ : state) {
        kernels::apply_transpose(p.A, R, Z);
        benchmark::DoNotOptimize(Z.data());
    }
}
BENCHMARK(BM_apply_transpose_parallel);

static void BM_apply_transpose_serial(benchmark::State& state) {
    const FitProblem& p = problem();
    Mat R(p.A.rows, 3, 0.25), Z(p.A.cols, 3);
    for (auto _ : state) {
        kernels::serial::apply_transpose(p.A, R, Z);
        benchmark::DoNotOptimize(Z.data());
    }
}
BENCHMARK(BM_apply_transpose_serial);

static void BM_gather_parallel(benchmark::State& state) {
    const FitProblem& p = problem();
    Mat dvd(p.A.rows, 3, 0.25), out(p.A.cols, 3);
    for (auto _ : state) {
        kernels::gather_dvc(p.groups, p.weights, dvd, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_gather_parallel);

static void BM_gather_serial(benchmark::State& state) {
    const FitProblem& p = problem();
    Mat dvd(p.A.rows, 3, 0.25), out(p.A.cols, 3);
    for (auto _ : state) {
        kernels::serial::gather_dvc(p.groups, p.weights, dvd, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_gather_serial);

static void BM_weighted_step(benchmark::State& state) {
    const FitProblem& p = problem();
    for (auto _ : state) {
        IterationState s;
        s.P = Mat(p.A.cols, 3);
        step_weighted(s, p);
        benchmark::DoNotOptimize(s.P.data());
    }
}
BENCHMARK(BM_weighted_step);

BENCHMARK_MAIN();
