#include <benchmark/benchmark.h>

#include <random>

#include "povmkit/decompose.hpp"
#include "povmkit/extremality.hpp"
#include "povmkit/infocomplete.hpp"
#include "povmkit/povm.hpp"

using namespace povmkit;

static void BM_face_dimension(benchmark::State &state) {
    std::mt19937_64 rng(1);
    const Eigen::Index d = state.range(0);
    const Povm p = random_povm(d, 4, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(face_dimension(p));
    }
}
BENCHMARK(BM_face_dimension)->Arg(2)->Arg(3)->Arg(4);

static void BM_perturbation_basis(benchmark::State &state) {
    std::mt19937_64 rng(2);
    const Eigen::Index d = state.range(0);
    const Povm p = random_povm(d, 3, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(perturbation_basis(p));
    }
}
BENCHMARK(BM_perturbation_basis)->Arg(2)->Arg(3);

static void BM_decompose(benchmark::State &state) {
    std::mt19937_64 rng(3);
    const Eigen::Index d = state.range(0);
    const Povm p = random_povm(d, 3, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose_to_extremals(p));
    }
}
BENCHMARK(BM_decompose)->Unit(benchmark::kMillisecond)->Arg(2)->Arg(3);

static void BM_wh_povm(benchmark::State &state) {
    const Eigen::Index d = state.range(0);
    const Fiducial psi = geometric_fiducial(d, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wh_povm(psi, d));
    }
}
BENCHMARK(BM_wh_povm)->Arg(2)->Arg(4)->Arg(8);

static void BM_frame_operator(benchmark::State &state) {
    const Eigen::Index d = state.range(0);
    const Povm p = wh_povm(geometric_fiducial(d, 0.5), d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(frame_operator(p));
    }
}
BENCHMARK(BM_frame_operator)->Arg(2)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
