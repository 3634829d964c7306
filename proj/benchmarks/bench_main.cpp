// Microbenchmarks for the encoder and reconstruction kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "pce/encoder.hpp"
#include "pce/omp.hpp"
#include "pce/reconstruct.hpp"
#include "pce/synthetic.hpp"

namespace {

void BM_GenerateMatrix(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    uint64_t seed = 0;
    for (auto _ : state) {
        auto matrix = pce::generate_matrix(side, side, 13, 3,
                                           pce::MatrixDistribution::uniform(),
                                           seed++);
        benchmark::DoNotOptimize(matrix);
    }
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_GenerateMatrix)->Arg(64)->Arg(256)->Arg(1024);

void BM_EncodeChunk(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const pce::Video video = pce::random_video(side, side, 13, 7);
    const auto matrix = pce::generate_matrix(
        side, side, 13, 3, pce::MatrixDistribution::uniform(), 3);
    for (auto _ : state) {
        auto coded = pce::encode_chunk(video, matrix);
        benchmark::DoNotOptimize(coded);
    }
    state.SetBytesProcessed(state.iterations() * video.pixels().size());
}
BENCHMARK(BM_EncodeChunk)->Arg(64)->Arg(256)->Arg(512);

void BM_BuildDictionary(benchmark::State& state) {
    for (auto _ : state) {
        pce::Dictionary3D dict(7, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(dict);
    }
}
BENCHMARK(BM_BuildDictionary)->Arg(13)->Arg(24);

void BM_OmpSolve(benchmark::State& state) {
    const pce::Dictionary3D dict(7, 13);
    pce::PatchProblem problem;
    problem.patch_size = 7;
    problem.chunk_len = 13;
    problem.bump_len = 3;
    problem.starts.assign(49, 0);
    std::mt19937_64 rng(11);
    for (auto& s : problem.starts) {
        s = static_cast<uint16_t>(rng() % 11);
    }
    problem.measurement.resize(49);
    for (int i = 0; i < 49; ++i) {
        problem.measurement(i) = static_cast<double>(rng() % 700);
    }
    pce::OmpConfig cfg;
    cfg.max_sparsity = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto result = pce::omp_solve(problem, dict, cfg);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_OmpSolve)->Arg(4)->Arg(16)->Arg(32);

void BM_ReconstructChunk(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const pce::Video video = pce::block_video(side, side, 13);
    const auto matrix = pce::generate_matrix(
        side, side, 13, 3, pce::MatrixDistribution::uniform(), 9);
    const pce::CodedFrame coded = pce::encode_chunk(video, matrix);
    const pce::Dictionary3D dict(7, 13);
    for (auto _ : state) {
        auto result = pce::reconstruct_chunk(coded, dict, pce::OmpConfig{}, 2);
        benchmark::DoNotOptimize(result);
    }
    state.counters["patches"] = static_cast<double>(
        pce::reconstruct_chunk(coded, dict, pce::OmpConfig{}, 2)
            .stats.patch_count);
}
BENCHMARK(BM_ReconstructChunk)->Unit(benchmark::kMillisecond)->Arg(32)->Arg(64);

} // namespace

BENCHMARK_MAIN();
