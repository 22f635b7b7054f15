// SPDX-License-Identifier: Apache-2.0
//
// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "mdr/analysis.hpp"
#include "mdr/codec.hpp"

using namespace mdr;

namespace {

std::vector<Stripe> data_stripes(const MdrCode& code, std::size_t count, std::size_t block_size) {
    std::mt19937_64 rng(42);
    std::vector<Stripe> out;
    for (std::size_t i = 0; i < count; ++i) {
        Stripe s = make_data_stripe(code, block_size);
        for (std::size_t d = 1; d <= code.k(); ++d) {
            for (auto& b : s.strip(d)) b = static_cast<std::uint8_t>(rng());
        }
        out.push_back(std::move(s));
    }
    return out;
}

template <bool Parallel>
void encode_batch(benchmark::State& state) {
    const auto code = construct(static_cast<std::size_t>(state.range(0)));
    const auto sched = build_encode_schedule(code);
    auto stripes = data_stripes(code, 64, 4096);
    for (auto _ : state) {
        const auto x = Parallel ? encode_batch_parallel(sched, stripes) : encode_batch_serial(sched, stripes);
        benchmark::DoNotOptimize(x);
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * 64 *
                            static_cast<std::int64_t>(code.k() * code.r()) * 4096);
}

template <bool Parallel>
void repair_batch(benchmark::State& state) {
    const auto code = construct(static_cast<std::size_t>(state.range(0)));
    auto stripes = data_stripes(code, 64, 4096);
    encode_batch_serial(build_encode_schedule(code), stripes);
    for (auto& s : stripes) s.erase(1);
    const auto plan = repair_plan(code, 1);
    for (auto _ : state) {
        auto out = Parallel ? repair_batch_parallel(code, plan, stripes) : repair_batch_serial(code, plan, stripes);
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Parallel>
void oracle(benchmark::State& state) {
    const auto code = construct(2);
    for (auto _ : state) {
        auto rep = Parallel ? min_io_bruteforce(code, 1) : min_io_bruteforce_serial(code, 1);
        benchmark::DoNotOptimize(rep.total_reads);
    }
}

template <bool Parallel>
void search(benchmark::State& state) {
    for (auto _ : state) {
        auto res = Parallel ? search_repair_optimal(3, 2, 1'000'000) : search_repair_optimal_serial(3, 2, 1'000'000);
        benchmark::DoNotOptimize(res.candidates);
    }
}

}  // namespace

BENCHMARK(encode_batch<false>)->Name("encode_batch/serial")->DenseRange(2, 6, 2);
BENCHMARK(encode_batch<true>)->Name("encode_batch/openmp")->DenseRange(2, 6, 2);
BENCHMARK(repair_batch<false>)->Name("repair_batch/serial")->DenseRange(2, 6, 2);
BENCHMARK(repair_batch<true>)->Name("repair_batch/openmp")->DenseRange(2, 6, 2);
BENCHMARK(oracle<false>)->Name("min_io_oracle/serial");
BENCHMARK(oracle<true>)->Name("min_io_oracle/openmp");
BENCHMARK(search<false>)->Name("search_k3_r2/serial");
BENCHMARK(search<true>)->Name("search_k3_r2/openmp");

BENCHMARK_MAIN();
