// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "relight/compositor.hpp"
#include "relight/parallel.hpp"
#include "relight/projection.hpp"

namespace {

using namespace relight;

OlatStack random_stack(int lights, int width, int height) {
    const LightRig rig = build_fibonacci_rig(lights);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    std::vector<LinearImage> imgs;
    for (int i = 0; i < lights; ++i) {
        LinearImage img(width, height);
        for (float& v : img.samples()) v = u(rng);
        imgs.push_back(std::move(img));
    }
    return OlatStack(rig, std::move(imgs));
}

WeightSet gray_weights(std::size_t lights) {
    WeightSet ws;
    for (std::size_t i = 0; i < lights; ++i) {
        const double w = 1.0 / static_cast<double>(lights);
        ws.entries.push_back({static_cast<int>(i), w, Rgb(w, 0.9 * w, 1.1 * w)});
    }
    ws.diffuse_ready = true;
    return ws;
}

// Args: light count, image width, image height, worker threads (0 = all).
void BM_CompositeRelit(benchmark::State& state) {
    const OlatStack stack =
        random_stack(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                     static_cast<int>(state.range(2)));
    const WeightSet ws = gray_weights(stack.size());
    set_thread_count(static_cast<unsigned>(state.range(3)));
    for (auto _ : state) benchmark::DoNotOptimize(composite_relit(stack, ws));
    set_thread_count(0);
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1) * state.range(2));
}
BENCHMARK(BM_CompositeRelit)
    ->Args({156, 256, 192, 1})
    ->Args({156, 1024, 768, 1})
    ->Args({156, 1024, 768, 0})
    ->Unit(benchmark::kMillisecond);

}  // namespace
