// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include <benchmark/benchmark.h>

#include "relight/envmap.hpp"
#include "relight/projection.hpp"

namespace {

using namespace relight;

RadianceMap sky(int height) {
    return RadianceMap::generate(height, [](const Direction& d) {
        return Rgb(0.6, 0.7, 0.9) * (0.4 + 0.3 * d.y()) + Rgb::gray(std::pow(std::max(0.0, d.z()), 8.0));
    });
}

void BM_ProjectCone(benchmark::State& state) {
    const RadianceMap map = sky(static_cast<int>(state.range(0)));
    const LightRig rig = build_fibonacci_rig(156);
    for (auto _ : state) benchmark::DoNotOptimize(project_cone_weights(map, rig));
}
BENCHMARK(BM_ProjectCone)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_ProjectPoint(benchmark::State& state) {
    const RadianceMap map = sky(static_cast<int>(state.range(0)));
    const LightRig rig = build_fibonacci_rig(156);
    for (auto _ : state) benchmark::DoNotOptimize(project_point_weights(map, rig));
}
BENCHMARK(BM_ProjectPoint)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_RotateEnv(benchmark::State& state) {
    const RadianceMap map = sky(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(rotate_env(map, 0.3));
}
BENCHMARK(BM_RotateEnv)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
