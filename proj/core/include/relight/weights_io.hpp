// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "relight/json_util.hpp"
#include "relight/projection.hpp"

namespace relight {

// Weight file:
//   {"mode": "cone"|"point", "normalized_to": [r, g, b] | null,
//    "weights": [{"index": int, "w_diff": float, "w_spec": [r, g, b]}, ...]}

Json weights_to_json(const WeightSet& ws);
WeightSet weights_from_json(const Json& doc);

WeightSet read_weights(const std::filesystem::path& path);
void write_weights(const std::filesystem::path& path, const WeightSet& ws);

}  // namespace relight
