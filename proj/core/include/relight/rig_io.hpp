// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "relight/geometry.hpp"
#include "relight/json_util.hpp"

namespace relight {

// Rig file: JSON array of
//   {"index": int, "theta": deg, "phi": deg, "cone_half_angle_deg": deg, "intensity": [r, g, b]}

Json rig_to_json(const LightRig& rig);
LightRig rig_from_json(const Json& doc);

LightRig read_rig(const std::filesystem::path& path);
void write_rig(const std::filesystem::path& path, const LightRig& rig);

}  // namespace relight
