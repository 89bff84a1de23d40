// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "relight/compositor.hpp"

namespace relight {

// Stack directory layout:
//   <dir>/<index:03>.png   16-bit linear-encoded RGB, value / 65535
//   <dir>/alpha.png        optional 16-bit gray matte
//   <dir>/uniform.png      optional uniform-light capture
//   <dir>/lights.json      optional {"light_energy": [..]} capture energies

std::string olat_filename(int index);

OlatStack read_olat_stack(const std::filesystem::path& dir, const LightRig& rig);

/// Values above 1 are clipped by the 16-bit encoding.
void write_olat_stack(const std::filesystem::path& dir, const OlatStack& stack);

}  // namespace relight
