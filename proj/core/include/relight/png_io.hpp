// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "relight/image.hpp"

namespace relight {

/// Raw PNG samples normalized to [0, 1] (value / 65535 or value / 255).
struct PngPixels {
    int width = 0;
    int height = 0;
    int channels = 0;  // 1 (gray) or 3 (RGB); alpha channels are dropped
    std::vector<float> values;
};

PngPixels read_png(const std::filesystem::path& path);

/// Gray PNGs are broadcast to RGB. Samples are taken as linear-encoded.
LinearImage read_linear_png(const std::filesystem::path& path);
DisplayImage read_display_png(const std::filesystem::path& path);
AlphaMatte read_matte_png(const std::filesystem::path& path);

/// 16-bit RGB; samples are clamped to [0, 1] and rounded to the nearest code.
void write_png16(const std::filesystem::path& path, const DisplayImage& img);
void write_png16(const std::filesystem::path& path, const LinearImage& img);
void write_matte_png16(const std::filesystem::path& path, const AlphaMatte& matte);

}  // namespace relight
