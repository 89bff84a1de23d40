// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "relight/color.hpp"
#include "relight/envmap.hpp"
#include "relight/image.hpp"

namespace relight {

/// Shared-exponent pixel of the Radiance format. e == 0 is exact black.
struct RgbeTexel {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    std::uint8_t e = 0;

    friend bool operator==(const RgbeTexel&, const RgbeTexel&) = default;
};

/// Exponent from the largest channel, mantissas truncated.
RgbeTexel rgbe_from_rgb(const Rgb& c);

/// (mantissa + 0.5) * 2^(e - 136); e == 0 decodes to black.
Rgb rgb_from_rgbe(const RgbeTexel& t);

/// Decodes a Radiance .hdr stream with "-Y H +X W" orientation. Accepts both
/// new-style run-length scanlines and flat scanlines.
LinearImage decode_hdr_image(std::span<const std::uint8_t> bytes);

/// As decode_hdr_image, then checks the equirectangular aspect.
RadianceMap decode_radiance_hdr(std::span<const std::uint8_t> bytes);

/// Writes FORMAT=32-bit_rle_rgbe. Widths in [8, 32767] use run-length
/// scanlines; others are stored flat.
std::vector<std::uint8_t> encode_hdr_image(const LinearImage& image);
std::vector<std::uint8_t> encode_radiance_hdr(const RadianceMap& map);

LinearImage read_hdr_image(const std::filesystem::path& path);
RadianceMap read_radiance_hdr(const std::filesystem::path& path);
void write_hdr_image(const std::filesystem::path& path, const LinearImage& image);

}  // namespace relight
