// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "relight/color.hpp"
#include "relight/geometry.hpp"
#include "relight/image.hpp"

namespace relight {

/// Equirectangular linear-HDR environment. Column u runs with azimuth
/// (u = 0.5 is +Z), row v with inclination (row 0 is the +Y pole).
class RadianceMap {
public:
    /// Requires width == 2 * height, height >= 1 and finite non-negative texels.
    RadianceMap(int width, int height, std::vector<float> rgb);
    explicit RadianceMap(const LinearImage& image);

    static RadianceMap filled(int height, const Rgb& value);
    /// Evaluates `radiance` at every texel center.
    static RadianceMap generate(int height, const std::function<Rgb(const Direction&)>& radiance);

    int width() const { return width_; }
    int height() const { return height_; }

    Rgb at(int col, int row) const {
        const float* p = &texels_[3 * (static_cast<std::size_t>(row) * width_ + col)];
        return {p[0], p[1], p[2]};
    }
    std::span<const float> texels() const { return texels_; }

    LinearImage to_image() const;

    friend bool operator==(const RadianceMap&, const RadianceMap&) = default;

private:
    int width_;
    int height_;
    std::vector<float> texels_;
};

struct TexCoord {
    double u;
    double v;
};

/// u = 0.5 + phi / 2pi in [0, 1), v = theta / pi in [0, 1].
TexCoord dir_to_uv(const Direction& d);
Direction uv_to_dir(double u, double v);

/// Direction through the center of texel (col, row).
Direction texel_direction(int width, int height, int col, int row);

/// Bilinear lookup with texel centers at ((i + 0.5) / W, (j + 0.5) / H);
/// wraps horizontally and clamps vertically.
Rgb sample_bilinear(const RadianceMap& map, const Direction& d);

/// Solid angle of one texel in `row`: its latitude band area over W.
/// Agrees with (2pi / W)(pi / H) sin(theta_row) to O(1 / H^2); rows sum to 4pi.
double texel_solid_angle(int width, int height, int row);
double texel_solid_angle(const RadianceMap& map, int row);

/// Rotates the environment about +Y by `yaw`. Multiples of 2pi / W take a
/// lossless column shift; other angles resample horizontally.
RadianceMap rotate_env(const RadianceMap& map, double yaw);

/// Column shift used by rotate_env when `yaw` is a whole number of texel
/// columns; returns false otherwise.
bool lossless_column_shift(int width, double yaw, int& shift);

/// Per-channel sum of radiance times texel solid angle.
Rgb total_energy(const RadianceMap& map);

/// Box-filters by an integer factor; the factor must divide the height.
RadianceMap downsample(const RadianceMap& map, int factor);

/// Precomputed texel-center directions and solid angles for quadrature.
struct TexelQuadrature {
    std::vector<Direction> directions;
    std::vector<double> solid_angles;
};

TexelQuadrature make_texel_quadrature(int width, int height);

}  // namespace relight
