// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/envmap.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "relight/error.hpp"

namespace relight {

namespace {

int wrap_index(long long i, int n) {
    long long m = i % n;
    if (m < 0) m += n;
    return static_cast<int>(m);
}

}  // namespace

RadianceMap::RadianceMap(int width, int height, std::vector<float> rgb)
    : width_(width), height_(height), texels_(std::move(rgb)) {
    if (height < 1 || width != 2 * height) {
        throw ValidationError(fmt::format("environment map must be 2H x H, got {}x{}", width, height));
    }
    if (texels_.size() != 3 * static_cast<std::size_t>(width) * height) {
        throw ValidationError(fmt::format("environment map has {} samples, expected {}", texels_.size(),
                                          3 * static_cast<std::size_t>(width) * height));
    }
    for (std::size_t i = 0; i < texels_.size(); ++i) {
        if (!std::isfinite(texels_[i]) || texels_[i] < 0.0f) {
            throw ValidationError(fmt::format("environment texel sample {} is {} (must be finite, >= 0)", i,
                                              texels_[i]));
        }
    }
}

RadianceMap::RadianceMap(const LinearImage& image)
    : RadianceMap(image.width(), image.height(),
                  std::vector<float>(image.samples().begin(), image.samples().end())) {}

RadianceMap RadianceMap::filled(int height, const Rgb& value) {
    std::vector<float> rgb(3 * static_cast<std::size_t>(2 * height) * std::max(height, 0));
    for (std::size_t i = 0; i < rgb.size(); i += 3) {
        rgb[i] = static_cast<float>(value.r);
        rgb[i + 1] = static_cast<float>(value.g);
        rgb[i + 2] = static_cast<float>(value.b);
    }
    return RadianceMap(2 * height, height, std::move(rgb));
}

RadianceMap RadianceMap::generate(int height, const std::function<Rgb(const Direction&)>& radiance) {
    const int width = 2 * height;
    std::vector<float> rgb(3 * static_cast<std::size_t>(width) * std::max(height, 0));
    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            const Rgb c = radiance(texel_direction(width, height, col, row));
            float* p = &rgb[3 * (static_cast<std::size_t>(row) * width + col)];
            p[0] = static_cast<float>(c.r);
            p[1] = static_cast<float>(c.g);
            p[2] = static_cast<float>(c.b);
        }
    }
    return RadianceMap(width, height, std::move(rgb));
}

LinearImage RadianceMap::to_image() const { return LinearImage(width_, height_, texels_); }

TexCoord dir_to_uv(const Direction& d) {
    const SphericalCoords s = spherical_from_dir(d);
    double u = 0.5 + s.phi() / kTwoPi;
    if (u >= 1.0) u -= 1.0;
    return {u, s.theta() / kPi};
}

Direction uv_to_dir(double u, double v) {
    const double phi = (u - 0.5) * kTwoPi;
    const double theta = v * kPi;
    const double st = std::sin(theta);
    return Direction::from_components(st * std::sin(phi), std::cos(theta), st * std::cos(phi));
}

Direction texel_direction(int width, int height, int col, int row) {
    return uv_to_dir((col + 0.5) / width, (row + 0.5) / height);
}

Rgb sample_bilinear(const RadianceMap& map, const Direction& d) {
    const TexCoord uv = dir_to_uv(d);
    const int w = map.width();
    const int h = map.height();
    const double x = uv.u * w - 0.5;
    const double y = uv.v * h - 0.5;
    const double x0 = std::floor(x);
    const double y0 = std::floor(y);
    const double fx = x - x0;
    const double fy = y - y0;
    const int c0 = wrap_index(static_cast<long long>(x0), w);
    const int c1 = wrap_index(static_cast<long long>(x0) + 1, w);
    const int r0 = std::clamp(static_cast<int>(y0), 0, h - 1);
    const int r1 = std::clamp(static_cast<int>(y0) + 1, 0, h - 1);
    const Rgb top = map.at(c0, r0) * (1.0 - fx) + map.at(c1, r0) * fx;
    const Rgb bottom = map.at(c0, r1) * (1.0 - fx) + map.at(c1, r1) * fx;
    return top * (1.0 - fy) + bottom * fy;
}

double texel_solid_angle(int width, int height, int row) {
    if (row < 0 || row >= height) {
        throw DomainError(fmt::format("row {} outside [0, {})", row, height));
    }
    // Exact area of the texel's latitude band, (2pi/W)(cos t0 - cos t1),
    // written as 2 sin(theta_row) sin(dtheta/2). It equals the midpoint rule
    // (2pi/W)(pi/H) sin(theta_row) to O(1/H^2), but the rows sum to 4pi exactly.
    const double theta = kPi * (row + 0.5) / height;
    const double half_band = 0.5 * kPi / height;
    return (kTwoPi / width) * 2.0 * std::sin(theta) * std::sin(half_band);
}

double texel_solid_angle(const RadianceMap& map, int row) {
    return texel_solid_angle(map.width(), map.height(), row);
}

bool lossless_column_shift(int width, double yaw, int& shift) {
    const double columns = yaw * width / kTwoPi;
    const double nearest = std::round(columns);
    if (std::abs(columns - nearest) > 1e-9 * std::max(1.0, std::abs(columns))) return false;
    shift = wrap_index(static_cast<long long>(nearest), width);
    return true;
}

RadianceMap rotate_env(const RadianceMap& map, double yaw) {
    const int w = map.width();
    const int h = map.height();
    std::vector<float> out(map.texels().size());
    const auto src = map.texels();

    int shift = 0;
    if (lossless_column_shift(w, yaw, shift)) {
        for (int row = 0; row < h; ++row) {
            for (int col = 0; col < w; ++col) {
                const int from = wrap_index(static_cast<long long>(col) - shift, w);
                const std::size_t di = 3 * (static_cast<std::size_t>(row) * w + col);
                const std::size_t si = 3 * (static_cast<std::size_t>(row) * w + from);
                out[di] = src[si];
                out[di + 1] = src[si + 1];
                out[di + 2] = src[si + 2];
            }
        }
        return RadianceMap(w, h, std::move(out));
    }

    // A yaw keeps every texel center on its row, so bilinear resampling at the
    // counter-rotated direction reduces to linear interpolation along the row.
    const double columns = yaw * w / kTwoPi;
    for (int row = 0; row < h; ++row) {
        for (int col = 0; col < w; ++col) {
            const double x = col - columns;
            const double x0 = std::floor(x);
            const double fx = x - x0;
            const int c0 = wrap_index(static_cast<long long>(x0), w);
            const int c1 = wrap_index(static_cast<long long>(x0) + 1, w);
            const Rgb v = map.at(c0, row) * (1.0 - fx) + map.at(c1, row) * fx;
            const std::size_t di = 3 * (static_cast<std::size_t>(row) * w + col);
            out[di] = static_cast<float>(std::max(0.0, v.r));
            out[di + 1] = static_cast<float>(std::max(0.0, v.g));
            out[di + 2] = static_cast<float>(std::max(0.0, v.b));
        }
    }
    return RadianceMap(w, h, std::move(out));
}

Rgb total_energy(const RadianceMap& map) {
    Rgb total;
    for (int row = 0; row < map.height(); ++row) {
        Rgb row_sum;
        for (int col = 0; col < map.width(); ++col) row_sum += map.at(col, row);
        total += row_sum * texel_solid_angle(map, row);
    }
    return total;
}

RadianceMap downsample(const RadianceMap& map, int factor) {
    if (factor < 1 || map.height() % factor != 0) {
        throw DomainError(fmt::format("downsample factor {} must divide height {}", factor, map.height()));
    }
    if (factor == 1) return map;
    const int h = map.height() / factor;
    const int w = 2 * h;
    std::vector<float> out(3 * static_cast<std::size_t>(w) * h);
    const double inv = 1.0 / (static_cast<double>(factor) * factor);
    for (int row = 0; row < h; ++row) {
        for (int col = 0; col < w; ++col) {
            Rgb acc;
            for (int dy = 0; dy < factor; ++dy) {
                for (int dx = 0; dx < factor; ++dx) acc += map.at(col * factor + dx, row * factor + dy);
            }
            acc *= inv;
            float* p = &out[3 * (static_cast<std::size_t>(row) * w + col)];
            p[0] = static_cast<float>(acc.r);
            p[1] = static_cast<float>(acc.g);
            p[2] = static_cast<float>(acc.b);
        }
    }
    return RadianceMap(w, h, std::move(out));
}

TexelQuadrature make_texel_quadrature(int width, int height) {
    TexelQuadrature q;
    q.directions.reserve(static_cast<std::size_t>(width) * height);
    q.solid_angles.reserve(static_cast<std::size_t>(width) * height);
    for (int row = 0; row < height; ++row) {
        const double omega = texel_solid_angle(width, height, row);
        for (int col = 0; col < width; ++col) {
            q.directions.push_back(texel_direction(width, height, col, row));
            q.solid_angles.push_back(omega);
        }
    }
    return q;
}

}  // namespace relight
