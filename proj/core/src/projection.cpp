// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/projection.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "relight/error.hpp"
#include "relight/parallel.hpp"

namespace relight {

std::string_view to_string(WeightMode mode) { return mode == WeightMode::Cone ? "cone" : "point"; }

WeightMode weight_mode_from_string(std::string_view name) {
    if (name == "cone") return WeightMode::Cone;
    if (name == "point") return WeightMode::Point;
    throw DomainError(fmt::format("unknown weight mode '{}' (expected cone or point)", name));
}

Rgb WeightSet::specular_sum() const {
    Rgb s;
    for (const LightWeight& e : entries) s += e.w_spec;
    return s;
}

WeightSet project_cone_weights(const RadianceMap& map, const LightRig& rig) {
    const int w = map.width();
    const int h = map.height();
    const TexelQuadrature quad = make_texel_quadrature(w, h);
    const auto texels = map.texels();

    WeightSet ws;
    ws.mode = WeightMode::Cone;
    ws.entries.resize(rig.size());
    std::vector<char> empty(rig.size(), 0);

    parallel_for(0, rig.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const Light& light = rig[i];
            const double cos_half = std::cos(light.cone_half_angle);
            // A member texel differs from the axis by at most the half-angle in
            // inclination, so rows outside that band cannot contribute.
            const double theta_axis = spherical_from_dir(light.dir).theta();
            const double margin = light.cone_half_angle + 1e-9;
            const int row_lo = std::max(0, static_cast<int>(std::floor((theta_axis - margin) / kPi * h - 0.5)));
            const int row_hi = std::min(h - 1, static_cast<int>(std::ceil((theta_axis + margin) / kPi * h - 0.5)));

            double acc[3] = {0.0, 0.0, 0.0};
            std::size_t members = 0;
            for (int row = row_lo; row <= row_hi; ++row) {
                for (int col = 0; col < w; ++col) {
                    const std::size_t t = static_cast<std::size_t>(row) * w + col;
                    if (quad.directions[t].dot(light.dir) < cos_half) continue;
                    ++members;
                    const double omega = quad.solid_angles[t];
                    acc[0] += texels[3 * t] * omega;
                    acc[1] += texels[3 * t + 1] * omega;
                    acc[2] += texels[3 * t + 2] * omega;
                }
            }
            ws.entries[i].index = light.index;
            ws.entries[i].w_spec = Rgb(acc[0], acc[1], acc[2]) * light.intensity;
            empty[i] = members == 0 ? 1 : 0;
        }
    });

    for (std::size_t i = 0; i < empty.size(); ++i) {
        if (empty[i]) ws.empty_cones.push_back(static_cast<int>(i));
    }
    return ws;
}

WeightSet project_point_weights(const RadianceMap& map, const LightRig& rig) {
    WeightSet ws;
    ws.mode = WeightMode::Point;
    ws.entries.reserve(rig.size());
    for (const Light& light : rig.lights()) {
        const Rgb radiance = sample_bilinear(map, light.dir);
        ws.entries.push_back({light.index, 0.0, radiance * cone_solid_angle(light.cone_half_angle) * light.intensity});
    }
    return ws;
}

WeightSet project_weights(const RadianceMap& map, const LightRig& rig, WeightMode mode) {
    return mode == WeightMode::Cone ? project_cone_weights(map, rig) : project_point_weights(map, rig);
}

WeightSet normalize_weights(const WeightSet& ws, const Rgb& target, NormalizeMode how) {
    if (!is_finite_nonnegative(target)) {
        throw DomainError(fmt::format("normalization target ({}, {}, {}) must be finite and >= 0", target.r,
                                      target.g, target.b));
    }
    const Rgb sum = ws.specular_sum();
    Rgb scale;
    if (how == NormalizeMode::PerChannel) {
        static constexpr const char* kNames[3] = {"r", "g", "b"};
        for (int c = 0; c < 3; ++c) {
            if (!(sum[c] > 0.0)) {
                throw NumericError(fmt::format("cannot normalize weights: channel '{}' sums to zero", kNames[c]));
            }
            scale[c] = target[c] / sum[c];
        }
    } else {
        const double lum = luminance(sum);
        if (!(lum > 0.0)) throw NumericError("cannot normalize weights: luminance of the weight sum is zero");
        scale = Rgb::gray(luminance(target) / lum);
    }

    WeightSet out = ws;
    for (LightWeight& e : out.entries) {
        e.w_spec = e.w_spec * scale;
        if (out.diffuse_ready) e.w_diff = luminance(e.w_spec);
    }
    out.normalized_to = how == NormalizeMode::PerChannel ? target : sum * scale;
    return out;
}

WeightSet split_diffuse_specular(const WeightSet& ws) {
    WeightSet out = ws;
    for (LightWeight& e : out.entries) e.w_diff = luminance(e.w_spec);
    out.diffuse_ready = true;
    return out;
}

WeightSet relighting_weights(const RadianceMap& map, const LightRig& rig, WeightMode mode) {
    return split_diffuse_specular(normalize_weights(project_weights(map, rig, mode), total_energy(map)));
}

}  // namespace relight
