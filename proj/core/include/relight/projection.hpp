// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "relight/color.hpp"
#include "relight/envmap.hpp"
#include "relight/geometry.hpp"

namespace relight {

enum class WeightMode { Cone, Point };

std::string_view to_string(WeightMode mode);
WeightMode weight_mode_from_string(std::string_view name);

struct LightWeight {
    int index = 0;
    double w_diff = 0.0;
    Rgb w_spec;
};

/// Per-light relighting weights derived from one environment.
struct WeightSet {
    WeightMode mode = WeightMode::Cone;
    std::vector<LightWeight> entries;
    /// Target the specular weights were scaled to, or nullopt for raw weights.
    std::optional<Rgb> normalized_to;
    /// Set once w_diff has been derived from w_spec.
    bool diffuse_ready = false;
    /// Lights whose cone contained no texel center (their weight is zero).
    std::vector<int> empty_cones;

    Rgb specular_sum() const;
};

/// Integrates radiance over each light's cone. A texel belongs to the cone
/// when its center direction d satisfies d . l >= cos(half_angle). The sum is
/// multiplied by the light's intensity calibration.
WeightSet project_cone_weights(const RadianceMap& map, const LightRig& rig);

/// Bilinear radiance at the light axis times the cone solid angle and the
/// intensity calibration, so both modes share units.
WeightSet project_point_weights(const RadianceMap& map, const LightRig& rig);

WeightSet project_weights(const RadianceMap& map, const LightRig& rig, WeightMode mode);

enum class NormalizeMode {
    PerChannel,  // each channel of sum(w_spec) matches the target channel
    Scalar,      // one factor matching the luminance of the target
};

/// Rescales the specular weights so their sum hits `target`. Recomputes
/// w_diff when it was already derived. Throws NumericError naming the
/// channel whose raw sum is zero.
WeightSet normalize_weights(const WeightSet& ws, const Rgb& target,
                            NormalizeMode how = NormalizeMode::PerChannel);

/// Fills w_diff with the Rec. 709 luminance of w_spec.
WeightSet split_diffuse_specular(const WeightSet& ws);

/// Default pipeline: project, normalize to total_energy(map), split.
WeightSet relighting_weights(const RadianceMap& map, const LightRig& rig, WeightMode mode);

}  // namespace relight
