// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "relight/envmap.hpp"
#include "relight/geometry.hpp"
#include "relight/image.hpp"
#include "relight/projection.hpp"

namespace relight {

/// Aligned one-light-at-a-time captures of a single subject and view.
class OlatStack {
public:
    /// Checks one image per rig light, equal dimensions, matching alpha and
    /// uniform sizes, and positive light energies. `light_energy` defaults to
    /// all ones when empty.
    OlatStack(LightRig rig, std::vector<LinearImage> images, std::optional<AlphaMatte> alpha = std::nullopt,
              std::optional<LinearImage> uniform = std::nullopt, std::vector<double> light_energy = {});

    const LightRig& rig() const { return rig_; }
    std::span<const LinearImage> images() const { return images_; }
    const LinearImage& image(std::size_t i) const { return images_[i]; }
    std::size_t size() const { return images_.size(); }
    int width() const { return images_.front().width(); }
    int height() const { return images_.front().height(); }

    const std::optional<AlphaMatte>& alpha() const { return alpha_; }
    const std::optional<LinearImage>& uniform() const { return uniform_; }

    /// Measured exposure energy of each capture; 1 means unit irradiance.
    std::span<const double> light_energy() const { return light_energy_; }
    bool is_unit_energy() const;

private:
    LightRig rig_;
    std::vector<LinearImage> images_;
    std::optional<AlphaMatte> alpha_;
    std::optional<LinearImage> uniform_;
    std::vector<double> light_energy_;
};

/// Divides every capture by its measured light energy so each image is the
/// response to unit irradiance. The returned stack reports unit energies.
OlatStack calibrate_stack(const OlatStack& stack);

inline constexpr double kDefaultAlphaBlend = 0.8;

/// alpha_blend * sum_i w_diff_i I_i + (1 - alpha_blend) * sum_i I_i (*) w_spec_i,
/// accumulated per pixel in double precision with compensated summation.
LinearImage composite_relit(const OlatStack& stack, const WeightSet& ws, double alpha_blend = kDefaultAlphaBlend);

/// Per-pixel mean of every OLAT image.
LinearImage synthesize_uniform(const OlatStack& stack);

enum class ToneOperator { Reinhard, Clamp };

std::string_view to_string(ToneOperator op);
ToneOperator tone_operator_from_string(std::string_view name);

struct ToneMapParams {
    double exposure = 1.0;
    ToneOperator op = ToneOperator::Reinhard;
};

/// Reinhard compresses luminance L -> L / (1 + L) and keeps channel ratios;
/// clamp is min(exposure * c, 1). Output always lies in [0, 1].
DisplayImage tone_map(const LinearImage& img, const ToneMapParams& p);

/// Pinhole camera looking along +Z before yaw (about +Y) and pitch (about +X).
struct CameraModel {
    double focal_length_mm = 35.0;
    double sensor_width_mm = 36.0;
    int width = 512;
    int height = 512;
    double yaw = 0.0;
    double pitch = 0.0;
};

void validate(const CameraModel& cam);

/// 2 atan(sensor_width / (2 focal_length)).
double horizontal_fov(const CameraModel& cam);

/// World direction of the ray through pixel center (px, py).
Direction camera_ray(const CameraModel& cam, double px, double py);

/// Renders the environment seen by `cam` (environment at infinity).
LinearImage render_background(const RadianceMap& map, const CameraModel& cam);

/// out = matte * fg + (1 - matte) * bg.
DisplayImage alpha_composite(const DisplayImage& fg, const AlphaMatte& matte, const DisplayImage& bg);

}  // namespace relight
