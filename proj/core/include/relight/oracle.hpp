// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include "relight/compositor.hpp"
#include "relight/envmap.hpp"
#include "relight/geometry.hpp"
#include "relight/image.hpp"

namespace relight {

enum class ShadingModel { Lambert, BlinnPhong };

std::string_view to_string(ShadingModel model);
ShadingModel shading_model_from_string(std::string_view name);

struct Material {
    Rgb albedo = Rgb::gray(0.8);
    double specular_strength = 0.0;
    double shininess = 32.0;
    ShadingModel model = ShadingModel::Lambert;
};

void validate(const Material& m);

/// Orthographic view of a sphere centered in a square image spanning
/// [-1, 1]^2; rays travel along -Z so the viewer direction is +Z.
struct SphereScene {
    double radius = 0.9;
    int resolution = 128;
};

void validate(const SphereScene& s);

/// Surface normal under pixel (px, py), or false for background pixels.
bool sphere_normal(const SphereScene& scene, int px, int py, double& nx, double& ny, double& nz);

/// Reflected radiance for unit irradiance from `light` at normal n, viewer +Z.
double shade_lambert(const Direction& light, double nx, double ny, double nz);
double shade_specular(const Material& m, const Direction& light, double nx, double ny, double nz);

/// One directional light of irradiance `irradiance` (per channel).
LinearImage render_sphere_directional(const SphereScene& scene, const Direction& light, const Rgb& irradiance,
                                      const Material& material);

/// Coverage mask of the sphere at pixel centers.
AlphaMatte sphere_matte(const SphereScene& scene);

/// One image per rig light, each carrying irradiance equal to the light's
/// cone solid angle. The stack records those solid angles as its light
/// energies and the sphere coverage as alpha.
OlatStack render_sphere_olat(const SphereScene& scene, const LightRig& rig, const Material& material);

/// Dense quadrature of the environment against the same BRDF: every texel
/// acts as a directional light of irradiance E * Omega_texel.
LinearImage render_sphere_env(const SphereScene& scene, const RadianceMap& map, const Material& material);

}  // namespace relight
