// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/oracle.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "relight/error.hpp"
#include "relight/parallel.hpp"

namespace relight {

std::string_view to_string(ShadingModel model) { return model == ShadingModel::Lambert ? "lambert" : "blinn_phong"; }

ShadingModel shading_model_from_string(std::string_view name) {
    if (name == "lambert") return ShadingModel::Lambert;
    if (name == "blinn_phong" || name == "blinn-phong") return ShadingModel::BlinnPhong;
    throw DomainError(fmt::format("unknown shading model '{}' (expected lambert or blinn_phong)", name));
}

void validate(const Material& m) {
    for (int c = 0; c < 3; ++c) {
        if (!(m.albedo[c] >= 0.0 && m.albedo[c] <= 1.0)) throw DomainError("albedo components must lie in [0, 1]");
    }
    if (!(m.specular_strength >= 0.0)) throw DomainError("specular strength must be >= 0");
    if (!(m.shininess >= 1.0)) throw DomainError("shininess must be >= 1");
}

void validate(const SphereScene& s) {
    if (!(s.radius > 0.0)) throw DomainError("sphere radius must be positive");
    if (s.resolution < 1) throw DomainError("sphere image resolution must be >= 1");
}

bool sphere_normal(const SphereScene& scene, int px, int py, double& nx, double& ny, double& nz) {
    const double x = 2.0 * (px + 0.5) / scene.resolution - 1.0;
    const double y = 1.0 - 2.0 * (py + 0.5) / scene.resolution;
    const double r2 = scene.radius * scene.radius;
    const double d2 = x * x + y * y;
    if (d2 >= r2) return false;
    nx = x / scene.radius;
    ny = y / scene.radius;
    nz = std::sqrt(r2 - d2) / scene.radius;
    return true;
}

double shade_lambert(const Direction& light, double nx, double ny, double nz) {
    const double cos_l = nx * light.x() + ny * light.y() + nz * light.z();
    return cos_l > 0.0 ? cos_l / kPi : 0.0;
}

double shade_specular(const Material& m, const Direction& light, double nx, double ny, double nz) {
    if (m.model != ShadingModel::BlinnPhong || m.specular_strength == 0.0) return 0.0;
    const double cos_l = nx * light.x() + ny * light.y() + nz * light.z();
    if (cos_l <= 0.0) return 0.0;
    // Half-vector between the light and the +Z viewer.
    const double hx = light.x();
    const double hy = light.y();
    const double hz = light.z() + 1.0;
    const double hn = std::sqrt(hx * hx + hy * hy + hz * hz);
    if (hn == 0.0) return 0.0;
    const double cos_h = (nx * hx + ny * hy + nz * hz) / hn;
    if (cos_h <= 0.0) return 0.0;
    return m.specular_strength * std::pow(cos_h, m.shininess) * cos_l;
}

LinearImage render_sphere_directional(const SphereScene& scene, const Direction& light, const Rgb& irradiance,
                                      const Material& material) {
    validate(scene);
    validate(material);
    LinearImage img(scene.resolution, scene.resolution);
    for (int py = 0; py < scene.resolution; ++py) {
        for (int px = 0; px < scene.resolution; ++px) {
            double nx, ny, nz;
            if (!sphere_normal(scene, px, py, nx, ny, nz)) continue;
            const double diffuse = shade_lambert(light, nx, ny, nz);
            const double spec = shade_specular(material, light, nx, ny, nz);
            img.set(px, py, irradiance * (material.albedo * diffuse + Rgb::gray(spec)));
        }
    }
    return img;
}

AlphaMatte sphere_matte(const SphereScene& scene) {
    validate(scene);
    AlphaMatte matte(scene.resolution, scene.resolution);
    auto values = matte.values();
    for (int py = 0; py < scene.resolution; ++py) {
        for (int px = 0; px < scene.resolution; ++px) {
            double nx, ny, nz;
            values[static_cast<std::size_t>(py) * scene.resolution + px] =
                sphere_normal(scene, px, py, nx, ny, nz) ? 1.0f : 0.0f;
        }
    }
    return matte;
}

OlatStack render_sphere_olat(const SphereScene& scene, const LightRig& rig, const Material& material) {
    validate(scene);
    validate(material);
    std::vector<LinearImage> images(rig.size());
    std::vector<double> energy(rig.size());
    parallel_for(0, rig.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double omega = cone_solid_angle(rig[i].cone_half_angle);
            energy[i] = omega;
            images[i] = render_sphere_directional(scene, rig[i].dir, Rgb::gray(omega), material);
        }
    });
    return OlatStack(rig, std::move(images), sphere_matte(scene), std::nullopt, std::move(energy));
}

LinearImage render_sphere_env(const SphereScene& scene, const RadianceMap& map, const Material& material) {
    validate(scene);
    validate(material);

    // Every non-black texel becomes a directional light of irradiance E * Omega.
    struct TexelLight {
        Direction dir;
        Rgb irradiance;
    };
    std::vector<TexelLight> lights;
    for (int row = 0; row < map.height(); ++row) {
        const double omega = texel_solid_angle(map, row);
        for (int col = 0; col < map.width(); ++col) {
            const Rgb e = map.at(col, row);
            if (e.r == 0.0 && e.g == 0.0 && e.b == 0.0) continue;
            lights.push_back({texel_direction(map.width(), map.height(), col, row), e * omega});
        }
    }
    const bool specular = material.model == ShadingModel::BlinnPhong && material.specular_strength > 0.0;

    LinearImage img(scene.resolution, scene.resolution);
    parallel_for(0, static_cast<std::size_t>(scene.resolution), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t py = lo; py < hi; ++py) {
            for (int px = 0; px < scene.resolution; ++px) {
                double nx, ny, nz;
                if (!sphere_normal(scene, px, static_cast<int>(py), nx, ny, nz)) continue;
                Rgb diffuse;
                Rgb spec;
                for (const TexelLight& t : lights) {
                    const double cos_l = nx * t.dir.x() + ny * t.dir.y() + nz * t.dir.z();
                    if (cos_l <= 0.0) continue;
                    diffuse += t.irradiance * (cos_l / kPi);
                    if (specular) spec += t.irradiance * shade_specular(material, t.dir, nx, ny, nz);
                }
                img.set(px, static_cast<int>(py), material.albedo * diffuse + spec);
            }
        }
    });
    return img;
}

}  // namespace relight
