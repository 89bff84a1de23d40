// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/geometry.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "relight/error.hpp"

namespace relight {

Direction Direction::from_components(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(n) || n == 0.0) {
        throw DomainError(fmt::format("cannot normalize direction ({}, {}, {})", x, y, z));
    }
    return Direction(x / n, y / n, z / n);
}

SphericalCoords::SphericalCoords(double theta, double phi) : theta_(theta), phi_(phi) {
    if (!(theta >= 0.0 && theta <= kPi)) throw DomainError(fmt::format("theta {} outside [0, pi]", theta));
    if (!(phi > -kPi && phi <= kPi)) throw DomainError(fmt::format("phi {} outside (-pi, pi]", phi));
}

double wrap_azimuth(double phi) {
    if (!std::isfinite(phi)) throw DomainError("azimuth must be finite");
    double w = std::remainder(phi, kTwoPi);  // [-pi, pi]
    if (w <= -kPi) w += kTwoPi;
    return w;
}

Direction dir_from_spherical(const SphericalCoords& s) {
    const double st = std::sin(s.theta());
    return Direction::from_components(st * std::sin(s.phi()), std::cos(s.theta()), st * std::cos(s.phi()));
}

SphericalCoords spherical_from_dir(const Direction& d) {
    const double horizontal = std::hypot(d.x(), d.z());
    const double theta = std::atan2(horizontal, d.y());
    double phi = 0.0;
    if (horizontal > 0.0) {
        phi = std::atan2(d.x(), d.z());
        if (phi <= -kPi) phi = kPi;  // atan2(-0, -1)
    }
    return SphericalCoords(theta, phi);
}

double angular_distance(const Direction& a, const Direction& b) {
    const double cx = a.y() * b.z() - a.z() * b.y();
    const double cy = a.z() * b.x() - a.x() * b.z();
    const double cz = a.x() * b.y() - a.y() * b.x();
    return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), a.dot(b));
}

Direction rotate_about_up(const Direction& d, double yaw) {
    if (yaw == 0.0) return d;
    const double c = std::cos(yaw);
    const double s = std::sin(yaw);
    return Direction::from_components(d.x() * c + d.z() * s, d.y(), -d.x() * s + d.z() * c);
}

double cone_solid_angle(double half_angle) {
    if (!(half_angle > 0.0 && half_angle <= kPi)) {
        throw DomainError(fmt::format("cone half-angle {} outside (0, pi]", half_angle));
    }
    // 2*pi*(1 - cos a) == 4*pi*sin^2(a/2), which keeps precision for narrow cones.
    const double s = std::sin(0.5 * half_angle);
    return 4.0 * kPi * s * s;
}

LightRig::LightRig(std::vector<Light> lights) : lights_(std::move(lights)) {
    if (lights_.empty()) throw ValidationError("light rig must contain at least one light");
    for (std::size_t i = 0; i < lights_.size(); ++i) {
        const Light& l = lights_[i];
        if (l.index != static_cast<int>(i)) {
            throw ValidationError(fmt::format("light at position {} has index {}; indices must be 0..N-1", i, l.index));
        }
        if (!(l.cone_half_angle > 0.0 && l.cone_half_angle < 0.5 * kPi)) {
            throw ValidationError(fmt::format("light {}: cone half-angle {} outside (0, pi/2)", i, l.cone_half_angle));
        }
        if (!(l.intensity.r > 0.0 && l.intensity.g > 0.0 && l.intensity.b > 0.0) ||
            !is_finite_nonnegative(l.intensity)) {
            throw ValidationError(fmt::format("light {}: intensity components must be positive", i));
        }
    }
}

LightRig build_fibonacci_rig(int count, double cone_half_angle) {
    if (count < 1) throw DomainError(fmt::format("rig light count must be >= 1, got {}", count));
    const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
    std::vector<Light> lights;
    lights.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double y = count == 1 ? 1.0 : 1.0 - 2.0 * i / (count - 1);
        const double theta = std::acos(std::clamp(y, -1.0, 1.0));
        const double phi = wrap_azimuth(golden_angle * i);
        Light l;
        l.index = i;
        l.dir = dir_from_spherical(SphericalCoords(theta, phi));
        l.cone_half_angle = cone_half_angle;
        l.intensity = Rgb::gray(1.0);
        lights.push_back(l);
    }
    return LightRig(std::move(lights));
}

LightRig rotate_rig(const LightRig& rig, double yaw) {
    std::vector<Light> lights(rig.lights().begin(), rig.lights().end());
    for (Light& l : lights) l.dir = rotate_about_up(l.dir, yaw);
    return LightRig(std::move(lights));
}

}  // namespace relight
