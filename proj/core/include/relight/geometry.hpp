// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>
#include <span>
#include <vector>

#include "relight/color.hpp"

namespace relight {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

// Stage frame: right-handed, +Y up, +Z toward the frontal camera.

/// Unit 3-vector. Construction normalizes, so every instance has norm 1.
class Direction {
public:
    /// Normalizes (x, y, z). Throws DomainError for a zero or non-finite vector.
    static Direction from_components(double x, double y, double z);

    static Direction up() { return Direction(0.0, 1.0, 0.0); }
    static Direction front() { return Direction(0.0, 0.0, 1.0); }

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

    double dot(const Direction& o) const { return x_ * o.x_ + y_ * o.y_ + z_ * o.z_; }

private:
    Direction(double x, double y, double z) : x_(x), y_(y), z_(z) {}

    double x_;
    double y_;
    double z_;
};

/// Inclination theta in [0, pi] from +Y; azimuth phi in (-pi, pi] in the XZ
/// plane, measured from +Z toward +X.
class SphericalCoords {
public:
    /// Throws DomainError when either angle is outside its range.
    SphericalCoords(double theta, double phi);

    double theta() const { return theta_; }
    double phi() const { return phi_; }

private:
    double theta_;
    double phi_;
};

/// Maps any finite angle into (-pi, pi].
double wrap_azimuth(double phi);

Direction dir_from_spherical(const SphericalCoords& s);

/// Poles report phi = 0.
SphericalCoords spherical_from_dir(const Direction& d);

/// Angle between two directions in radians, accurate near 0 and pi.
double angular_distance(const Direction& a, const Direction& b);

/// Rotates about +Y: azimuth increases by `yaw`.
Direction rotate_about_up(const Direction& d, double yaw);

/// Solid angle 2*pi*(1 - cos(half_angle)) of a cone. half_angle must lie in (0, pi].
double cone_solid_angle(double half_angle);

struct Light {
    int index = 0;
    Direction dir = Direction::up();
    double cone_half_angle = deg_to_rad(15.0);
    Rgb intensity = Rgb::gray(1.0);
};

/// Ordered, gap-free set of stage lights. Immutable after construction.
class LightRig {
public:
    /// Validates the rig invariants: non-empty, indices 0..N-1 in order, cone
    /// half-angles in (0, pi/2), positive intensities.
    explicit LightRig(std::vector<Light> lights);

    std::span<const Light> lights() const { return lights_; }
    const Light& operator[](std::size_t i) const { return lights_[i]; }
    std::size_t size() const { return lights_.size(); }

private:
    std::vector<Light> lights_;
};

/// Default cone half-angle: a 30 degree full apex angle.
inline constexpr double kDefaultConeHalfAngle = deg_to_rad(15.0);

/// Golden-angle spiral covering the full sphere from the +Y pole to the -Y
/// pole. Deterministic; all intensities are (1, 1, 1).
LightRig build_fibonacci_rig(int count, double cone_half_angle = kDefaultConeHalfAngle);

LightRig rotate_rig(const LightRig& rig, double yaw);

}  // namespace relight
