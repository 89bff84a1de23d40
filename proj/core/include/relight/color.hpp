// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace relight {

/// Linear RGB triple in double precision.
struct Rgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    constexpr Rgb() = default;
    constexpr Rgb(double r_, double g_, double b_) : r(r_), g(g_), b(b_) {}
    static constexpr Rgb gray(double v) { return {v, v, v}; }

    constexpr double operator[](int c) const { return c == 0 ? r : (c == 1 ? g : b); }
    constexpr double& operator[](int c) { return c == 0 ? r : (c == 1 ? g : b); }

    constexpr Rgb& operator+=(const Rgb& o) { r += o.r; g += o.g; b += o.b; return *this; }
    constexpr Rgb& operator*=(double s) { r *= s; g *= s; b *= s; return *this; }

    friend constexpr Rgb operator+(Rgb a, const Rgb& b) { return a += b; }
    friend constexpr Rgb operator-(const Rgb& a, const Rgb& b) { return {a.r - b.r, a.g - b.g, a.b - b.b}; }
    friend constexpr Rgb operator*(Rgb a, double s) { return a *= s; }
    friend constexpr Rgb operator*(double s, Rgb a) { return a *= s; }
    friend constexpr Rgb operator*(const Rgb& a, const Rgb& b) { return {a.r * b.r, a.g * b.g, a.b * b.b}; }
    friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

// Rec. 709 luma weights.
inline constexpr double kLumaR = 0.2126;
inline constexpr double kLumaG = 0.7152;
inline constexpr double kLumaB = 0.0722;

// Written relative to green (the weights sum to one) so that a gray input
// returns its value exactly.
constexpr double luminance(double r, double g, double b) { return g + kLumaR * (r - g) + kLumaB * (b - g); }

constexpr double luminance(const Rgb& c) { return luminance(c.r, c.g, c.b); }

inline bool is_finite_nonnegative(const Rgb& c) {
    return std::isfinite(c.r) && std::isfinite(c.g) && std::isfinite(c.b) && c.r >= 0.0 && c.g >= 0.0 &&
           c.b >= 0.0;
}

}  // namespace relight
