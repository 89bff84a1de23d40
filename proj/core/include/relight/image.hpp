// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "relight/color.hpp"

namespace relight {

struct LinearTag {};
struct DisplayTag {};

/// Row-major interleaved RGB float image. The tag separates linear radiance
/// from tone-mapped display values so the two cannot be mixed by accident.
template <class Tag>
class RgbImage {
public:
    RgbImage() = default;
    RgbImage(int width, int height);
    RgbImage(int width, int height, std::vector<float> samples);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }
    bool empty() const { return pixel_count() == 0; }

    std::span<float> samples() { return samples_; }
    std::span<const float> samples() const { return samples_; }

    Rgb at(int x, int y) const {
        const float* p = &samples_[3 * (static_cast<std::size_t>(y) * width_ + x)];
        return {p[0], p[1], p[2]};
    }
    void set(int x, int y, const Rgb& c) {
        float* p = &samples_[3 * (static_cast<std::size_t>(y) * width_ + x)];
        p[0] = static_cast<float>(c.r);
        p[1] = static_cast<float>(c.g);
        p[2] = static_cast<float>(c.b);
    }

    bool same_size(int w, int h) const { return width_ == w && height_ == h; }
    template <class Other>
    bool same_size(const RgbImage<Other>& o) const { return same_size(o.width(), o.height()); }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> samples_;
};

using LinearImage = RgbImage<LinearTag>;
using DisplayImage = RgbImage<DisplayTag>;

/// Checks the linear-image invariant (finite, non-negative). Throws ValidationError.
void validate_linear(const LinearImage& img);

/// Checks every display sample is finite and inside [0, 1]. Throws ValidationError.
void validate_display(const DisplayImage& img);

/// Reinterprets samples without conversion; used for linear-domain metrics.
DisplayImage as_display(const LinearImage& img);
LinearImage as_linear(const DisplayImage& img);

/// Single-channel coverage in [0, 1].
class AlphaMatte {
public:
    AlphaMatte() = default;
    AlphaMatte(int width, int height, float fill = 0.0f);
    /// Throws ValidationError if any value is outside [0, 1] or the size mismatches.
    AlphaMatte(int width, int height, std::vector<float> values);

    int width() const { return width_; }
    int height() const { return height_; }
    std::span<const float> values() const { return values_; }
    std::span<float> values() { return values_; }
    float at(int x, int y) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }

    friend bool operator==(const AlphaMatte&, const AlphaMatte&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> values_;
};

}  // namespace relight

#include "relight/image_impl.hpp"
