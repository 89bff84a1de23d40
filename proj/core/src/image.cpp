// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/image.hpp"

#include <fmt/format.h>

#include <cmath>

#include "relight/error.hpp"

namespace relight {

void validate_linear(const LinearImage& img) {
    const auto s = img.samples();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s[i]) || s[i] < 0.0f) {
            throw ValidationError(fmt::format("linear image sample {} is {} (must be finite, >= 0)", i, s[i]));
        }
    }
}

void validate_display(const DisplayImage& img) {
    const auto s = img.samples();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] >= 0.0f && s[i] <= 1.0f)) {
            throw ValidationError(fmt::format("display image sample {} is {} (must lie in [0, 1])", i, s[i]));
        }
    }
}

DisplayImage as_display(const LinearImage& img) {
    return DisplayImage(img.width(), img.height(), std::vector<float>(img.samples().begin(), img.samples().end()));
}

LinearImage as_linear(const DisplayImage& img) {
    return LinearImage(img.width(), img.height(), std::vector<float>(img.samples().begin(), img.samples().end()));
}

AlphaMatte::AlphaMatte(int width, int height, float fill) : width_(width), height_(height) {
    if (width < 0 || height < 0) throw DomainError("matte dimensions must be non-negative");
    if (!(fill >= 0.0f && fill <= 1.0f)) throw ValidationError("matte fill must lie in [0, 1]");
    values_.assign(static_cast<std::size_t>(width) * height, fill);
}

AlphaMatte::AlphaMatte(int width, int height, std::vector<float> values)
    : width_(width), height_(height), values_(std::move(values)) {
    if (width < 0 || height < 0) throw DomainError("matte dimensions must be non-negative");
    if (values_.size() != static_cast<std::size_t>(width) * height) {
        throw ValidationError(fmt::format("matte has {} values, expected {}x{}", values_.size(), width, height));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] >= 0.0f && values_[i] <= 1.0f)) {
            throw ValidationError(fmt::format("matte value {} is {} (must lie in [0, 1])", i, values_[i]));
        }
    }
}

}  // namespace relight
