// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "relight/error.hpp"

namespace relight {

template <class Tag>
RgbImage<Tag>::RgbImage(int width, int height)
    : width_(width), height_(height) {
    if (width < 0 || height < 0) throw DomainError("image dimensions must be non-negative");
    samples_.assign(3 * pixel_count(), 0.0f);
}

template <class Tag>
RgbImage<Tag>::RgbImage(int width, int height, std::vector<float> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    if (width < 0 || height < 0) throw DomainError("image dimensions must be non-negative");
    if (samples_.size() != 3 * pixel_count()) {
        throw ValidationError("image sample count " + std::to_string(samples_.size()) + " does not match " +
                              std::to_string(width) + "x" + std::to_string(height) + "x3");
    }
}

}  // namespace relight
