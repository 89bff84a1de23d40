// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>

#include "relight/image.hpp"

namespace relight {

struct MetricReport {
    std::optional<double> psnr_db;  // +inf when the images are identical
    std::optional<double> ssim;
    std::optional<double> energy_ratio_err;
    std::optional<double> rel_rmse;
};

/// 10 log10(1 / MSE) with peak 1. Identical images give +infinity. A
/// non-empty mask restricts the mean to pixels with coverage > 0.5.
double psnr(const DisplayImage& a, const DisplayImage& b, std::span<const float> mask = {});

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;

/// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
/// K2 = 0.03, dynamic range 1, averaged over valid window positions and the
/// three channels. A non-empty mask keeps windows whose center has coverage > 0.5.
double ssim(const DisplayImage& a, const DisplayImage& b, std::span<const float> mask = {});

/// ||a - b||_2 / ||b||_2.
double relative_rmse(const LinearImage& a, const LinearImage& b, std::span<const float> mask = {});

/// | sum(a) / sum(b) - 1 |.
double energy_ratio_error(const LinearImage& a, const LinearImage& b, std::span<const float> mask = {});

}  // namespace relight
