// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/metrics.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "relight/error.hpp"

namespace relight {

namespace {

template <class A, class B>
void require_same_size(const A& a, const B& b, const char* what) {
    if (!a.same_size(b)) {
        throw ValidationError(
            fmt::format("{}: size mismatch ({}x{} vs {}x{})", what, a.width(), a.height(), b.width(), b.height()));
    }
}

void require_mask(std::span<const float> mask, std::size_t pixels, const char* what) {
    if (!mask.empty() && mask.size() != pixels) {
        throw ValidationError(fmt::format("{}: mask has {} entries for {} pixels", what, mask.size(), pixels));
    }
}

bool covered(std::span<const float> mask, std::size_t p) { return mask.empty() || mask[p] > 0.5f; }

std::array<double, kSsimWindow> gaussian_window() {
    std::array<double, kSsimWindow> w{};
    const int half = kSsimWindow / 2;
    double sum = 0.0;
    for (int i = 0; i < kSsimWindow; ++i) {
        const double x = i - half;
        w[i] = std::exp(-x * x / (2.0 * kSsimSigma * kSsimSigma));
        sum += w[i];
    }
    for (double& v : w) v /= sum;
    return w;
}

// Valid-mode separable filtering of a single-channel plane.
std::vector<double> filter_valid(const std::vector<double>& plane, int w, int h,
                                 const std::array<double, kSsimWindow>& k) {
    const int ow = w - kSsimWindow + 1;
    const int oh = h - kSsimWindow + 1;
    std::vector<double> tmp(static_cast<std::size_t>(ow) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < kSsimWindow; ++i) acc += k[i] * plane[static_cast<std::size_t>(y) * w + x + i];
            tmp[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < kSsimWindow; ++i) acc += k[i] * tmp[static_cast<std::size_t>(y + i) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    }
    return out;
}

}  // namespace

double psnr(const DisplayImage& a, const DisplayImage& b, std::span<const float> mask) {
    require_same_size(a, b, "psnr");
    require_mask(mask, a.pixel_count(), "psnr");
    const auto sa = a.samples();
    const auto sb = b.samples();
    double sse = 0.0;
    std::size_t count = 0;
    for (std::size_t p = 0; p < a.pixel_count(); ++p) {
        if (!covered(mask, p)) continue;
        for (int c = 0; c < 3; ++c) {
            const double d = static_cast<double>(sa[3 * p + c]) - sb[3 * p + c];
            sse += d * d;
        }
        count += 3;
    }
    if (count == 0) throw ValidationError("psnr: no pixels to compare");
    const double mse = sse / static_cast<double>(count);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

double ssim(const DisplayImage& a, const DisplayImage& b, std::span<const float> mask) {
    require_same_size(a, b, "ssim");
    require_mask(mask, a.pixel_count(), "ssim");
    const int w = a.width();
    const int h = a.height();
    if (w < kSsimWindow || h < kSsimWindow) {
        throw ValidationError(fmt::format("ssim: image {}x{} is smaller than the {}x{} window", w, h, kSsimWindow,
                                          kSsimWindow));
    }
    const auto k = gaussian_window();
    const double c1 = (kSsimK1 * 1.0) * (kSsimK1 * 1.0);
    const double c2 = (kSsimK2 * 1.0) * (kSsimK2 * 1.0);
    const int ow = w - kSsimWindow + 1;
    const int oh = h - kSsimWindow + 1;
    const int half = kSsimWindow / 2;

    const std::size_t n = a.pixel_count();
    std::vector<double> pa(n), pb(n), paa(n), pbb(n), pab(n);
    double total = 0.0;
    std::size_t windows = 0;
    for (int c = 0; c < 3; ++c) {
        for (std::size_t p = 0; p < n; ++p) {
            pa[p] = a.samples()[3 * p + c];
            pb[p] = b.samples()[3 * p + c];
            paa[p] = pa[p] * pa[p];
            pbb[p] = pb[p] * pb[p];
            pab[p] = pa[p] * pb[p];
        }
        const auto mu_a = filter_valid(pa, w, h, k);
        const auto mu_b = filter_valid(pb, w, h, k);
        const auto e_aa = filter_valid(paa, w, h, k);
        const auto e_bb = filter_valid(pbb, w, h, k);
        const auto e_ab = filter_valid(pab, w, h, k);
        for (int y = 0; y < oh; ++y) {
            for (int x = 0; x < ow; ++x) {
                if (!covered(mask, static_cast<std::size_t>(y + half) * w + x + half)) continue;
                const std::size_t i = static_cast<std::size_t>(y) * ow + x;
                const double var_a = e_aa[i] - mu_a[i] * mu_a[i];
                const double var_b = e_bb[i] - mu_b[i] * mu_b[i];
                const double cov = e_ab[i] - mu_a[i] * mu_b[i];
                const double num = (2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2);
                const double den = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (var_a + var_b + c2);
                total += num / den;
                ++windows;
            }
        }
    }
    if (windows == 0) throw ValidationError("ssim: mask leaves no valid windows");
    return total / static_cast<double>(windows);
}

double relative_rmse(const LinearImage& a, const LinearImage& b, std::span<const float> mask) {
    require_same_size(a, b, "relative_rmse");
    require_mask(mask, a.pixel_count(), "relative_rmse");
    const auto sa = a.samples();
    const auto sb = b.samples();
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t p = 0; p < a.pixel_count(); ++p) {
        if (!covered(mask, p)) continue;
        for (int c = 0; c < 3; ++c) {
            const double d = static_cast<double>(sa[3 * p + c]) - sb[3 * p + c];
            diff += d * d;
            ref += static_cast<double>(sb[3 * p + c]) * sb[3 * p + c];
        }
    }
    if (!(ref > 0.0)) throw NumericError("relative_rmse: reference image has zero norm");
    return std::sqrt(diff / ref);
}

double energy_ratio_error(const LinearImage& a, const LinearImage& b, std::span<const float> mask) {
    require_same_size(a, b, "energy_ratio_error");
    require_mask(mask, a.pixel_count(), "energy_ratio_error");
    double sa = 0.0;
    double sb = 0.0;
    for (std::size_t p = 0; p < a.pixel_count(); ++p) {
        if (!covered(mask, p)) continue;
        for (int c = 0; c < 3; ++c) {
            sa += std::abs(a.samples()[3 * p + c]);
            sb += std::abs(b.samples()[3 * p + c]);
        }
    }
    if (!(sb > 0.0)) throw NumericError("energy_ratio_error: reference image has zero energy");
    return std::abs(sa / sb - 1.0);
}

}  // namespace relight
