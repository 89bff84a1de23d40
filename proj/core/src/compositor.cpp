// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/compositor.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "relight/error.hpp"
#include "relight/parallel.hpp"

namespace relight {

namespace {

// Rows accumulated together; keeps the double accumulators cache resident
// while streaming every light's rows through them.
constexpr int kRowBlock = 4;

}  // namespace

OlatStack::OlatStack(LightRig rig, std::vector<LinearImage> images, std::optional<AlphaMatte> alpha,
                     std::optional<LinearImage> uniform, std::vector<double> light_energy)
    : rig_(std::move(rig)),
      images_(std::move(images)),
      alpha_(std::move(alpha)),
      uniform_(std::move(uniform)),
      light_energy_(std::move(light_energy)) {
    if (images_.size() != rig_.size()) {
        throw ValidationError(
            fmt::format("stack has {} images but the rig has {} lights", images_.size(), rig_.size()));
    }
    const int w = images_.front().width();
    const int h = images_.front().height();
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (!images_[i].same_size(w, h)) {
            throw ValidationError(fmt::format("image {} is {}x{}, expected {}x{}", i, images_[i].width(),
                                              images_[i].height(), w, h));
        }
    }
    if (alpha_ && (alpha_->width() != w || alpha_->height() != h)) {
        throw ValidationError(
            fmt::format("alpha matte is {}x{}, expected {}x{}", alpha_->width(), alpha_->height(), w, h));
    }
    if (uniform_ && !uniform_->same_size(w, h)) {
        throw ValidationError(fmt::format("uniform image is {}x{}, expected {}x{}", uniform_->width(),
                                          uniform_->height(), w, h));
    }
    if (light_energy_.empty()) light_energy_.assign(images_.size(), 1.0);
    if (light_energy_.size() != images_.size()) {
        throw ValidationError(fmt::format("{} light energies for {} images", light_energy_.size(), images_.size()));
    }
    for (std::size_t i = 0; i < light_energy_.size(); ++i) {
        if (!(light_energy_[i] > 0.0) || !std::isfinite(light_energy_[i])) {
            throw ValidationError(fmt::format("light {} energy {} must be positive", i, light_energy_[i]));
        }
    }
}

bool OlatStack::is_unit_energy() const {
    return std::all_of(light_energy_.begin(), light_energy_.end(), [](double e) { return e == 1.0; });
}

OlatStack calibrate_stack(const OlatStack& stack) {
    std::vector<LinearImage> images(stack.images().begin(), stack.images().end());
    for (std::size_t i = 0; i < images.size(); ++i) {
        const double inv = 1.0 / stack.light_energy()[i];
        for (float& v : images[i].samples()) v = static_cast<float>(v * inv);
    }
    return OlatStack(stack.rig(), std::move(images), stack.alpha(), stack.uniform());
}

LinearImage composite_relit(const OlatStack& stack, const WeightSet& ws, double alpha_blend) {
    if (ws.entries.size() != stack.size()) {
        throw ValidationError(
            fmt::format("weight set has {} entries but the stack has {} images", ws.entries.size(), stack.size()));
    }
    if (!ws.diffuse_ready) throw ValidationError("diffuse weights are not populated; run split_diffuse_specular");
    if (!(alpha_blend >= 0.0 && alpha_blend <= 1.0)) {
        throw DomainError(fmt::format("alpha_blend {} outside [0, 1]", alpha_blend));
    }

    // Both terms are linear in I_i, so each light reduces to one RGB gain.
    std::vector<Rgb> gain(ws.entries.size());
    for (std::size_t i = 0; i < gain.size(); ++i) {
        const LightWeight& e = ws.entries[i];
        // w_spec + alpha (w_diff - w_spec): exact, whatever alpha, when the two agree.
        gain[i] = e.w_spec + alpha_blend * (Rgb::gray(e.w_diff) - e.w_spec);
    }

    const int w = stack.width();
    const int h = stack.height();
    LinearImage out(w, h);
    auto dst = out.samples();
    const std::size_t row_len = 3 * static_cast<std::size_t>(w);
    const std::size_t blocks = (static_cast<std::size_t>(h) + kRowBlock - 1) / kRowBlock;

    parallel_for(0, blocks, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> sum(kRowBlock * row_len);
        std::vector<double> comp(kRowBlock * row_len);
        for (std::size_t block = lo; block < hi; ++block) {
            const std::size_t row0 = block * kRowBlock;
            const std::size_t rows = std::min<std::size_t>(kRowBlock, h - row0);
            const std::size_t n = rows * row_len;
            const std::size_t offset = row0 * row_len;
            std::fill_n(sum.begin(), n, 0.0);
            std::fill_n(comp.begin(), n, 0.0);
            for (std::size_t i = 0; i < gain.size(); ++i) {
                const double g[3] = {gain[i].r, gain[i].g, gain[i].b};
                if (g[0] == 0.0 && g[1] == 0.0 && g[2] == 0.0) continue;
                const float* src = stack.image(i).samples().data() + offset;
                for (std::size_t k = 0; k < n; ++k) {
                    // Kahan summation: every term is non-negative.
                    const double y = src[k] * g[k % 3] - comp[k];
                    const double t = sum[k] + y;
                    comp[k] = (t - sum[k]) - y;
                    sum[k] = t;
                }
            }
            for (std::size_t k = 0; k < n; ++k) dst[offset + k] = static_cast<float>(std::max(0.0, sum[k]));
        }
    });
    return out;
}

LinearImage synthesize_uniform(const OlatStack& stack) {
    const std::size_t n = 3 * static_cast<std::size_t>(stack.width()) * stack.height();
    std::vector<double> acc(n, 0.0);
    for (const LinearImage& img : stack.images()) {
        const auto s = img.samples();
        for (std::size_t k = 0; k < n; ++k) acc[k] += s[k];
    }
    LinearImage out(stack.width(), stack.height());
    const double inv = 1.0 / static_cast<double>(stack.size());
    auto dst = out.samples();
    for (std::size_t k = 0; k < n; ++k) dst[k] = static_cast<float>(acc[k] * inv);
    return out;
}

std::string_view to_string(ToneOperator op) { return op == ToneOperator::Reinhard ? "reinhard" : "clamp"; }

ToneOperator tone_operator_from_string(std::string_view name) {
    if (name == "reinhard") return ToneOperator::Reinhard;
    if (name == "clamp") return ToneOperator::Clamp;
    throw DomainError(fmt::format("unknown tone operator '{}' (expected reinhard or clamp)", name));
}

DisplayImage tone_map(const LinearImage& img, const ToneMapParams& p) {
    if (!(p.exposure > 0.0) || !std::isfinite(p.exposure)) {
        throw DomainError(fmt::format("exposure {} must be positive", p.exposure));
    }
    DisplayImage out(img.width(), img.height());
    const auto src = img.samples();
    auto dst = out.samples();
    for (std::size_t k = 0; k < src.size(); k += 3) {
        const double r = std::max(0.0, p.exposure * src[k]);
        const double g = std::max(0.0, p.exposure * src[k + 1]);
        const double b = std::max(0.0, p.exposure * src[k + 2]);
        double scale = 1.0;
        if (p.op == ToneOperator::Reinhard) {
            const double lum = luminance(r, g, b);
            scale = lum > 0.0 ? 1.0 / (1.0 + lum) : 0.0;
        }
        dst[k] = static_cast<float>(std::min(1.0, r * scale));
        dst[k + 1] = static_cast<float>(std::min(1.0, g * scale));
        dst[k + 2] = static_cast<float>(std::min(1.0, b * scale));
    }
    return out;
}

void validate(const CameraModel& cam) {
    if (!(cam.focal_length_mm > 0.0)) throw DomainError("focal length must be positive");
    if (!(cam.sensor_width_mm > 0.0)) throw DomainError("sensor width must be positive");
    if (cam.width < 1 || cam.height < 1) throw DomainError("camera resolution must be at least 1x1");
    if (!std::isfinite(cam.yaw) || !std::isfinite(cam.pitch)) throw DomainError("camera angles must be finite");
}

double horizontal_fov(const CameraModel& cam) {
    validate(cam);
    return 2.0 * std::atan(cam.sensor_width_mm / (2.0 * cam.focal_length_mm));
}

Direction camera_ray(const CameraModel& cam, double px, double py) {
    const double tan_half = cam.sensor_width_mm / (2.0 * cam.focal_length_mm);
    const double aspect = static_cast<double>(cam.height) / cam.width;
    const double sx = (2.0 * (px + 0.5) / cam.width - 1.0) * tan_half;
    const double sy = (1.0 - 2.0 * (py + 0.5) / cam.height) * tan_half * aspect;
    // Looking along +Z with +Y up, image right is world -X.
    double x = -sx;
    double y = sy;
    double z = 1.0;
    const double cp = std::cos(cam.pitch);
    const double sp = std::sin(cam.pitch);
    const double y2 = y * cp + z * sp;
    const double z2 = -y * sp + z * cp;
    y = y2;
    z = z2;
    return rotate_about_up(Direction::from_components(x, y, z), cam.yaw);
}

LinearImage render_background(const RadianceMap& map, const CameraModel& cam) {
    validate(cam);
    LinearImage out(cam.width, cam.height);
    parallel_for(0, static_cast<std::size_t>(cam.height), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t y = lo; y < hi; ++y) {
            for (int x = 0; x < cam.width; ++x) {
                out.set(x, static_cast<int>(y),
                        sample_bilinear(map, camera_ray(cam, x, static_cast<double>(y))));
            }
        }
    });
    return out;
}

DisplayImage alpha_composite(const DisplayImage& fg, const AlphaMatte& matte, const DisplayImage& bg) {
    if (!fg.same_size(bg) || !fg.same_size(matte.width(), matte.height())) {
        throw ValidationError(fmt::format("alpha_composite size mismatch: fg {}x{}, matte {}x{}, bg {}x{}",
                                          fg.width(), fg.height(), matte.width(), matte.height(), bg.width(),
                                          bg.height()));
    }
    DisplayImage out(fg.width(), fg.height());
    const auto f = fg.samples();
    const auto b = bg.samples();
    const auto a = matte.values();
    auto dst = out.samples();
    for (std::size_t p = 0; p < a.size(); ++p) {
        const double m = a[p];
        for (int c = 0; c < 3; ++c) {
            const std::size_t k = 3 * p + c;
            dst[k] = static_cast<float>(m * f[k] + (1.0 - m) * b[k]);
        }
    }
    return out;
}

}  // namespace relight
