// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits non-zero when any hard criterion fails. Criterion 10 is advisory: a
// miss prints FAIL with a warning but does not change the exit status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cli.hpp"
#include "relight/bridge.hpp"
#include "relight/compositor.hpp"
#include "relight/envmap.hpp"
#include "relight/error.hpp"
#include "relight/metrics.hpp"
#include "relight/oracle.hpp"
#include "relight/parallel.hpp"
#include "relight/png_io.hpp"
#include "relight/projection.hpp"
#include "relight/rgbe.hpp"
#include "relight/rig_io.hpp"
#include "relight/stack_io.hpp"
#include "relight/weights_io.hpp"

namespace fs = std::filesystem;
using namespace relight;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
    bool soft = false;  // a miss is reported but does not fail the run
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct CliRun {
    int code = -1;
    Json report;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "relight");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliRun r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (r.code == cli::kExitOk && !out.str().empty()) r.report = Json::parse(out.str());
    r.err = err.str();
    return r;
}

LinearImage random_image(int w, int h, std::mt19937_64& rng, float hi = 1.0f) {
    std::uniform_real_distribution<float> u(0.0f, hi);
    LinearImage img(w, h);
    for (float& v : img.samples()) v = u(rng);
    return img;
}

double image_sum(const LinearImage& img) {
    double s = 0.0;
    for (float v : img.samples()) s += v;
    return s;
}

// Smooth sky: a vertical gradient plus a broad warm lobe.
RadianceMap smooth_environment(int height) { return cli::default_environment(height); }

// Composite with pure per-channel weights, the direct form of the
// composition identity.
constexpr double kPerChannel = 0.0;

Outcome composition_fidelity() {
    const Stopwatch clock;
    const LightRig rig = build_fibonacci_rig(156);
    const SphereScene scene{0.9, 128};
    const RadianceMap env = smooth_environment(256);
    const OlatStack stack = calibrate_stack(render_sphere_olat(scene, rig, Material{}));
    const LinearImage relit = composite_relit(stack, relighting_weights(env, rig, WeightMode::Cone), kPerChannel);
    const LinearImage truth = render_sphere_env(scene, env, Material{});
    const double err = relative_rmse(relit, truth, stack.alpha()->values());
    const double t = clock.seconds();
    return {err < 0.03 && t < 60.0, fmt::format("relative_rmse {:.4f} (< 0.03), {:.1f} s (< 60 s)", err, t)};
}

Outcome cone_vs_point() {
    const Stopwatch clock;
    const LightRig rig = build_fibonacci_rig(156);
    const SphereScene scene{0.9, 128};
    const int h = 256, w = 2 * h;

    // Block anchored at the texel holding the axis of the light nearest the
    // view direction, moved three columns off it: inside that cone, clear of
    // every light axis.
    std::size_t front = 0;
    for (std::size_t i = 1; i < rig.size(); ++i) {
        if (rig[i].dir.z() > rig[front].dir.z()) front = i;
    }
    const TexCoord uv = dir_to_uv(rig[front].dir);
    const int col = static_cast<int>(uv.u * w) + 3;
    const int row = static_cast<int>(uv.v * h);
    std::vector<float> texels(static_cast<std::size_t>(3) * w * h, 0.0f);
    for (int dy = 0; dy < 2; ++dy) {
        for (int dx = 0; dx < 2; ++dx) {
            const std::size_t k = 3 * (static_cast<std::size_t>(row + dy) * w + col + dx);
            texels[k] = texels[k + 1] = texels[k + 2] = 1000.0f;
        }
    }
    const RadianceMap env(w, h, std::move(texels));

    const OlatStack stack = calibrate_stack(render_sphere_olat(scene, rig, Material{}));
    const double truth = image_sum(render_sphere_env(scene, env, Material{}));
    const double cone = image_sum(composite_relit(stack, relighting_weights(env, rig, WeightMode::Cone), kPerChannel));
    // Point samples miss the block, so the raw weights are all zero and
    // cannot be normalized; compose them as they are.
    const WeightSet point_ws = split_diffuse_specular(project_point_weights(env, rig));
    const double point = image_sum(composite_relit(stack, point_ws, kPerChannel));
    const double t = clock.seconds();
    const double cone_ratio = cone / truth, point_ratio = point / truth;
    return {cone_ratio >= 0.99 && point_ratio < 0.5 && t < 30.0,
            fmt::format("cone captures {:.2f}% (>= 99%), point {:.2f}% (< 50%), {:.1f} s (< 30 s)",
                        100.0 * cone_ratio, 100.0 * point_ratio, t)};
}

Outcome rotation_consistency(const fs::path& work) {
    const CliRun r = run_cli({"--quiet", "--report", (work / "sweep_report.json").string(), "rotate-sweep",
                              "--steps", "8", "--out", (work / "sweep").string()});
    if (r.code != cli::kExitOk) return {false, "rotate-sweep failed: " + r.err};
    const Json rep = read_json_file(work / "sweep_report.json");
    const double worst = rep["results"]["max_rel_rmse"].get<double>();
    return {worst < 0.02, fmt::format("max relative_rmse {:.3g} over 8 steps (< 0.02)", worst)};
}

Outcome bridge_exactness() {
    const Stopwatch clock;
    const CliRun exact = run_cli({"bridge-demo", "--dim", "8", "--pairs", "1000", "--conditions", "20", "--sigma", "0"});
    if (exact.code != cli::kExitOk) return {false, "bridge-demo failed: " + exact.err};
    const double loss = exact.report["results"]["fitted_loss"].get<double>();
    const double mse = exact.report["results"]["transport_mse"].get<double>();

    const CliRun noisy =
        run_cli({"bridge-demo", "--dim", "8", "--pairs", "10000", "--conditions", "20", "--sigma", "0.1"});
    if (noisy.code != cli::kExitOk) return {false, "bridge-demo failed: " + noisy.err};
    const double noisy_loss = noisy.report["results"]["fitted_loss"].get<double>();
    const double floor = noisy.report["results"]["sigma_floor_estimate"].get<double>();
    const double gap = std::abs(noisy_loss / floor - 1.0);
    const double t = clock.seconds();
    return {loss < 1e-10 && mse < 1e-10 && gap <= 0.05 && t < 5.0,
            fmt::format("lbm_loss {:.2g}, transport MSE {:.2g} (< 1e-10); sigma 0.1 loss {:.5f} vs floor {:.5f} "
                        "({:.2f}% <= 5%), {:.2f} s (< 5 s)",
                        loss, mse, noisy_loss, floor, 100.0 * gap, t)};
}

Outcome loss_identities() {
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> side(1, 24);
    bool mask_ok = true, energy_ok = true, weighted_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        const int w = side(rng), h = side(rng);
        const LinearImage gt = random_image(w, h, rng, trial % 2 ? 1.0f : 50.0f);
        const LinearImage pred = random_image(w, h, rng, trial % 2 ? 1.0f : 50.0f);
        const std::vector<double> mask = pixel_weight_mask(gt);
        for (double m : mask) mask_ok = mask_ok && m >= 0.0 && m <= 1.0;

        LinearImage doubled = gt;
        for (float& v : doubled.samples()) v *= 2.0f;
        energy_ok = energy_ok && energy_loss(doubled, gt) == 1.0;

        const std::vector<double> ones(mask.size(), 1.0);
        weighted_ok = weighted_ok && weighted_pixel_loss(pred, gt, mask) <= weighted_pixel_loss(pred, gt, ones);
    }
    const LossWeights lw;
    const bool combine_ok = combine_losses(1.0, 2.0, 3.0, lw) == 1.0 + 2.0 + 0.1 * 3.0 &&
                            combine_losses(0.5, 0.0, 0.0, lw) == 0.5 &&
                            combine_losses(0.0, 0.0, 10.0, LossWeights{1.0, 0.25}) == 2.5 &&
                            combine_losses(0.0, 4.0, 0.0, LossWeights{0.5, 0.1}) == 2.0;
    return {mask_ok && energy_ok && weighted_ok && combine_ok,
            fmt::format("mask in [0,1]: {}, energy_loss(2 gt) == 1: {}, weighted <= L1: {}, combine: {}", mask_ok,
                        energy_ok, weighted_ok, combine_ok)};
}

Outcome codec_and_quadrature() {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> lg(std::log(1e-6), std::log(1e6));
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Rgb x(std::exp(lg(rng)), std::exp(lg(rng)), std::exp(lg(rng)));
        const RgbeTexel t = rgbe_from_rgb(x);
        const Rgb y = rgb_from_rgbe(t);
        // Error relative to the shared exponent's full scale, the precision
        // the format stores every channel at.
        const double scale = std::ldexp(1.0, t.e - 128);
        for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(y[c] - x[c]) / scale);
    }
    double worst_sum = 0.0;
    for (int h : {64, 256}) {
        double sum = 0.0;
        for (int row = 0; row < h; ++row) sum += 2 * h * texel_solid_angle(2 * h, h, row);
        worst_sum = std::max(worst_sum, std::abs(sum / (4.0 * kPi) - 1.0));
    }
    return {worst <= 0.5 / 256 && worst_sum <= 1e-6,
            fmt::format("RGBE error {:.6g} (<= {:.6g}); solid-angle sum error {:.2g} (<= 1e-6)", worst, 0.5 / 256,
                        worst_sum)};
}

// Direct SSIM: full 11x11 Gaussian windows, no separable filtering.
double brute_ssim(const DisplayImage& a, const DisplayImage& b) {
    const int r = 5;
    double g[11][11], wsum = 0.0;
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
            g[dy + r][dx + r] = std::exp(-(dx * dx + dy * dy) / (2.0 * 1.5 * 1.5));
            wsum += g[dy + r][dx + r];
        }
    }
    const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
    double total = 0.0;
    int count = 0;
    for (int c = 0; c < 3; ++c) {
        for (int cy = r; cy < a.height() - r; ++cy) {
            for (int cx = r; cx < a.width() - r; ++cx) {
                double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0;
                for (int dy = -r; dy <= r; ++dy) {
                    for (int dx = -r; dx <= r; ++dx) {
                        const double w = g[dy + r][dx + r] / wsum;
                        const double x = a.at(cx + dx, cy + dy)[c], y = b.at(cx + dx, cy + dy)[c];
                        ma += w * x;
                        mb += w * y;
                        saa += w * x * x;
                        sbb += w * y * y;
                        sab += w * x * y;
                    }
                }
                const double va = saa - ma * ma, vb = sbb - mb * mb, cov = sab - ma * mb;
                total += (2 * ma * mb + c1) * (2 * cov + c2) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
                ++count;
            }
        }
    }
    return total / count;
}

Outcome metric_oracles() {
    std::mt19937_64 rng(7);
    double self = 0.0, brute = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const LinearImage a = random_image(32, 32, rng), b = random_image(32, 32, rng);
        const DisplayImage da(a.width(), a.height(), std::vector<float>(a.samples().begin(), a.samples().end()));
        const DisplayImage db(b.width(), b.height(), std::vector<float>(b.samples().begin(), b.samples().end()));
        self = std::max(self, std::abs(ssim(da, da) - 1.0));
        brute = std::max(brute, std::abs(ssim(da, db) - brute_ssim(da, db)));
    }
    // A constant offset of 0.1 gives MSE 0.01.
    const DisplayImage lo(8, 8, std::vector<float>(192, 0.25f)), hi(8, 8, std::vector<float>(192, 0.35f));
    const double mse = 0.01;
    const DisplayImage zero(10, 10, std::vector<float>(300, 0.0f));
    DisplayImage tenth(10, 10, std::vector<float>(300, 0.0f));
    // Exactly MSE 0.01 in float arithmetic: one pixel in a hundred off by one.
    tenth.set(3, 4, Rgb::gray(1.0));
    const double p = psnr(zero, tenth);
    const double p_offset = psnr(lo, hi);
    return {self <= 1e-9 && brute <= 1e-6 && p == 20.0 && std::abs(p_offset - 20.0) < 1e-4,
            fmt::format("|ssim(a,a) - 1| {:.2g} (<= 1e-9), |ssim - direct| {:.2g} (<= 1e-6), psnr(MSE {}) = {:.17g} dB",
                        self, brute, mse, p)};
}

Outcome blend_algebra(const fs::path& work) {
    // Gray-neutral weights on random stacks: every alpha gives the same image.
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const LightRig rig = build_fibonacci_rig(20 + 7 * trial);
        std::vector<LinearImage> imgs;
        for (std::size_t i = 0; i < rig.size(); ++i) imgs.push_back(random_image(17, 11, rng, 3.0f));
        const OlatStack stack(rig, imgs);
        WeightSet ws;
        for (std::size_t i = 0; i < rig.size(); ++i) {
            const double w = u(rng);
            ws.entries.push_back({static_cast<int>(i), w, Rgb::gray(w)});
        }
        ws.diffuse_ready = true;
        const LinearImage ref = composite_relit(stack, ws, 0.0);
        for (double alpha : {0.1, 0.5, 0.8, 1.0}) {
            const LinearImage img = composite_relit(stack, ws, alpha);
            for (std::size_t k = 0; k < img.samples().size(); ++k) {
                const double a = img.samples()[k], b = ref.samples()[k];
                worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
            }
        }
    }

    // One-hot weights through the command-line path.
    const LightRig rig = build_fibonacci_rig(24);
    std::vector<LinearImage> imgs;
    for (std::size_t i = 0; i < rig.size(); ++i) imgs.push_back(random_image(33, 21, rng));
    const fs::path dir = work / "onehot";
    write_rig(dir / "rig.json", rig);
    write_olat_stack(dir / "stack", OlatStack(rig, imgs));
    const int pick = 13;
    WeightSet one;
    for (int i = 0; i < static_cast<int>(rig.size()); ++i) {
        const double w = i == pick ? 1.0 : 0.0;
        one.entries.push_back({i, w, Rgb::gray(w)});
    }
    one.diffuse_ready = true;
    write_weights(dir / "weights.json", one);
    const CliRun r = run_cli({"--quiet", "relight", "--rig", (dir / "rig.json").string(), "--stack",
                              (dir / "stack").string(), "--weights", (dir / "weights.json").string(), "--tonemap",
                              "clamp", "--out", (dir / "relit.png").string()});
    if (r.code != cli::kExitOk) return {false, "relight failed: " + r.err};
    const bool exact = read_png(dir / "relit.png").values == read_png(dir / "stack" / olat_filename(pick)).values;
    return {worst <= 1e-9 && exact,
            fmt::format("alpha invariance {:.2g} (<= 1e-9), one-hot slice bit-exact: {}", worst, exact)};
}

Outcome reproducibility_statement() {
    return {true,
            "published image-quality scores (LPIPS 0.115, PSNR 22.12 dB, SSIM 0.82) and trained-network results "
            "need the full capture dataset and trained models and are not reproduced here; criteria 1-8 are the "
            "contract"};
}

Outcome composite_throughput() {
    const LightRig rig = build_fibonacci_rig(156);
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    std::vector<LinearImage> imgs;
    imgs.reserve(rig.size());
    for (std::size_t i = 0; i < rig.size(); ++i) {
        LinearImage img(1024, 768);
        const float base = u(rng);
        float v = base;
        for (float& s : img.samples()) {
            s = v;
            v = v > 0.999f ? base : v + 1e-3f;
        }
        imgs.push_back(std::move(img));
    }
    const OlatStack stack(rig, std::move(imgs));
    const WeightSet ws = relighting_weights(smooth_environment(256), rig, WeightMode::Cone);

    const unsigned hardware = thread_count();
    set_thread_count(1);
    Stopwatch single_clock;
    LinearImage out = composite_relit(stack, ws);
    const double single = single_clock.seconds();
    set_thread_count(0);

    std::string parallel_note;
    bool parallel_ok = true;
    if (hardware >= 8) {
        set_thread_count(8);
        Stopwatch parallel_clock;
        out = composite_relit(stack, ws);
        const double parallel = parallel_clock.seconds();
        set_thread_count(0);
        parallel_ok = parallel < 1.5;
        parallel_note = fmt::format("8 threads {:.2f} s (< 1.5 s)", parallel);
    } else {
        parallel_note = fmt::format("8-thread target not measurable on {} hardware thread(s)", hardware);
    }
    Outcome o{single < 5.0 && parallel_ok,
              fmt::format("single thread {:.2f} s (< 5 s); {}", single, parallel_note), true};
    if (hardware < 8) o.detail += " [warning]";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relight acceptance suite"};
    fs::path workdir = fs::temp_directory_path() / "relight_acceptance";
    std::vector<int> only;
    app.add_option("--workdir", workdir, "Scratch directory for generated files");
    app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    std::error_code ec;
    fs::remove_all(workdir, ec);
    fs::create_directories(workdir);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"composition fidelity", composition_fidelity},
        {"cone vs point sampling", cone_vs_point},
        {"rotation consistency", [&] { return rotation_consistency(workdir); }},
        {"bridge exactness", bridge_exactness},
        {"loss identities", loss_identities},
        {"codec and quadrature", codec_and_quadrature},
        {"metric oracles", metric_oracles},
        {"blend algebra", [&] { return blend_algebra(workdir); }},
        {"reproducibility statement", reproducibility_statement},
        {"composite throughput (soft)", composite_throughput},
    };

    int hard_failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass && !o.soft) ++hard_failures;
        std::cout << fmt::format("{} {}: {}: {}", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail)
                  << std::endl;
    }
    return hard_failures == 0 ? 0 : 1;
}
