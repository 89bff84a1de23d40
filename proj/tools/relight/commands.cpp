// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "cli.hpp"
#include "relight/bridge.hpp"
#include "relight/error.hpp"
#include "relight/manifest.hpp"
#include "relight/metrics.hpp"
#include "relight/png_io.hpp"
#include "relight/rgbe.hpp"
#include "relight/rig_io.hpp"
#include "relight/stack_io.hpp"
#include "relight/weights_io.hpp"

namespace relight::cli {

namespace {

Json rgb_json(const Rgb& c) { return Json::array({c.r, c.g, c.b}); }

Json optional_path(const std::optional<fs::path>& p) { return p ? Json(p->generic_string()) : Json(nullptr); }

std::string lower_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return ext;
}

bool is_hdr_path(const fs::path& p) { return lower_extension(p) == ".hdr"; }

void require_image_path(const fs::path& p) {
    const std::string ext = lower_extension(p);
    if (ext != ".png" && ext != ".hdr") {
        throw ValidationError(fmt::format("output {} must end in .png or .hdr", p.string()));
    }
}

LightRig load_rig(const std::optional<fs::path>& path, int count) {
    if (path) return read_rig(*path);
    return build_fibonacci_rig(count);
}

RadianceMap load_env(const std::optional<fs::path>& path, int height) {
    if (path) return read_radiance_hdr(*path);
    return default_environment(height);
}

// Linear outputs go to .hdr untouched; .png receives the tone-mapped image.
void write_output(const fs::path& out, const LinearImage& img, const ToneMapParams& tone) {
    require_image_path(out);
    ensure_parent_directory(out);
    if (is_hdr_path(out)) {
        write_hdr_image(out, img);
    } else {
        write_png16(out, tone_map(img, tone));
    }
}

OlatStack load_stack(const fs::path& dir, const LightRig& rig) {
    OlatStack stack = read_olat_stack(dir, rig);
    return stack.is_unit_energy() ? stack : calibrate_stack(stack);
}

Rgb image_energy(const LinearImage& img) {
    Rgb sum;
    const auto s = img.samples();
    for (std::size_t k = 0; k < s.size(); k += 3) sum += Rgb(s[k], s[k + 1], s[k + 2]);
    return sum;
}

Json metric_value(double v) {
    if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
    return v;
}

}  // namespace

RadianceMap default_environment(int height) {
    const Direction sun = Direction::from_components(0.5, 0.6, 0.6);
    return RadianceMap::generate(height, [&](const Direction& d) {
        const Rgb sky = Rgb(0.6, 0.7, 0.9) * (0.4 + 0.3 * d.y());
        const double lobe = std::pow(std::max(0.0, d.dot(sun)), 4.0);
        return sky + Rgb(1.0, 0.8, 0.6) * (2.0 * lobe);
    });
}

// ---- option echoes (hashed into the run report) ----

Json to_json(const GenRigOptions& o) {
    return {{"count", o.count}, {"cone_half_angle_deg", o.cone_half_angle_deg}, {"out", o.out.generic_string()}};
}

Json to_json(const ProjectOptions& o) {
    return {{"rig", optional_path(o.rig)},
            {"count", o.count},
            {"env", o.env.generic_string()},
            {"mode", to_string(o.mode)},
            {"yaw_deg", o.yaw_deg},
            {"normalize", o.normalize},
            {"out", o.out.generic_string()}};
}

Json to_json(const RelightOptions& o) {
    return {{"rig", optional_path(o.rig)},
            {"count", o.count},
            {"stack", o.stack.generic_string()},
            {"weights", optional_path(o.weights)},
            {"env", optional_path(o.env)},
            {"mode", to_string(o.mode)},
            {"yaw_deg", o.yaw_deg},
            {"alpha_blend", o.alpha_blend},
            {"exposure", o.exposure},
            {"tonemap", to_string(o.tonemap)},
            {"background", optional_path(o.background)},
            {"out", o.out.generic_string()}};
}

Json to_json(const RenderBgOptions& o) {
    return {{"env", o.env.generic_string()}, {"yaw_deg", o.yaw_deg},       {"pitch_deg", o.pitch_deg},
            {"width", o.width},              {"height", o.height},         {"focal_mm", o.focal_mm},
            {"sensor_mm", o.sensor_mm},      {"exposure", o.exposure},     {"tonemap", to_string(o.tonemap)},
            {"out", o.out.generic_string()}};
}

Json to_json(const OracleOptions& o) {
    return {{"rig", optional_path(o.rig)},
            {"count", o.count},
            {"env", optional_path(o.env)},
            {"env_height", o.env_height},
            {"resolution", o.resolution},
            {"radius", o.radius},
            {"model", to_string(o.model)},
            {"albedo", o.albedo},
            {"specular", o.specular},
            {"shininess", o.shininess},
            {"out", o.out.generic_string()}};
}

Json to_json(const EvalOptions& o) {
    return {{"pred", o.pred.generic_string()},
            {"gt", o.gt.generic_string()},
            {"metrics", o.metrics},
            {"masked", o.masked},
            {"mask", optional_path(o.mask)},
            {"exposure", o.exposure},
            {"tonemap", to_string(o.tonemap)}};
}

Json to_json(const BridgeDemoOptions& o) {
    return {{"dim", o.dim}, {"pairs", o.pairs}, {"conditions", o.conditions}, {"times", o.times}, {"sigma", o.sigma}};
}

Json to_json(const RotateSweepOptions& o) {
    return {{"rig", optional_path(o.rig)},
            {"count", o.count},
            {"stack", optional_path(o.stack)},
            {"env", optional_path(o.env)},
            {"env_height", o.env_height},
            {"resolution", o.resolution},
            {"steps", o.steps},
            {"mode", to_string(o.mode)},
            {"alpha_blend", o.alpha_blend},
            {"exposure", o.exposure},
            {"tonemap", to_string(o.tonemap)},
            {"out", o.out.generic_string()}};
}

// ---- commands ----

CommandResult cmd_gen_rig(const GenRigOptions& o) {
    const LightRig rig = build_fibonacci_rig(o.count, deg_to_rad(o.cone_half_angle_deg));
    ensure_parent_directory(o.out);
    write_rig(o.out, rig);
    CommandResult r;
    r.results = {{"lights", rig.size()}, {"cone_solid_angle_sr", cone_solid_angle(rig[0].cone_half_angle)}};
    r.outputs.push_back(o.out.generic_string());
    return r;
}

CommandResult cmd_project(const ProjectOptions& o) {
    const LightRig rig = load_rig(o.rig, o.count);
    RadianceMap env = read_radiance_hdr(o.env);
    if (o.yaw_deg != 0.0) env = rotate_env(env, deg_to_rad(o.yaw_deg));

    const WeightSet ws = o.normalize ? relighting_weights(env, rig, o.mode)
                                     : split_diffuse_specular(project_weights(env, rig, o.mode));
    ensure_parent_directory(o.out);
    write_weights(o.out, ws);

    CommandResult r;
    r.results = {{"lights", ws.entries.size()},
                 {"specular_sum", rgb_json(ws.specular_sum())},
                 {"total_energy", rgb_json(total_energy(env))},
                 {"empty_cones", ws.empty_cones}};
    r.outputs.push_back(o.out.generic_string());
    return r;
}

CommandResult cmd_relight(const RelightOptions& o) {
    if (o.weights.has_value() == o.env.has_value()) {
        throw ValidationError("relight needs exactly one of --weights or --env");
    }
    const LightRig rig = load_rig(o.rig, o.count);
    const OlatStack stack = load_stack(o.stack, rig);

    WeightSet ws;
    if (o.weights) {
        ws = read_weights(*o.weights);
        if (!ws.diffuse_ready) ws = split_diffuse_specular(ws);
    } else {
        RadianceMap env = read_radiance_hdr(*o.env);
        if (o.yaw_deg != 0.0) env = rotate_env(env, deg_to_rad(o.yaw_deg));
        ws = relighting_weights(env, rig, o.mode);
    }

    const LinearImage relit = composite_relit(stack, ws, o.alpha_blend);
    const ToneMapParams tone{o.exposure, o.tonemap};

    if (o.background) {
        if (!stack.alpha()) throw ValidationError("--background needs alpha.png in the stack directory");
        if (is_hdr_path(o.out)) throw ValidationError("--background produces a display image; use a .png output");
        CameraModel cam;
        cam.width = stack.width();
        cam.height = stack.height();
        // The lighting environment was turned by +yaw; a fixed camera sees that
        // turned map exactly as a camera turned by -yaw sees the original.
        cam.yaw = -deg_to_rad(o.yaw_deg);
        const LinearImage bg = render_background(read_radiance_hdr(*o.background), cam);
        require_image_path(o.out);
        ensure_parent_directory(o.out);
        write_png16(o.out, alpha_composite(tone_map(relit, tone), *stack.alpha(), tone_map(bg, tone)));
    } else {
        write_output(o.out, relit, tone);
    }

    CommandResult r;
    r.results = {{"width", relit.width()},
                 {"height", relit.height()},
                 {"lights", stack.size()},
                 {"image_energy", rgb_json(image_energy(relit))}};
    r.outputs.push_back(o.out.generic_string());
    return r;
}

CommandResult cmd_render_bg(const RenderBgOptions& o) {
    CameraModel cam;
    cam.width = o.width;
    cam.height = o.height;
    cam.focal_length_mm = o.focal_mm;
    cam.sensor_width_mm = o.sensor_mm;
    cam.yaw = deg_to_rad(o.yaw_deg);
    cam.pitch = deg_to_rad(o.pitch_deg);
    validate(cam);
    const LinearImage bg = render_background(read_radiance_hdr(o.env), cam);
    write_output(o.out, bg, {o.exposure, o.tonemap});

    CommandResult r;
    r.results = {{"width", bg.width()}, {"height", bg.height()}, {"horizontal_fov_deg", rad_to_deg(horizontal_fov(cam))}};
    r.outputs.push_back(o.out.generic_string());
    return r;
}

CommandResult cmd_oracle(const OracleOptions& o) {
    if (o.albedo.size() != 3) throw ValidationError("--albedo expects three values");
    const LightRig rig = load_rig(o.rig, o.count);
    const RadianceMap env = load_env(o.env, o.env_height);

    SphereScene scene;
    scene.radius = o.radius;
    scene.resolution = o.resolution;
    Material mat;
    mat.albedo = Rgb(o.albedo[0], o.albedo[1], o.albedo[2]);
    mat.specular_strength = o.specular;
    mat.shininess = o.shininess;
    mat.model = o.model;

    const OlatStack raw = render_sphere_olat(scene, rig, mat);
    const OlatStack stack(raw.rig(), std::vector<LinearImage>(raw.images().begin(), raw.images().end()), raw.alpha(),
                          synthesize_uniform(calibrate_stack(raw)),
                          std::vector<double>(raw.light_energy().begin(), raw.light_energy().end()));
    const LinearImage truth = render_sphere_env(scene, env, mat);

    const fs::path stack_dir = o.out / "stack";
    write_olat_stack(stack_dir, stack);
    write_rig(o.out / "rig.json", rig);
    write_hdr_image(o.out / "ground_truth.hdr", truth);
    if (!o.env) write_hdr_image(o.out / "env.hdr", env.to_image());

    Manifest m;
    for (const Light& l : rig.lights()) {
        const SphericalCoords s = spherical_from_dir(l.dir);
        OlatEntry e;
        e.subject = "sphere";
        e.light_index = l.index;
        e.theta_deg = rad_to_deg(s.theta());
        e.phi_deg = rad_to_deg(s.phi());
        e.path = "stack/" + olat_filename(l.index);
        m.entries.push_back(std::move(e));
    }
    OlatEntry uniform;
    uniform.subject = "sphere";
    uniform.path = "stack/uniform.png";
    m.entries.push_back(std::move(uniform));
    RelitEntry gt;
    gt.env = o.env ? o.env->generic_string() : "env.hdr";
    gt.path = "ground_truth.hdr";
    m.relit.push_back(std::move(gt));
    validate_manifest(m, rig);
    write_manifest(o.out / "manifest.json", m);

    CommandResult r;
    r.results = {{"lights", rig.size()},
                 {"resolution", o.resolution},
                 {"ground_truth_energy", rgb_json(image_energy(truth))},
                 {"env_total_energy", rgb_json(total_energy(env))}};
    r.outputs = {stack_dir.generic_string(), (o.out / "rig.json").generic_string(),
                 (o.out / "ground_truth.hdr").generic_string()};
    if (!o.env) r.outputs.push_back((o.out / "env.hdr").generic_string());
    r.outputs.push_back((o.out / "manifest.json").generic_string());
    return r;
}

CommandResult cmd_eval(const EvalOptions& o) {
    const ToneMapParams tone{o.exposure, o.tonemap};
    auto load = [&](const fs::path& p, LinearImage& lin, DisplayImage& disp) {
        if (is_hdr_path(p)) {
            lin = read_hdr_image(p);
            disp = tone_map(lin, tone);
        } else {
            disp = read_display_png(p);
            lin = as_linear(disp);
        }
    };
    LinearImage pred_lin, gt_lin;
    DisplayImage pred_disp, gt_disp;
    load(o.pred, pred_lin, pred_disp);
    load(o.gt, gt_lin, gt_disp);
    if (!pred_lin.same_size(gt_lin)) {
        throw ValidationError(fmt::format("pred is {}x{} but gt is {}x{}", pred_lin.width(), pred_lin.height(),
                                          gt_lin.width(), gt_lin.height()));
    }
    std::optional<AlphaMatte> matte;
    if (o.mask) {
        matte = read_matte_png(*o.mask);
    } else if (o.masked) {
        const fs::path beside = o.gt.parent_path() / "alpha.png";
        if (!fs::exists(beside)) throw ValidationError("--masked needs --mask or an alpha.png beside --gt");
        matte = read_matte_png(beside);
    }
    if (matte && !matte->values().empty() && (matte->width() != gt_lin.width() || matte->height() != gt_lin.height())) {
        throw ValidationError("mask size does not match the images");
    }
    const std::span<const float> mask = matte ? matte->values() : std::span<const float>{};

    CommandResult r;
    for (const std::string& name : o.metrics) {
        if (name == "psnr") {
            r.results["psnr_db"] = metric_value(psnr(pred_disp, gt_disp, mask));
        } else if (name == "ssim") {
            r.results["ssim"] = ssim(pred_disp, gt_disp, mask);
        } else if (name == "energy") {
            r.results["energy_ratio_err"] = energy_ratio_error(pred_lin, gt_lin, mask);
        } else if (name == "relrmse") {
            r.results["rel_rmse"] = relative_rmse(pred_lin, gt_lin, mask);
        } else {
            throw ValidationError(fmt::format("unknown metric '{}'", name));
        }
    }
    r.results["masked"] = matte.has_value();
    return r;
}

CommandResult cmd_bridge_demo(const BridgeDemoOptions& o, std::uint64_t seed) {
    if (o.dim < 1 || o.pairs < 1 || o.conditions < 1 || o.times < 1) {
        throw ValidationError("--dim, --pairs, --conditions and --times must be positive");
    }
    if (!(o.sigma >= 0.0)) throw ValidationError("--sigma must be non-negative");

    // Ground truth: each light condition translates the latent, z_l = z_u + B c + d,
    // which the affine drift family represents exactly.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXd b(o.dim, 4);
    Eigen::VectorXd d(o.dim);
    for (int i = 0; i < o.dim; ++i) {
        for (int j = 0; j < 4; ++j) b(i, j) = normal(rng);
        d(i) = normal(rng);
    }
    std::vector<LightCondition> conds;
    for (int k = 0; k < o.conditions; ++k) {
        conds.push_back(LightCondition::from_angles(kPi * unit(rng), kPi - kTwoPi * unit(rng)));
    }
    std::vector<BridgePair> pairs;
    pairs.reserve(o.pairs);
    for (int i = 0; i < o.pairs; ++i) {
        LatentVec z_u(o.dim);
        for (int j = 0; j < o.dim; ++j) z_u(j) = normal(rng);
        const LightCondition& c = conds[static_cast<std::size_t>(i % o.conditions)];
        LatentVec z_l = z_u + b * c.vector() + d;
        pairs.push_back({std::move(z_u), std::move(z_l), c});
    }

    const std::vector<BridgeSample> batch =
        make_bridge_batch(pairs, o.sigma, TimeSchedule::grid(o.times), seed ^ 0x9e3779b97f4a7c15ULL);
    const VelocityFit fit = fit_linear_velocity(batch);
    const double floor = sigma_floor(batch);

    double mse = 0.0;
    for (const BridgePair& p : pairs) mse += (one_step_transport(fit.field, p.z_u, p.c) - p.z_l).squaredNorm();
    mse /= static_cast<double>(pairs.size()) * o.dim;

    CommandResult r;
    r.results = {{"fitted_loss", fit.loss},
                 {"transport_mse", mse},
                 {"sigma_floor_estimate", floor},
                 {"rank", fit.rank},
                 {"parameters", fit.parameters},
                 {"condition_number", fit.condition_number},
                 {"samples", batch.size()}};
    return r;
}

CommandResult cmd_rotate_sweep(const RotateSweepOptions& o) {
    if (o.steps < 1) throw ValidationError("--steps must be positive");
    const LightRig rig = load_rig(o.rig, o.count);
    const RadianceMap env = load_env(o.env, o.env_height);

    std::optional<OlatStack> loaded;
    if (o.stack) {
        loaded = load_stack(*o.stack, rig);
    } else {
        SphereScene scene;
        scene.resolution = o.resolution;
        loaded = calibrate_stack(render_sphere_olat(scene, rig, Material{}));
    }
    const OlatStack& stack = *loaded;
    const std::span<const float> mask = stack.alpha() ? stack.alpha()->values() : std::span<const float>{};
    const ToneMapParams tone{o.exposure, o.tonemap};

    // rotate_env(E, yaw) looks up E at rotate_about_up(d, -yaw), so the
    // equivalent rig turns the other way.
    CommandResult r;
    Json steps = Json::array();
    double worst = 0.0;
    for (int k = 0; k < o.steps; ++k) {
        const double yaw = kTwoPi * k / o.steps;
        const LinearImage by_env =
            composite_relit(stack, relighting_weights(rotate_env(env, yaw), rig, o.mode), o.alpha_blend);
        const LinearImage by_rig =
            composite_relit(stack, relighting_weights(env, rotate_rig(rig, -yaw), o.mode), o.alpha_blend);
        const double err = relative_rmse(by_env, by_rig, mask);
        worst = std::max(worst, err);

        const fs::path env_path = o.out / fmt::format("step_{:02d}.png", k);
        const fs::path rig_path = o.out / fmt::format("step_{:02d}_rig.png", k);
        write_output(env_path, by_env, tone);
        write_output(rig_path, by_rig, tone);
        r.outputs.push_back(env_path.generic_string());
        r.outputs.push_back(rig_path.generic_string());
        steps.push_back({{"step", k}, {"yaw_deg", rad_to_deg(yaw)}, {"rel_rmse", err}});
    }
    const Json consistency = {{"steps", steps}, {"max_rel_rmse", worst}};
    write_text_file(o.out / "consistency.json", canonical_dump(consistency));
    r.outputs.push_back((o.out / "consistency.json").generic_string());
    r.results = consistency;
    return r;
}

}  // namespace relight::cli
