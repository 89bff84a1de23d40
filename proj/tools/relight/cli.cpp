// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <functional>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "relight/error.hpp"
#include "relight/parallel.hpp"

namespace relight::cli {

namespace {

constexpr const char* kToolVersion = "0.1.0";

// Reads --config files. Top-level keys are global options; an object keyed
// by a subcommand name holds that subcommand's options, e.g.
//   {"seed": 7, "relight": {"alpha-blend": 0.5, "tonemap": "clamp"}}
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        throw CLI::ConversionError("writing JSON configuration is not supported");
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        Json doc;
        try {
            doc = Json::parse(input);
        } catch (const Json::parse_error& e) {
            throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) throw CLI::ConversionError("config must be a JSON object");
        std::vector<CLI::ConfigItem> items;
        flatten(doc, {}, items);
        return items;
    }

private:
    static std::string scalar(const Json& v, const std::string& name) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number()) return v.dump();
        throw CLI::ConversionError("config value for '" + name + "' must be a scalar or an array of scalars");
    }

    static void flatten(const Json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
        for (const auto& [key, value] : obj.items()) {
            if (value.is_object()) {
                std::vector<std::string> nested = parents;
                nested.push_back(key);
                flatten(value, nested, out);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const Json& v : value) item.inputs.push_back(scalar(v, key));
            } else {
                item.inputs.push_back(scalar(value, key));
            }
            out.push_back(std::move(item));
        }
    }
};

// Enumerations are bound as checked strings and converted after parsing.
CLI::Option* add_choice(CLI::App* app, const std::string& name, std::string& value,
                        const std::vector<std::string>& choices, const std::string& help) {
    return app->add_option(name, value, help)->check(CLI::IsMember(choices));
}

// CLI11 binds optionals through a plain string plus a presence check.
struct OptionalPath {
    std::string value;
    CLI::Option* opt = nullptr;
    std::optional<fs::path> get() const {
        if (opt == nullptr || opt->count() == 0) return std::nullopt;
        return fs::path(value);
    }
};

OptionalPath* add_optional_path(CLI::App* app, std::vector<std::unique_ptr<OptionalPath>>& store,
                                const std::string& name, const std::string& help) {
    store.push_back(std::make_unique<OptionalPath>());
    OptionalPath* p = store.back().get();
    p->opt = app->add_option(name, p->value, help);
    return p;
}

std::string_view kind_name(ErrorKind kind) { return to_string(kind); }

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse:
        case ErrorKind::Io:
            return kExitInput;
        case ErrorKind::Domain:
        case ErrorKind::Validation:
        case ErrorKind::Numeric:
            return kExitInvalid;
    }
    return kExitInvalid;
}

void emit_error(std::ostream& err, const std::string& command, int code, std::string_view kind,
                const std::string& detail_code, const std::string& message) {
    Json line = {{"command", command}, {"exit_code", code}, {"kind", kind}, {"message", message}};
    if (!detail_code.empty()) line["code"] = detail_code;
    err << Json{{"error", line}}.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Light-stage relighting toolkit", "relight"};
    app.set_version_flag("--version", kToolVersion);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON configuration file");
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::uint64_t seed = 0;
    unsigned threads = 0;
    bool quiet = false;
    std::string report_path;
    app.add_option("--seed", seed, "Random seed");
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");
    app.add_flag("--quiet", quiet, "Do not print the run report");
    app.add_option("--report", report_path, "Also write the run report to this file");

    std::vector<std::unique_ptr<OptionalPath>> optionals;
    std::string command;
    std::function<CommandResult()> action;
    std::function<Json()> echo;

    // gen-rig
    GenRigOptions gen;
    auto* gen_cmd = app.add_subcommand("gen-rig", "Write a Fibonacci light rig");
    gen_cmd->add_option("--count", gen.count, "Number of lights");
    gen_cmd->add_option("--cone-half-angle-deg", gen.cone_half_angle_deg, "Cone half-angle in degrees");
    gen_cmd->add_option("--out", gen.out, "Rig JSON path");
    gen_cmd->callback([&] {
        action = [&] { return cmd_gen_rig(gen); };
        echo = [&] { return to_json(gen); };
    });

    // project
    ProjectOptions proj;
    auto* proj_cmd = app.add_subcommand("project", "Project an environment map onto rig weights");
    auto* proj_rig = add_optional_path(proj_cmd, optionals, "--rig", "Rig JSON (default: Fibonacci rig)");
    proj_cmd->add_option("--count", proj.count, "Fibonacci rig size when --rig is absent");
    proj_cmd->add_option("--env", proj.env, "Equirectangular .hdr")->required();
    std::string proj_mode = "cone";
    add_choice(proj_cmd, "--mode", proj_mode, {"cone", "point"}, "Weight projection mode");
    proj_cmd->add_option("--yaw-deg", proj.yaw_deg, "Rotate the environment about +Y first");
    proj_cmd->add_flag("!--no-normalize", proj.normalize, "Keep raw projected weights");
    proj_cmd->add_option("--out", proj.out, "Weight JSON path");
    proj_cmd->callback([&] {
        proj.rig = proj_rig->get();
        proj.mode = weight_mode_from_string(proj_mode);
        action = [&] { return cmd_project(proj); };
        echo = [&] { return to_json(proj); };
    });

    // relight
    RelightOptions rel;
    auto* rel_cmd = app.add_subcommand("relight", "Composite an OLAT stack under new lighting");
    auto* rel_rig = add_optional_path(rel_cmd, optionals, "--rig", "Rig JSON (default: Fibonacci rig)");
    rel_cmd->add_option("--count", rel.count, "Fibonacci rig size when --rig is absent");
    rel_cmd->add_option("--stack", rel.stack, "OLAT stack directory")->required();
    auto* rel_weights = add_optional_path(rel_cmd, optionals, "--weights", "Weight JSON");
    auto* rel_env = add_optional_path(rel_cmd, optionals, "--env", "Environment .hdr to project");
    std::string rel_mode = "cone";
    add_choice(rel_cmd, "--mode", rel_mode, {"cone", "point"}, "Weight projection mode");
    rel_cmd->add_option("--yaw-deg", rel.yaw_deg, "Environment yaw in degrees");
    rel_cmd->add_option("--alpha-blend", rel.alpha_blend, "Diffuse/specular blend")->check(CLI::Range(0.0, 1.0));
    rel_cmd->add_option("--exposure", rel.exposure, "Exposure multiplier");
    std::string rel_tone = "reinhard";
    add_choice(rel_cmd, "--tonemap", rel_tone, {"reinhard", "clamp"}, "Tone operator for .png output");
    auto* rel_bg = add_optional_path(rel_cmd, optionals, "--background", "Environment .hdr behind the matte");
    rel_cmd->add_option("--out", rel.out, "Output image (.png or .hdr)");
    rel_cmd->callback([&] {
        rel.rig = rel_rig->get();
        rel.weights = rel_weights->get();
        rel.env = rel_env->get();
        rel.background = rel_bg->get();
        rel.mode = weight_mode_from_string(rel_mode);
        rel.tonemap = tone_operator_from_string(rel_tone);
        action = [&] { return cmd_relight(rel); };
        echo = [&] { return to_json(rel); };
    });

    // render-bg
    RenderBgOptions bg;
    auto* bg_cmd = app.add_subcommand("render-bg", "Render an environment through a pinhole camera");
    bg_cmd->add_option("--env", bg.env, "Environment .hdr")->required();
    bg_cmd->add_option("--yaw-deg", bg.yaw_deg, "Camera yaw in degrees");
    bg_cmd->add_option("--pitch-deg", bg.pitch_deg, "Camera pitch in degrees");
    bg_cmd->add_option("--width", bg.width, "Image width");
    bg_cmd->add_option("--height", bg.height, "Image height");
    bg_cmd->add_option("--focal-mm", bg.focal_mm, "Focal length in mm");
    bg_cmd->add_option("--sensor-mm", bg.sensor_mm, "Sensor width in mm");
    bg_cmd->add_option("--exposure", bg.exposure, "Exposure multiplier");
    std::string bg_tone = "reinhard";
    add_choice(bg_cmd, "--tonemap", bg_tone, {"reinhard", "clamp"}, "Tone operator for .png output");
    bg_cmd->add_option("--out", bg.out, "Output image (.png or .hdr)");
    bg_cmd->callback([&] {
        bg.tonemap = tone_operator_from_string(bg_tone);
        action = [&] { return cmd_render_bg(bg); };
        echo = [&] { return to_json(bg); };
    });

    // oracle
    OracleOptions orc;
    auto* orc_cmd = app.add_subcommand("oracle", "Render a synthetic sphere stack and its ground truth");
    auto* orc_rig = add_optional_path(orc_cmd, optionals, "--rig", "Rig JSON (default: Fibonacci rig)");
    orc_cmd->add_option("--count", orc.count, "Fibonacci rig size when --rig is absent");
    auto* orc_env = add_optional_path(orc_cmd, optionals, "--env", "Environment .hdr (default: built-in sky)");
    orc_cmd->add_option("--env-height", orc.env_height, "Built-in sky height in texels");
    orc_cmd->add_option("--resolution", orc.resolution, "Image side in pixels");
    orc_cmd->add_option("--radius", orc.radius, "Sphere radius in image half-widths");
    std::string orc_model = "lambert";
    add_choice(orc_cmd, "--model", orc_model, {"lambert", "blinn_phong"}, "Shading model");
    orc_cmd->add_option("--albedo", orc.albedo, "Albedo r g b")->expected(3);
    orc_cmd->add_option("--specular", orc.specular, "Specular strength");
    orc_cmd->add_option("--shininess", orc.shininess, "Blinn-Phong exponent");
    orc_cmd->add_option("--out", orc.out, "Output directory");
    orc_cmd->callback([&] {
        orc.rig = orc_rig->get();
        orc.env = orc_env->get();
        orc.model = shading_model_from_string(orc_model);
        action = [&] { return cmd_oracle(orc); };
        echo = [&] { return to_json(orc); };
    });

    // eval
    EvalOptions ev;
    auto* ev_cmd = app.add_subcommand("eval", "Compare a prediction against ground truth");
    ev_cmd->add_option("--pred", ev.pred, "Predicted image (.png or .hdr)")->required();
    ev_cmd->add_option("--gt", ev.gt, "Reference image (.png or .hdr)")->required();
    ev_cmd->add_option("--metrics", ev.metrics, "Comma-separated subset of psnr,ssim,energy,relrmse")
        ->delimiter(',')
        ->check(CLI::IsMember({"psnr", "ssim", "energy", "relrmse"}));
    ev_cmd->add_flag("--masked", ev.masked, "Score only the matted foreground");
    auto* ev_mask = add_optional_path(ev_cmd, optionals, "--mask", "Alpha matte; pixels above 0.5 are scored");
    ev_cmd->add_option("--exposure", ev.exposure, "Exposure for .hdr inputs");
    std::string ev_tone = "clamp";
    add_choice(ev_cmd, "--tonemap", ev_tone, {"reinhard", "clamp"}, "Display conversion for .hdr inputs");
    ev_cmd->callback([&] {
        ev.mask = ev_mask->get();
        ev.tonemap = tone_operator_from_string(ev_tone);
        action = [&] { return cmd_eval(ev); };
        echo = [&] { return to_json(ev); };
    });

    // bridge-demo
    BridgeDemoOptions br;
    auto* br_cmd = app.add_subcommand("bridge-demo", "Fit the linear bridge drift on synthetic latents");
    br_cmd->add_option("--dim", br.dim, "Latent dimension");
    br_cmd->add_option("--pairs", br.pairs, "Training pairs");
    br_cmd->add_option("--conditions", br.conditions, "Distinct light conditions");
    br_cmd->add_option("--times", br.times, "Time samples per pair");
    br_cmd->add_option("--sigma", br.sigma, "Bridge noise scale");
    br_cmd->callback([&] {
        action = [&] { return cmd_bridge_demo(br, seed); };
        echo = [&] { return to_json(br); };
    });

    // rotate-sweep
    RotateSweepOptions sw;
    auto* sw_cmd = app.add_subcommand("rotate-sweep", "Relight under a yaw sweep, env rotation vs rig rotation");
    auto* sw_rig = add_optional_path(sw_cmd, optionals, "--rig", "Rig JSON (default: Fibonacci rig)");
    sw_cmd->add_option("--count", sw.count, "Fibonacci rig size when --rig is absent");
    auto* sw_stack = add_optional_path(sw_cmd, optionals, "--stack", "OLAT stack (default: synthetic sphere)");
    auto* sw_env = add_optional_path(sw_cmd, optionals, "--env", "Environment .hdr (default: built-in sky)");
    sw_cmd->add_option("--env-height", sw.env_height, "Built-in sky height in texels");
    sw_cmd->add_option("--resolution", sw.resolution, "Synthetic sphere side in pixels");
    sw_cmd->add_option("--steps", sw.steps, "Number of yaw steps over 360 degrees");
    std::string sw_mode = "cone";
    add_choice(sw_cmd, "--mode", sw_mode, {"cone", "point"}, "Weight projection mode");
    sw_cmd->add_option("--alpha-blend", sw.alpha_blend, "Diffuse/specular blend")->check(CLI::Range(0.0, 1.0));
    sw_cmd->add_option("--exposure", sw.exposure, "Exposure multiplier");
    std::string sw_tone = "reinhard";
    add_choice(sw_cmd, "--tonemap", sw_tone, {"reinhard", "clamp"}, "Tone operator for .png output");
    sw_cmd->add_option("--out", sw.out, "Output directory");
    sw_cmd->callback([&] {
        sw.rig = sw_rig->get();
        sw.stack = sw_stack->get();
        sw.env = sw_env->get();
        sw.mode = weight_mode_from_string(sw_mode);
        sw.tonemap = tone_operator_from_string(sw_tone);
        action = [&] { return cmd_rotate_sweep(sw); };
        echo = [&] { return to_json(sw); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        for (const CLI::App* sub : app.get_subcommands()) command = sub->get_name();
        emit_error(err, command, kExitUsage, "usage", "", e.what());
        return kExitUsage;
    }
    for (const CLI::App* sub : app.get_subcommands()) command = sub->get_name();

    try {
        set_thread_count(threads);
        Json config = echo();
        config["seed"] = seed;
        CommandResult result = action();
        Json report = {{"command", command},
                       {"config", config},
                       {"config_hash", config_hash_hex(config)},
                       {"outputs", result.outputs},
                       {"results", result.results},
                       {"status", "ok"},
                       {"version", kToolVersion}};
        const std::string text = canonical_dump(report);
        if (!report_path.empty()) write_text_file(report_path, text);
        if (!quiet) out << text;
        return kExitOk;
    } catch (const ParseError& e) {
        emit_error(err, command, kExitInput, kind_name(e.kind()), std::string(to_string(e.code())), e.what());
        return kExitInput;
    } catch (const Error& e) {
        const int code = exit_code_for(e.kind());
        emit_error(err, command, code, kind_name(e.kind()), "", e.what());
        return code;
    } catch (const fs::filesystem_error& e) {
        emit_error(err, command, kExitInput, "io", "", e.what());
        return kExitInput;
    }
}

}  // namespace relight::cli
