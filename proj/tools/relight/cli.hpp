// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

// Command layer of the `relight` tool. Every subcommand is a plain function
// over an options struct so that tests can drive the same code path as the
// executable without spawning processes.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relight/compositor.hpp"
#include "relight/envmap.hpp"
#include "relight/json_util.hpp"
#include "relight/oracle.hpp"
#include "relight/projection.hpp"

namespace relight::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitInput = 3,
    kExitInvalid = 4,
};

// What a command hands back to the driver: the results block of the run
// report and the artifacts it wrote, in write order.
struct CommandResult {
    Json results = Json::object();
    std::vector<std::string> outputs;
};

struct GenRigOptions {
    int count = 156;
    double cone_half_angle_deg = 15.0;
    fs::path out = "rig.json";
};

struct ProjectOptions {
    std::optional<fs::path> rig;  // Fibonacci rig of `count` lights when unset
    int count = 156;
    fs::path env;
    WeightMode mode = WeightMode::Cone;
    double yaw_deg = 0.0;
    bool normalize = true;
    fs::path out = "weights.json";
};

struct RelightOptions {
    std::optional<fs::path> rig;
    int count = 156;
    fs::path stack;
    std::optional<fs::path> weights;  // exactly one of weights / env
    std::optional<fs::path> env;
    WeightMode mode = WeightMode::Cone;
    double yaw_deg = 0.0;
    double alpha_blend = kDefaultAlphaBlend;
    double exposure = 1.0;
    ToneOperator tonemap = ToneOperator::Reinhard;
    std::optional<fs::path> background;  // env rendered behind the alpha matte
    fs::path out = "relit.png";           // .png: tone-mapped 16-bit, .hdr: linear
};

struct RenderBgOptions {
    fs::path env;
    double yaw_deg = 0.0;
    double pitch_deg = 0.0;
    int width = 512;
    int height = 512;
    double focal_mm = 35.0;
    double sensor_mm = 36.0;
    double exposure = 1.0;
    ToneOperator tonemap = ToneOperator::Reinhard;
    fs::path out = "background.png";
};

struct OracleOptions {
    std::optional<fs::path> rig;
    int count = 156;
    std::optional<fs::path> env;  // built-in sky when unset
    int env_height = 256;
    int resolution = 128;
    double radius = 0.9;
    ShadingModel model = ShadingModel::Lambert;
    std::vector<double> albedo = {0.8, 0.8, 0.8};
    double specular = 0.0;
    double shininess = 32.0;
    fs::path out = "oracle";
};

struct EvalOptions {
    fs::path pred;
    fs::path gt;
    std::vector<std::string> metrics = {"psnr", "ssim", "energy", "relrmse"};
    bool masked = false;              // score only the matted foreground
    std::optional<fs::path> mask;     // defaults to alpha.png beside --gt when masked
    double exposure = 1.0;
    ToneOperator tonemap = ToneOperator::Clamp;  // display conversion for .hdr inputs
};

struct BridgeDemoOptions {
    int dim = 8;
    int pairs = 1000;
    int conditions = 20;
    int times = 10;
    double sigma = 0.0;
};

struct RotateSweepOptions {
    std::optional<fs::path> rig;
    int count = 156;
    std::optional<fs::path> stack;  // synthetic sphere when unset
    std::optional<fs::path> env;    // built-in sky when unset
    int env_height = 256;
    int resolution = 128;
    int steps = 8;
    WeightMode mode = WeightMode::Cone;
    double alpha_blend = kDefaultAlphaBlend;
    double exposure = 1.0;
    ToneOperator tonemap = ToneOperator::Reinhard;
    fs::path out = "sweep";
};

Json to_json(const GenRigOptions& o);
Json to_json(const ProjectOptions& o);
Json to_json(const RelightOptions& o);
Json to_json(const RenderBgOptions& o);
Json to_json(const OracleOptions& o);
Json to_json(const EvalOptions& o);
Json to_json(const BridgeDemoOptions& o);
Json to_json(const RotateSweepOptions& o);

CommandResult cmd_gen_rig(const GenRigOptions& o);
CommandResult cmd_project(const ProjectOptions& o);
CommandResult cmd_relight(const RelightOptions& o);
CommandResult cmd_render_bg(const RenderBgOptions& o);
CommandResult cmd_oracle(const OracleOptions& o);
CommandResult cmd_eval(const EvalOptions& o);
CommandResult cmd_bridge_demo(const BridgeDemoOptions& o, std::uint64_t seed);
CommandResult cmd_rotate_sweep(const RotateSweepOptions& o);

// Smooth sky used when no environment is supplied: a vertical gradient plus
// a broad warm lobe, free of features smaller than a light cone.
RadianceMap default_environment(int height);

// Parses argv, runs one subcommand and returns the process exit status.
// Reports go to `out` (unless --quiet), failures to `err` as one JSON line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relight::cli
