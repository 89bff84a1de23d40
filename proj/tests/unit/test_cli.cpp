// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "test_support.hpp"

#include "cli.hpp"
#include "relight/png_io.hpp"
#include "relight/rgbe.hpp"
#include "relight/rig_io.hpp"
#include "relight/stack_io.hpp"
#include "relight/weights_io.hpp"

using namespace relight;
using relight::testing::approx;
using relight::testing::scratch_dir;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
    Json report() const { return Json::parse(out); }
    Json error() const { return Json::parse(err)["error"]; }
};

RunResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "relight");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    RunResult r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string str(const std::filesystem::path& p) { return p.string(); }

void write_env(const std::filesystem::path& p, const RadianceMap& m) {
    const auto bytes = encode_radiance_hdr(m);
    std::ofstream(p, std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()),
                                             static_cast<std::streamsize>(bytes.size()));
}

// Unit-energy stack of random images in [0, 1] and its rig, on disk.
void write_random_stack(const std::filesystem::path& dir, int lights, int w, int h) {
    const LightRig rig = build_fibonacci_rig(lights);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    std::vector<LinearImage> imgs;
    for (int i = 0; i < lights; ++i) {
        LinearImage img(w, h);
        for (float& v : img.samples()) v = u(rng);
        imgs.push_back(img);
    }
    write_rig(dir / "rig.json", rig);
    write_olat_stack(dir / "stack", OlatStack(rig, imgs));
}

}  // namespace

TEST_CASE("gen-rig writes a rig and a report") {
    const auto dir = scratch_dir("cli_gen");
    const RunResult r = run_cli({"gen-rig", "--count", "24", "--out", str(dir / "rig.json")});
    REQUIRE(r.code == 0);
    const Json rep = r.report();
    CHECK(rep["command"] == "gen-rig");
    CHECK(rep["status"] == "ok");
    CHECK(rep["config"]["count"] == 24);
    CHECK(rep["config"].contains("seed"));
    CHECK(rep["outputs"][0] == (dir / "rig.json").generic_string());
    CHECK(read_rig(dir / "rig.json").size() == 24);
}

TEST_CASE("relight with one-hot weights reproduces the selected slice") {
    const auto dir = scratch_dir("cli_onehot");
    write_random_stack(dir, 12, 9, 6);
    WeightSet ws;
    for (int i = 0; i < 12; ++i) ws.entries.push_back({i, i == 7 ? 1.0 : 0.0, Rgb::gray(i == 7 ? 1.0 : 0.0)});
    ws.diffuse_ready = true;
    write_weights(dir / "onehot.json", ws);
    const RunResult r = run_cli({"relight", "--rig", str(dir / "rig.json"), "--stack", str(dir / "stack"),
                                 "--weights", str(dir / "onehot.json"), "--tonemap", "clamp", "--out",
                                 str(dir / "relit.png")});
    REQUIRE(r.code == 0);
    const PngPixels got = read_png(dir / "relit.png");
    const PngPixels want = read_png(dir / "stack" / olat_filename(7));
    CHECK(got.values == want.values);
}

TEST_CASE("project normalizes to the map energy") {
    const auto dir = scratch_dir("cli_project");
    write_env(dir / "env.hdr", RadianceMap::filled(64, Rgb(0.5, 1.0, 2.0)));
    const RunResult r = run_cli({"project", "--env", str(dir / "env.hdr"), "--out", str(dir / "w.json")});
    REQUIRE(r.code == 0);
    const WeightSet ws = read_weights(dir / "w.json");
    CHECK(ws.entries.size() == 156);
    const Rgb energy = total_energy(read_radiance_hdr(dir / "env.hdr"));
    const Rgb sum = ws.specular_sum();
    for (int c = 0; c < 3; ++c) CHECK(sum[c] == approx(energy[c]).epsilon(1e-9));

    const RunResult raw = run_cli({"project", "--env", str(dir / "env.hdr"), "--no-normalize", "--out",
                                   str(dir / "raw.json")});
    REQUIRE(raw.code == 0);
    CHECK_FALSE(read_weights(dir / "raw.json").normalized_to.has_value());
}

TEST_CASE("exit codes and error reports") {
    const auto dir = scratch_dir("cli_errors");
    SUBCASE("usage") {
        const RunResult none = run_cli({});
        CHECK(none.code == 2);
        CHECK(none.error()["kind"] == "usage");
        const RunResult unknown = run_cli({"gen-rig", "--bogus", "1"});
        CHECK(unknown.code == 2);
        CHECK(unknown.error()["command"] == "gen-rig");
        CHECK(run_cli({"project", "--env", "x.hdr", "--mode", "disk"}).code == 2);
    }
    SUBCASE("input errors") {
        const RunResult missing = run_cli({"project", "--env", str(dir / "missing.hdr")});
        CHECK(missing.code == 3);
        CHECK(missing.error()["kind"] == "io");
        std::ofstream(dir / "bad.hdr") << "P6\n";
        const RunResult bad = run_cli({"project", "--env", str(dir / "bad.hdr")});
        CHECK(bad.code == 3);
        CHECK(bad.error()["code"] == "bad_magic");
        CHECK(bad.out.empty());
    }
    SUBCASE("validation and domain errors") {
        write_random_stack(dir, 4, 3, 3);
        write_env(dir / "env.hdr", RadianceMap::filled(16, Rgb(1, 1, 1)));
        const RunResult both = run_cli({"relight", "--rig", str(dir / "rig.json"), "--stack", str(dir / "stack"),
                                        "--env", str(dir / "env.hdr"), "--weights", str(dir / "w.json")});
        CHECK(both.code == 4);
        CHECK(both.error()["kind"] == "validation");
        CHECK(run_cli({"gen-rig", "--cone-half-angle-deg", "95"}).code == 4);
        CHECK(run_cli({"gen-rig", "--count", "0"}).code == 4);
    }
}

TEST_CASE("config files, hashing and report options") {
    const auto dir = scratch_dir("cli_config");
    const std::vector<std::string> args = {"gen-rig", "--count", "10", "--out", str(dir / "r.json")};
    const Json a = run_cli(args).report();
    const Json b = run_cli(args).report();
    CHECK(a == b);
    std::vector<std::string> seeded = args;
    seeded.insert(seeded.begin(), {"--seed", "7"});
    CHECK(run_cli(seeded).report()["config_hash"] != a["config_hash"]);

    std::ofstream(dir / "cfg.json") << R"({"seed": 3, "gen-rig": {"count": 33, "out": ")"
                                    << (dir / "cfg_rig.json").generic_string() << R"("}})";
    const RunResult r = run_cli({"--config", str(dir / "cfg.json"), "gen-rig"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["config"]["count"] == 33);
    CHECK(r.report()["config"]["seed"] == 3);
    CHECK(read_rig(dir / "cfg_rig.json").size() == 33);

    const RunResult quiet = run_cli({"--quiet", "--report", str(dir / "rep.json"), "gen-rig", "--out",
                                     str(dir / "q.json")});
    CHECK(quiet.code == 0);
    CHECK(quiet.out.empty());
    CHECK(read_json_file(dir / "rep.json")["status"] == "ok");

    CHECK(run_cli({"--version"}).code == 0);
}

TEST_CASE("oracle, eval and rotate-sweep") {
    const auto dir = scratch_dir("cli_oracle");
    const RunResult o = run_cli({"oracle", "--count", "40", "--resolution", "32", "--env-height", "32", "--out",
                                 str(dir / "orc")});
    REQUIRE(o.code == 0);
    for (const char* f : {"rig.json", "ground_truth.hdr", "env.hdr", "manifest.json", "stack/alpha.png",
                          "stack/uniform.png", "stack/lights.json"}) {
        CHECK(std::filesystem::exists(dir / "orc" / f));
    }

    const RunResult same = run_cli({"eval", "--pred", str(dir / "orc" / "ground_truth.hdr"), "--gt",
                                    str(dir / "orc" / "ground_truth.hdr"), "--masked", "--mask",
                                    str(dir / "orc" / "stack" / "alpha.png")});
    REQUIRE(same.code == 0);
    CHECK(same.report()["results"]["psnr_db"] == "inf");
    CHECK(same.report()["results"]["rel_rmse"] == 0.0);
    CHECK(same.report()["results"]["masked"] == true);
    CHECK(run_cli({"eval", "--pred", str(dir / "orc" / "ground_truth.hdr"), "--gt",
                   str(dir / "orc" / "ground_truth.hdr"), "--masked"})
              .code == 4);

    const RunResult sweep = run_cli({"rotate-sweep", "--count", "60", "--resolution", "32", "--env-height", "64",
                                     "--steps", "8", "--out", str(dir / "sweep")});
    REQUIRE(sweep.code == 0);
    CHECK(sweep.report()["results"]["max_rel_rmse"].get<double>() < 0.02);
    CHECK(std::filesystem::exists(dir / "sweep" / "consistency.json"));
}

TEST_CASE("bridge demo recovers the toy exactly without noise") {
    const RunResult r = run_cli({"bridge-demo", "--dim", "4", "--pairs", "200", "--sigma", "0"});
    REQUIRE(r.code == 0);
    const Json res = r.report()["results"];
    CHECK(res["fitted_loss"].get<double>() < 1e-10);
    CHECK(res["transport_mse"].get<double>() < 1e-10);
    CHECK(res["sigma_floor_estimate"].get<double>() == 0.0);
}
