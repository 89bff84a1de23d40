// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <fstream>
#include <random>

#include <doctest.h>

#include "test_support.hpp"

#include "relight/error.hpp"
#include "relight/json_util.hpp"
#include "relight/png_io.hpp"
#include "relight/rig_io.hpp"
#include "relight/stack_io.hpp"
#include "relight/weights_io.hpp"

using namespace relight;
using relight::testing::approx;
using relight::testing::scratch_dir;

namespace {

LinearImage random_image(int w, int h, std::uint64_t seed, float hi = 1.0f) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> u(0.0f, hi);
    LinearImage img(w, h);
    for (float& v : img.samples()) v = u(rng);
    return img;
}

}  // namespace

TEST_CASE("16-bit png round trip") {
    const auto dir = scratch_dir("io_png");
    const LinearImage img = random_image(13, 7, 1);
    write_png16(dir / "a.png", img);
    const LinearImage back = read_linear_png(dir / "a.png");
    REQUIRE(back.same_size(img));
    double worst = 0.0;
    for (std::size_t k = 0; k < img.samples().size(); ++k) {
        worst = std::max(worst, std::abs(static_cast<double>(back.samples()[k]) - img.samples()[k]));
    }
    CHECK(worst <= 0.5 / 65535 + 1e-7);

    // Codes survive exactly: a second round trip is lossless.
    write_png16(dir / "b.png", back);
    CHECK(read_linear_png(dir / "b.png") == back);

    // Out-of-range samples clamp.
    LinearImage hot(1, 1);
    hot.set(0, 0, Rgb(2.0, 0.5, 0.0));
    write_png16(dir / "hot.png", hot);
    const Rgb h = read_linear_png(dir / "hot.png").at(0, 0);
    CHECK(h.r == 1.0);
    CHECK(h.g == approx(32768.0 / 65535).epsilon(1e-6));

    const PngPixels raw = read_png(dir / "a.png");
    CHECK(raw.channels == 3);
    CHECK(raw.width == 13);
}

TEST_CASE("matte png and gray broadcast") {
    const auto dir = scratch_dir("io_matte");
    AlphaMatte m(4, 2, std::vector<float>{0, 1, 0.5f, 0.25f, 1, 1, 0, 0});
    write_matte_png16(dir / "alpha.png", m);
    const AlphaMatte back = read_matte_png(dir / "alpha.png");
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(back.values()[i] - m.values()[i]) <= 0.5f / 65535);
    CHECK(read_png(dir / "alpha.png").channels == 1);
    const LinearImage rgb = read_linear_png(dir / "alpha.png");
    CHECK(rgb.at(2, 0).r == rgb.at(2, 0).b);
    CHECK(rgb.at(2, 0).g == back.at(2, 0));

    CHECK_THROWS_AS(read_png(dir / "missing.png"), IoError);
    std::ofstream(dir / "junk.png") << "not a png";
    CHECK_THROWS_AS(read_png(dir / "junk.png"), ParseError);
    CHECK_THROWS_AS(write_png16("/dev/null/x.png", LinearImage(1, 1)), IoError);
}

TEST_CASE("rig round trip") {
    const auto dir = scratch_dir("io_rig");
    const LightRig base = build_fibonacci_rig(30, deg_to_rad(12.0));
    std::vector<Light> lights(base.lights().begin(), base.lights().end());
    lights[4].intensity = Rgb(1.2, 0.9, 1.05);
    const LightRig rig(lights);
    write_rig(dir / "rig.json", rig);
    const LightRig back = read_rig(dir / "rig.json");
    REQUIRE(back.size() == rig.size());
    for (std::size_t i = 0; i < rig.size(); ++i) {
        CHECK(back[i].index == rig[i].index);
        CHECK(angular_distance(back[i].dir, rig[i].dir) < 1e-12);
        CHECK(back[i].cone_half_angle == approx(rig[i].cone_half_angle).epsilon(1e-14));
        CHECK(back[i].intensity == rig[i].intensity);
    }
    Json doc = rig_to_json(rig);
    doc[3]["index"] = 7;
    CHECK_THROWS_AS(rig_from_json(doc), Error);
    CHECK_THROWS_AS(rig_from_json(Json::object()), ParseError);
}

TEST_CASE("weights round trip") {
    const auto dir = scratch_dir("io_weights");
    WeightSet ws;
    ws.mode = WeightMode::Point;
    for (int i = 0; i < 5; ++i) ws.entries.push_back({i, 0.0, Rgb(0.1 * i, 0.2, 1.0 / 3.0)});
    ws = normalize_weights(split_diffuse_specular(ws), Rgb(2, 2, 2));
    write_weights(dir / "w.json", ws);
    const WeightSet back = read_weights(dir / "w.json");
    CHECK(back.mode == WeightMode::Point);
    CHECK(back.diffuse_ready);
    REQUIRE(back.normalized_to.has_value());
    CHECK(*back.normalized_to == Rgb(2, 2, 2));
    for (std::size_t i = 0; i < ws.entries.size(); ++i) {
        CHECK(back.entries[i].w_spec == ws.entries[i].w_spec);
        CHECK(back.entries[i].w_diff == ws.entries[i].w_diff);
    }

    Json doc = weights_to_json(ws);
    doc["weights"][2]["w_spec"][0] = -1.0;
    CHECK_THROWS_AS(weights_from_json(doc), ParseError);
    doc = weights_to_json(ws);
    doc["weights"][1]["index"] = 3;
    CHECK_THROWS_AS(weights_from_json(doc), ParseError);
    doc = weights_to_json(ws);
    doc["mode"] = "disk";
    CHECK_THROWS_AS(weights_from_json(doc), ParseError);
}

TEST_CASE("olat stack round trip") {
    const auto dir = scratch_dir("io_stack");
    const LightRig rig = build_fibonacci_rig(6);
    std::vector<LinearImage> imgs;
    for (int i = 0; i < 6; ++i) imgs.push_back(random_image(8, 5, 10 + i));
    const AlphaMatte alpha(8, 5, 1.0f);
    const LinearImage uniform = random_image(8, 5, 99);
    const OlatStack stack(rig, imgs, alpha, uniform, {0.5, 0.5, 0.25, 0.25, 1.0, 2.0});
    write_olat_stack(dir / "stack", stack);
    CHECK(std::filesystem::exists(dir / "stack" / olat_filename(3)));
    CHECK(std::filesystem::exists(dir / "stack" / "lights.json"));

    const OlatStack back = read_olat_stack(dir / "stack", rig);
    REQUIRE(back.size() == 6);
    CHECK(back.alpha().has_value());
    CHECK(back.uniform().has_value());
    CHECK(back.light_energy()[5] == 2.0);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t k = 0; k < imgs[i].samples().size(); ++k) {
            CHECK(std::abs(back.image(i).samples()[k] - imgs[i].samples()[k]) <= 0.5f / 65535 + 1e-7f);
        }
    }

    // Unit-energy stacks do not write the energy file.
    write_olat_stack(dir / "unit", OlatStack(rig, imgs));
    CHECK_FALSE(std::filesystem::exists(dir / "unit" / "lights.json"));
    CHECK(read_olat_stack(dir / "unit", rig).is_unit_energy());

    std::filesystem::remove(dir / "unit" / olat_filename(2));
    CHECK_THROWS_AS(read_olat_stack(dir / "unit", rig), IoError);
}

TEST_CASE("canonical json") {
    const Json doc = {{"b", 1}, {"a", {{"d", 0.1}, {"c", "x"}}}};
    const std::string s = canonical_dump(doc);
    CHECK(s.find("\"a\"") < s.find("\"b\""));
    CHECK(s.back() == '\n');
    CHECK(Json::parse(s) == doc);
    CHECK(config_hash(doc) == config_hash(Json::parse(s)));
    CHECK(config_hash(doc) != config_hash(Json{{"b", 2}}));
}
