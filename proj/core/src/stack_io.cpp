// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/stack_io.hpp"

#include <fmt/format.h>

#include "json_fields.hpp"
#include "relight/error.hpp"
#include "relight/json_util.hpp"
#include "relight/png_io.hpp"

namespace relight {

namespace fs = std::filesystem;

std::string olat_filename(int index) { return fmt::format("{:03d}.png", index); }

OlatStack read_olat_stack(const fs::path& dir, const LightRig& rig) {
    if (!fs::is_directory(dir)) throw IoError(fmt::format("stack directory {} does not exist", dir.string()));
    std::vector<LinearImage> images;
    images.reserve(rig.size());
    for (const Light& l : rig.lights()) {
        const fs::path file = dir / olat_filename(l.index);
        if (!fs::exists(file)) throw IoError(fmt::format("missing OLAT image {}", file.string()));
        images.push_back(read_linear_png(file));
    }

    std::optional<AlphaMatte> alpha;
    if (fs::exists(dir / "alpha.png")) alpha = read_matte_png(dir / "alpha.png");
    std::optional<LinearImage> uniform;
    if (fs::exists(dir / "uniform.png")) uniform = read_linear_png(dir / "uniform.png");

    std::vector<double> energy;
    if (fs::exists(dir / "lights.json")) {
        const Json doc = read_json_file(dir / "lights.json");
        const Json& list = detail::require(doc, "light_energy", "lights.json");
        if (!list.is_array()) detail::schema_error("lights.json.light_energy", "expected an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            energy.push_back(detail::as_number(list[i], fmt::format("lights.json.light_energy[{}]", i)));
        }
    }
    return OlatStack(rig, std::move(images), std::move(alpha), std::move(uniform), std::move(energy));
}

void write_olat_stack(const fs::path& dir, const OlatStack& stack) {
    ensure_directory(dir);
    for (std::size_t i = 0; i < stack.size(); ++i) {
        write_png16(dir / olat_filename(stack.rig()[i].index), stack.image(i));
    }
    if (stack.alpha()) write_matte_png16(dir / "alpha.png", *stack.alpha());
    if (stack.uniform()) write_png16(dir / "uniform.png", *stack.uniform());
    if (!stack.is_unit_energy()) {
        Json energy = Json::array();
        for (double e : stack.light_energy()) energy.push_back(e);
        write_text_file(dir / "lights.json", canonical_dump(Json{{"light_energy", energy}}));
    }
}

}  // namespace relight
