// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/weights_io.hpp"

#include "json_fields.hpp"

namespace relight {

using detail::as_int;
using detail::as_number;
using detail::as_rgb;
using detail::require;

Json weights_to_json(const WeightSet& ws) {
    Json entries = Json::array();
    for (const LightWeight& e : ws.entries) {
        entries.push_back({{"index", e.index}, {"w_diff", e.w_diff}, {"w_spec", detail::rgb_json(e.w_spec)}});
    }
    return {{"mode", std::string(to_string(ws.mode))},
            {"normalized_to", ws.normalized_to ? detail::rgb_json(*ws.normalized_to) : Json(nullptr)},
            {"weights", entries}};
}

WeightSet weights_from_json(const Json& doc) {
    const std::string root = "weights_file";
    WeightSet ws;
    const Json& mode = require(doc, "mode", root);
    try {
        ws.mode = weight_mode_from_string(detail::as_string(mode, root + ".mode"));
    } catch (const DomainError& e) {
        detail::schema_error(root + ".mode", e.what());
    }
    const Json& target = require(doc, "normalized_to", root);
    if (!target.is_null()) ws.normalized_to = as_rgb(target, root + ".normalized_to");

    const Json& list = require(doc, "weights", root);
    if (!list.is_array()) detail::schema_error(root + ".weights", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = fmt::format("{}.weights[{}]", root, i);
        LightWeight w;
        w.index = as_int(require(list[i], "index", path), path + ".index");
        w.w_diff = as_number(require(list[i], "w_diff", path), path + ".w_diff");
        w.w_spec = as_rgb(require(list[i], "w_spec", path), path + ".w_spec");
        if (w.index != static_cast<int>(i)) {
            detail::schema_error(path + ".index", fmt::format("expected {}, entries must be ordered", i));
        }
        if (!(w.w_diff >= 0.0) || !std::isfinite(w.w_diff) || !is_finite_nonnegative(w.w_spec)) {
            detail::schema_error(path, "weights must be finite and >= 0");
        }
        ws.entries.push_back(w);
    }
    ws.diffuse_ready = true;
    return ws;
}

WeightSet read_weights(const std::filesystem::path& path) {
    try {
        return weights_from_json(read_json_file(path));
    } catch (const ParseError& e) {
        if (e.code() != ParseErrorCode::Schema) throw;
        throw ParseError(e.code(), fmt::format("{}: {}", path.string(), e.what()));
    }
}

void write_weights(const std::filesystem::path& path, const WeightSet& ws) {
    write_text_file(path, canonical_dump(weights_to_json(ws)));
}

}  // namespace relight
