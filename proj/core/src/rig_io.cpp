// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/rig_io.hpp"

#include "json_fields.hpp"

namespace relight {

using detail::as_int;
using detail::as_number;
using detail::as_rgb;
using detail::require;

Json rig_to_json(const LightRig& rig) {
    Json doc = Json::array();
    for (const Light& l : rig.lights()) {
        const SphericalCoords s = spherical_from_dir(l.dir);
        doc.push_back({{"index", l.index},
                       {"theta", rad_to_deg(s.theta())},
                       {"phi", rad_to_deg(s.phi())},
                       {"cone_half_angle_deg", rad_to_deg(l.cone_half_angle)},
                       {"intensity", detail::rgb_json(l.intensity)}});
    }
    return doc;
}

LightRig rig_from_json(const Json& doc) {
    if (!doc.is_array()) detail::schema_error("rig", "expected an array of lights");
    std::vector<Light> lights;
    lights.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::string path = fmt::format("rig[{}]", i);
        const Json& e = doc[i];
        Light l;
        l.index = as_int(require(e, "index", path), path + ".index");
        const double theta = deg_to_rad(as_number(require(e, "theta", path), path + ".theta"));
        const double phi = deg_to_rad(as_number(require(e, "phi", path), path + ".phi"));
        if (!(theta >= 0.0 && theta <= kPi)) detail::schema_error(path + ".theta", "must lie in [0, 180]");
        l.dir = dir_from_spherical(SphericalCoords(theta, wrap_azimuth(phi)));
        l.cone_half_angle =
            deg_to_rad(as_number(require(e, "cone_half_angle_deg", path), path + ".cone_half_angle_deg"));
        l.intensity = as_rgb(require(e, "intensity", path), path + ".intensity");
        lights.push_back(l);
    }
    return LightRig(std::move(lights));
}

LightRig read_rig(const std::filesystem::path& path) {
    try {
        return rig_from_json(read_json_file(path));
    } catch (const ParseError& e) {
        if (e.code() != ParseErrorCode::Schema) throw;
        throw ParseError(e.code(), fmt::format("{}: {}", path.string(), e.what()));
    } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

void write_rig(const std::filesystem::path& path, const LightRig& rig) {
    write_text_file(path, canonical_dump(rig_to_json(rig)));
}

}  // namespace relight
