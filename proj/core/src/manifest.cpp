// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/manifest.hpp"

#include <cmath>
#include <set>

#include "json_fields.hpp"

namespace relight {

using detail::as_int;
using detail::as_number;
using detail::as_string;
using detail::require;

namespace {

Json leftovers(const Json& obj, std::initializer_list<const char*> known) {
    Json extra = Json::object();
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool is_known = false;
        for (const char* k : known) is_known = is_known || it.key() == k;
        if (!is_known) extra[it.key()] = it.value();
    }
    return extra;
}

std::optional<double> optional_number(const Json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return as_number(*it, path + "." + key);
}

OlatEntry olat_from_json(const Json& e, const std::string& path) {
    if (!e.is_object()) detail::schema_error(path, "expected an object");
    OlatEntry o;
    o.subject = as_string(require(e, "subject", path), path + ".subject");
    o.view = as_int(require(e, "view", path), path + ".view");
    o.expression = as_int(require(e, "expression", path), path + ".expression");
    const Json& light = require(e, "light_index", path);
    if (light.is_string()) {
        if (light.get<std::string>() != "uniform") detail::schema_error(path + ".light_index", "expected an integer or \"uniform\"");
    } else {
        o.light_index = as_int(light, path + ".light_index");
    }
    o.theta_deg = optional_number(e, "theta", path);
    o.phi_deg = optional_number(e, "phi", path);
    o.path = as_string(require(e, "path", path), path + ".path");
    o.extra = leftovers(e, {"subject", "view", "expression", "light_index", "theta", "phi", "path"});
    return o;
}

RelitEntry relit_from_json(const Json& e, const std::string& path) {
    if (!e.is_object()) detail::schema_error(path, "expected an object");
    RelitEntry r;
    r.env = as_string(require(e, "env", path), path + ".env");
    r.yaw_deg = as_number(require(e, "yaw_deg", path), path + ".yaw_deg");
    r.alpha_blend = as_number(require(e, "alpha_blend", path), path + ".alpha_blend");
    r.exposure = as_number(require(e, "exposure", path), path + ".exposure");
    r.path = as_string(require(e, "path", path), path + ".path");
    r.extra = leftovers(e, {"env", "yaw_deg", "alpha_blend", "exposure", "path"});
    return r;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Manifest manifest_from_json(const Json& doc) {
    const std::string root = "manifest";
    if (!doc.is_object()) detail::schema_error(root, "expected an object");
    Manifest m;
    m.schema_version = as_int(require(doc, "schema_version", root), root + ".schema_version");
    if (m.schema_version != kManifestSchemaVersion) {
        detail::schema_error(root + ".schema_version",
                             fmt::format("unsupported version {} (expected {})", m.schema_version,
                                         kManifestSchemaVersion));
    }
    if (auto it = doc.find("entries"); it != doc.end()) {
        if (!it->is_array()) detail::schema_error(root + ".entries", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            m.entries.push_back(olat_from_json((*it)[i], fmt::format("{}.entries[{}]", root, i)));
        }
    }
    if (auto it = doc.find("relit"); it != doc.end()) {
        if (!it->is_array()) detail::schema_error(root + ".relit", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            m.relit.push_back(relit_from_json((*it)[i], fmt::format("{}.relit[{}]", root, i)));
        }
    }
    m.extra = leftovers(doc, {"schema_version", "entries", "relit"});
    return m;
}

Json manifest_to_json(const Manifest& m) {
    Json doc = m.extra;
    doc["schema_version"] = m.schema_version;
    Json entries = Json::array();
    for (const OlatEntry& o : m.entries) {
        Json e = o.extra;
        e["subject"] = o.subject;
        e["view"] = o.view;
        e["expression"] = o.expression;
        e["light_index"] = o.light_index ? Json(*o.light_index) : Json("uniform");
        e["theta"] = optional_json(o.theta_deg);
        e["phi"] = optional_json(o.phi_deg);
        e["path"] = o.path;
        entries.push_back(std::move(e));
    }
    doc["entries"] = std::move(entries);
    Json relit = Json::array();
    for (const RelitEntry& r : m.relit) {
        Json e = r.extra;
        e["env"] = r.env;
        e["yaw_deg"] = r.yaw_deg;
        e["alpha_blend"] = r.alpha_blend;
        e["exposure"] = r.exposure;
        e["path"] = r.path;
        relit.push_back(std::move(e));
    }
    doc["relit"] = std::move(relit);
    return doc;
}

Manifest read_manifest(const std::filesystem::path& path) {
    try {
        return manifest_from_json(read_json_file(path));
    } catch (const ParseError& e) {
        if (e.code() != ParseErrorCode::Schema) throw;
        throw ParseError(e.code(), fmt::format("{}: {}", path.string(), e.what()));
    }
}

std::string serialize_manifest(const Manifest& m) { return canonical_dump(manifest_to_json(m)); }

void write_manifest(const std::filesystem::path& path, const Manifest& m) {
    write_text_file(path, serialize_manifest(m));
}

void validate_manifest(const Manifest& m, const LightRig& rig, double angle_tol_deg) {
    std::set<std::string> paths;
    auto claim = [&paths](const std::string& p, const std::string& where) {
        if (!paths.insert(p).second) throw ValidationError(fmt::format("{}: duplicate path '{}'", where, p));
    };
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        const OlatEntry& e = m.entries[i];
        const std::string where = fmt::format("entries[{}]", i);
        claim(e.path, where);
        if (!e.light_index) continue;
        const int li = *e.light_index;
        if (li < 0 || li >= static_cast<int>(rig.size())) {
            throw ValidationError(
                fmt::format("{}.light_index: {} outside the rig range [0, {})", where, li, rig.size()));
        }
        const SphericalCoords s = spherical_from_dir(rig[static_cast<std::size_t>(li)].dir);
        if (e.theta_deg && std::abs(*e.theta_deg - rad_to_deg(s.theta())) > angle_tol_deg) {
            throw ValidationError(fmt::format("{}.theta: {} deg disagrees with rig light {} ({} deg)", where,
                                              *e.theta_deg, li, rad_to_deg(s.theta())));
        }
        if (e.phi_deg) {
            // Azimuth is meaningless at the poles and wraps at +-180.
            const double diff = std::abs(rad_to_deg(wrap_azimuth(deg_to_rad(*e.phi_deg) - s.phi())));
            const bool pole = std::sin(s.theta()) < 1e-9;
            if (!pole && diff > angle_tol_deg) {
                throw ValidationError(fmt::format("{}.phi: {} deg disagrees with rig light {} ({} deg)", where,
                                                  *e.phi_deg, li, rad_to_deg(s.phi())));
            }
        }
    }
    for (std::size_t i = 0; i < m.relit.size(); ++i) claim(m.relit[i].path, fmt::format("relit[{}]", i));
}

}  // namespace relight
