// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "relight/geometry.hpp"
#include "relight/json_util.hpp"

namespace relight {

inline constexpr int kManifestSchemaVersion = 1;

struct OlatEntry {
    std::string subject;
    int view = 0;
    int expression = 0;
    std::optional<int> light_index;  // nullopt is the uniform-light capture
    std::optional<double> theta_deg;
    std::optional<double> phi_deg;
    std::string path;
    Json extra = Json::object();  // unknown fields, preserved verbatim

    friend bool operator==(const OlatEntry&, const OlatEntry&) = default;
};

struct RelitEntry {
    std::string env;
    double yaw_deg = 0.0;
    double alpha_blend = 0.8;
    double exposure = 1.0;
    std::string path;
    Json extra = Json::object();

    friend bool operator==(const RelitEntry&, const RelitEntry&) = default;
};

struct Manifest {
    int schema_version = kManifestSchemaVersion;
    std::vector<OlatEntry> entries;
    std::vector<RelitEntry> relit;
    Json extra = Json::object();

    friend bool operator==(const Manifest&, const Manifest&) = default;
};

/// Throws ParseError(Schema) with the offending field path.
Manifest manifest_from_json(const Json& doc);
Json manifest_to_json(const Manifest& m);

Manifest read_manifest(const std::filesystem::path& path);
/// Canonical key order and float formatting; equal manifests give equal bytes.
std::string serialize_manifest(const Manifest& m);
void write_manifest(const std::filesystem::path& path, const Manifest& m);

/// Unique paths, light indices inside the rig, and angles within
/// `angle_tol_deg` of the rig directions. Throws ValidationError naming the entry.
void validate_manifest(const Manifest& m, const LightRig& rig, double angle_tol_deg = 0.01);

}  // namespace relight
