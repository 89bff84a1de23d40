// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace relight {

using Json = nlohmann::json;

/// Sorted keys, two-space indent, shortest round-trip floats, trailing newline.
std::string canonical_dump(const Json& doc);

/// 64-bit FNV-1a over the canonical serialization; stable across platforms.
std::uint64_t config_hash(const Json& doc);
std::string config_hash_hex(const Json& doc);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Creates `dir` and its parents; filesystem failures surface as IoError.
void ensure_directory(const std::filesystem::path& dir);

/// ensure_directory on the parent of `path`, if it has one.
void ensure_parent_directory(const std::filesystem::path& path);

}  // namespace relight
