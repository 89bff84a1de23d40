// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/json_util.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "relight/error.hpp"

namespace relight {

std::string canonical_dump(const Json& doc) {
    // nlohmann::json keeps object keys in a std::map, so dump() is already
    // key-sorted; its float printer emits the shortest round-trip form.
    return doc.dump(2) + "\n";
}

std::uint64_t config_hash(const Json& doc) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : doc.dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash_hex(const Json& doc) { return fmt::format("{:016x}", config_hash(doc)); }

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open {}", path.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw ParseError(ParseErrorCode::BadJson, fmt::format("{}: {}", path.string(), e.what()));
    }
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(fmt::format("cannot create directory {}: {}", dir.string(), ec.message()));
}

void ensure_parent_directory(const std::filesystem::path& path) {
    if (path.has_parent_path()) ensure_directory(path.parent_path());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    ensure_parent_directory(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(fmt::format("cannot write {}", path.string()));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError(fmt::format("short write to {}", path.string()));
}

}  // namespace relight
