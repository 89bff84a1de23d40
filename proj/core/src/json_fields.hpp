// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

// Schema helpers shared by the JSON readers. Every failure names the field path.

#pragma once

#include <fmt/format.h>

#include <string>

#include "relight/color.hpp"
#include "relight/error.hpp"
#include "relight/json_util.hpp"

namespace relight::detail {

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
    throw ParseError(ParseErrorCode::Schema, fmt::format("{}: {}", path, what));
}

inline const Json& require(const Json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) schema_error(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(path + "." + key, "missing field");
    return *it;
}

inline double as_number(const Json& v, const std::string& path) {
    if (!v.is_number()) schema_error(path, "expected a number");
    return v.get<double>();
}

inline int as_int(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) schema_error(path, "expected an integer");
    return v.get<int>();
}

inline std::string as_string(const Json& v, const std::string& path) {
    if (!v.is_string()) schema_error(path, "expected a string");
    return v.get<std::string>();
}

inline Rgb as_rgb(const Json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3) schema_error(path, "expected [r, g, b]");
    return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]"), as_number(v[2], path + "[2]")};
}

inline Json rgb_json(const Rgb& c) { return Json::array({c.r, c.g, c.b}); }

}  // namespace relight::detail
