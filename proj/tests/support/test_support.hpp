// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

#include <doctest.h>

namespace relight::testing {

// doctest::Approx with a negligible absolute floor, so the tolerance is
// relative even for values far below one. Chain .epsilon() as usual.
inline doctest::Approx approx(double value) { return doctest::Approx(value).scale(1e-300); }

// Fresh empty directory for one test, under $RELIGHT_TEST_TMP when set.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const char* root = std::getenv("RELIGHT_TEST_TMP");
    const std::filesystem::path dir =
        (root ? std::filesystem::path(root) : std::filesystem::temp_directory_path() / "relight_tests") / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace relight::testing
