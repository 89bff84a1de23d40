// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/error.hpp"

namespace relight {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::Numeric: return "numeric";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

std::string_view to_string(ParseErrorCode code) {
    switch (code) {
        case ParseErrorCode::BadMagic: return "bad_magic";
        case ParseErrorCode::UnsupportedFormat: return "unsupported_format";
        case ParseErrorCode::BadHeader: return "bad_header";
        case ParseErrorCode::BadResolution: return "bad_resolution";
        case ParseErrorCode::TruncatedScanline: return "truncated_scanline";
        case ParseErrorCode::RunOverrun: return "run_overrun";
        case ParseErrorCode::BadImage: return "bad_image";
        case ParseErrorCode::BadJson: return "bad_json";
        case ParseErrorCode::Schema: return "schema";
    }
    return "unknown";
}

}  // namespace relight
