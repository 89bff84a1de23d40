// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace relight {

/// Broad failure category. The CLI maps these onto process exit codes.
enum class ErrorKind {
    Domain,      // argument outside an operation's mathematical domain
    Parse,       // malformed input bytes or documents
    Validation,  // well-formed input that violates a cross-field invariant
    Numeric,     // singular systems, zero-sum normalization and the like
    Io,          // files that cannot be opened or written
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

/// Distinguishes the parse failures callers may want to react to individually.
enum class ParseErrorCode {
    BadMagic,
    UnsupportedFormat,
    BadHeader,
    BadResolution,
    TruncatedScanline,
    RunOverrun,
    BadImage,
    BadJson,
    Schema,
};

std::string_view to_string(ParseErrorCode code);

class ParseError : public Error {
public:
    ParseError(ParseErrorCode code, const std::string& what)
        : Error(ErrorKind::Parse, what), code_(code) {}

    ParseErrorCode code() const noexcept { return code_; }

private:
    ParseErrorCode code_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace relight
