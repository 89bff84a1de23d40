// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/png_io.hpp"

#include <png.h>

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <memory>
#include <string>

#include "relight/error.hpp"
#include "relight/json_util.hpp"

namespace relight {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngMessage {
    char text[256] = {};
};

void on_png_error(png_structp png, png_const_charp msg) {
    auto* m = static_cast<PngMessage*>(png_get_error_ptr(png));
    if (m) std::snprintf(m->text, sizeof(m->text), "%s", msg);
    png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

struct RawPng {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int channels = 0;
    int bit_depth = 0;
    std::vector<png_byte> data;
};

// No objects with destructors live in this frame, so longjmp out of libpng is safe.
bool decode_png(std::FILE* fp, RawPng& out, PngMessage& msg) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &msg, on_png_error, on_png_warning);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    if (depth == 16 && std::endian::native == std::endian::little) png_set_swap(png);
    png_read_update_info(png, info);

    out.width = png_get_image_width(png, info);
    out.height = png_get_image_height(png, info);
    out.channels = png_get_channels(png, info);
    out.bit_depth = png_get_bit_depth(png, info);
    const png_size_t row_bytes = png_get_rowbytes(png, info);
    out.data.resize(row_bytes * out.height);
    for (png_uint_32 y = 0; y < out.height; ++y) png_read_row(png, out.data.data() + y * row_bytes, nullptr);
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

bool encode_png(std::FILE* fp, int width, int height, int channels, const std::vector<std::uint16_t>& data,
                PngMessage& msg) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &msg, on_png_error, on_png_warning);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        return false;
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 16,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    if (std::endian::native == std::endian::little) png_set_swap(png);
    const std::size_t row_len = static_cast<std::size_t>(width) * channels;
    for (int y = 0; y < height; ++y) {
        png_write_row(png, reinterpret_cast<png_const_bytep>(data.data() + y * row_len));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

std::uint16_t quantize16(double v) {
    const double c = std::clamp(std::isfinite(v) ? v : 0.0, 0.0, 1.0);
    return static_cast<std::uint16_t>(std::lround(c * 65535.0));
}

void write_samples(const std::filesystem::path& path, int width, int height, int channels,
                   std::span<const float> samples) {
    std::vector<std::uint16_t> data(samples.size());
    std::transform(samples.begin(), samples.end(), data.begin(), [](float v) { return quantize16(v); });
    ensure_parent_directory(path);
    FilePtr fp(std::fopen(path.string().c_str(), "wb"));
    if (!fp) throw IoError(fmt::format("cannot write {}", path.string()));
    PngMessage msg;
    if (!encode_png(fp.get(), width, height, channels, data, msg)) {
        throw IoError(fmt::format("{}: png write failed: {}", path.string(), msg.text));
    }
}

std::vector<float> expand_to_rgb(const PngPixels& px) {
    if (px.channels == 3) return px.values;
    std::vector<float> rgb(3 * px.values.size());
    for (std::size_t i = 0; i < px.values.size(); ++i) rgb[3 * i] = rgb[3 * i + 1] = rgb[3 * i + 2] = px.values[i];
    return rgb;
}

}  // namespace

PngPixels read_png(const std::filesystem::path& path) {
    FilePtr fp(std::fopen(path.string().c_str(), "rb"));
    if (!fp) throw IoError(fmt::format("cannot open {}", path.string()));
    RawPng raw;
    PngMessage msg;
    if (!decode_png(fp.get(), raw, msg)) {
        throw ParseError(ParseErrorCode::BadImage, fmt::format("{}: invalid png: {}", path.string(), msg.text));
    }
    if (raw.channels != 1 && raw.channels != 3) {
        throw ParseError(ParseErrorCode::BadImage,
                         fmt::format("{}: unsupported channel count {}", path.string(), raw.channels));
    }
    PngPixels px;
    px.width = static_cast<int>(raw.width);
    px.height = static_cast<int>(raw.height);
    px.channels = raw.channels;
    const std::size_t count = static_cast<std::size_t>(px.width) * px.height * px.channels;
    px.values.resize(count);
    if (raw.bit_depth == 16) {
        const auto* s = reinterpret_cast<const std::uint16_t*>(raw.data.data());
        for (std::size_t i = 0; i < count; ++i) px.values[i] = static_cast<float>(s[i] / 65535.0);
    } else {
        for (std::size_t i = 0; i < count; ++i) px.values[i] = static_cast<float>(raw.data[i] / 255.0);
    }
    return px;
}

LinearImage read_linear_png(const std::filesystem::path& path) {
    PngPixels px = read_png(path);
    return LinearImage(px.width, px.height, expand_to_rgb(px));
}

DisplayImage read_display_png(const std::filesystem::path& path) {
    PngPixels px = read_png(path);
    return DisplayImage(px.width, px.height, expand_to_rgb(px));
}

AlphaMatte read_matte_png(const std::filesystem::path& path) {
    PngPixels px = read_png(path);
    if (px.channels != 1) {
        // Colour mattes are reduced to their first channel.
        std::vector<float> gray(static_cast<std::size_t>(px.width) * px.height);
        for (std::size_t i = 0; i < gray.size(); ++i) gray[i] = px.values[3 * i];
        return AlphaMatte(px.width, px.height, std::move(gray));
    }
    return AlphaMatte(px.width, px.height, std::move(px.values));
}

void write_png16(const std::filesystem::path& path, const DisplayImage& img) {
    write_samples(path, img.width(), img.height(), 3, img.samples());
}

void write_png16(const std::filesystem::path& path, const LinearImage& img) {
    write_samples(path, img.width(), img.height(), 3, img.samples());
}

void write_matte_png16(const std::filesystem::path& path, const AlphaMatte& matte) {
    write_samples(path, matte.width(), matte.height(), 1, matte.values());
}

}  // namespace relight
