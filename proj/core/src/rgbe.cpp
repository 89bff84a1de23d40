// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#include "relight/rgbe.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>

#include "relight/error.hpp"
#include "relight/json_util.hpp"

namespace relight {

namespace {

constexpr int kMinRunLength = 4;
constexpr int kMaxRleWidth = 32767;

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    bool at_end() const { return pos_ >= bytes_.size(); }
    std::size_t remaining() const { return bytes_.size() - pos_; }

    // Reads one header line without its terminating newline. Returns false at end of input.
    bool line(std::string& out) {
        if (at_end()) return false;
        out.clear();
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') out.push_back(static_cast<char>(bytes_[pos_++]));
        if (pos_ < bytes_.size()) ++pos_;
        return true;
    }

    std::uint8_t byte(int row) {
        if (at_end()) {
            throw ParseError(ParseErrorCode::TruncatedScanline, fmt::format("scanline {} ends early", row));
        }
        return bytes_[pos_++];
    }

    std::span<const std::uint8_t> peek(std::size_t n) const { return bytes_.subspan(pos_, std::min(n, remaining())); }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

struct HdrHeader {
    int width = 0;
    int height = 0;
};

HdrHeader read_header(ByteReader& in) {
    std::string line;
    if (!in.line(line) || !(line.starts_with("#?RADIANCE") || line.starts_with("#?RGBE"))) {
        throw ParseError(ParseErrorCode::BadMagic, "missing #?RADIANCE or #?RGBE magic");
    }
    bool blank = false;
    while (in.line(line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            blank = true;
            break;
        }
        if (line.starts_with("FORMAT=")) {
            const std::string_view fmt_name = std::string_view(line).substr(7);
            if (fmt_name != "32-bit_rle_rgbe") {
                throw ParseError(ParseErrorCode::UnsupportedFormat,
                                 fmt::format("unsupported pixel format '{}'", fmt_name));
            }
        }
    }
    if (!blank) throw ParseError(ParseErrorCode::BadHeader, "header is not terminated by a blank line");

    if (!in.line(line)) throw ParseError(ParseErrorCode::BadResolution, "missing resolution line");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    HdrHeader h;
    char tail = 0;
    if (std::sscanf(line.c_str(), "-Y %d +X %d%c", &h.height, &h.width, &tail) != 2 || h.width <= 0 ||
        h.height <= 0) {
        throw ParseError(ParseErrorCode::BadResolution,
                         fmt::format("unsupported resolution line '{}' (expected '-Y <H> +X <W>')", line));
    }
    return h;
}

void read_flat_scanline(ByteReader& in, int row, std::span<std::uint8_t> scan) {
    for (auto& b : scan) b = in.byte(row);
}

void read_rle_scanline(ByteReader& in, int row, int width, std::span<std::uint8_t> scan) {
    for (int k = 0; k < 4; ++k) in.byte(row);  // 0x02 0x02 hi lo, already checked by the caller
    for (int ch = 0; ch < 4; ++ch) {
        int pos = 0;
        while (pos < width) {
            const int count = in.byte(row);
            if (count > 128) {
                const int run = count - 128;
                if (pos + run > width) {
                    throw ParseError(ParseErrorCode::RunOverrun,
                                     fmt::format("scanline {} channel {}: run of {} overruns width {}", row, ch,
                                                 run, width));
                }
                const std::uint8_t value = in.byte(row);
                for (int i = 0; i < run; ++i) scan[4 * static_cast<std::size_t>(pos++) + ch] = value;
            } else {
                if (count == 0 || pos + count > width) {
                    throw ParseError(ParseErrorCode::RunOverrun,
                                     fmt::format("scanline {} channel {}: literal of {} overruns width {}", row,
                                                 ch, count, width));
                }
                for (int i = 0; i < count; ++i) scan[4 * static_cast<std::size_t>(pos++) + ch] = in.byte(row);
            }
        }
    }
}

void write_rle_channel(std::vector<std::uint8_t>& out, const std::vector<std::uint8_t>& data) {
    const int n = static_cast<int>(data.size());
    int cur = 0;
    while (cur < n) {
        // Find the next run of at least kMinRunLength identical bytes.
        int beg_run = cur;
        int run_count = 0;
        int old_run_count = 0;
        while (run_count < kMinRunLength && beg_run < n) {
            beg_run += run_count;
            old_run_count = run_count;
            run_count = 1;
            while (beg_run + run_count < n && run_count < 127 && data[beg_run] == data[beg_run + run_count]) {
                ++run_count;
            }
        }
        // A short run right before the long one is stored as a run.
        if (old_run_count > 1 && old_run_count == beg_run - cur) {
            out.push_back(static_cast<std::uint8_t>(128 + old_run_count));
            out.push_back(data[cur]);
            cur = beg_run;
        }
        while (cur < beg_run) {
            const int chunk = std::min(128, beg_run - cur);
            out.push_back(static_cast<std::uint8_t>(chunk));
            out.insert(out.end(), data.begin() + cur, data.begin() + cur + chunk);
            cur += chunk;
        }
        if (run_count >= kMinRunLength) {
            out.push_back(static_cast<std::uint8_t>(128 + run_count));
            out.push_back(data[beg_run]);
            cur += run_count;
        }
    }
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot open {}", path.string()));
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

RgbeTexel rgbe_from_rgb(const Rgb& c) {
    const double v = std::max({c.r, c.g, c.b});
    if (!(v >= 1e-32)) return {};
    int e = 0;
    const double f = std::frexp(v, &e);  // v = f * 2^e, f in [0.5, 1)
    if (e + 128 > 255) return {255, 255, 255, 255};
    if (e + 128 < 1) return {};
    const double scale = f * 256.0 / v;
    auto quantize = [scale](double x) {
        return static_cast<std::uint8_t>(std::clamp(std::floor(std::max(0.0, x) * scale), 0.0, 255.0));
    };
    return {quantize(c.r), quantize(c.g), quantize(c.b), static_cast<std::uint8_t>(e + 128)};
}

Rgb rgb_from_rgbe(const RgbeTexel& t) {
    if (t.e == 0) return {};
    const int exponent = static_cast<int>(t.e) - 136;
    return {std::ldexp(t.r + 0.5, exponent), std::ldexp(t.g + 0.5, exponent), std::ldexp(t.b + 0.5, exponent)};
}

LinearImage decode_hdr_image(std::span<const std::uint8_t> bytes) {
    ByteReader in(bytes);
    const HdrHeader h = read_header(in);
    LinearImage img(h.width, h.height);
    auto samples = img.samples();
    std::vector<std::uint8_t> scan(4 * static_cast<std::size_t>(h.width));

    for (int row = 0; row < h.height; ++row) {
        const auto head = in.peek(4);
        const bool rle = h.width >= 8 && h.width <= kMaxRleWidth && head.size() == 4 && head[0] == 2 &&
                         head[1] == 2 && (head[2] & 0x80) == 0;
        if (rle) {
            const int encoded_width = (head[2] << 8) | head[3];
            if (encoded_width != h.width) {
                throw ParseError(ParseErrorCode::BadImage,
                                 fmt::format("scanline {} declares width {}, image width is {}", row,
                                             encoded_width, h.width));
            }
            read_rle_scanline(in, row, h.width, scan);
        } else {
            read_flat_scanline(in, row, scan);
        }
        for (int col = 0; col < h.width; ++col) {
            const std::uint8_t* p = &scan[4 * static_cast<std::size_t>(col)];
            const Rgb c = rgb_from_rgbe({p[0], p[1], p[2], p[3]});
            float* dst = &samples[3 * (static_cast<std::size_t>(row) * h.width + col)];
            dst[0] = static_cast<float>(c.r);
            dst[1] = static_cast<float>(c.g);
            dst[2] = static_cast<float>(c.b);
        }
    }
    return img;
}

RadianceMap decode_radiance_hdr(std::span<const std::uint8_t> bytes) { return RadianceMap(decode_hdr_image(bytes)); }

std::vector<std::uint8_t> encode_hdr_image(const LinearImage& image) {
    const int w = image.width();
    const int h = image.height();
    const std::string header = fmt::format("#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y {} +X {}\n", h, w);
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + 4 * static_cast<std::size_t>(w) * h);

    const bool rle = w >= 8 && w <= kMaxRleWidth;
    std::vector<std::uint8_t> channel(static_cast<std::size_t>(w));
    std::vector<RgbeTexel> scan(static_cast<std::size_t>(w));
    for (int row = 0; row < h; ++row) {
        for (int col = 0; col < w; ++col) scan[col] = rgbe_from_rgb(image.at(col, row));
        if (!rle) {
            for (const RgbeTexel& t : scan) out.insert(out.end(), {t.r, t.g, t.b, t.e});
            continue;
        }
        out.insert(out.end(), {2, 2, static_cast<std::uint8_t>(w >> 8), static_cast<std::uint8_t>(w & 0xff)});
        for (int ch = 0; ch < 4; ++ch) {
            for (int col = 0; col < w; ++col) {
                const RgbeTexel& t = scan[col];
                channel[col] = ch == 0 ? t.r : ch == 1 ? t.g : ch == 2 ? t.b : t.e;
            }
            write_rle_channel(out, channel);
        }
    }
    return out;
}

std::vector<std::uint8_t> encode_radiance_hdr(const RadianceMap& map) { return encode_hdr_image(map.to_image()); }

LinearImage read_hdr_image(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    try {
        return decode_hdr_image(bytes);
    } catch (const ParseError& e) {
        throw ParseError(e.code(), fmt::format("{}: {}", path.string(), e.what()));
    }
}

RadianceMap read_radiance_hdr(const std::filesystem::path& path) {
    LinearImage img = read_hdr_image(path);
    try {
        return RadianceMap(img);
    } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

void write_hdr_image(const std::filesystem::path& path, const LinearImage& image) {
    const auto bytes = encode_hdr_image(image);
    ensure_parent_directory(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(fmt::format("cannot write {}", path.string()));
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError(fmt::format("short write to {}", path.string()));
}

}  // namespace relight
