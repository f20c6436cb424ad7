#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "ghostlint/errors.hpp"

namespace ghostlint {

/// Device-independent RGB pixel buffer with DPI metadata. Zero-sized images
/// are legal and carry no pixels.
struct RasterImage {
    int width = 0;
    int height = 0;
    double dpi = 0.0;
    std::vector<std::uint8_t> pixels; // row-major RGB, 3 bytes per pixel

    bool empty() const { return width <= 0 || height <= 0; }

    static RasterImage filled(int w, int h, double dpi, std::uint8_t r, std::uint8_t g,
                              std::uint8_t b) {
        RasterImage img;
        img.width = w;
        img.height = h;
        img.dpi = dpi;
        img.pixels.resize(static_cast<std::size_t>(w) * h * 3);
        for (std::size_t i = 0; i + 2 < img.pixels.size(); i += 3) {
            img.pixels[i] = r;
            img.pixels[i + 1] = g;
            img.pixels[i + 2] = b;
        }
        return img;
    }

    std::uint8_t* at(int x, int y) {
        return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }
    const std::uint8_t* at(int x, int y) const {
        return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }

    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        auto* p = at(x, y);
        p[0] = r;
        p[1] = g;
        p[2] = b;
    }

    /// Alpha-blends (r,g,b) over the existing pixel.
    void blend(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b, double alpha) {
        auto* p = at(x, y);
        p[0] = static_cast<std::uint8_t>(std::lround(alpha * r + (1.0 - alpha) * p[0]));
        p[1] = static_cast<std::uint8_t>(std::lround(alpha * g + (1.0 - alpha) * p[1]));
        p[2] = static_cast<std::uint8_t>(std::lround(alpha * b + (1.0 - alpha) * p[2]));
    }
};

inline double pixel_luminance(const std::uint8_t* p) {
    return 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
}

/// Crops [x0,x1) x [y0,y1) clamped to image bounds; fully-outside regions
/// yield a zero-sized image.
inline RasterImage crop_image(const RasterImage& img, long x0, long y0, long x1, long y1) {
    x0 = std::max<long>(0, x0);
    y0 = std::max<long>(0, y0);
    x1 = std::min<long>(img.width, x1);
    y1 = std::min<long>(img.height, y1);
    RasterImage out;
    out.dpi = img.dpi;
    if (x1 <= x0 || y1 <= y0) return out;
    out.width = static_cast<int>(x1 - x0);
    out.height = static_cast<int>(y1 - y0);
    out.pixels.resize(static_cast<std::size_t>(out.width) * out.height * 3);
    for (long y = y0; y < y1; ++y) {
        const std::uint8_t* src = img.at(static_cast<int>(x0), static_cast<int>(y));
        std::uint8_t* dst = out.at(0, static_cast<int>(y - y0));
        std::copy(src, src + static_cast<std::size_t>(out.width) * 3, dst);
    }
    return out;
}

/// Nearest-neighbour integer upscale.
inline RasterImage upscale_image(const RasterImage& img, int factor) {
    if (factor <= 1 || img.empty()) return img;
    RasterImage out;
    out.width = img.width * factor;
    out.height = img.height * factor;
    out.dpi = img.dpi * factor;
    out.pixels.resize(static_cast<std::size_t>(out.width) * out.height * 3);
    for (int y = 0; y < out.height; ++y) {
        const std::uint8_t* src_row = img.at(0, y / factor);
        std::uint8_t* dst_row = out.at(0, y);
        for (int x = 0; x < out.width; ++x) {
            const std::uint8_t* s = src_row + (x / factor) * 3;
            dst_row[x * 3] = s[0];
            dst_row[x * 3 + 1] = s[1];
            dst_row[x * 3 + 2] = s[2];
        }
    }
    return out;
}

// Binary PPM (P6) round trip; the interchange format used with external OCR
// engines. P6 forbids zero dimensions, so empty images must not be written.
inline void write_ppm(const RasterImage& img, const std::string& path) {
    if (img.empty()) throw IoError("cannot write empty image: " + path);
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError("cannot open for write: " + path);
    std::string header = "P6\n" + std::to_string(img.width) + " " +
                         std::to_string(img.height) + "\n255\n";
    bool ok = std::fwrite(header.data(), 1, header.size(), f) == header.size();
    ok = ok && std::fwrite(img.pixels.data(), 1, img.pixels.size(), f) == img.pixels.size();
    std::fclose(f);
    if (!ok) throw IoError("short write: " + path);
}

inline RasterImage read_ppm(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError("cannot open: " + path);
    auto read_token = [&]() {
        std::string tok;
        int c;
        while ((c = std::fgetc(f)) != EOF) {
            if (c == '#') { // comment to end of line
                while ((c = std::fgetc(f)) != EOF && c != '\n') {}
                continue;
            }
            if (std::isspace(c)) {
                if (!tok.empty()) break;
                continue;
            }
            tok.push_back(static_cast<char>(c));
        }
        return tok;
    };
    std::string magic = read_token();
    if (magic != "P6") {
        std::fclose(f);
        throw IoError("not a P6 ppm: " + path);
    }
    int w = std::atoi(read_token().c_str());
    int h = std::atoi(read_token().c_str());
    int maxval = std::atoi(read_token().c_str());
    if (w <= 0 || h <= 0 || maxval != 255) {
        std::fclose(f);
        throw IoError("unsupported ppm geometry: " + path);
    }
    RasterImage img;
    img.width = w;
    img.height = h;
    img.pixels.resize(static_cast<std::size_t>(w) * h * 3);
    std::size_t got = std::fread(img.pixels.data(), 1, img.pixels.size(), f);
    std::fclose(f);
    if (got != img.pixels.size()) throw IoError("short read: " + path);
    return img;
}

} // namespace ghostlint
