#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <unistd.h>

#include "ghostlint/errors.hpp"
#include "ghostlint/font.hpp"
#include "ghostlint/raster.hpp"
#include "ghostlint/subprocess.hpp"

namespace ghostlint {

struct OcrResult {
    std::string text;
    std::string engine_metadata;
};

struct OcrConfig {
    int tile_size = 64;
    double contrast_threshold = 16.0; // luminance range on the 0..255 scale
    double blur_sigma = 2.0;
    int upscale_min_height = 50; // shorter crops are integer-upscaled first
    int max_upscale_factor = 8;
    double match_threshold = 0.70; // builtin engine template acceptance
    std::string engine_path;      // empty: builtin engine
    std::vector<std::string> engine_args{"-l", "eng"};
    std::string tmp_dir = "/tmp";
};

/// Gaussian-blurs tiles whose luminance range is below contrast_threshold,
/// so the OCR engine approximates human vision instead of out-reading it.
/// High-contrast tiles pass through; output dimensions equal input.
inline RasterImage preprocess_low_contrast(const RasterImage& img, double contrast_threshold,
                                           double blur_sigma, int tile_size = 64) {
    if (img.empty() || tile_size <= 0 || blur_sigma <= 0.0) return img;
    RasterImage out = img;
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * blur_sigma)));
    std::vector<double> kernel(static_cast<std::size_t>(radius) * 2 + 1);
    double ksum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * blur_sigma * blur_sigma));
        kernel[static_cast<std::size_t>(i + radius)] = w;
        ksum += w;
    }
    for (auto& w : kernel) w /= ksum;

    std::vector<double> tmp;
    for (int ty = 0; ty < img.height; ty += tile_size) {
        for (int tx = 0; tx < img.width; tx += tile_size) {
            const int tw = std::min(tile_size, img.width - tx);
            const int th = std::min(tile_size, img.height - ty);
            double lo = 255.0, hi = 0.0;
            for (int y = 0; y < th; ++y) {
                for (int x = 0; x < tw; ++x) {
                    double lum = pixel_luminance(img.at(tx + x, ty + y));
                    lo = std::min(lo, lum);
                    hi = std::max(hi, lum);
                }
            }
            const double range = hi - lo;
            if (range <= 0.0 || range >= contrast_threshold) continue; // constant or crisp

            // separable blur per channel, clamped at the tile's edges
            tmp.assign(static_cast<std::size_t>(tw) * th * 3, 0.0);
            for (int y = 0; y < th; ++y) {
                for (int x = 0; x < tw; ++x) {
                    for (int c = 0; c < 3; ++c) {
                        double acc = 0.0;
                        for (int k = -radius; k <= radius; ++k) {
                            int sx = std::clamp(x + k, 0, tw - 1);
                            acc += kernel[static_cast<std::size_t>(k + radius)] *
                                   img.at(tx + sx, ty + y)[c];
                        }
                        tmp[(static_cast<std::size_t>(y) * tw + x) * 3 + c] = acc;
                    }
                }
            }
            for (int y = 0; y < th; ++y) {
                for (int x = 0; x < tw; ++x) {
                    for (int c = 0; c < 3; ++c) {
                        double acc = 0.0;
                        for (int k = -radius; k <= radius; ++k) {
                            int sy = std::clamp(y + k, 0, th - 1);
                            acc += kernel[static_cast<std::size_t>(k + radius)] *
                                   tmp[(static_cast<std::size_t>(sy) * tw + x) * 3 + c];
                        }
                        out.at(tx + x, ty + y)[c] =
                            static_cast<std::uint8_t>(std::lround(std::clamp(acc, 0.0, 255.0)));
                    }
                }
            }
        }
    }
    return out;
}

class OcrEngine {
public:
    virtual ~OcrEngine() = default;
    virtual OcrResult recognize(const RasterImage& img) const = 0;
};

namespace ocr_detail {

// Comparison happens on a fixed grid so sparse glyphs and tiny punctuation
// marks compete fairly; the aspect gate separates what the grid normalizes
// away (a quote stretched to the grid would otherwise shadow dense letters).
inline constexpr int kMatchGridW = 10;
inline constexpr int kMatchGridH = 14;

struct CharTemplate {
    char32_t ch;
    int w = 0, h = 0;
    std::vector<std::uint8_t> bits; // w*h, tight ink bbox
    std::array<std::uint8_t, kMatchGridW * kMatchGridH> grid{};

    void fill_grid() {
        for (int r = 0; r < kMatchGridH; ++r) {
            int sr = std::clamp(static_cast<int>((r + 0.5) * h / kMatchGridH), 0, h - 1);
            for (int c = 0; c < kMatchGridW; ++c) {
                int sc = std::clamp(static_cast<int>((c + 0.5) * w / kMatchGridW), 0, w - 1);
                grid[static_cast<std::size_t>(r) * kMatchGridW + c] =
                    bits[static_cast<std::size_t>(sr) * w + sc];
            }
        }
    }
};

inline const std::vector<CharTemplate>& char_templates() {
    static const std::vector<CharTemplate> templates = [] {
        std::vector<CharTemplate> out;
        const BitmapFont& font = BitmapFont::instance();
        for (char32_t ch = '!'; ch <= '~'; ++ch) {
            const Glyph* g = font.glyph(ch);
            if (!g || g->blank()) continue;
            int r0 = kFontRows, r1 = -1, c0 = kFontCols, c1 = -1;
            for (int r = 0; r < kFontRows; ++r) {
                for (int c = 0; c < kFontCols; ++c) {
                    if (!g->bit(c, r)) continue;
                    r0 = std::min(r0, r);
                    r1 = std::max(r1, r);
                    c0 = std::min(c0, c);
                    c1 = std::max(c1, c);
                }
            }
            CharTemplate t;
            t.ch = ch;
            t.w = c1 - c0 + 1;
            t.h = r1 - r0 + 1;
            t.bits.resize(static_cast<std::size_t>(t.w) * t.h);
            for (int r = r0; r <= r1; ++r)
                for (int c = c0; c <= c1; ++c)
                    t.bits[static_cast<std::size_t>(r - r0) * t.w + (c - c0)] =
                        g->bit(c, r) ? 1 : 0;
            t.fill_grid();
            out.push_back(std::move(t));
        }
        return out;
    }();
    return templates;
}

struct Component {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0; // inclusive ink bounds
    std::vector<std::uint8_t> mask;     // (x1-x0+1)*(y1-y0+1)
    std::vector<std::int32_t> integral; // (w+1)*(h+1) summed-area table

    int width() const { return x1 - x0 + 1; }
    int height() const { return y1 - y0 + 1; }

    void build_integral() {
        const int w = width(), h = height();
        integral.assign(static_cast<std::size_t>(w + 1) * (h + 1), 0);
        for (int y = 0; y < h; ++y) {
            std::int32_t row = 0;
            for (int x = 0; x < w; ++x) {
                row += mask[static_cast<std::size_t>(y) * w + x];
                integral[static_cast<std::size_t>(y + 1) * (w + 1) + (x + 1)] =
                    integral[static_cast<std::size_t>(y) * (w + 1) + (x + 1)] + row;
            }
        }
    }

    /// Ink fraction over the pixel rect [px0,px1) x [py0,py1).
    double coverage(int px0, int py0, int px1, int py1) const {
        const int w = width(), h = height();
        px0 = std::clamp(px0, 0, w);
        px1 = std::clamp(px1, 0, w);
        py0 = std::clamp(py0, 0, h);
        py1 = std::clamp(py1, 0, h);
        if (px1 <= px0 || py1 <= py0) return 0.0;
        auto at = [&](int x, int y) {
            return integral[static_cast<std::size_t>(y) * (w + 1) + x];
        };
        std::int32_t sum = at(px1, py1) - at(px0, py1) - at(px1, py0) + at(px0, py0);
        return static_cast<double>(sum) / (static_cast<double>(px1 - px0) * (py1 - py0));
    }
};

inline void merge_into(Component& dst, const Component& src) {
    Component merged;
    merged.x0 = std::min(dst.x0, src.x0);
    merged.y0 = std::min(dst.y0, src.y0);
    merged.x1 = std::max(dst.x1, src.x1);
    merged.y1 = std::max(dst.y1, src.y1);
    merged.mask.assign(static_cast<std::size_t>(merged.width()) * merged.height(), 0);
    auto blit = [&](const Component& c) {
        for (int y = 0; y < c.height(); ++y)
            for (int x = 0; x < c.width(); ++x)
                if (c.mask[static_cast<std::size_t>(y) * c.width() + x])
                    merged.mask[static_cast<std::size_t>(y + c.y0 - merged.y0) * merged.width() +
                                (x + c.x0 - merged.x0)] = 1;
    };
    blit(dst);
    blit(src);
    merged.build_integral();
    dst = std::move(merged);
}

/// Score in [0,1]: mean agreement between the component's per-cell ink
/// coverage and the template grid.
inline double match_score(const Component& comp, const CharTemplate& t) {
    const double sx = static_cast<double>(comp.width()) / kMatchGridW;
    const double sy = static_cast<double>(comp.height()) / kMatchGridH;
    double agree = 0.0;
    for (int r = 0; r < kMatchGridH; ++r) {
        int py0 = static_cast<int>(std::floor(r * sy));
        int py1 = std::max(py0 + 1, static_cast<int>(std::ceil((r + 1) * sy)));
        for (int c = 0; c < kMatchGridW; ++c) {
            int px0 = static_cast<int>(std::floor(c * sx));
            int px1 = std::max(px0 + 1, static_cast<int>(std::ceil((c + 1) * sx)));
            double frac = comp.coverage(px0, py0, px1, py1);
            double bit = t.grid[static_cast<std::size_t>(r) * kMatchGridW + c] ? 1.0 : 0.0;
            agree += 1.0 - std::abs(frac - bit);
        }
    }
    return agree / (kMatchGridW * kMatchGridH);
}

} // namespace ocr_detail

/// Self-contained OCR engine for the project's bitmap font family:
/// binarizes against the modal background, groups connected components into
/// lines, and recognizes glyphs by template matching. More discerning than
/// the human eye: any nonzero contrast is stretched before thresholding.
class BuiltinOcrEngine final : public OcrEngine {
public:
    explicit BuiltinOcrEngine(const OcrConfig& cfg = {}) : cfg_(cfg) {}

    OcrResult recognize(const RasterImage& img) const override {
        if (img.empty()) return {"", "builtin: empty image"};

        // 1. binarize against the modal background
        std::vector<double> lum(static_cast<std::size_t>(img.width) * img.height);
        std::array<int, 256> hist{};
        double lo = 255.0, hi = 0.0;
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                double l = pixel_luminance(img.at(x, y));
                lum[static_cast<std::size_t>(y) * img.width + x] = l;
                hist[static_cast<std::size_t>(std::clamp(l, 0.0, 255.0))]++;
                lo = std::min(lo, l);
                hi = std::max(hi, l);
            }
        }
        int bg = 0;
        for (int i = 1; i < 256; ++i)
            if (hist[static_cast<std::size_t>(i)] > hist[static_cast<std::size_t>(bg)]) bg = i;
        const double extreme = (bg - lo > hi - bg) ? lo : hi;
        if (std::abs(extreme - bg) < 1.0) return {"", "builtin: uniform image"};
        const double thresh = (bg + extreme) / 2.0;
        const bool dark_ink = extreme < bg;
        std::vector<std::uint8_t> fg(lum.size());
        for (std::size_t i = 0; i < lum.size(); ++i)
            fg[i] = (dark_ink ? lum[i] <= thresh : lum[i] >= thresh) ? 1 : 0;

        // 2. connected components (8-connectivity)
        std::vector<ocr_detail::Component> comps = find_components(fg, img.width, img.height);

        // 3. group into lines, merge stacked marks (i dots, colons)
        std::vector<std::vector<ocr_detail::Component>> lines = group_lines(std::move(comps));

        // 4. template recognition with gap-derived spaces
        std::string text;
        std::size_t glyphs = 0;
        for (auto& line : lines) {
            std::string line_text = recognize_line(line, glyphs);
            if (!line_text.empty()) {
                if (!text.empty()) text.push_back('\n');
                text += line_text;
            }
        }
        return {text, "builtin: lines=" + std::to_string(lines.size()) +
                          " glyphs=" + std::to_string(glyphs)};
    }

private:
    static std::vector<ocr_detail::Component> find_components(const std::vector<std::uint8_t>& fg,
                                                              int w, int h) {
        std::vector<ocr_detail::Component> comps;
        std::vector<std::int32_t> label(fg.size(), -1);
        std::vector<std::size_t> stack;
        for (std::size_t start = 0; start < fg.size(); ++start) {
            if (!fg[start] || label[start] >= 0) continue;
            const std::int32_t id = static_cast<std::int32_t>(comps.size());
            std::vector<std::size_t> members;
            stack.assign(1, start);
            label[start] = id;
            int x0 = w, y0 = h, x1 = -1, y1 = -1;
            while (!stack.empty()) {
                std::size_t p = stack.back();
                stack.pop_back();
                members.push_back(p);
                int px = static_cast<int>(p % w);
                int py = static_cast<int>(p / w);
                x0 = std::min(x0, px);
                x1 = std::max(x1, px);
                y0 = std::min(y0, py);
                y1 = std::max(y1, py);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        int nx = px + dx, ny = py + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        std::size_t np = static_cast<std::size_t>(ny) * w + nx;
                        if (fg[np] && label[np] < 0) {
                            label[np] = id;
                            stack.push_back(np);
                        }
                    }
                }
            }
            ocr_detail::Component c;
            c.x0 = x0;
            c.y0 = y0;
            c.x1 = x1;
            c.y1 = y1;
            c.mask.assign(static_cast<std::size_t>(c.width()) * c.height(), 0);
            for (std::size_t p : members) {
                int px = static_cast<int>(p % w);
                int py = static_cast<int>(p / w);
                c.mask[static_cast<std::size_t>(py - y0) * c.width() + (px - x0)] = 1;
            }
            c.build_integral();
            comps.push_back(std::move(c));
        }
        return comps;
    }

    static std::vector<std::vector<ocr_detail::Component>> group_lines(
        std::vector<ocr_detail::Component> comps) {
        std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
            return a.y0 != b.y0 ? a.y0 < b.y0 : a.x0 < b.x0;
        });
        struct Line {
            int y0, y1;
            std::vector<ocr_detail::Component> comps;
        };
        std::vector<Line> lines;
        for (auto& c : comps) {
            Line* best = nullptr;
            int best_overlap = 0;
            for (auto& line : lines) {
                int ov = std::min(line.y1, c.y1) - std::max(line.y0, c.y0) + 1;
                if (ov > best_overlap && ov * 2 >= c.height()) {
                    best = &line;
                    best_overlap = ov;
                }
            }
            if (!best) {
                lines.push_back({c.y0, c.y1, {}});
                best = &lines.back();
            }
            best->y0 = std::min(best->y0, c.y0);
            best->y1 = std::max(best->y1, c.y1);
            best->comps.push_back(std::move(c));
        }
        std::sort(lines.begin(), lines.end(),
                  [](const Line& a, const Line& b) { return a.y0 < b.y0; });
        std::vector<std::vector<ocr_detail::Component>> out;
        for (auto& line : lines) {
            std::sort(line.comps.begin(), line.comps.end(),
                      [](const auto& a, const auto& b) { return a.x0 < b.x0; });
            // merge vertically stacked marks sharing a column range
            std::vector<ocr_detail::Component> merged;
            for (auto& c : line.comps) {
                if (!merged.empty()) {
                    auto& prev = merged.back();
                    int ov = std::min(prev.x1, c.x1) - std::max(prev.x0, c.x0) + 1;
                    int narrower = std::min(prev.width(), c.width());
                    if (ov > 0 && ov * 10 >= narrower * 3) {
                        ocr_detail::merge_into(prev, c);
                        continue;
                    }
                }
                merged.push_back(std::move(c));
            }
            out.push_back(std::move(merged));
        }
        return out;
    }

    std::string recognize_line(const std::vector<ocr_detail::Component>& comps,
                               std::size_t& glyphs) const {
        if (comps.empty()) return "";
        // letter scale estimate from the taller components (skips dots)
        std::vector<int> heights;
        int max_h = 0;
        for (const auto& c : comps) max_h = std::max(max_h, c.height());
        for (const auto& c : comps)
            if (c.height() * 2 >= max_h) heights.push_back(c.height());
        std::sort(heights.begin(), heights.end());
        const double scale = heights.empty() ? 1.0 : heights[heights.size() / 2] / 6.0;
        const double space_gap = 4.5 * scale;

        std::string out;
        int prev_x1 = comps.front().x0 - 1;
        bool first = true;
        for (const auto& c : comps) {
            if (!first && c.x0 - prev_x1 - 1 > space_gap && !out.empty()) out.push_back(' ');
            first = false;
            prev_x1 = std::max(prev_x1, c.x1);
            char32_t ch = recognize_component(c);
            if (ch != 0) {
                utf8_append(out, ch);
                ++glyphs;
            }
        }
        return out;
    }

    char32_t recognize_component(const ocr_detail::Component& comp) const {
        const auto& templates = ocr_detail::char_templates();
        double best_score = 0.0;
        char32_t best_ch = 0;
        const double comp_aspect =
            static_cast<double>(comp.width()) / static_cast<double>(comp.height());
        for (const auto& t : templates) {
            const double t_aspect = static_cast<double>(t.w) / t.h;
            double ratio = std::min(comp_aspect, t_aspect) / std::max(comp_aspect, t_aspect);
            if (ratio < 0.6) continue;
            double score = ocr_detail::match_score(comp, t);
            if (score > best_score) {
                best_score = score;
                best_ch = t.ch;
            }
        }
        return best_score >= cfg_.match_threshold ? best_ch : 0;
    }

    OcrConfig cfg_;
};

/// External engine honoring the subprocess contract:
/// argv = [engine, image-path, "stdout", language flags...]; stdout is the
/// recognized UTF-8 text; nonzero exit raises OcrEngineError.
class ExternalOcrEngine final : public OcrEngine {
public:
    explicit ExternalOcrEngine(OcrConfig cfg) : cfg_(std::move(cfg)) {
        if (cfg_.engine_path.empty()) throw OcrEngineError("no engine path configured");
    }

    OcrResult recognize(const RasterImage& img) const override {
        if (img.empty()) return {"", "external: empty image"};
        std::string tmpl = cfg_.tmp_dir + "/ghostlint-ocr-XXXXXX.ppm";
        std::vector<char> path(tmpl.begin(), tmpl.end());
        path.push_back('\0');
        int fd = mkstemps(path.data(), 4);
        if (fd < 0) throw IoError("cannot create temp image in " + cfg_.tmp_dir);
        close(fd);
        std::string img_path(path.data());
        OcrResult res;
        try {
            write_ppm(img, img_path);
            std::vector<std::string> argv{cfg_.engine_path, img_path, "stdout"};
            argv.insert(argv.end(), cfg_.engine_args.begin(), cfg_.engine_args.end());
            ProcessResult pr = run_process(argv);
            if (pr.exit_code != 0) {
                std::remove(img_path.c_str());
                throw OcrEngineError(cfg_.engine_path + " exited with " +
                                     std::to_string(pr.exit_code));
            }
            res.text = pr.out;
            res.engine_metadata = "external: " + cfg_.engine_path;
        } catch (...) {
            std::remove(img_path.c_str());
            throw;
        }
        std::remove(img_path.c_str());
        return res;
    }

private:
    OcrConfig cfg_;
};

inline std::unique_ptr<OcrEngine> make_ocr_engine(const OcrConfig& cfg) {
    if (cfg.engine_path.empty()) return std::make_unique<BuiltinOcrEngine>(cfg);
    return std::make_unique<ExternalOcrEngine>(cfg);
}

/// OCRImage(I): zero-sized images produce empty text without touching the
/// engine; otherwise low-contrast preprocessing, the short-crop upscale, and
/// the engine run in that order.
inline OcrResult ocr_image(const RasterImage& img, const OcrConfig& cfg = {},
                           const OcrEngine* engine = nullptr) {
    if (img.empty()) return {"", "zero-sized image"};
    RasterImage prepared =
        preprocess_low_contrast(img, cfg.contrast_threshold, cfg.blur_sigma, cfg.tile_size);
    if (prepared.height < cfg.upscale_min_height) {
        int factor = static_cast<int>(
            std::ceil(static_cast<double>(cfg.upscale_min_height) / prepared.height));
        prepared = upscale_image(prepared, std::min(factor, cfg.max_upscale_factor));
    }
    if (engine) return engine->recognize(prepared);
    return make_ocr_engine(cfg)->recognize(prepared);
}

} // namespace ghostlint
