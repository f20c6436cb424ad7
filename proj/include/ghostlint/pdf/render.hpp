#pragma once

#include <cmath>
#include <optional>

#include "ghostlint/errors.hpp"
#include "ghostlint/font.hpp"
#include "ghostlint/model.hpp"
#include "ghostlint/pdf/content.hpp"
#include "ghostlint/pdf/document.hpp"
#include "ghostlint/raster.hpp"

namespace ghostlint::pdf {

// pixel rounding tolerant of float noise at exact point/pixel boundaries
inline long px_floor(double v) { return static_cast<long>(std::floor(v + 1e-6)); }
inline long px_ceil(double v) { return static_cast<long>(std::ceil(v - 1e-6)); }

struct PageRaster {
    int page_index = 0;
    RasterImage image;
    double scale = 0.0;    // points to pixels
    BoundingBox page_box;  // user-space box the raster covers
};

namespace render_detail {

/// Rasterizes content as a compliant viewer displays it: the canvas spans
/// the current page box (so preprocessed coordinates map 1:1), but painting
/// is masked to the original view region and uses original OCG visibility —
/// hidden content stays hidden in pixels.
class RenderSink final : public ContentSink {
public:
    RenderSink(RasterImage& img, const BoundingBox& page_box, double scale,
               const BoundingBox& view_mask)
        : img_(img), box_(page_box), scale_(scale) {
        mask_ = to_device(view_mask);
    }

    Mat device_matrix() const {
        return Mat{scale_, 0, 0, -scale_, -box_.x0 * scale_, box_.y1 * scale_};
    }

    void on_fill_rect(const BoundingBox& user_rect, const Rgb& color, double alpha,
                      const std::optional<BoundingBox>& clip, bool /*ocg_cur*/,
                      bool ocg_orig) override {
        if (!ocg_orig || alpha <= 0.0) return;
        BoundingBox r = user_rect;
        if (clip) r = bbox_intersect(r, *clip);
        fill_device(to_device(r), color, alpha);
    }

    void on_image(const BoundingBox& user_box, const std::optional<BoundingBox>& clip,
                  bool /*ocg_cur*/, bool ocg_orig) override {
        if (!ocg_orig) return;
        BoundingBox r = user_box;
        if (clip) r = bbox_intersect(r, *clip);
        // image payloads are not decoded; painted as an opaque placeholder
        fill_device(to_device(r), Rgb{0.5, 0.5, 0.5}, 1.0);
    }

    void on_glyph_run(const GlyphRun& run) override {
        if (!run.ocg_visible_original) return;
        if (run.render_mode == 3 || run.render_mode == 7) return; // no paint
        if (run.alpha <= 0.0) return;
        if (run.font && run.font->kind == FontKind::Type3) return; // via charprocs
        const BitmapFont& font = BitmapFont::instance();
        const Mat dev = device_matrix();
        for (const auto& gi : run.glyphs) {
            if (gi.unicode == ' ' || cp_is_space(gi.unicode)) continue;
            const Glyph* glyph = font.glyph(gi.unicode);
            Glyph box_glyph;
            if (!glyph) {
                for (int row = 1; row < kFontBaselineRow; ++row) box_glyph.rows[row] = 0x0E;
                glyph = &box_glyph;
            }
            Mat m = gi.trm.mul(dev); // text space -> device
            auto inv = m.inverse();
            if (!inv) continue;
            // glyph cell x in [0, 0.5], y in [-0.3, 0.7] (em units)
            BoundingBox cell{0.0, -0.3, 0.5, 0.7};
            BoundingBox dev_box = m.apply_box(cell);
            std::optional<BoundingBox> dev_clip;
            if (run.clip) dev_clip = to_device(*run.clip);
            int px0 = std::max(0, static_cast<int>(std::floor(dev_box.x0)));
            int py0 = std::max(0, static_cast<int>(std::floor(dev_box.y0)));
            int px1 = std::min(img_.width, static_cast<int>(std::ceil(dev_box.x1)));
            int py1 = std::min(img_.height, static_cast<int>(std::ceil(dev_box.y1)));
            for (int py = py0; py < py1; ++py) {
                for (int px = px0; px < px1; ++px) {
                    double cx = px + 0.5, cy = py + 0.5;
                    if (!inside(mask_, cx, cy)) continue;
                    if (dev_clip && !inside(*dev_clip, cx, cy)) continue;
                    double tx, ty;
                    inv->apply(cx, cy, tx, ty);
                    int col = static_cast<int>(std::floor(tx / 0.1));
                    int row = static_cast<int>(std::floor((0.7 - ty) / 0.1));
                    if (col < 0 || col >= kFontCols || row < 0 || row >= kFontRows) continue;
                    if (!glyph->bit(col, row)) continue;
                    img_.blend(px, py, to_byte(run.fill.r), to_byte(run.fill.g),
                               to_byte(run.fill.b), run.alpha);
                }
            }
        }
    }

private:
    static bool inside(const BoundingBox& b, double x, double y) {
        return x >= b.x0 && x < b.x1 && y >= b.y0 && y < b.y1;
    }

    static std::uint8_t to_byte(double v) {
        return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    }

    BoundingBox to_device(const BoundingBox& user) const {
        BoundingBox d{(user.x0 - box_.x0) * scale_, (box_.y1 - user.y1) * scale_,
                      (user.x1 - box_.x0) * scale_, (box_.y1 - user.y0) * scale_};
        return normalize_bbox(d);
    }

    void fill_device(const BoundingBox& dev, const Rgb& color, double alpha) {
        BoundingBox r = bbox_intersect(dev, mask_);
        int x0 = std::max(0, static_cast<int>(std::floor(r.x0)));
        int y0 = std::max(0, static_cast<int>(std::floor(r.y0)));
        int x1 = std::min(img_.width, static_cast<int>(std::ceil(r.x1)));
        int y1 = std::min(img_.height, static_cast<int>(std::ceil(r.y1)));
        for (int y = y0; y < y1; ++y) {
            for (int x = x0; x < x1; ++x) {
                if (x + 0.5 < r.x0 || x + 0.5 >= r.x1 || y + 0.5 < r.y0 || y + 0.5 >= r.y1)
                    continue;
                img_.blend(x, y, to_byte(color.r), to_byte(color.g), to_byte(color.b), alpha);
            }
        }
    }

    RasterImage& img_;
    BoundingBox box_;
    double scale_;
    BoundingBox mask_;
};

} // namespace render_detail

/// Rasters the page at the given DPI. The raster spans the page's current
/// effective box; hidden mechanisms (original CropBox/MediaBox limits,
/// original OCG states, render mode 3, clips, alpha) keep their content out
/// of the pixels.
inline PageRaster render_page(const PdfDocument& doc, std::size_t page_index, double dpi) {
    if (dpi <= 0) throw RenderError("dpi must be positive");
    const BoundingBox box = doc.effective_box(page_index);
    const double scale = dpi / 72.0;
    const int w = static_cast<int>(px_ceil(box.width() * scale));
    const int h = static_cast<int>(px_ceil(box.height() * scale));
    if (w <= 0 || h <= 0) throw RenderError("degenerate page box");
    if (static_cast<double>(w) * h > 64e6) throw RenderError("page raster too large");
    PageRaster raster;
    raster.page_index = static_cast<int>(page_index);
    raster.scale = scale;
    raster.page_box = box;
    raster.image = RasterImage::filled(w, h, dpi, 255, 255, 255);
    render_detail::RenderSink sink(raster.image, box, scale, doc.original_view_box(page_index));
    ContentInterpreter interp(doc, sink);
    interp.set_want_type3_procs(true);
    interp.run_page(page_index);
    return raster;
}

/// Crops a block's bbox (plus padding, in points) out of the page raster.
/// Clamped to image bounds; regions fully outside yield a zero-sized image.
inline RasterImage crop_block_image(const PageRaster& raster, const TextBlock& block,
                                    double padding_pt = 2.0) {
    const BoundingBox b = bbox_pad(normalize_bbox(block.bbox), padding_pt);
    const BoundingBox& page = raster.page_box;
    const double s = raster.scale;
    long x0 = px_floor((b.x0 - page.x0) * s);
    long x1 = px_ceil((b.x1 - page.x0) * s);
    long y0 = px_floor((page.y1 - b.y1) * s);
    long y1 = px_ceil((page.y1 - b.y0) * s);
    return crop_image(raster.image, x0, y0, x1, y1);
}

} // namespace ghostlint::pdf
