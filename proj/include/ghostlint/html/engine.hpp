#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ghostlint/base64.hpp"
#include "ghostlint/errors.hpp"
#include "ghostlint/font.hpp"
#include "ghostlint/geometry.hpp"
#include "ghostlint/html/dom.hpp"
#include "ghostlint/html/style.hpp"
#include "ghostlint/model.hpp"
#include "ghostlint/raster.hpp"
#include "ghostlint/textnorm.hpp"

namespace ghostlint::html {

struct HtmlRenderOptions {
    double viewport_width = 1280.0;
    double viewport_height = 800.0;     // floor for the full-page shot
    double device_scale = 2.0;          // CSS px -> device px
    double max_page_height = 20000.0;   // CSS px cap on the full-page shot
    bool hermetic = true;               // built-in engine never fetches URLs
    double timeout_seconds = 30.0;      // honored by external engines
    std::size_t min_text_node_chars = 2;
};

/// Full-page screenshot plus one TextBlock per DOM text node (page_index 0,
/// bbox in CSS px; may be zero-area or out of bounds for hidden elements).
struct RenderedPage {
    RasterImage screenshot;
    double device_scale = 1.0;
    std::vector<TextBlock> text_nodes;
};

namespace engine_detail {

// data: URL payload of the project's trivial bitmap-font container.
// "GLBF" + version byte + flags byte (bit 0: all glyphs blank).
inline constexpr char kBlankFontMagic[4] = {'G', 'L', 'B', 'F'};

inline bool font_data_is_blank(const std::string& data) {
    return data.size() >= 6 && data.compare(0, 4, "GLBF") == 0 && (data[5] & 1);
}

struct TextFragment {
    std::string text;
    double x = 0, baseline = 0, em = 16;
    CssColor color;
    double alpha = 1.0;
    bool paint = true; // false: visibility:hidden or blank font
    bool blank_font = false;
    std::optional<BoundingBox> clip; // absolute CSS-px clip rect
    int z_layer = 0;                 // 0 = flow; abs elements get 1 + z-index
    std::size_t order = 0;
    const Node* source = nullptr;    // owning text node
};

struct RectItem {
    BoundingBox rect;
    CssColor color;
    double alpha = 1.0;
    std::optional<BoundingBox> clip;
    int z_layer = 0;
    std::size_t order = 0;
};

struct LayoutState {
    const css_detail::Stylesheet* sheet = nullptr;
    double viewport_width = 1280;
    std::vector<TextFragment> fragments;
    std::vector<RectItem> rects;
    std::map<const Node*, std::vector<BoundingBox>> node_rects;
    std::map<std::string, bool> blank_families; // family -> all-blank glyphs
    double content_bottom = 0;
    std::size_t order_counter = 0;
};

struct FlowCursor {
    double left = 0, right = 0; // content edges
    double x = 0, y = 0;        // y = top of current line box
    double line_height = 19.2;
    bool line_open = false;
};

inline double advance_width(const std::string& text, double em) {
    std::size_t cps = 0, pos = 0;
    while (pos < text.size()) {
        utf8_next(text, pos);
        ++cps;
    }
    return static_cast<double>(cps) * em * kFontAdvanceEm;
}

class Layouter {
public:
    explicit Layouter(LayoutState& state) : state_(state) {}

    void layout_document(const Node& root, const ComputedStyle& initial) {
        const Node* body = find_body(root);
        if (!body) return;
        ComputedStyle body_style = compute_style(*body, *state_.sheet, initial);
        FlowCursor cursor;
        cursor.left = body_style.margin_left;
        cursor.right = state_.viewport_width - body_style.margin_right;
        cursor.x = cursor.left;
        cursor.y = body_style.margin_top;
        if (body_style.background) {
            RectItem bg;
            bg.rect = {0, 0, state_.viewport_width, 0}; // bottom patched after layout
            bg.color = *body_style.background;
            bg.z_layer = -1;
            bg.order = state_.order_counter++;
            state_.rects.push_back(bg);
            body_bg_index_ = state_.rects.size() - 1;
        }
        layout_children(*body, body_style, cursor, /*abs_context=*/false);
        close_line(cursor);
        state_.content_bottom = std::max(state_.content_bottom, cursor.y);
        if (body_bg_index_)
            state_.rects[*body_bg_index_].rect.y1 = std::max(state_.content_bottom + 16.0,
                                                             64.0);
    }

private:
    static const Node* find_body(const Node& root) {
        for (const auto& child : root.children) {
            if (child->kind == Node::Kind::Element) {
                if (child->tag == "body") return child.get();
                if (const Node* inner = find_body(*child)) return inner;
            }
        }
        return nullptr;
    }

    void layout_children(const Node& node, const ComputedStyle& style, FlowCursor& cursor,
                         bool abs_context) {
        for (const auto& child : node.children) {
            if (child->kind == Node::Kind::Text) {
                layout_text(*child, style, cursor, abs_context);
            } else {
                layout_element(*child, style, cursor, abs_context);
            }
        }
    }

    void layout_element(const Node& node, const ComputedStyle& parent, FlowCursor& cursor,
                        bool abs_context) {
        ComputedStyle style = compute_style(node, *state_.sheet, parent);
        if (style.display == Display::None) return; // no boxes at all
        if (node.tag == "br") {
            close_line(cursor);
            return;
        }
        if (node.tag == "img") {
            layout_img(node, style, cursor);
            return;
        }
        if (style.position == Position::Absolute) {
            layout_absolute(node, style, cursor);
            return;
        }
        if (style.display == Display::Block) {
            close_line(cursor);
            cursor.y += style.margin_top;
            FlowCursor inner = cursor;
            inner.left = cursor.left + style.margin_left;
            inner.right = cursor.right - style.margin_right;
            inner.x = inner.left;
            if (style.background) {
                RectItem bg;
                bg.rect = {inner.left, inner.y, inner.right, inner.y};
                bg.color = *style.background;
                bg.alpha = style.opacity;
                bg.order = state_.order_counter++;
                state_.rects.push_back(bg);
                std::size_t bg_idx = state_.rects.size() - 1;
                layout_children(node, style, inner, abs_context);
                close_line(inner);
                state_.rects[bg_idx].rect.y1 = inner.y;
                if (style.height) state_.rects[bg_idx].rect.y1 = inner.y + *style.height;
            } else {
                layout_children(node, style, inner, abs_context);
                close_line(inner);
            }
            cursor.y = inner.y + style.margin_bottom;
            cursor.x = cursor.left;
            cursor.line_open = false;
            state_.content_bottom = std::max(state_.content_bottom, cursor.y);
        } else {
            layout_children(node, style, cursor, abs_context);
        }
    }

    void layout_img(const Node& node, const ComputedStyle& style, FlowCursor& cursor) {
        double w = style.width.value_or(0);
        double h = style.height.value_or(0);
        if (const std::string* ws = node.attr("width")) w = std::strtod(ws->c_str(), nullptr);
        if (const std::string* hs = node.attr("height")) h = std::strtod(hs->c_str(), nullptr);
        if (w <= 0) w = 300;
        if (h <= 0) h = 150;
        double x = cursor.x, y = cursor.y;
        BoundingBox box{x, y, x + w, y + h};
        if (style.position == Position::Absolute) {
            double ax = style.left.value_or(cursor.left);
            double ay = style.top.value_or(cursor.y);
            box = {ax, ay, ax + w, ay + h};
        } else {
            cursor.x += w;
            cursor.line_height = std::max(cursor.line_height, h);
            cursor.line_open = true;
        }
        if (!style.visibility_hidden && style.opacity > 0) {
            RectItem item;
            item.rect = box;
            item.color = {0.65, 0.65, 0.65};
            item.alpha = style.opacity;
            item.z_layer = style.position == Position::Absolute ? 1 + style.z_index : 0;
            item.order = state_.order_counter++;
            state_.rects.push_back(item);
        }
        state_.content_bottom = std::max(state_.content_bottom, box.y1);
    }

    void layout_absolute(const Node& node, const ComputedStyle& style, FlowCursor& cursor) {
        // static position is the fallback when left/top are auto
        double x = style.left.value_or(cursor.x);
        double y = style.top.value_or(cursor.y);
        FlowCursor inner;
        inner.left = x;
        inner.right = x + style.width.value_or(state_.viewport_width); // shrink handled by wrap
        inner.x = x;
        inner.y = y;
        std::optional<BoundingBox> clip;
        if (style.clip) {
            clip = BoundingBox{x + style.clip->left, y + style.clip->top, x + style.clip->right,
                               y + style.clip->bottom};
        }
        // background box for div-like overlays
        if (style.background) {
            double w = style.width.value_or(0);
            double h = style.height.value_or(0);
            if (w > 0 && h > 0) {
                RectItem item;
                item.rect = {x, y, x + w, y + h};
                item.color = *style.background;
                item.alpha = style.opacity;
                item.clip = clip;
                item.z_layer = 1 + style.z_index;
                item.order = state_.order_counter++;
                if (!style.visibility_hidden) state_.rects.push_back(item);
                state_.content_bottom = std::max(state_.content_bottom, y + h);
            }
        }
        AbsFrame frame{clip, 1 + style.z_index};
        abs_stack_.push_back(frame);
        layout_children(node, style, inner, /*abs_context=*/true);
        close_line(inner);
        abs_stack_.pop_back();
    }

    void layout_text(const Node& text_node, const ComputedStyle& style, FlowCursor& cursor,
                     bool /*abs_context*/) {
        const std::string& raw = text_node.text;
        double em = style.font_size;
        double line_h = em * 1.25;
        // words over whitespace; layout collapses runs
        std::vector<std::string> words;
        std::string cur;
        std::size_t pos = 0;
        while (pos < raw.size()) {
            std::size_t start = pos;
            char32_t cp = utf8_next(raw, pos);
            if (cp_is_space(cp)) {
                if (!cur.empty()) words.push_back(std::move(cur));
                cur.clear();
            } else {
                cur += raw.substr(start, pos - start);
            }
        }
        if (!cur.empty()) words.push_back(std::move(cur));
        if (words.empty()) return;

        bool blank_font = false;
        auto fam = state_.blank_families.find(style.font_family);
        if (fam != state_.blank_families.end() && fam->second) blank_font = true;

        std::optional<BoundingBox> clip;
        int z_layer = 0;
        if (!abs_stack_.empty()) {
            clip = abs_stack_.back().clip;
            z_layer = abs_stack_.back().z_layer;
        }

        std::string pending;
        double frag_x = cursor.x;
        auto flush_fragment = [&]() {
            if (pending.empty()) return;
            cursor.line_height = std::max(cursor.line_height, line_h);
            TextFragment frag;
            frag.text = pending;
            frag.x = frag_x;
            frag.baseline = cursor.y + em * kFontAscentEm;
            frag.em = em;
            frag.color = style.color;
            frag.alpha = style.opacity;
            frag.paint = !style.visibility_hidden;
            frag.blank_font = blank_font;
            frag.clip = clip;
            frag.z_layer = z_layer;
            frag.order = state_.order_counter++;
            frag.source = &text_node;
            double w = advance_width(pending, em);
            BoundingBox rect{frag_x, cursor.y, frag_x + w, cursor.y + line_h};
            if (clip) rect = bbox_intersect(rect, *clip);
            state_.node_rects[&text_node].push_back(rect);
            state_.fragments.push_back(std::move(frag));
            state_.content_bottom = std::max(state_.content_bottom, cursor.y + line_h);
            pending.clear();
        };

        for (const auto& word : words) {
            double word_w = advance_width(word, em);
            double need = pending.empty() ? word_w : advance_width(pending + " " + word, em);
            if (cursor.line_open && frag_x + need > cursor.right && !pending.empty()) {
                flush_fragment();
                close_line(cursor);
            }
            if (!cursor.line_open) {
                cursor.x = cursor.left;
                frag_x = cursor.x;
                cursor.line_open = true;
                cursor.line_height = line_h;
            }
            if (frag_x + (pending.empty() ? word_w : need) > cursor.right && pending.empty() &&
                cursor.x != cursor.left) {
                close_line(cursor);
                cursor.x = cursor.left;
                frag_x = cursor.x;
                cursor.line_open = true;
            }
            if (pending.empty()) {
                frag_x = cursor.x;
                pending = word;
            } else {
                pending += " " + word;
            }
            cursor.x = frag_x + advance_width(pending, em);
            // inter-word space advances the cursor
            cursor.x += 0; // next word concatenates with a space in pending
        }
        flush_fragment();
        cursor.x += advance_width(" ", em); // trailing separator between nodes
    }

    void close_line(FlowCursor& cursor) {
        if (cursor.line_open) {
            cursor.y += cursor.line_height;
            cursor.x = cursor.left;
            cursor.line_open = false;
            cursor.line_height = 0;
        }
    }

    struct AbsFrame {
        std::optional<BoundingBox> clip;
        int z_layer = 1;
    };

    LayoutState& state_;
    std::vector<AbsFrame> abs_stack_;
    std::optional<std::size_t> body_bg_index_;
};

} // namespace engine_detail

/// Renders HTML with the built-in layout engine: full-page screenshot plus
/// one TextBlock per DOM text node carrying the node's raw text content (so
/// display:none / visibility:hidden / opacity:0 / offpage text is present in
/// extraction while absent from pixels).
inline RenderedPage render_html_string(const std::string& source,
                                       const HtmlRenderOptions& options = {}) {
    auto root = parse_html(source);

    css_detail::Stylesheet sheet;
    walk_dom(root.get(), [&](Node* node) {
        if (node->kind == Node::Kind::Element && node->tag == "style") {
            for (const auto& child : node->children)
                if (child->kind == Node::Kind::Text) css_detail::parse_stylesheet(child->text, sheet);
        }
    });

    engine_detail::LayoutState state;
    state.sheet = &sheet;
    state.viewport_width = options.viewport_width;
    for (const auto& face : sheet.font_faces) {
        std::string decoded = base64_decode(face.data);
        state.blank_families[face.family] = engine_detail::font_data_is_blank(decoded);
    }

    ComputedStyle initial;
    initial.font_size = 16.0;
    engine_detail::Layouter layouter(state);
    layouter.layout_document(*root, initial);

    double content_h = std::min(std::max(state.content_bottom + 16.0, options.viewport_height),
                                options.max_page_height);
    const double ds = options.device_scale;
    int pix_w = static_cast<int>(std::ceil(options.viewport_width * ds));
    int pix_h = static_cast<int>(std::ceil(content_h * ds));
    RenderedPage page;
    page.device_scale = ds;
    page.screenshot = RasterImage::filled(pix_w, pix_h, 96.0 * ds, 255, 255, 255);

    // paint: z layers ascending, stable by layout order
    struct PaintRef {
        int z;
        std::size_t order;
        bool is_text;
        std::size_t index;
    };
    std::vector<PaintRef> paints;
    for (std::size_t i = 0; i < state.rects.size(); ++i)
        paints.push_back({state.rects[i].z_layer, state.rects[i].order, false, i});
    for (std::size_t i = 0; i < state.fragments.size(); ++i)
        paints.push_back({state.fragments[i].z_layer, state.fragments[i].order, true, i});
    std::sort(paints.begin(), paints.end(), [](const PaintRef& a, const PaintRef& b) {
        return a.z != b.z ? a.z < b.z : a.order < b.order;
    });
    auto to_byte = [](double v) {
        return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    };
    for (const auto& ref : paints) {
        if (!ref.is_text) {
            const auto& item = state.rects[ref.index];
            if (item.alpha <= 0) continue;
            BoundingBox r = item.rect;
            if (item.clip) r = bbox_intersect(r, *item.clip);
            int x0 = std::max(0, static_cast<int>(std::floor(r.x0 * ds)));
            int y0 = std::max(0, static_cast<int>(std::floor(r.y0 * ds)));
            int x1 = std::min(pix_w, static_cast<int>(std::ceil(r.x1 * ds)));
            int y1 = std::min(pix_h, static_cast<int>(std::ceil(r.y1 * ds)));
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x)
                    page.screenshot.blend(x, y, to_byte(item.color.r), to_byte(item.color.g),
                                          to_byte(item.color.b), item.alpha);
        } else {
            const auto& frag = state.fragments[ref.index];
            if (!frag.paint || frag.blank_font || frag.alpha <= 0) continue;
            std::optional<PixelClip> clip;
            if (frag.clip)
                clip = PixelClip{frag.clip->x0 * ds, frag.clip->y0 * ds, frag.clip->x1 * ds,
                                 frag.clip->y1 * ds};
            draw_text_line(page.screenshot, frag.text, frag.x * ds, frag.baseline * ds,
                           frag.em * ds, to_byte(frag.color.r), to_byte(frag.color.g),
                           to_byte(frag.color.b), frag.alpha, clip);
        }
    }

    // DOM walk: every text node's raw content becomes a TextBlock
    std::size_t counter = 0;
    walk_dom(root.get(), [&](Node* node) {
        if (node->kind != Node::Kind::Text) return;
        if (node->parent && (node->parent->tag == "style" || node->parent->tag == "script" ||
                             node->parent->tag == "title" || node->parent->tag == "head"))
            return;
        std::size_t non_ws = 0, pos = 0;
        while (pos < node->text.size())
            if (!cp_is_space(utf8_next(node->text, pos))) ++non_ws;
        if (non_ws < options.min_text_node_chars) return;
        TextBlock block;
        block.page_index = 0;
        block.source = BlockSource::NativeBlock;
        block.text = node->text;
        block.block_id = "n" + std::to_string(counter++);
        auto rects = state.node_rects.find(node);
        if (rects != state.node_rects.end() && !rects->second.empty()) {
            BoundingBox box = rects->second.front();
            for (const auto& r : rects->second) box = bbox_union(box, r);
            block.bbox = normalize_bbox(box);
        } else {
            block.bbox = {0, 0, 0, 0}; // zero client rects
        }
        page.text_nodes.push_back(std::move(block));
    });
    return page;
}

/// Loads a local file and renders it. URLs raise LoadError in the built-in
/// engine (no network stack); the hermetic flag makes that explicit.
inline RenderedPage render_html(const std::string& source_path,
                                const HtmlRenderOptions& options = {}) {
    if (source_path.rfind("http://", 0) == 0 || source_path.rfind("https://", 0) == 0) {
        throw LoadError(options.hermetic
                            ? "network loads disabled (hermetic): " + source_path
                            : "built-in engine cannot fetch URLs: " + source_path);
    }
    std::ifstream in(source_path, std::ios::binary);
    if (!in) throw LoadError("cannot open: " + source_path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return render_html_string(bytes, options);
}

/// Same clamp/zero-size semantics as the PDF crop, with device_scale applied.
inline RasterImage crop_node_image(const RenderedPage& page, const TextBlock& block,
                                   double padding_css_px = 2.0) {
    BoundingBox b = bbox_pad(normalize_bbox(block.bbox), padding_css_px);
    if (block.bbox.degenerate()) return RasterImage{}; // zero client rects
    const double ds = page.device_scale;
    long x0 = static_cast<long>(std::floor(b.x0 * ds + 1e-6));
    long y0 = static_cast<long>(std::floor(b.y0 * ds + 1e-6));
    long x1 = static_cast<long>(std::ceil(b.x1 * ds - 1e-6));
    long y1 = static_cast<long>(std::ceil(b.y1 * ds - 1e-6));
    return crop_image(page.screenshot, x0, y0, x1, y1);
}

} // namespace ghostlint::html
