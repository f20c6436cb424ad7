#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ghostlint/geometry.hpp"
#include "ghostlint/pdf/document.hpp"
#include "ghostlint/pdf/objects.hpp"

namespace ghostlint::pdf {

struct Mat {
    // [a b 0; c d 0; e f 1]
    double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

    static Mat identity() { return {}; }
    static Mat translate(double tx, double ty) { return {1, 0, 0, 1, tx, ty}; }
    static Mat scale(double sx, double sy) { return {sx, 0, 0, sy, 0, 0}; }

    Mat mul(const Mat& m) const { // this * m (apply this first, then m)
        return {a * m.a + b * m.c,         a * m.b + b * m.d,
                c * m.a + d * m.c,         c * m.b + d * m.d,
                e * m.a + f * m.c + m.e,   e * m.b + f * m.d + m.f};
    }

    void apply(double x, double y, double& ox, double& oy) const {
        ox = a * x + c * y + e;
        oy = b * x + d * y + f;
    }

    std::optional<Mat> inverse() const {
        double det = a * d - b * c;
        if (std::abs(det) < 1e-12) return std::nullopt;
        Mat inv;
        inv.a = d / det;
        inv.b = -b / det;
        inv.c = -c / det;
        inv.d = a / det;
        inv.e = (c * f - d * e) / det;
        inv.f = (b * e - a * f) / det;
        return inv;
    }

    BoundingBox apply_box(const BoundingBox& box) const {
        double xs[4], ys[4];
        apply(box.x0, box.y0, xs[0], ys[0]);
        apply(box.x1, box.y0, xs[1], ys[1]);
        apply(box.x0, box.y1, xs[2], ys[2]);
        apply(box.x1, box.y1, xs[3], ys[3]);
        BoundingBox out{xs[0], ys[0], xs[0], ys[0]};
        for (int i = 1; i < 4; ++i) {
            out.x0 = std::min(out.x0, xs[i]);
            out.y0 = std::min(out.y0, ys[i]);
            out.x1 = std::max(out.x1, xs[i]);
            out.y1 = std::max(out.y1, ys[i]);
        }
        return out;
    }
};

struct Rgb {
    double r = 0, g = 0, b = 0;
};

enum class FontKind { Simple, Type3 };

struct FontInfo {
    FontKind kind = FontKind::Simple;
    std::string base_font;
    // simple fonts: code -> unicode via Latin-1-ish identity unless
    // /Differences names override; widths in 1/1000 em
    std::map<int, char32_t> differences;
    std::map<int, double> widths; // glyph space units (1/1000 em for simple)
    double default_width = 600.0;
    // Type3
    Mat font_matrix = Mat::scale(0.001, 0.001);
    std::map<int, std::string> code_to_glyph_name;
    Dict char_procs;     // glyph name -> stream (unresolved)
    Object resources;    // Type3 /Resources
    Object source;       // the font dict itself

    char32_t unicode_for(int code) const {
        auto it = differences.find(code);
        if (it != differences.end()) return it->second;
        return static_cast<char32_t>(code);
    }

    double advance_em(int code) const { // in em units
        auto it = widths.find(code);
        double w = it != widths.end() ? it->second : default_width;
        if (kind == FontKind::Simple) return w / 1000.0;
        // Type3 widths live in glyph space; FontMatrix maps to text space
        return w * font_matrix.a;
    }
};

struct GraphicsState {
    Mat ctm; // current space -> page default user space
    Rgb fill{0, 0, 0};
    Rgb stroke{0, 0, 0};
    double fill_alpha = 1.0;
    double stroke_alpha = 1.0;
    std::optional<BoundingBox> clip; // default user space
    // text state (survives BT/ET)
    double char_spacing = 0;
    double word_spacing = 0;
    double horiz_scale = 1.0;
    double leading = 0;
    double font_size = 0;
    double rise = 0;
    int render_mode = 0;
    std::shared_ptr<FontInfo> font;
};

struct GlyphInstance {
    int code = 0;
    char32_t unicode = 0;
    Mat trm;              // text rendering matrix -> default user space
    BoundingBox user_box; // em box transformed to default user space
    double em_size = 0;   // |size| in user units, for line grouping
};

struct GlyphRun {
    std::vector<GlyphInstance> glyphs;
    std::shared_ptr<FontInfo> font;
    Rgb fill;
    double alpha = 1.0;
    int render_mode = 0;
    std::optional<BoundingBox> clip;
    bool ocg_visible_current = true;
    bool ocg_visible_original = true;
};

class ContentSink {
public:
    virtual ~ContentSink() = default;
    virtual void on_glyph_run(const GlyphRun&) {}
    virtual void on_fill_rect(const BoundingBox& /*user_rect*/, const Rgb&, double /*alpha*/,
                              const std::optional<BoundingBox>& /*clip*/, bool /*ocg_cur*/,
                              bool /*ocg_orig*/) {}
    virtual void on_image(const BoundingBox& /*user_box*/, const std::optional<BoundingBox>&,
                          bool /*ocg_cur*/, bool /*ocg_orig*/) {}
    virtual void on_clip_set() {}
};

/// Walks a page's content stream (and form XObjects / Type3 glyph
/// procedures), maintaining graphics/text state and reporting shows, fills,
/// images and clip activity to the sink.
class ContentInterpreter {
public:
    ContentInterpreter(const PdfDocument& doc, ContentSink& sink)
        : doc_(doc), sink_(sink) {}

    void run_page(std::size_t page_index) {
        GraphicsState gs;
        run(doc_.page_content(page_index), doc_.page_resources(page_index), gs, 0);
    }

    void run(const std::string& content, const Object& resources, GraphicsState initial,
             int depth) {
        if (depth > 12) return; // recursion guard for malicious nesting
        std::vector<GraphicsState> stack;
        GraphicsState gs = initial;
        std::vector<Object> operands;
        // text object state
        Mat tm, tlm;
        // current path as rect list + pending clip flag
        std::vector<BoundingBox> path_rects;
        std::optional<BoundingBox> path_bbox;
        std::optional<double> cur_x, cur_y;
        bool pending_clip = false;
        // OCG nesting: stack of (current_visible, original_visible)
        std::vector<std::pair<bool, bool>> oc_stack;

        auto ocg_cur = [&]() {
            for (auto [c, o] : oc_stack)
                if (!c) return false;
            return true;
        };
        auto ocg_orig = [&]() {
            for (auto [c, o] : oc_stack)
                if (!o) return false;
            return true;
        };

        auto num = [&](std::size_t i) -> double {
            return i < operands.size() && operands[i].is_number() ? operands[i].as_double() : 0.0;
        };

        auto add_path_point = [&](double x, double y) {
            double ux, uy;
            gs.ctm.apply(x, y, ux, uy);
            if (!path_bbox) {
                path_bbox = BoundingBox{ux, uy, ux, uy};
            } else {
                path_bbox->x0 = std::min(path_bbox->x0, ux);
                path_bbox->y0 = std::min(path_bbox->y0, uy);
                path_bbox->x1 = std::max(path_bbox->x1, ux);
                path_bbox->y1 = std::max(path_bbox->y1, uy);
            }
            cur_x = x;
            cur_y = y;
        };

        auto end_path = [&]() {
            if (pending_clip) {
                BoundingBox clip_box{0, 0, 0, 0};
                if (!path_rects.empty()) {
                    clip_box = path_rects.front();
                    for (const auto& r : path_rects) clip_box = bbox_union(clip_box, r);
                    if (path_bbox) clip_box = bbox_union(clip_box, *path_bbox);
                } else if (path_bbox) {
                    clip_box = *path_bbox;
                }
                gs.clip = gs.clip ? bbox_intersect(*gs.clip, clip_box) : clip_box;
                sink_.on_clip_set();
                pending_clip = false;
            }
            path_rects.clear();
            path_bbox.reset();
            cur_x.reset();
            cur_y.reset();
        };

        auto fill_path = [&]() {
            std::vector<BoundingBox> rects = path_rects;
            if (rects.empty() && path_bbox) rects.push_back(*path_bbox);
            for (const auto& r : rects) {
                BoundingBox user = normalize_bbox(r);
                sink_.on_fill_rect(user, gs.fill, gs.fill_alpha, gs.clip, ocg_cur(), ocg_orig());
            }
        };

        auto show_string = [&](const std::string& bytes) {
            if (!gs.font || gs.font_size == 0) return;
            GlyphRun run;
            run.font = gs.font;
            run.fill = gs.fill;
            run.alpha = gs.fill_alpha;
            run.render_mode = gs.render_mode;
            run.clip = gs.clip;
            run.ocg_visible_current = ocg_cur();
            run.ocg_visible_original = ocg_orig();
            for (unsigned char byte : bytes) {
                int code = byte;
                // Trm = [Tfs*Th 0 0 Tfs 0 Ts] x Tm x CTM
                Mat param{gs.font_size * gs.horiz_scale, 0, 0, gs.font_size, 0, gs.rise};
                Mat trm = param.mul(tm).mul(gs.ctm);
                GlyphInstance gi;
                gi.code = code;
                gi.unicode = gs.font->unicode_for(code);
                gi.trm = trm;
                gi.user_box = trm.apply_box(BoundingBox{0.0, -0.3, 0.6, 0.7});
                double sx, sy, ox, oy;
                trm.apply(0, 0, ox, oy);
                trm.apply(0, 1, sx, sy);
                gi.em_size = std::hypot(sx - ox, sy - oy);
                run.glyphs.push_back(gi);
                double adv = gs.font->advance_em(code) * gs.font_size + gs.char_spacing;
                if (code == ' ') adv += gs.word_spacing;
                adv *= gs.horiz_scale;
                tm = Mat::translate(adv, 0).mul(tm);
            }
            if (!run.glyphs.empty()) sink_.on_glyph_run(run);
            // Type3 glyph procedures render through the sink as well
            if (gs.font->kind == FontKind::Type3 && want_type3_procs_) {
                for (const auto& gi : run.glyphs) {
                    if (!run.ocg_visible_original || run.render_mode == 3) continue;
                    auto name_it = gs.font->code_to_glyph_name.find(gi.code);
                    if (name_it == gs.font->code_to_glyph_name.end()) continue;
                    auto proc_it = gs.font->char_procs.find(name_it->second);
                    if (proc_it == gs.font->char_procs.end()) continue;
                    Object proc = doc_.resolve(proc_it->second);
                    if (!proc.is_stream()) continue;
                    GraphicsState glyph_gs = gs;
                    glyph_gs.ctm = gs.font->font_matrix.mul(gi.trm);
                    glyph_gs.font.reset();
                    Object res = gs.font->resources.is_dict() ? gs.font->resources : resources;
                    run_string(doc_.decoded_stream(proc), res, glyph_gs, depth + 1);
                }
            }
        };

        Lexer lexer(content);
        ObjectParser parser(lexer);
        while (true) {
            Lexer::Token t = lexer.next();
            if (t.kind == Lexer::Token::Kind::End) break;
            if (t.kind != Lexer::Token::Kind::Keyword) {
                // operand
                try {
                    operands.push_back(parser.parse_token(t));
                } catch (const Error&) {
                    operands.clear();
                }
                continue;
            }
            const std::string& op = t.text;
            if (op == "true") { operands.push_back(Object::make_bool(true)); continue; }
            if (op == "false") { operands.push_back(Object::make_bool(false)); continue; }
            if (op == "null") { operands.push_back(Object()); continue; }

            if (op == "q") {
                stack.push_back(gs);
            } else if (op == "Q") {
                if (!stack.empty()) {
                    gs = stack.back();
                    stack.pop_back();
                }
            } else if (op == "cm") {
                Mat m{num(0), num(1), num(2), num(3), num(4), num(5)};
                gs.ctm = m.mul(gs.ctm);
            } else if (op == "gs") {
                apply_ext_gstate(gs, resources, operands);
            } else if (op == "g") {
                gs.fill = {num(0), num(0), num(0)};
            } else if (op == "G") {
                gs.stroke = {num(0), num(0), num(0)};
            } else if (op == "rg") {
                gs.fill = {num(0), num(1), num(2)};
            } else if (op == "RG") {
                gs.stroke = {num(0), num(1), num(2)};
            } else if (op == "k") {
                gs.fill = cmyk(num(0), num(1), num(2), num(3));
            } else if (op == "K") {
                gs.stroke = cmyk(num(0), num(1), num(2), num(3));
            } else if (op == "sc" || op == "scn") {
                set_components(gs.fill, operands);
            } else if (op == "SC" || op == "SCN") {
                set_components(gs.stroke, operands);
            } else if (op == "cs" || op == "CS") {
                // colourspace selection; components arrive via sc/scn
            } else if (op == "re") {
                double x = num(0), y = num(1), w = num(2), h = num(3);
                BoundingBox user = gs.ctm.apply_box(normalize_bbox({x, y, x + w, y + h}));
                path_rects.push_back(user);
                add_path_point(x, y);
                add_path_point(x + w, y + h);
            } else if (op == "m" || op == "l") {
                add_path_point(num(0), num(1));
            } else if (op == "c") {
                add_path_point(num(0), num(1));
                add_path_point(num(2), num(3));
                add_path_point(num(4), num(5));
            } else if (op == "v" || op == "y") {
                add_path_point(num(0), num(1));
                add_path_point(num(2), num(3));
            } else if (op == "h") {
                // closepath
            } else if (op == "W" || op == "W*") {
                pending_clip = true;
            } else if (op == "n") {
                end_path();
            } else if (op == "f" || op == "F" || op == "f*" || op == "b" || op == "b*" ||
                       op == "B" || op == "B*") {
                fill_path();
                end_path();
            } else if (op == "S" || op == "s") {
                end_path(); // strokes carry no hidden-text signal we track
            } else if (op == "BT") {
                tm = Mat::identity();
                tlm = Mat::identity();
            } else if (op == "ET") {
                // text state survives the text object
            } else if (op == "Tf") {
                if (operands.size() >= 2 && operands[0].is_name()) {
                    gs.font = load_font(resources, operands[0].as_name());
                    gs.font_size = operands[1].as_double();
                }
            } else if (op == "Td") {
                tlm = Mat::translate(num(0), num(1)).mul(tlm);
                tm = tlm;
            } else if (op == "TD") {
                gs.leading = -num(1);
                tlm = Mat::translate(num(0), num(1)).mul(tlm);
                tm = tlm;
            } else if (op == "Tm") {
                tlm = Mat{num(0), num(1), num(2), num(3), num(4), num(5)};
                tm = tlm;
            } else if (op == "T*") {
                tlm = Mat::translate(0, -gs.leading).mul(tlm);
                tm = tlm;
            } else if (op == "TL") {
                gs.leading = num(0);
            } else if (op == "Tc") {
                gs.char_spacing = num(0);
            } else if (op == "Tw") {
                gs.word_spacing = num(0);
            } else if (op == "Tz") {
                gs.horiz_scale = num(0) / 100.0;
            } else if (op == "Ts") {
                gs.rise = num(0);
            } else if (op == "Tr") {
                gs.render_mode = static_cast<int>(num(0));
            } else if (op == "Tj") {
                if (!operands.empty() && operands[0].is_string()) show_string(operands[0].as_string());
            } else if (op == "'") {
                tlm = Mat::translate(0, -gs.leading).mul(tlm);
                tm = tlm;
                if (!operands.empty() && operands[0].is_string()) show_string(operands[0].as_string());
            } else if (op == "\"") {
                if (operands.size() >= 3) {
                    gs.word_spacing = num(0);
                    gs.char_spacing = num(1);
                    tlm = Mat::translate(0, -gs.leading).mul(tlm);
                    tm = tlm;
                    if (operands[2].is_string()) show_string(operands[2].as_string());
                }
            } else if (op == "TJ") {
                if (!operands.empty() && operands[0].is_array()) {
                    for (const auto& el : operands[0].array()) {
                        if (el.is_string()) {
                            show_string(el.as_string());
                        } else if (el.is_number()) {
                            double adv = -el.as_double() / 1000.0 * gs.font_size * gs.horiz_scale;
                            tm = Mat::translate(adv, 0).mul(tm);
                        }
                    }
                }
            } else if (op == "BDC" || op == "BMC") {
                bool cur = true, orig = true;
                if (op == "BDC" && operands.size() >= 2 && operands[0].is_name() &&
                    operands[0].as_name() == "OC") {
                    resolve_oc_state(resources, operands[1], cur, orig);
                }
                oc_stack.emplace_back(cur, orig);
            } else if (op == "EMC") {
                if (!oc_stack.empty()) oc_stack.pop_back();
            } else if (op == "Do") {
                if (!operands.empty() && operands[0].is_name())
                    do_xobject(gs, resources, operands[0].as_name(), depth, ocg_cur(), ocg_orig());
            } else if (op == "BI") {
                skip_inline_image(lexer);
            } else if (op == "d0" || op == "d1") {
                // Type3 glyph metrics; advance comes from /Widths
            }
            operands.clear();
        }
    }

    /// Number of clipping-path operations a full page (with form XObjects)
    /// performs.
    static std::size_t count_clip_ops(const PdfDocument& doc, std::size_t page_index) {
        struct Counter : ContentSink {
            std::size_t clips = 0;
            void on_clip_set() override { ++clips; }
        } counter;
        ContentInterpreter interp(doc, counter);
        interp.run_page(page_index);
        return counter.clips;
    }

    void set_want_type3_procs(bool v) { want_type3_procs_ = v; }

private:
    void run_string(const std::string& content, const Object& resources, GraphicsState gs,
                    int depth) {
        run(content, resources, gs, depth);
    }

    static Rgb cmyk(double c, double m, double y, double k) {
        return {(1 - c) * (1 - k), (1 - m) * (1 - k), (1 - y) * (1 - k)};
    }

    static void set_components(Rgb& target, const std::vector<Object>& operands) {
        std::vector<double> comps;
        for (const auto& o : operands)
            if (o.is_number()) comps.push_back(o.as_double());
        if (comps.size() == 1) {
            target = {comps[0], comps[0], comps[0]};
        } else if (comps.size() == 3) {
            target = {comps[0], comps[1], comps[2]};
        } else if (comps.size() == 4) {
            target = cmyk(comps[0], comps[1], comps[2], comps[3]);
        }
    }

    void apply_ext_gstate(GraphicsState& gs, const Object& resources,
                          const std::vector<Object>& operands) {
        if (operands.empty() || !operands[0].is_name()) return;
        Object ext = doc_.resolve(resources.get("ExtGState"));
        if (!ext.is_dict()) return;
        Object state = doc_.resolve(ext.get(operands[0].as_name()));
        if (!state.is_dict()) return;
        Object ca = doc_.resolve(state.get("ca"));
        if (ca.is_number()) gs.fill_alpha = ca.as_double();
        Object CA = doc_.resolve(state.get("CA"));
        if (CA.is_number()) gs.stroke_alpha = CA.as_double();
        Object font = doc_.resolve(state.get("Font"));
        if (font.is_array() && font.array().size() == 2) {
            // rarely used; ignore
        }
    }

    void resolve_oc_state(const Object& resources, const Object& operand, bool& cur, bool& orig) {
        Object target;
        if (operand.is_name()) {
            Object props = doc_.resolve(resources.get("Properties"));
            if (props.is_dict()) {
                auto it = props.dict().find(operand.as_name());
                if (it != props.dict().end()) target = it->second;
            }
        } else {
            target = operand;
        }
        if (target.is_ref()) {
            Ref ref = target.as_ref();
            Object grp = doc_.resolve(target);
            Object type = doc_.resolve(grp.get("Type"));
            if (type.is_name() && type.as_name() == "OCMD") {
                Object inner = grp.get("OCGs");
                if (inner.is_ref()) {
                    cur = doc_.ocg_visible_current(inner.as_ref());
                    orig = doc_.ocg_visible_original(inner.as_ref());
                    return;
                }
                if (doc_.resolve(inner).is_array()) {
                    cur = orig = true;
                    for (const auto& g : doc_.resolve(inner).array()) {
                        if (g.is_ref()) {
                            cur = cur && doc_.ocg_visible_current(g.as_ref());
                            orig = orig && doc_.ocg_visible_original(g.as_ref());
                        }
                    }
                    return;
                }
            }
            cur = doc_.ocg_visible_current(ref);
            orig = doc_.ocg_visible_original(ref);
        }
    }

    void do_xobject(GraphicsState gs, const Object& resources, const std::string& name, int depth,
                    bool ocg_cur, bool ocg_orig) {
        Object xobjects = doc_.resolve(resources.get("XObject"));
        if (!xobjects.is_dict()) return;
        auto it = xobjects.dict().find(name);
        if (it == xobjects.dict().end()) return;
        // per-XObject /OC
        Object xo = doc_.resolve(it->second);
        if (!xo.is_stream()) return;
        bool cur = ocg_cur, orig = ocg_orig;
        Object oc = xo.get("OC");
        if (oc.is_ref()) {
            cur = cur && doc_.ocg_visible_current(oc.as_ref());
            orig = orig && doc_.ocg_visible_original(oc.as_ref());
        }
        Object subtype = doc_.resolve(xo.get("Subtype"));
        if (subtype.is_name() && subtype.as_name() == "Image") {
            BoundingBox unit{0, 0, 1, 1};
            sink_.on_image(gs.ctm.apply_box(unit), gs.clip, cur, orig);
            return;
        }
        if (!subtype.is_name() || subtype.as_name() != "Form") return;
        Object matrix = doc_.resolve(xo.get("Matrix"));
        if (matrix.is_array() && matrix.array().size() >= 6) {
            Mat m{doc_.resolve(matrix.array()[0]).as_double(),
                  doc_.resolve(matrix.array()[1]).as_double(),
                  doc_.resolve(matrix.array()[2]).as_double(),
                  doc_.resolve(matrix.array()[3]).as_double(),
                  doc_.resolve(matrix.array()[4]).as_double(),
                  doc_.resolve(matrix.array()[5]).as_double()};
            gs.ctm = m.mul(gs.ctm);
        }
        Object bbox = doc_.resolve(xo.get("BBox"));
        if (bbox.is_array() && bbox.array().size() >= 4) {
            BoundingBox b = normalize_bbox({doc_.resolve(bbox.array()[0]).as_double(),
                                            doc_.resolve(bbox.array()[1]).as_double(),
                                            doc_.resolve(bbox.array()[2]).as_double(),
                                            doc_.resolve(bbox.array()[3]).as_double()});
            BoundingBox user = gs.ctm.apply_box(b);
            gs.clip = gs.clip ? bbox_intersect(*gs.clip, user) : user;
        }
        Object inner_res = doc_.resolve(xo.get("Resources"));
        if (!inner_res.is_dict()) inner_res = resources;
        // keep the OC veil on everything inside the form
        struct OcFilter : ContentSink {
            ContentSink* inner;
            bool cur, orig;
            void on_glyph_run(const GlyphRun& r) override {
                GlyphRun copy = r;
                copy.ocg_visible_current = copy.ocg_visible_current && cur;
                copy.ocg_visible_original = copy.ocg_visible_original && orig;
                inner->on_glyph_run(copy);
            }
            void on_fill_rect(const BoundingBox& b, const Rgb& c, double a,
                              const std::optional<BoundingBox>& cl, bool oc, bool oo) override {
                inner->on_fill_rect(b, c, a, cl, oc && cur, oo && orig);
            }
            void on_image(const BoundingBox& b, const std::optional<BoundingBox>& cl, bool oc,
                          bool oo) override {
                inner->on_image(b, cl, oc && cur, oo && orig);
            }
            void on_clip_set() override { inner->on_clip_set(); }
        } filter;
        filter.inner = &sink_;
        filter.cur = cur;
        filter.orig = orig;
        ContentInterpreter sub(doc_, filter);
        sub.set_want_type3_procs(want_type3_procs_);
        sub.run(doc_.decoded_stream(xo), inner_res, gs, depth + 1);
    }

    static void skip_inline_image(Lexer& lexer) {
        // scan for "EI" delimited by whitespace after the ID payload
        std::string_view data = lexer.data();
        std::size_t pos = lexer.pos();
        std::size_t id_at = data.find("ID", pos);
        if (id_at == std::string_view::npos) {
            lexer.seek(data.size());
            return;
        }
        pos = id_at + 3;
        while (pos + 1 < data.size()) {
            if (data[pos] == 'E' && data[pos + 1] == 'I' &&
                (pos == 0 || detail::is_pdf_whitespace(data[pos - 1])) &&
                (pos + 2 >= data.size() || detail::is_pdf_whitespace(data[pos + 2]) ||
                 detail::is_pdf_delimiter(data[pos + 2]))) {
                lexer.seek(pos + 2);
                return;
            }
            ++pos;
        }
        lexer.seek(data.size());
    }

    std::shared_ptr<FontInfo> load_font(const Object& resources, const std::string& name) {
        auto key = std::make_pair(resources_key(resources), name);
        auto it = font_cache_.find(key);
        if (it != font_cache_.end()) return it->second;
        auto info = std::make_shared<FontInfo>();
        Object fonts = doc_.resolve(resources.get("Font"));
        if (fonts.is_dict()) {
            auto fit = fonts.dict().find(name);
            if (fit != fonts.dict().end()) {
                Object font = doc_.resolve(fit->second);
                if (font.is_dict()) *info = parse_font(font);
            }
        }
        font_cache_[key] = info;
        return info;
    }

    FontInfo parse_font(const Object& font) {
        FontInfo info;
        info.source = font;
        Object subtype = doc_.resolve(font.get("Subtype"));
        Object base = doc_.resolve(font.get("BaseFont"));
        if (base.is_name()) info.base_font = base.as_name();
        if (subtype.is_name() && subtype.as_name() == "Type3") {
            info.kind = FontKind::Type3;
            Object fm = doc_.resolve(font.get("FontMatrix"));
            if (fm.is_array() && fm.array().size() >= 6) {
                info.font_matrix = Mat{doc_.resolve(fm.array()[0]).as_double(),
                                       doc_.resolve(fm.array()[1]).as_double(),
                                       doc_.resolve(fm.array()[2]).as_double(),
                                       doc_.resolve(fm.array()[3]).as_double(),
                                       doc_.resolve(fm.array()[4]).as_double(),
                                       doc_.resolve(fm.array()[5]).as_double()};
            }
            Object procs = doc_.resolve(font.get("CharProcs"));
            if (procs.is_dict()) info.char_procs = procs.dict();
            info.resources = doc_.resolve(font.get("Resources"));
            info.default_width = 0.0;
        }
        Object enc = doc_.resolve(font.get("Encoding"));
        if (enc.is_dict()) {
            Object diff = doc_.resolve(enc.get("Differences"));
            if (diff.is_array()) {
                int code = 0;
                for (const auto& el : diff.array()) {
                    Object e = doc_.resolve(el);
                    if (e.is_number()) {
                        code = static_cast<int>(e.as_int());
                    } else if (e.is_name()) {
                        info.code_to_glyph_name[code] = e.as_name();
                        char32_t uni = glyph_name_to_unicode(e.as_name());
                        if (uni) info.differences[code] = uni;
                        ++code;
                    }
                }
            }
        }
        Object widths = doc_.resolve(font.get("Widths"));
        Object first = doc_.resolve(font.get("FirstChar"));
        if (widths.is_array() && first.is_number()) {
            int code = static_cast<int>(first.as_int());
            for (const auto& el : widths.array()) {
                Object w = doc_.resolve(el);
                if (w.is_number()) info.widths[code] = w.as_double();
                ++code;
            }
        }
        return info;
    }

    /// Minimal Adobe glyph list: ASCII coverage.
    static char32_t glyph_name_to_unicode(const std::string& name) {
        static const std::map<std::string, char32_t> table = {
            {"space", ' '},      {"exclam", '!'},     {"quotedbl", '"'},
            {"numbersign", '#'}, {"dollar", '$'},     {"percent", '%'},
            {"ampersand", '&'},  {"quotesingle", '\''}, {"parenleft", '('},
            {"parenright", ')'}, {"asterisk", '*'},   {"plus", '+'},
            {"comma", ','},      {"hyphen", '-'},     {"period", '.'},
            {"slash", '/'},      {"zero", '0'},       {"one", '1'},
            {"two", '2'},        {"three", '3'},      {"four", '4'},
            {"five", '5'},       {"six", '6'},        {"seven", '7'},
            {"eight", '8'},      {"nine", '9'},       {"colon", ':'},
            {"semicolon", ';'},  {"less", '<'},       {"equal", '='},
            {"greater", '>'},    {"question", '?'},   {"at", '@'},
            {"bracketleft", '['}, {"backslash", '\\'}, {"bracketright", ']'},
            {"asciicircum", '^'}, {"underscore", '_'}, {"grave", '`'},
            {"braceleft", '{'},  {"bar", '|'},        {"braceright", '}'},
            {"asciitilde", '~'},
        };
        if (name.size() == 1) return static_cast<char32_t>(name[0]);
        auto it = table.find(name);
        if (it != table.end()) return it->second;
        // uniXXXX
        if (name.size() == 7 && name.compare(0, 3, "uni") == 0) {
            char32_t v = 0;
            for (std::size_t i = 3; i < 7; ++i) {
                char c = name[i];
                if (!std::isxdigit(static_cast<unsigned char>(c))) return 0;
                v = (v << 4) | (std::isdigit(static_cast<unsigned char>(c))
                                    ? static_cast<char32_t>(c - '0')
                                    : static_cast<char32_t>(std::tolower(c) - 'a' + 10));
            }
            return v;
        }
        return 0;
    }

    static const void* resources_key(const Object& resources) {
        return resources.is_dict() ? static_cast<const void*>(&resources.dict()) : nullptr;
    }

    const PdfDocument& doc_;
    ContentSink& sink_;
    bool want_type3_procs_ = false;
    std::map<std::pair<const void*, std::string>, std::shared_ptr<FontInfo>> font_cache_;
};

} // namespace ghostlint::pdf
