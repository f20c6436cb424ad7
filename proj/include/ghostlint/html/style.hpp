#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghostlint/html/dom.hpp"

namespace ghostlint::html {

struct CssColor {
    double r = 0, g = 0, b = 0;
    bool operator==(const CssColor& o) const { return r == o.r && g == o.g && b == o.b; }
};

struct ClipRect {
    double top = 0, right = 0, bottom = 0, left = 0; // CSS clip: rect(t, r, b, l)
};

enum class Display { Inline, Block, None };
enum class Position { Static, Absolute };

struct ComputedStyle {
    Display display = Display::Inline;
    Position position = Position::Static;
    bool visibility_hidden = false;
    double opacity = 1.0;
    CssColor color{0, 0, 0};
    std::optional<CssColor> background;
    double font_size = 16.0;
    std::string font_family;
    std::optional<double> left, top;
    std::optional<double> width, height;
    std::optional<ClipRect> clip;
    int z_index = 0;
    double margin_top = 0, margin_bottom = 0, margin_left = 0, margin_right = 0;
};

namespace css_detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::map<std::string, std::string> parse_declarations(std::string_view css) {
    std::map<std::string, std::string> out;
    std::size_t i = 0;
    while (i < css.size()) {
        std::size_t colon = css.find(':', i);
        if (colon == std::string_view::npos) break;
        // the value ends at the next ';' outside parentheses (data: URLs in
        // url(...) contain semicolons)
        std::size_t semi = colon;
        int depth = 0;
        while (semi < css.size()) {
            char c = css[semi];
            if (c == '(') ++depth;
            else if (c == ')') depth = std::max(0, depth - 1);
            else if (c == ';' && depth == 0) break;
            ++semi;
        }
        std::string prop = dom_detail::to_lower(trim(css.substr(i, colon - i)));
        std::string value = trim(css.substr(colon + 1, semi - colon - 1));
        if (!prop.empty() && !value.empty()) out[prop] = value;
        i = semi + 1;
    }
    return out;
}

inline std::optional<double> parse_length(std::string_view v, double em_base) {
    std::string s = trim(v);
    if (s.empty()) return std::nullopt;
    if (s == "auto") return std::nullopt;
    double mult = 1.0;
    if (s.size() > 2 && s.compare(s.size() - 2, 2, "px") == 0) {
        s.resize(s.size() - 2);
    } else if (s.size() > 2 && s.compare(s.size() - 2, 2, "em") == 0) {
        s.resize(s.size() - 2);
        mult = em_base;
    } else if (s.size() > 2 && s.compare(s.size() - 2, 2, "pt") == 0) {
        s.resize(s.size() - 2);
        mult = 96.0 / 72.0;
    }
    char* end = nullptr;
    double val = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) return std::nullopt;
    return val * mult;
}

inline std::optional<CssColor> parse_color(std::string_view v) {
    std::string s = dom_detail::to_lower(trim(v));
    static const std::map<std::string, CssColor> named = {
        {"black", {0, 0, 0}},       {"white", {1, 1, 1}},     {"red", {1, 0, 0}},
        {"green", {0, 0.5, 0}},     {"blue", {0, 0, 1}},      {"gray", {0.5, 0.5, 0.5}},
        {"grey", {0.5, 0.5, 0.5}},  {"silver", {0.75, 0.75, 0.75}},
        {"yellow", {1, 1, 0}},      {"transparent", {1, 1, 1}},
    };
    auto it = named.find(s);
    if (it != named.end()) return it->second;
    if (!s.empty() && s[0] == '#') {
        auto nib = [](char c) -> int {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            return -1;
        };
        if (s.size() == 4) {
            int r = nib(s[1]), g = nib(s[2]), b = nib(s[3]);
            if (r >= 0 && g >= 0 && b >= 0)
                return CssColor{r * 17 / 255.0, g * 17 / 255.0, b * 17 / 255.0};
        }
        if (s.size() == 7) {
            int vals[3];
            for (int k = 0; k < 3; ++k) {
                int hi = nib(s[1 + 2 * k]), lo = nib(s[2 + 2 * k]);
                if (hi < 0 || lo < 0) return std::nullopt;
                vals[k] = hi * 16 + lo;
            }
            return CssColor{vals[0] / 255.0, vals[1] / 255.0, vals[2] / 255.0};
        }
        return std::nullopt;
    }
    if (s.rfind("rgb(", 0) == 0 && s.back() == ')') {
        std::string inner = s.substr(4, s.size() - 5);
        double comps[3] = {0, 0, 0};
        std::size_t pos = 0;
        for (int k = 0; k < 3; ++k) {
            std::size_t comma = inner.find(',', pos);
            std::string part = trim(inner.substr(pos, comma == std::string::npos
                                                          ? std::string::npos
                                                          : comma - pos));
            comps[k] = std::strtod(part.c_str(), nullptr) / 255.0;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return CssColor{comps[0], comps[1], comps[2]};
    }
    return std::nullopt;
}

inline std::optional<ClipRect> parse_clip(std::string_view v) {
    std::string s = dom_detail::to_lower(trim(v));
    if (s.rfind("rect(", 0) != 0 || s.back() != ')') return std::nullopt;
    std::string inner = s.substr(5, s.size() - 6);
    for (auto& c : inner)
        if (c == ',') c = ' ';
    double vals[4] = {0, 0, 0, 0};
    std::size_t pos = 0;
    for (int k = 0; k < 4; ++k) {
        while (pos < inner.size() && std::isspace(static_cast<unsigned char>(inner[pos]))) ++pos;
        std::size_t start = pos;
        while (pos < inner.size() && !std::isspace(static_cast<unsigned char>(inner[pos]))) ++pos;
        std::string part = inner.substr(start, pos - start);
        if (part == "auto") {
            vals[k] = -1; // marker
        } else {
            auto len = parse_length(part, 16.0);
            vals[k] = len.value_or(0.0);
        }
    }
    return ClipRect{vals[0], vals[1], vals[2], vals[3]};
}

struct FontFace {
    std::string family; // lowercase
    std::string data;   // decoded src payload (data: URLs only)
};

struct StyleRule {
    std::string selector; // "tag", ".class", "#id", "*"
    std::map<std::string, std::string> decls;
};

struct Stylesheet {
    std::vector<StyleRule> rules;
    std::vector<FontFace> font_faces;
};

inline void parse_stylesheet(std::string_view css, Stylesheet& sheet) {
    std::size_t i = 0;
    while (i < css.size()) {
        std::size_t open = css.find('{', i);
        if (open == std::string_view::npos) break;
        std::size_t close = css.find('}', open);
        if (close == std::string_view::npos) break;
        std::string selector_part = trim(css.substr(i, open - i));
        std::string body(css.substr(open + 1, close - open - 1));
        i = close + 1;
        if (selector_part.rfind("@font-face", 0) == 0) {
            auto decls = parse_declarations(body);
            FontFace face;
            auto fam = decls.find("font-family");
            if (fam != decls.end()) {
                std::string f = trim(fam->second);
                if (!f.empty() && (f.front() == '"' || f.front() == '\''))
                    f = f.substr(1, f.size() - 2);
                face.family = dom_detail::to_lower(f);
            }
            auto src = decls.find("src");
            if (src != decls.end()) {
                // url(data:...;base64,XXX)
                std::string s = src->second;
                std::size_t b64 = s.find("base64,");
                if (b64 != std::string::npos) {
                    std::size_t end = s.find(')', b64);
                    face.data = s.substr(b64 + 7, end == std::string::npos
                                                     ? std::string::npos
                                                     : end - b64 - 7);
                }
            }
            if (!face.family.empty()) sheet.font_faces.push_back(std::move(face));
            continue;
        }
        // comma-separated simple selectors
        std::size_t pos = 0;
        while (pos <= selector_part.size()) {
            std::size_t comma = selector_part.find(',', pos);
            std::string sel = trim(selector_part.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (!sel.empty())
                sheet.rules.push_back({dom_detail::to_lower(sel), parse_declarations(body)});
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
}

inline bool selector_matches(const std::string& sel, const Node& node) {
    if (sel == "*") return true;
    if (sel.empty()) return false;
    if (sel[0] == '.') {
        const std::string* cls = node.attr("class");
        if (!cls) return false;
        std::string want = sel.substr(1);
        std::size_t pos = 0;
        while (pos < cls->size()) {
            while (pos < cls->size() && std::isspace(static_cast<unsigned char>((*cls)[pos]))) ++pos;
            std::size_t start = pos;
            while (pos < cls->size() && !std::isspace(static_cast<unsigned char>((*cls)[pos]))) ++pos;
            if (cls->substr(start, pos - start) == want) return true;
        }
        return false;
    }
    if (sel[0] == '#') {
        const std::string* id = node.attr("id");
        return id && *id == sel.substr(1);
    }
    return node.tag == sel;
}

} // namespace css_detail

/// Resolves the computed style for an element given the stylesheet, the
/// inline style attribute, and the parent's inheritable properties.
inline ComputedStyle compute_style(const Node& node, const css_detail::Stylesheet& sheet,
                                   const ComputedStyle& parent) {
    ComputedStyle style;
    // inherited
    style.color = parent.color;
    style.font_size = parent.font_size;
    style.font_family = parent.font_family;
    style.visibility_hidden = parent.visibility_hidden;

    // display defaults per tag
    const std::string& tag = node.tag;
    if (tag == "div" || tag == "p" || tag == "body" || tag == "html" || tag == "h1" ||
        tag == "h2" || tag == "h3" || tag == "ul" || tag == "ol" || tag == "li" ||
        tag == "section" || tag == "article" || tag == "header" || tag == "footer" ||
        tag == "table" || tag == "pre" || tag == "blockquote")
        style.display = Display::Block;
    if (tag == "h1") {
        style.font_size = parent.font_size * 2.0;
        style.margin_top = style.margin_bottom = 0.67 * style.font_size;
    } else if (tag == "h2") {
        style.font_size = parent.font_size * 1.5;
        style.margin_top = style.margin_bottom = 0.83 * style.font_size;
    } else if (tag == "p" || tag == "ul" || tag == "ol" || tag == "blockquote") {
        style.margin_top = style.margin_bottom = parent.font_size;
    } else if (tag == "body") {
        style.margin_top = style.margin_bottom = style.margin_left = style.margin_right = 8.0;
    }
    if (tag == "script" || tag == "style" || tag == "head" || tag == "title" || tag == "meta" ||
        tag == "link")
        style.display = Display::None;

    auto apply = [&](const std::map<std::string, std::string>& decls) {
        for (const auto& [prop, value] : decls) {
            std::string v = css_detail::trim(value);
            std::string vl = dom_detail::to_lower(v);
            if (prop == "display") {
                if (vl == "none") style.display = Display::None;
                else if (vl == "block") style.display = Display::Block;
                else style.display = Display::Inline;
            } else if (prop == "visibility") {
                style.visibility_hidden = (vl == "hidden" || vl == "collapse");
            } else if (prop == "position") {
                if (vl == "absolute" || vl == "fixed") style.position = Position::Absolute;
            } else if (prop == "opacity") {
                style.opacity = std::clamp(std::strtod(vl.c_str(), nullptr), 0.0, 1.0);
            } else if (prop == "color") {
                auto c = css_detail::parse_color(v);
                if (c) style.color = *c;
            } else if (prop == "background" || prop == "background-color") {
                auto c = css_detail::parse_color(v);
                if (c) style.background = *c;
            } else if (prop == "font-size") {
                auto len = css_detail::parse_length(v, parent.font_size);
                if (len && *len >= 0) style.font_size = *len;
            } else if (prop == "font-family") {
                std::string fam = vl;
                std::size_t comma = fam.find(',');
                if (comma != std::string::npos) fam = fam.substr(0, comma);
                fam = css_detail::trim(fam);
                if (!fam.empty() && (fam.front() == '"' || fam.front() == '\''))
                    fam = fam.substr(1, fam.size() - 2);
                style.font_family = fam;
            } else if (prop == "left") {
                style.left = css_detail::parse_length(v, style.font_size);
            } else if (prop == "top") {
                style.top = css_detail::parse_length(v, style.font_size);
            } else if (prop == "width") {
                style.width = css_detail::parse_length(v, style.font_size);
            } else if (prop == "height") {
                style.height = css_detail::parse_length(v, style.font_size);
            } else if (prop == "clip") {
                style.clip = css_detail::parse_clip(v);
            } else if (prop == "z-index") {
                style.z_index = static_cast<int>(std::strtol(vl.c_str(), nullptr, 10));
            } else if (prop == "margin") {
                auto len = css_detail::parse_length(v, style.font_size);
                if (len)
                    style.margin_top = style.margin_bottom = style.margin_left =
                        style.margin_right = *len;
            } else if (prop == "margin-top") {
                auto len = css_detail::parse_length(v, style.font_size);
                if (len) style.margin_top = *len;
            } else if (prop == "margin-bottom") {
                auto len = css_detail::parse_length(v, style.font_size);
                if (len) style.margin_bottom = *len;
            }
        }
    };

    for (const auto& rule : sheet.rules)
        if (css_detail::selector_matches(rule.selector, node)) apply(rule.decls);
    if (const std::string* inline_style = node.attr("style"))
        apply(css_detail::parse_declarations(*inline_style));
    return style;
}

} // namespace ghostlint::html
