#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ghostlint/textnorm.hpp"

namespace ghostlint::html {

struct Node {
    enum class Kind { Element, Text };
    Kind kind = Kind::Element;
    std::string tag;  // lowercase
    std::map<std::string, std::string> attrs;
    std::string text; // Kind::Text: entity-decoded character data
    std::vector<std::unique_ptr<Node>> children;
    Node* parent = nullptr;

    const std::string* attr(const std::string& name) const {
        auto it = attrs.find(name);
        return it == attrs.end() ? nullptr : &it->second;
    }
};

namespace dom_detail {

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

inline std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        std::size_t semi = s.find(';', i);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        std::string_view ent = s.substr(i + 1, semi - i - 1);
        if (ent == "amp") out.push_back('&');
        else if (ent == "lt") out.push_back('<');
        else if (ent == "gt") out.push_back('>');
        else if (ent == "quot") out.push_back('"');
        else if (ent == "apos") out.push_back('\'');
        else if (ent == "nbsp") out += "\xc2\xa0";
        else if (!ent.empty() && ent[0] == '#') {
            char32_t cp = 0;
            bool ok = ent.size() > 1;
            if (ent.size() > 2 && (ent[1] == 'x' || ent[1] == 'X')) {
                for (std::size_t k = 2; k < ent.size(); ++k) {
                    char c = ent[k];
                    if (!std::isxdigit(static_cast<unsigned char>(c))) { ok = false; break; }
                    cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(c))
                                        ? static_cast<char32_t>(c - '0')
                                        : static_cast<char32_t>(std::tolower(c) - 'a' + 10));
                }
            } else {
                for (std::size_t k = 1; k < ent.size(); ++k) {
                    if (!std::isdigit(static_cast<unsigned char>(ent[k]))) { ok = false; break; }
                    cp = cp * 10 + static_cast<char32_t>(ent[k] - '0');
                }
            }
            if (ok && cp > 0 && cp <= 0x10FFFF) utf8_append(out, cp);
            else out.append(s.substr(i, semi - i + 1));
        } else {
            out.append(s.substr(i, semi - i + 1));
            i = semi + 1;
            continue;
        }
        i = semi + 1;
    }
    return out;
}

inline bool is_void_tag(const std::string& tag) {
    return tag == "br" || tag == "img" || tag == "meta" || tag == "link" || tag == "hr" ||
           tag == "input" || tag == "area" || tag == "base" || tag == "col" ||
           tag == "embed" || tag == "source" || tag == "track" || tag == "wbr";
}

} // namespace dom_detail

/// Tolerant tag-soup parser for the HTML subset this engine lays out.
/// <style> and <script> bodies are kept as raw text children.
inline std::unique_ptr<Node> parse_html(std::string_view source) {
    auto root = std::make_unique<Node>();
    root->tag = "#root";
    std::vector<Node*> stack{root.get()};

    auto add_text = [&](std::string_view raw) {
        if (raw.empty()) return;
        auto node = std::make_unique<Node>();
        node->kind = Node::Kind::Text;
        node->text = dom_detail::decode_entities(raw);
        node->parent = stack.back();
        stack.back()->children.push_back(std::move(node));
    };

    std::size_t i = 0;
    while (i < source.size()) {
        if (source[i] != '<') {
            std::size_t lt = source.find('<', i);
            if (lt == std::string_view::npos) lt = source.size();
            add_text(source.substr(i, lt - i));
            i = lt;
            continue;
        }
        // comment / doctype
        if (source.compare(i, 4, "<!--") == 0) {
            std::size_t end = source.find("-->", i + 4);
            i = end == std::string_view::npos ? source.size() : end + 3;
            continue;
        }
        if (i + 1 < source.size() && (source[i + 1] == '!' || source[i + 1] == '?')) {
            std::size_t end = source.find('>', i);
            i = end == std::string_view::npos ? source.size() : end + 1;
            continue;
        }
        std::size_t end = source.find('>', i);
        if (end == std::string_view::npos) break;
        std::string_view tag_body = source.substr(i + 1, end - i - 1);
        i = end + 1;
        bool closing = !tag_body.empty() && tag_body[0] == '/';
        if (closing) tag_body.remove_prefix(1);
        bool self_closing = !tag_body.empty() && tag_body.back() == '/';
        if (self_closing) tag_body.remove_suffix(1);
        // tag name
        std::size_t p = 0;
        while (p < tag_body.size() && !std::isspace(static_cast<unsigned char>(tag_body[p]))) ++p;
        std::string tag = dom_detail::to_lower(tag_body.substr(0, p));
        if (tag.empty()) continue;
        if (closing) {
            for (std::size_t s = stack.size(); s > 1; --s) {
                if (stack[s - 1]->tag == tag) {
                    stack.resize(s - 1);
                    break;
                }
            }
            continue;
        }
        auto node = std::make_unique<Node>();
        node->tag = tag;
        // attributes
        while (p < tag_body.size()) {
            while (p < tag_body.size() && std::isspace(static_cast<unsigned char>(tag_body[p]))) ++p;
            std::size_t name_start = p;
            while (p < tag_body.size() && tag_body[p] != '=' &&
                   !std::isspace(static_cast<unsigned char>(tag_body[p])))
                ++p;
            if (p == name_start) break;
            std::string name = dom_detail::to_lower(tag_body.substr(name_start, p - name_start));
            std::string value;
            while (p < tag_body.size() && std::isspace(static_cast<unsigned char>(tag_body[p]))) ++p;
            if (p < tag_body.size() && tag_body[p] == '=') {
                ++p;
                while (p < tag_body.size() && std::isspace(static_cast<unsigned char>(tag_body[p])))
                    ++p;
                if (p < tag_body.size() && (tag_body[p] == '"' || tag_body[p] == '\'')) {
                    char quote = tag_body[p++];
                    std::size_t vend = tag_body.find(quote, p);
                    if (vend == std::string_view::npos) vend = tag_body.size();
                    value = dom_detail::decode_entities(tag_body.substr(p, vend - p));
                    p = vend + 1;
                } else {
                    std::size_t vstart = p;
                    while (p < tag_body.size() &&
                           !std::isspace(static_cast<unsigned char>(tag_body[p])))
                        ++p;
                    value = dom_detail::decode_entities(tag_body.substr(vstart, p - vstart));
                }
            }
            node->attrs[name] = value;
        }
        Node* raw = node.get();
        raw->parent = stack.back();
        stack.back()->children.push_back(std::move(node));
        if (tag == "style" || tag == "script") {
            // raw text until the matching close tag
            std::string close = "</" + tag;
            std::size_t close_at = source.find(close, i);
            std::size_t text_end = close_at == std::string_view::npos ? source.size() : close_at;
            auto text_node = std::make_unique<Node>();
            text_node->kind = Node::Kind::Text;
            text_node->text = std::string(source.substr(i, text_end - i));
            text_node->parent = raw;
            raw->children.push_back(std::move(text_node));
            if (close_at == std::string_view::npos) {
                i = source.size();
            } else {
                std::size_t gt = source.find('>', close_at);
                i = gt == std::string_view::npos ? source.size() : gt + 1;
            }
            continue;
        }
        if (!self_closing && !dom_detail::is_void_tag(tag)) stack.push_back(raw);
    }
    return root;
}

template <typename F>
inline void walk_dom(Node* node, F&& fn) {
    fn(node);
    for (auto& child : node->children) walk_dom(child.get(), fn);
}

inline Node* find_element(Node* node, const std::string& tag) {
    if (node->kind == Node::Kind::Element && node->tag == tag) return node;
    for (auto& child : node->children) {
        if (Node* found = find_element(child.get(), tag)) return found;
    }
    return nullptr;
}

} // namespace ghostlint::html
