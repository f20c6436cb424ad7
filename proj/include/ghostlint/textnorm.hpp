#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ghostlint {

// UTF-8 decoding. Invalid sequences decode to U+FFFD one byte at a time so
// offsets into the original string stay meaningful.
inline char32_t utf8_next(std::string_view s, std::size_t& pos) {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    unsigned char b0 = byte(pos);
    if (b0 < 0x80) {
        pos += 1;
        return b0;
    }
    auto cont = [&](std::size_t i) {
        return i < s.size() && (byte(i) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(pos + 1)) {
        char32_t cp = ((b0 & 0x1Fu) << 6) | (byte(pos + 1) & 0x3Fu);
        pos += 2;
        return cp >= 0x80 ? cp : 0xFFFD;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(pos + 1) && cont(pos + 2)) {
        char32_t cp = ((b0 & 0x0Fu) << 12) | ((byte(pos + 1) & 0x3Fu) << 6) |
                      (byte(pos + 2) & 0x3Fu);
        pos += 3;
        return cp >= 0x800 ? cp : 0xFFFD;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(pos + 1) && cont(pos + 2) && cont(pos + 3)) {
        char32_t cp = ((b0 & 0x07u) << 18) | ((byte(pos + 1) & 0x3Fu) << 12) |
                      ((byte(pos + 2) & 0x3Fu) << 6) | (byte(pos + 3) & 0x3Fu);
        pos += 4;
        return (cp >= 0x10000 && cp <= 0x10FFFF) ? cp : 0xFFFD;
    }
    pos += 1;
    return 0xFFFD;
}

inline void utf8_append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline bool cp_is_space(char32_t cp) {
    switch (cp) {
        case U' ': case U'\t': case U'\n': case U'\r': case U'\f': case U'\v':
        case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
        case 0x205F: case 0x3000: case 0xFEFF:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

inline bool cp_is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

inline bool cp_is_ascii_punct(char32_t cp) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
}

// Typographic punctuation that hidden prompts decorate themselves with.
inline bool cp_is_punct(char32_t cp) {
    if (cp_is_ascii_punct(cp)) return true;
    switch (cp) {
        case 0x2018: case 0x2019: case 0x201C: case 0x201D: case 0x2013:
        case 0x2014: case 0x2026: case 0x00AB: case 0x00BB: case 0x00B7:
        case 0x2022: case 0x00A1: case 0x00BF:
            return true;
        default:
            return false;
    }
}

/// Alphabetic for tokenization purposes: ASCII/Latin-1 letters, and any other
/// codepoint that is not whitespace, digit or punctuation.
inline bool cp_is_alpha(char32_t cp) {
    if ((cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z')) return true;
    if (cp < 0x80) return false;
    if (cp >= 0xC0 && cp <= 0xFF && cp != 0xD7 && cp != 0xF7) return true;
    return !cp_is_space(cp) && !cp_is_digit(cp) && !cp_is_punct(cp);
}

/// Compatibility folding for the subset that matters here: case, common
/// ligatures, fullwidth forms, typographic quotes/dashes. Appends the folded
/// form of cp to out.
inline void fold_codepoint(std::string& out, char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') {
        out.push_back(static_cast<char>(cp - U'A' + U'a'));
        return;
    }
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) { // Latin-1 uppercase
        utf8_append(out, cp + 0x20);
        return;
    }
    if (cp >= 0xFF01 && cp <= 0xFF5E) { // fullwidth ASCII
        fold_codepoint(out, cp - 0xFF01 + 0x21);
        return;
    }
    switch (cp) {
        case 0xFB00: out += "ff"; return;
        case 0xFB01: out += "fi"; return;
        case 0xFB02: out += "fl"; return;
        case 0xFB03: out += "ffi"; return;
        case 0xFB04: out += "ffl"; return;
        case 0x2018: case 0x2019: out.push_back('\''); return;
        case 0x201C: case 0x201D: out.push_back('"'); return;
        case 0x2013: case 0x2014: out.push_back('-'); return;
        case 0x2026: out += "..."; return;
        default: utf8_append(out, cp); return;
    }
}

/// Folds case/compatibility and collapses whitespace runs to single spaces.
/// The result has no leading or trailing whitespace.
inline std::string normalize_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    std::size_t pos = 0;
    while (pos < s.size()) {
        char32_t cp = utf8_next(s, pos);
        if (cp_is_space(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        fold_codepoint(out, cp);
    }
    return out;
}

/// Folded token with punctuation stripped at both boundaries. Empty result
/// means the token was pure punctuation/whitespace.
inline std::string normalize_token(std::string_view token) {
    std::string folded;
    folded.reserve(token.size());
    std::size_t pos = 0;
    while (pos < token.size()) fold_codepoint(folded, utf8_next(token, pos));
    // strip leading/trailing punctuation on the folded form (ASCII after fold)
    std::size_t b = 0, e = folded.size();
    while (b < e && cp_is_ascii_punct(static_cast<unsigned char>(folded[b]))) ++b;
    while (e > b && cp_is_ascii_punct(static_cast<unsigned char>(folded[e - 1]))) --e;
    return folded.substr(b, e - b);
}

inline bool is_blank(std::string_view s) {
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (!cp_is_space(utf8_next(s, pos))) return false;
    }
    return true;
}

/// Levenshtein distance with early exit once the distance exceeds limit.
inline std::size_t edit_distance_capped(std::string_view a, std::string_view b,
                                        std::size_t limit) {
    if (a.size() > b.size()) std::swap(a, b);
    if (b.size() - a.size() > limit) return limit + 1;
    std::vector<std::size_t> row(a.size() + 1);
    for (std::size_t i = 0; i <= a.size(); ++i) row[i] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
        std::size_t prev_diag = row[0];
        row[0] = j;
        std::size_t row_min = row[0];
        for (std::size_t i = 1; i <= a.size(); ++i) {
            std::size_t cost = (a[i - 1] == b[j - 1]) ? 0 : 1;
            std::size_t val = std::min({row[i] + 1, row[i - 1] + 1, prev_diag + cost});
            prev_diag = row[i];
            row[i] = val;
            row_min = std::min(row_min, val);
        }
        if (row_min > limit) return limit + 1;
    }
    return row[a.size()];
}

} // namespace ghostlint
