#pragma once

// Independent reference implementations used to pin expected values. These
// deliberately share no code with the library paths they check.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace oracles {

// Trigram-multiset cosine over already-normalized strings, via a plain map.
inline double trigram_cosine(const std::string& a, const std::string& b) {
    auto grams = [](const std::string& s) {
        std::map<std::string, int> m;
        if (s.size() >= 3)
            for (std::size_t i = 0; i + 3 <= s.size(); ++i) m[s.substr(i, 3)]++;
        return m;
    };
    std::map<std::string, int> ga = grams(a), gb = grams(b);
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [g, c] : ga) {
        na += static_cast<double>(c) * c;
        auto it = gb.find(g);
        if (it != gb.end()) dot += static_cast<double>(c) * it->second;
    }
    for (const auto& [g, c] : gb) nb += static_cast<double>(c) * c;
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Span merging by union-find over pairwise gap checks.
struct SpanPair {
    std::size_t start, end;
};

inline std::vector<SpanPair> merge_spans_union_find(std::vector<SpanPair> spans,
                                                    std::size_t gap) {
    const std::size_t n = spans.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto pair_gap = [&](const SpanPair& a, const SpanPair& b) -> long long {
        if (a.start < b.end && b.start < a.end) return 0; // overlap
        if (a.end <= b.start) return static_cast<long long>(b.start - a.end);
        return static_cast<long long>(a.start - b.end);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (pair_gap(spans[i], spans[j]) <= static_cast<long long>(gap))
                parent[find(i)] = find(j);
    std::map<std::size_t, SpanPair> groups;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t root = find(i);
        auto it = groups.find(root);
        if (it == groups.end()) {
            groups[root] = spans[i];
        } else {
            it->second.start = std::min(it->second.start, spans[i].start);
            it->second.end = std::max(it->second.end, spans[i].end);
        }
    }
    std::vector<SpanPair> out;
    for (const auto& [_, s] : groups) out.push_back(s);
    std::sort(out.begin(), out.end(),
              [](const SpanPair& a, const SpanPair& b) { return a.start < b.start; });
    // union-find closure can chain groups; repeat until stable
    bool changed = true;
    while (changed && out.size() > 1) {
        changed = false;
        for (std::size_t i = 0; i + 1 < out.size(); ++i) {
            if (pair_gap(out[i], out[i + 1]) <= static_cast<long long>(gap)) {
                out[i].end = std::max(out[i].end, out[i + 1].end);
                out[i].start = std::min(out[i].start, out[i + 1].start);
                out.erase(out.begin() + static_cast<long>(i) + 1);
                changed = true;
                break;
            }
        }
    }
    return out;
}

// Words of a string: whitespace split, boundary ASCII punctuation stripped,
// lowercased; tokens without letters dropped.
inline std::vector<std::string> simple_words(const std::string& text) {
    std::vector<std::string> words;
    std::istringstream in(text);
    std::string tok;
    auto is_punct = [](char c) {
        return std::ispunct(static_cast<unsigned char>(c)) != 0;
    };
    while (in >> tok) {
        std::size_t b = 0, e = tok.size();
        while (b < e && is_punct(tok[b])) ++b;
        while (e > b && is_punct(tok[e - 1])) --e;
        std::string w = tok.substr(b, e - b);
        bool has_alpha = false;
        for (char& c : w) {
            if (std::isalpha(static_cast<unsigned char>(c))) has_alpha = true;
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
        if (has_alpha) words.push_back(w);
    }
    return words;
}

// Multiset subtraction: words of `text` minus words of `ocr`, in text order.
inline std::vector<std::string> missing_words(const std::string& text, const std::string& ocr) {
    std::vector<std::string> tw = simple_words(text);
    std::map<std::string, int> bag;
    for (const auto& w : simple_words(ocr)) bag[w]++;
    std::vector<std::string> missing;
    for (const auto& w : tw) {
        auto it = bag.find(w);
        if (it != bag.end() && it->second > 0) {
            --it->second;
        } else {
            missing.push_back(w);
        }
    }
    return missing;
}

} // namespace oracles
