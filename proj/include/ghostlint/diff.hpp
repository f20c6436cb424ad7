#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ghostlint/geometry.hpp"
#include "ghostlint/textnorm.hpp"

namespace ghostlint {

struct WordToken {
    std::string word; // normalized (folded, boundary punctuation stripped)
    Span range;       // char range of the stripped token in the original text
};

/// Splits on whitespace, strips boundary punctuation, and drops tokens with
/// no alphabetic character (pure punctuation and pure digits are ignored
/// during hidden-text span identification).
inline std::vector<WordToken> tokenize_words(std::string_view text) {
    std::vector<WordToken> words;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t start = pos;
        char32_t cp = utf8_next(text, pos);
        if (cp_is_space(cp)) continue;
        std::size_t end = pos;
        while (end < text.size()) {
            std::size_t next = end;
            if (cp_is_space(utf8_next(text, next))) break;
            end = next;
        }
        pos = end;
        // trim boundary punctuation in the original string so the range
        // covers only the word itself
        std::size_t b = start;
        while (b < end) {
            std::size_t next = b;
            if (!cp_is_punct(utf8_next(text, next))) break;
            b = next;
        }
        std::size_t e = end;
        while (e > b) {
            // step back one codepoint
            std::size_t prev = e - 1;
            while (prev > b && (static_cast<unsigned char>(text[prev]) & 0xC0) == 0x80) --prev;
            std::size_t tmp = prev;
            if (!cp_is_punct(utf8_next(text, tmp))) break;
            e = prev;
        }
        if (e <= b) continue;
        std::string_view token = text.substr(b, e - b);
        bool has_alpha = false;
        std::size_t tp = 0;
        while (tp < token.size()) {
            if (cp_is_alpha(utf8_next(token, tp))) {
                has_alpha = true;
                break;
            }
        }
        if (!has_alpha) continue;
        std::string norm;
        std::size_t np = 0;
        while (np < token.size()) fold_codepoint(norm, utf8_next(token, np));
        words.push_back({std::move(norm), {b, e}});
    }
    return words;
}

struct DiffConfig {
    std::size_t adjacency_gap = 1;
    std::size_t min_run = 2;      // isolated missing words never form a span
    std::size_t fuzzy_min_len = 5; // edit distance <= 1 allowed from this length
};

namespace detail {

/// Multiset of OCR words, bucketed by length for the fuzzy scan.
class OcrWordBag {
public:
    explicit OcrWordBag(const std::vector<WordToken>& words) {
        for (const auto& w : words) {
            counts_[w.word]++;
            by_length_[w.word.size()].push_back(w.word);
        }
    }

    bool empty() const { return counts_.empty(); }

    /// Consumes an exact match, else (for long enough words) any remaining
    /// word within edit distance 1.
    bool take(const std::string& word, std::size_t fuzzy_min_len) {
        auto it = counts_.find(word);
        if (it != counts_.end() && it->second > 0) {
            --it->second;
            return true;
        }
        if (word.size() < fuzzy_min_len) return false;
        for (std::size_t len = word.size() - 1; len <= word.size() + 1; ++len) {
            auto bucket = by_length_.find(len);
            if (bucket == by_length_.end()) continue;
            for (const std::string& cand : bucket->second) {
                auto cit = counts_.find(cand);
                if (cit == counts_.end() || cit->second == 0) continue;
                if (edit_distance_capped(word, cand, 1) <= 1) {
                    --cit->second;
                    return true;
                }
            }
        }
        return false;
    }

private:
    std::unordered_map<std::string, int> counts_;
    std::unordered_map<std::size_t, std::vector<std::string>> by_length_;
};

} // namespace detail

/// Difference(text, ocrtext): maximal spans of text absent from ocrtext.
/// Word matching is order-insensitive (multiset). Runs of >= min_run
/// consecutive missing words become spans; if OCR saw nothing at all while
/// the text has words, the whole block is one span.
inline std::vector<Span> difference(std::string_view text, std::string_view ocrtext,
                                    const DiffConfig& cfg = {}) {
    std::vector<WordToken> text_words = tokenize_words(text);
    if (text_words.empty()) return {};
    std::vector<WordToken> ocr_words = tokenize_words(ocrtext);
    if (ocr_words.empty()) {
        return {Span{0, text.size()}};
    }
    detail::OcrWordBag bag(ocr_words);

    std::vector<Span> runs;
    std::size_t run_len = 0;
    Span run{0, 0};
    auto flush = [&]() {
        if (run_len >= cfg.min_run) runs.push_back(run);
        run_len = 0;
    };
    for (const WordToken& w : text_words) {
        if (bag.take(w.word, cfg.fuzzy_min_len)) {
            flush();
            continue;
        }
        if (run_len == 0) {
            run = w.range;
        } else {
            run.end = w.range.end;
        }
        ++run_len;
    }
    flush();
    return merge_spans(std::move(runs), cfg.adjacency_gap);
}

} // namespace ghostlint
