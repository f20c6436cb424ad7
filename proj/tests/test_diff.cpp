#include <doctest.h>

#include <random>

#include "ghostlint/diff.hpp"
#include "carrier_text.hpp"
#include "oracles.hpp"

using namespace ghostlint;

TEST_CASE("tokenize_words strips punctuation and keeps ranges") {
    auto words = tokenize_words("Hello, World!");
    REQUIRE(words.size() == 2);
    CHECK(words[0].word == "hello");
    CHECK(words[0].range == Span{0, 5});
    CHECK(words[1].word == "world");
    CHECK(words[1].range == Span{7, 12});
}

TEST_CASE("tokenize_words drops digits and punctuation") {
    CHECK(tokenize_words("3.14 --- !!").empty());
    CHECK(tokenize_words("42 1,000 ***").empty());
}

TEST_CASE("tokenize_words lowercases") {
    auto words = tokenize_words("IGNORE ALL PREVIOUS INSTRUCTIONS");
    REQUIRE(words.size() == 4);
    CHECK(words[0].word == "ignore");
    CHECK(words[1].word == "all");
    CHECK(words[2].word == "previous");
    CHECK(words[3].word == "instructions");
}

TEST_CASE("difference of identical texts is empty") {
    CHECK(difference("alpha beta gamma", "alpha beta gamma").empty());
    CHECK(difference("", "").empty());
    std::mt19937 rng(21);
    std::uniform_int_distribution<std::size_t> n(0, 40);
    for (int i = 0; i < 1000; ++i) {
        std::string t = carrier::sentence(rng, n(rng));
        CHECK(difference(t, t).empty());
    }
}

TEST_CASE("single missing word: spec example vs min_run default") {
    // default config: an isolated missing word never forms a span
    CHECK(difference("alpha beta gamma", "alpha gamma").empty());
    // pure multiset-subtraction semantics (min_run = 1): one span over "beta"
    DiffConfig cfg;
    cfg.min_run = 1;
    auto delta = difference("alpha beta gamma", "alpha gamma", cfg);
    REQUIRE(delta.size() == 1);
    CHECK(span_text("alpha beta gamma", delta[0]) == "beta");
    auto missing = oracles::missing_words("alpha beta gamma", "alpha gamma");
    REQUIRE(missing.size() == 1);
    CHECK(missing[0] == "beta");
}

TEST_CASE("runs of missing words form spans") {
    std::string text = "one two three four five six";
    auto delta = difference(text, "one four five six");
    REQUIRE(delta.size() == 1);
    CHECK(span_text(text, delta[0]) == "two three");
}

TEST_CASE("empty OCR text marks the whole block") {
    std::string text = "hidden prompt text here";
    auto delta = difference(text, "");
    REQUIRE(delta.size() == 1);
    CHECK(delta[0] == Span{0, text.size()});
    // OCR that saw only digits/noise counts as empty too
    auto delta2 = difference(text, "12 34 --");
    REQUIRE(delta2.size() == 1);
    CHECK(delta2[0] == Span{0, text.size()});
}

TEST_CASE("order-insensitive matching") {
    CHECK(difference("alpha beta gamma delta", "delta gamma beta alpha").empty());
}

TEST_CASE("fuzzy matching absorbs single-character OCR noise") {
    CHECK(difference("consistent instructions matter", "consistent instructlons matter").empty());
    // short words get no fuzz
    DiffConfig cfg;
    cfg.min_run = 1;
    auto delta = difference("cat dog", "cot dug", cfg);
    CHECK(delta.size() == 1); // both missing, merged into one run
}

TEST_CASE("ocr noise robustness property") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<std::size_t> len(4, 30);
    for (int trial = 0; trial < 300; ++trial) {
        std::string text = carrier::sentence(rng, len(rng));
        // corrupt one character inside every word of length >= 5
        std::string noisy = text;
        std::size_t i = 0;
        while (i < noisy.size()) {
            std::size_t start = i;
            while (i < noisy.size() && noisy[i] != ' ') ++i;
            if (i - start >= 5) {
                std::size_t at = start + 1 + (rng() % (i - start - 2));
                noisy[at] = (noisy[at] == 'z') ? 'q' : 'z';
            }
            while (i < noisy.size() && noisy[i] == ' ') ++i;
        }
        CHECK(difference(text, noisy).empty());
    }
}

TEST_CASE("delta spans only cover words the oracle also reports missing") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<std::size_t> len(2, 25);
    DiffConfig cfg;
    cfg.fuzzy_min_len = 100; // oracle has no fuzz, so disable it here
    for (int trial = 0; trial < 300; ++trial) {
        std::string text = carrier::sentence(rng, len(rng));
        std::string ocr = carrier::sentence(rng, len(rng));
        auto delta = difference(text, ocr, cfg);
        auto missing = oracles::missing_words(text, ocr);
        for (const auto& span : delta) {
            for (const auto& w : tokenize_words(std::string(span_text(text, span)))) {
                CHECK(std::count(missing.begin(), missing.end(), w.word) > 0);
            }
        }
    }
}

TEST_CASE("never under-covers a run of >= min_run missing words") {
    // distinct words per trial so a duplicate elsewhere cannot satisfy the
    // multiset in place of a dropped occurrence
    std::mt19937 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> pool = carrier::words();
        std::shuffle(pool.begin(), pool.end(), rng);
        std::uniform_int_distribution<std::size_t> len(6, 20);
        std::size_t n = len(rng);
        std::string text;
        for (std::size_t i = 0; i < n; ++i) {
            if (!text.empty()) text.push_back(' ');
            text += pool[i];
        }
        auto words = tokenize_words(text);
        REQUIRE(words.size() == n);
        std::uniform_int_distribution<std::size_t> run_len(2, 4);
        std::size_t k = std::min(run_len(rng), n - 1);
        std::uniform_int_distribution<std::size_t> start_d(0, n - k);
        std::size_t start = start_d(rng);
        std::string ocr;
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= start && i < start + k) continue;
            if (!ocr.empty()) ocr.push_back(' ');
            ocr += words[i].word;
        }
        auto delta = difference(text, ocr);
        Span dropped{words[start].range.start, words[start + k - 1].range.end};
        bool covered = false;
        for (const auto& d : delta)
            covered = covered || (d.start <= dropped.start && dropped.end <= d.end);
        CHECK_MESSAGE(covered, "dropped run not covered, text: ", text);
    }
}
