#include <doctest.h>

#include "ghostlint/textnorm.hpp"

using namespace ghostlint;

TEST_CASE("normalize_text folds case and whitespace") {
    CHECK(normalize_text("IGNORE ALL PREVIOUS INSTRUCTIONS") ==
          "ignore all previous instructions");
    CHECK(normalize_text("  Hello \t\n World  ") == "hello world");
    CHECK(normalize_text("") == "");
    CHECK(normalize_text(" \n\t ") == "");
}

TEST_CASE("normalize_text folds compatibility forms") {
    CHECK(normalize_text("e\xef\xac\x83 cient") == "effi cient"); // ffi ligature
    CHECK(normalize_text("\xe2\x80\x9cquoted\xe2\x80\x9d") == "\"quoted\"");
    CHECK(normalize_text("em\xe2\x80\x94" "dash") == "em-dash");
    CHECK(normalize_text("\xc2\xa0padded\xc2\xa0") == "padded"); // nbsp
    CHECK(normalize_text("\xef\xbc\xa1\xef\xbc\xa2") == "ab");   // fullwidth AB
}

TEST_CASE("normalize_token strips boundary punctuation") {
    CHECK(normalize_token("***IMPORTANT***") == "important");
    CHECK(normalize_token("Hello,") == "hello");
    CHECK(normalize_token("---") == "");
    CHECK(normalize_token("don't") == "don't"); // interior punctuation stays
}

TEST_CASE("utf8 round trip") {
    std::string s = "caf\xc3\xa9 \xe2\x82\xac 10";
    std::string out;
    std::size_t pos = 0;
    while (pos < s.size()) utf8_append(out, utf8_next(s, pos));
    CHECK(out == s);
}

TEST_CASE("edit distance capped") {
    CHECK(edit_distance_capped("hello", "hello", 1) == 0);
    CHECK(edit_distance_capped("hello", "hallo", 1) == 1);
    CHECK(edit_distance_capped("hello", "hell", 1) == 1);
    CHECK(edit_distance_capped("hello", "help", 1) == 2);   // capped result > 1
    CHECK(edit_distance_capped("abc", "xyz", 1) > 1);
}
