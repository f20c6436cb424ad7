#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <zlib.h>

#include "ghostlint/errors.hpp"

namespace ghostlint::pdf {

struct Ref {
    int num = 0;
    int gen = 0;
    bool operator<(const Ref& o) const { return num != o.num ? num < o.num : gen < o.gen; }
    bool operator==(const Ref& o) const { return num == o.num && gen == o.gen; }
};

class Object;
using Array = std::vector<Object>;
using Dict = std::map<std::string, Object>;

struct StreamData {
    Dict dict;
    std::string raw; // bytes as stored in the file
};

/// A PDF object. Names are stored without the leading slash; strings hold
/// raw bytes.
class Object {
public:
    enum class Type { Null, Bool, Int, Real, String, Name, Array, Dict, Stream, Ref };

    Object() = default;
    static Object make_bool(bool v) { Object o; o.type_ = Type::Bool; o.bool_ = v; return o; }
    static Object make_int(std::int64_t v) { Object o; o.type_ = Type::Int; o.int_ = v; return o; }
    static Object make_real(double v) { Object o; o.type_ = Type::Real; o.real_ = v; return o; }
    static Object make_string(std::string v) {
        Object o;
        o.type_ = Type::String;
        o.str_ = std::move(v);
        return o;
    }
    static Object make_name(std::string v) {
        Object o;
        o.type_ = Type::Name;
        o.str_ = std::move(v);
        return o;
    }
    static Object make_array(Array v = {}) {
        Object o;
        o.type_ = Type::Array;
        o.array_ = std::make_shared<Array>(std::move(v));
        return o;
    }
    static Object make_dict(Dict v = {}) {
        Object o;
        o.type_ = Type::Dict;
        o.dict_ = std::make_shared<Dict>(std::move(v));
        return o;
    }
    static Object make_stream(Dict dict, std::string raw) {
        Object o;
        o.type_ = Type::Stream;
        o.stream_ = std::make_shared<StreamData>(StreamData{std::move(dict), std::move(raw)});
        return o;
    }
    static Object make_ref(int num, int gen = 0) {
        Object o;
        o.type_ = Type::Ref;
        o.ref_ = {num, gen};
        return o;
    }

    Type type() const { return type_; }
    bool is_null() const { return type_ == Type::Null; }
    bool is_bool() const { return type_ == Type::Bool; }
    bool is_number() const { return type_ == Type::Int || type_ == Type::Real; }
    bool is_int() const { return type_ == Type::Int; }
    bool is_string() const { return type_ == Type::String; }
    bool is_name() const { return type_ == Type::Name; }
    bool is_array() const { return type_ == Type::Array; }
    bool is_dict() const { return type_ == Type::Dict; }
    bool is_stream() const { return type_ == Type::Stream; }
    bool is_ref() const { return type_ == Type::Ref; }

    bool as_bool() const { return bool_; }
    std::int64_t as_int() const { return type_ == Type::Real ? static_cast<std::int64_t>(real_) : int_; }
    double as_double() const { return type_ == Type::Real ? real_ : static_cast<double>(int_); }
    const std::string& as_string() const { return str_; }
    const std::string& as_name() const { return str_; }
    Ref as_ref() const { return ref_; }

    Array& array() { return *array_; }
    const Array& array() const { return *array_; }
    Dict& dict() { return type_ == Type::Stream ? stream_->dict : *dict_; }
    const Dict& dict() const { return type_ == Type::Stream ? stream_->dict : *dict_; }
    StreamData& stream() { return *stream_; }
    const StreamData& stream() const { return *stream_; }

    /// Dict lookup; null object when missing.
    const Object& get(const std::string& key) const {
        static const Object null_obj;
        if (!is_dict() && !is_stream()) return null_obj;
        const Dict& d = dict();
        auto it = d.find(key);
        return it == d.end() ? null_obj : it->second;
    }
    bool has(const std::string& key) const { return !get(key).is_null(); }

private:
    Type type_ = Type::Null;
    bool bool_ = false;
    std::int64_t int_ = 0;
    double real_ = 0.0;
    std::string str_;
    std::shared_ptr<Array> array_;
    std::shared_ptr<Dict> dict_;
    std::shared_ptr<StreamData> stream_;
    Ref ref_;
};

namespace detail {

inline bool is_pdf_whitespace(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\0';
}

inline bool is_pdf_delimiter(char c) {
    return c == '(' || c == ')' || c == '<' || c == '>' || c == '[' || c == ']' || c == '{' ||
           c == '}' || c == '/' || c == '%';
}

inline std::string zlib_inflate(std::string_view in) {
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) throw ParseError("inflateInit failed");
    std::string out;
    out.reserve(in.size() * 4);
    char buf[16384];
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
    zs.avail_in = static_cast<uInt>(in.size());
    int rc;
    do {
        zs.next_out = reinterpret_cast<Bytef*>(buf);
        zs.avail_out = sizeof(buf);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            // salvage what decoded; broken tails are common in the wild
            if (!out.empty()) return out;
            throw ParseError("flate stream corrupt");
        }
        out.append(buf, sizeof(buf) - zs.avail_out);
    } while (rc != Z_STREAM_END && (zs.avail_in > 0 || zs.avail_out == 0));
    inflateEnd(&zs);
    return out;
}

inline std::string apply_png_predictor(const std::string& data, int predictor, int colors,
                                       int bpc, int columns) {
    if (predictor < 10) return data;
    const int bpp = std::max(1, colors * bpc / 8);
    const std::size_t row_len = static_cast<std::size_t>(columns) * colors * bpc / 8;
    std::string out;
    std::vector<unsigned char> prev(row_len, 0);
    std::size_t pos = 0;
    while (pos + 1 + row_len <= data.size() + row_len && pos < data.size()) {
        int filter = static_cast<unsigned char>(data[pos++]);
        std::size_t take = std::min(row_len, data.size() - pos);
        std::vector<unsigned char> row(data.begin() + static_cast<long>(pos),
                                       data.begin() + static_cast<long>(pos + take));
        row.resize(row_len, 0);
        pos += take;
        for (std::size_t i = 0; i < row_len; ++i) {
            unsigned char left = i >= static_cast<std::size_t>(bpp) ? row[i - bpp] : 0;
            unsigned char up = prev[i];
            unsigned char ul = i >= static_cast<std::size_t>(bpp) ? prev[i - bpp] : 0;
            switch (filter) {
                case 0: break;
                case 1: row[i] = static_cast<unsigned char>(row[i] + left); break;
                case 2: row[i] = static_cast<unsigned char>(row[i] + up); break;
                case 3: row[i] = static_cast<unsigned char>(row[i] + (left + up) / 2); break;
                case 4: {
                    int p = left + up - ul;
                    int pa = std::abs(p - left), pb = std::abs(p - up), pc = std::abs(p - ul);
                    unsigned char pred = (pa <= pb && pa <= pc) ? left : (pb <= pc ? up : ul);
                    row[i] = static_cast<unsigned char>(row[i] + pred);
                    break;
                }
                default: throw ParseError("unknown png filter");
            }
        }
        out.append(reinterpret_cast<char*>(row.data()), row_len);
        prev = row;
    }
    return out;
}

} // namespace detail

/// Tokenizer over the raw byte buffer; used for both file objects and
/// content streams.
class Lexer {
public:
    struct Token {
        enum class Kind {
            End, Number, Keyword, Name, String, HexString, ArrayOpen, ArrayClose,
            DictOpen, DictClose, BraceOpen, BraceClose
        };
        Kind kind = Kind::End;
        std::string text;   // keyword/name text or string bytes
        double number = 0.0;
        bool is_integer = false;
        std::size_t offset = 0;
    };

    explicit Lexer(std::string_view data, std::size_t pos = 0) : data_(data), pos_(pos) {}

    std::size_t pos() const { return pos_; }
    void seek(std::size_t pos) { pos_ = pos; }
    std::string_view data() const { return data_; }

    Token next() {
        skip_ws();
        Token t;
        t.offset = pos_;
        if (pos_ >= data_.size()) return t;
        char c = data_[pos_];
        if (c == '[') { ++pos_; t.kind = Token::Kind::ArrayOpen; return t; }
        if (c == ']') { ++pos_; t.kind = Token::Kind::ArrayClose; return t; }
        if (c == '{') { ++pos_; t.kind = Token::Kind::BraceOpen; return t; }
        if (c == '}') { ++pos_; t.kind = Token::Kind::BraceClose; return t; }
        if (c == '<') {
            if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') {
                pos_ += 2;
                t.kind = Token::Kind::DictOpen;
                return t;
            }
            return hex_string();
        }
        if (c == '>') {
            if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '>') {
                pos_ += 2;
                t.kind = Token::Kind::DictClose;
                return t;
            }
            ++pos_; // stray; skip
            return next();
        }
        if (c == '(') return literal_string();
        if (c == '/') return name();
        if (c == '+' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c)))
            return number();
        return keyword();
    }

private:
    void skip_ws() {
        while (pos_ < data_.size()) {
            char c = data_[pos_];
            if (detail::is_pdf_whitespace(c)) {
                ++pos_;
            } else if (c == '%') {
                while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
            } else {
                break;
            }
        }
    }

    Token literal_string() {
        Token t;
        t.offset = pos_;
        t.kind = Token::Kind::String;
        ++pos_; // (
        int depth = 1;
        std::string out;
        while (pos_ < data_.size() && depth > 0) {
            char c = data_[pos_++];
            if (c == '\\') {
                if (pos_ >= data_.size()) break;
                char e = data_[pos_++];
                switch (e) {
                    case 'n': out.push_back('\n'); break;
                    case 'r': out.push_back('\r'); break;
                    case 't': out.push_back('\t'); break;
                    case 'b': out.push_back('\b'); break;
                    case 'f': out.push_back('\f'); break;
                    case '(': out.push_back('('); break;
                    case ')': out.push_back(')'); break;
                    case '\\': out.push_back('\\'); break;
                    case '\r':
                        if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
                        break; // line continuation
                    case '\n': break;
                    default:
                        if (e >= '0' && e <= '7') {
                            int val = e - '0';
                            for (int i = 0; i < 2 && pos_ < data_.size() && data_[pos_] >= '0' &&
                                            data_[pos_] <= '7';
                                 ++i)
                                val = val * 8 + (data_[pos_++] - '0');
                            out.push_back(static_cast<char>(val & 0xFF));
                        } else {
                            out.push_back(e);
                        }
                }
            } else if (c == '(') {
                ++depth;
                out.push_back(c);
            } else if (c == ')') {
                --depth;
                if (depth > 0) out.push_back(c);
            } else {
                out.push_back(c);
            }
        }
        t.text = std::move(out);
        return t;
    }

    Token hex_string() {
        Token t;
        t.offset = pos_;
        t.kind = Token::Kind::HexString;
        ++pos_; // <
        std::string hex;
        while (pos_ < data_.size() && data_[pos_] != '>') {
            char c = data_[pos_++];
            if (std::isxdigit(static_cast<unsigned char>(c))) hex.push_back(c);
        }
        if (pos_ < data_.size()) ++pos_; // >
        if (hex.size() % 2) hex.push_back('0');
        std::string out;
        auto nib = [](char c) {
            return std::isdigit(static_cast<unsigned char>(c))
                       ? c - '0'
                       : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
        };
        for (std::size_t i = 0; i + 1 < hex.size(); i += 2)
            out.push_back(static_cast<char>((nib(hex[i]) << 4) | nib(hex[i + 1])));
        t.text = std::move(out);
        return t;
    }

    Token name() {
        Token t;
        t.offset = pos_;
        t.kind = Token::Kind::Name;
        ++pos_; // /
        std::string out;
        while (pos_ < data_.size()) {
            char c = data_[pos_];
            if (detail::is_pdf_whitespace(c) || detail::is_pdf_delimiter(c)) break;
            ++pos_;
            if (c == '#' && pos_ + 1 < data_.size() &&
                std::isxdigit(static_cast<unsigned char>(data_[pos_])) &&
                std::isxdigit(static_cast<unsigned char>(data_[pos_ + 1]))) {
                auto nib = [](char h) {
                    return std::isdigit(static_cast<unsigned char>(h))
                               ? h - '0'
                               : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10;
                };
                out.push_back(static_cast<char>((nib(data_[pos_]) << 4) | nib(data_[pos_ + 1])));
                pos_ += 2;
            } else {
                out.push_back(c);
            }
        }
        t.text = std::move(out);
        return t;
    }

    Token number() {
        Token t;
        t.offset = pos_;
        t.kind = Token::Kind::Number;
        std::size_t start = pos_;
        bool integer = true;
        if (data_[pos_] == '+' || data_[pos_] == '-') ++pos_;
        while (pos_ < data_.size() &&
               (std::isdigit(static_cast<unsigned char>(data_[pos_])) || data_[pos_] == '.')) {
            if (data_[pos_] == '.') integer = false;
            ++pos_;
        }
        t.text = std::string(data_.substr(start, pos_ - start));
        t.number = std::strtod(t.text.c_str(), nullptr);
        t.is_integer = integer;
        return t;
    }

    Token keyword() {
        Token t;
        t.offset = pos_;
        t.kind = Token::Kind::Keyword;
        std::size_t start = pos_;
        while (pos_ < data_.size()) {
            char c = data_[pos_];
            if (detail::is_pdf_whitespace(c) || detail::is_pdf_delimiter(c)) break;
            ++pos_;
        }
        if (pos_ == start) ++pos_; // lone stray byte; consume so the scan advances
        t.text = std::string(data_.substr(start, pos_ - start));
        return t;
    }

    std::string_view data_;
    std::size_t pos_ = 0;
};

/// Recursive-descent parser over a Lexer. Stream /Length resolution needs a
/// document, so plain parsing stops at the dict level and callers with file
/// context use parse_indirect_stream.
class ObjectParser {
public:
    explicit ObjectParser(Lexer& lexer) : lexer_(lexer) {}

    /// Parses one object. Reference triples "n g R" are folded here.
    Object parse() {
        Lexer::Token t = lexer_.next();
        return parse_token(t);
    }

    Object parse_token(const Lexer::Token& t) {
        using K = Lexer::Token::Kind;
        switch (t.kind) {
            case K::End: throw ParseError("unexpected end of data");
            case K::Number: return parse_number_or_ref(t);
            case K::String: return Object::make_string(t.text);
            case K::HexString: return Object::make_string(t.text);
            case K::Name: return Object::make_name(t.text);
            case K::ArrayOpen: {
                Array arr;
                while (true) {
                    Lexer::Token n = lexer_.next();
                    if (n.kind == K::ArrayClose) break;
                    if (n.kind == K::End) throw ParseError("unterminated array");
                    arr.push_back(parse_token(n));
                }
                return Object::make_array(std::move(arr));
            }
            case K::DictOpen: {
                Dict d;
                while (true) {
                    Lexer::Token n = lexer_.next();
                    if (n.kind == K::DictClose) break;
                    if (n.kind == K::End) throw ParseError("unterminated dict");
                    if (n.kind != K::Name) throw ParseError("dict key must be a name");
                    std::string key = n.text;
                    d[key] = parse();
                }
                return Object::make_dict(std::move(d));
            }
            case K::Keyword: {
                if (t.text == "true") return Object::make_bool(true);
                if (t.text == "false") return Object::make_bool(false);
                if (t.text == "null") return Object();
                throw ParseError("unexpected keyword: " + t.text);
            }
            default:
                throw ParseError("unexpected token");
        }
    }

private:
    Object parse_number_or_ref(const Lexer::Token& first) {
        if (first.is_integer) {
            // lookahead for "gen R"
            std::size_t save = lexer_.pos();
            Lexer::Token second = lexer_.next();
            if (second.kind == Lexer::Token::Kind::Number && second.is_integer) {
                Lexer::Token third = lexer_.next();
                if (third.kind == Lexer::Token::Kind::Keyword && third.text == "R") {
                    return Object::make_ref(static_cast<int>(first.number),
                                            static_cast<int>(second.number));
                }
            }
            lexer_.seek(save);
            return Object::make_int(static_cast<std::int64_t>(first.number));
        }
        return Object::make_real(first.number);
    }

    Lexer& lexer_;
};

} // namespace ghostlint::pdf
