#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "ghostlint/errors.hpp"

namespace ghostlint::corpus {

inline std::string pdf_num(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e9) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    std::string s = buf;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

inline std::string pdf_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 8);
    for (char c : text) {
        if (c == '(' || c == ')' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

inline std::string glyph_name_for(char c) {
    static const std::map<char, std::string> table = {
        {' ', "space"},      {'!', "exclam"},     {'"', "quotedbl"},
        {'#', "numbersign"}, {'$', "dollar"},     {'%', "percent"},
        {'&', "ampersand"},  {'\'', "quotesingle"}, {'(', "parenleft"},
        {')', "parenright"}, {'*', "asterisk"},   {'+', "plus"},
        {',', "comma"},      {'-', "hyphen"},     {'.', "period"},
        {'/', "slash"},      {'0', "zero"},       {'1', "one"},
        {'2', "two"},        {'3', "three"},      {'4', "four"},
        {'5', "five"},       {'6', "six"},        {'7', "seven"},
        {'8', "eight"},      {'9', "nine"},       {':', "colon"},
        {';', "semicolon"},  {'<', "less"},       {'=', "equal"},
        {'>', "greater"},    {'?', "question"},   {'@', "at"},
        {'[', "bracketleft"}, {'\\', "backslash"}, {']', "bracketright"},
        {'^', "asciicircum"}, {'_', "underscore"}, {'`', "grave"},
        {'{', "braceleft"},  {'|', "bar"},        {'}', "braceright"},
        {'~', "asciitilde"},
    };
    auto it = table.find(c);
    if (it != table.end()) return it->second;
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) return std::string(1, c);
    return "question";
}

/// Serializes numbered objects into a classic-xref PDF with a fixed /ID and
/// no timestamps, so identical inputs produce identical bytes.
class PdfBuilder {
public:
    int reserve() {
        objects_.emplace_back();
        return static_cast<int>(objects_.size()); // object numbers are 1-based
    }

    int add(std::string body) {
        objects_.push_back(std::move(body));
        return static_cast<int>(objects_.size());
    }

    int add_stream(const std::string& dict_extras, const std::string& data) {
        std::string body = "<< /Length " + std::to_string(data.size());
        if (!dict_extras.empty()) body += " " + dict_extras;
        body += " >>\nstream\n" + data + "\nendstream";
        return add(std::move(body));
    }

    void set(int num, std::string body) {
        objects_[static_cast<std::size_t>(num - 1)] = std::move(body);
    }

    static std::string ref(int num) { return std::to_string(num) + " 0 R"; }

    std::string serialize(int root_num) const {
        std::string out = "%PDF-1.7\n%\xc7\xec\x8f\xa2\n";
        std::vector<std::size_t> offsets(objects_.size() + 1, 0);
        for (std::size_t i = 0; i < objects_.size(); ++i) {
            offsets[i + 1] = out.size();
            out += std::to_string(i + 1) + " 0 obj\n" + objects_[i] + "\nendobj\n";
        }
        std::size_t xref_at = out.size();
        out += "xref\n0 " + std::to_string(objects_.size() + 1) + "\n";
        out += "0000000000 65535 f \n";
        for (std::size_t i = 1; i <= objects_.size(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%010zu 00000 n \n", offsets[i]);
            out += buf;
        }
        out += "trailer\n<< /Size " + std::to_string(objects_.size() + 1) + " /Root " +
               ref(root_num) +
               " /ID [<4745313233343536373839616263646566> "
               "<4745313233343536373839616263646566>] >>\n";
        out += "startxref\n" + std::to_string(xref_at) + "\n%%EOF\n";
        return out;
    }

private:
    std::vector<std::string> objects_;
};

struct TextOpts {
    std::string font = "F1";
    double size = 10.0;
    double leading = 12.0;
    int render_mode = 0;
};

/// Content-stream text helper. Coordinates are PDF points, y up.
class ContentBuilder {
public:
    ContentBuilder& raw(const std::string& ops) {
        out_ += ops;
        if (!ops.empty() && ops.back() != '\n') out_.push_back('\n');
        return *this;
    }

    ContentBuilder& save() { return raw("q"); }
    ContentBuilder& restore() { return raw("Q"); }

    ContentBuilder& fill_color(double r, double g, double b) {
        return raw(pdf_num(r) + " " + pdf_num(g) + " " + pdf_num(b) + " rg");
    }

    ContentBuilder& fill_rect(double x, double y, double w, double h) {
        return raw(pdf_num(x) + " " + pdf_num(y) + " " + pdf_num(w) + " " + pdf_num(h) +
                   " re f");
    }

    ContentBuilder& clip_rect(double x, double y, double w, double h) {
        return raw(pdf_num(x) + " " + pdf_num(y) + " " + pdf_num(w) + " " + pdf_num(h) +
                   " re W n");
    }

    ContentBuilder& ext_gstate(const std::string& name) { return raw("/" + name + " gs"); }
    ContentBuilder& begin_marked_content(const std::string& oc_name) {
        return raw("/OC /" + oc_name + " BDC");
    }
    ContentBuilder& end_marked_content() { return raw("EMC"); }

    /// Shows lines starting with the first baseline at (x, y), subsequent
    /// lines leading points below.
    ContentBuilder& text_lines(double x, double y, const std::vector<std::string>& lines,
                               const TextOpts& opts = TextOpts()) {
        out_ += "BT\n/" + opts.font + " " + pdf_num(opts.size) + " Tf\n" + pdf_num(opts.leading) +
                " TL\n";
        if (opts.render_mode != 0) out_ += std::to_string(opts.render_mode) + " Tr\n";
        out_ += pdf_num(x) + " " + pdf_num(y) + " Td\n";
        bool first = true;
        for (const auto& line : lines) {
            if (!first) out_ += "T*\n";
            out_ += "(" + pdf_escape(line) + ") Tj\n";
            first = false;
        }
        if (opts.render_mode != 0) out_ += "0 Tr\n";
        out_ += "ET\n";
        return *this;
    }

    const std::string& str() const { return out_; }

private:
    std::string out_;
};

/// "<< /Type /Font /Subtype /Type1 ... >>" for a standard base font.
inline std::string standard_font_dict(const std::string& base) {
    return "<< /Type /Font /Subtype /Type1 /BaseFont /" + base +
           " /Encoding /WinAnsiEncoding >>";
}

/// A Type3 font whose every glyph procedure paints nothing: character codes
/// keep their meaning for extraction while the page shows blank space.
inline int add_blank_glyph_type3_font(PdfBuilder& pdf) {
    // one shared empty glyph procedure (just the width op)
    int proc = pdf.add_stream("", "600 0 d0");
    std::string char_procs = "<<";
    std::string differences = "[ 32 ";
    std::string widths = "[";
    for (int code = 32; code <= 126; ++code) {
        std::string name = glyph_name_for(static_cast<char>(code));
        char_procs += " /" + name + " " + PdfBuilder::ref(proc);
        differences += "/" + name + " ";
        widths += " 600";
    }
    char_procs += " >>";
    differences += "]";
    widths += " ]";
    int cp = pdf.add(char_procs);
    std::string font = "<< /Type /Font /Subtype /Type3 /FontBBox [0 0 600 700] "
                       "/FontMatrix [0.001 0 0 0.001 0 0] /CharProcs " +
                       PdfBuilder::ref(cp) + " /Encoding << /Type /Encoding /Differences " +
                       differences + " >> /FirstChar 32 /LastChar 126 /Widths " + widths + " >>";
    return pdf.add(font);
}

} // namespace ghostlint::corpus
