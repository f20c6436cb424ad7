#include <doctest.h>

#include <string>

#include <zlib.h>

#include "ghostlint/pdf/document.hpp"
#include "ghostlint/pdf/extract.hpp"
#include "ghostlint/textnorm.hpp"

using namespace ghostlint;

namespace {

std::string deflate_bytes(const std::string& in) {
    uLongf out_len = compressBound(static_cast<uLong>(in.size()));
    std::string out(out_len, '\0');
    REQUIRE(compress(reinterpret_cast<Bytef*>(out.data()), &out_len,
                     reinterpret_cast<const Bytef*>(in.data()),
                     static_cast<uLong>(in.size())) == Z_OK);
    out.resize(out_len);
    return out;
}

// A modern-layout PDF: catalog/pages/page live in a Flate object stream,
// the xref is a cross-reference stream, the content stream is Flate too.
std::string modern_pdf(const std::string& text) {
    std::string content = "BT /F1 12 Tf 72 700 Td (" + text + ") Tj ET";
    std::string content_z = deflate_bytes(content);

    // objects 1..3 packed into object stream 5
    std::string o1 = "<< /Type /Catalog /Pages 2 0 R >>";
    std::string o2 = "<< /Type /Pages /Kids [3 0 R] /Count 1 >>";
    std::string o3 = "<< /Type /Page /Parent 2 0 R /MediaBox [0 0 612 792] /Resources << /Font "
                     "<< /F1 << /Type /Font /Subtype /Type1 /BaseFont /Helvetica >> >> >> "
                     "/Contents 4 0 R >>";
    std::string header = "1 0 2 " + std::to_string(o1.size() + 1) + " 3 " +
                         std::to_string(o1.size() + 1 + o2.size() + 1) + " ";
    std::string payload = header + o1 + " " + o2 + " " + o3;
    std::string objstm_z = deflate_bytes(payload);

    std::string out = "%PDF-1.5\n";
    std::vector<std::size_t> offsets(7, 0);
    auto add = [&](int num, const std::string& body) {
        offsets[static_cast<std::size_t>(num)] = out.size();
        out += std::to_string(num) + " 0 obj\n" + body + "\nendobj\n";
    };
    add(4, "<< /Length " + std::to_string(content_z.size()) +
               " /Filter /FlateDecode >>\nstream\n" + content_z + "\nendstream");
    add(5, "<< /Type /ObjStm /N 3 /First " + std::to_string(header.size()) + " /Length " +
               std::to_string(objstm_z.size()) + " /Filter /FlateDecode >>\nstream\n" + objstm_z +
               "\nendstream");

    // xref stream (object 6): W [1 2 1], entries for objects 0..6
    std::string xref_data;
    auto entry = [&](int type, int f1, int f2) {
        xref_data.push_back(static_cast<char>(type));
        xref_data.push_back(static_cast<char>((f1 >> 8) & 0xFF));
        xref_data.push_back(static_cast<char>(f1 & 0xFF));
        xref_data.push_back(static_cast<char>(f2));
    };
    std::size_t xref_at = out.size();
    entry(0, 0, 0);                                        // obj 0: free
    entry(2, 5, 0);                                        // obj 1: in objstm 5, index 0
    entry(2, 5, 1);                                        // obj 2
    entry(2, 5, 2);                                        // obj 3
    entry(1, static_cast<int>(offsets[4]), 0);             // obj 4: direct
    entry(1, static_cast<int>(offsets[5]), 0);             // obj 5: direct
    entry(1, static_cast<int>(xref_at), 0);                // obj 6: this stream
    add(6, "<< /Type /XRef /Size 7 /W [1 2 1] /Root 1 0 R /Length " +
               std::to_string(xref_data.size()) + " >>\nstream\n" + xref_data + "\nendstream");
    out += "startxref\n" + std::to_string(xref_at) + "\n%%EOF\n";
    return out;
}

} // namespace

TEST_CASE("modern PDF layout: xref stream + object stream + flate content") {
    std::string bytes = modern_pdf("Flate compressed body text");
    pdf::PdfDocument doc = pdf::PdfDocument::load_bytes(bytes);
    REQUIRE(doc.page_count() == 1);
    auto blocks = pdf::extract_text_blocks(doc);
    REQUIRE(blocks.size() == 1);
    CHECK(normalize_text(blocks[0].text) == "flate compressed body text");
}

TEST_CASE("xref reconstruction recovers from a corrupt startxref") {
    std::string bytes = modern_pdf("salvage me please");
    // break the startxref offset
    std::size_t at = bytes.rfind("startxref");
    bytes = bytes.substr(0, at) + "startxref\n999999999\n%%EOF\n";
    pdf::PdfDocument doc = pdf::PdfDocument::load_bytes(bytes);
    REQUIRE(doc.page_count() == 1);
    auto blocks = pdf::extract_text_blocks(doc);
    REQUIRE(blocks.size() == 1);
    CHECK(normalize_text(blocks[0].text) == "salvage me please");
}
