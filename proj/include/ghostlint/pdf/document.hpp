#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ghostlint/errors.hpp"
#include "ghostlint/geometry.hpp"
#include "ghostlint/pdf/objects.hpp"

namespace ghostlint::pdf {

struct PageInfo {
    Ref ref;
    Dict dict;                // page dict with inherited attributes folded in
    BoundingBox media_box;    // current (post-preprocess this is the expanded box)
    std::optional<BoundingBox> crop_box;
    int rotate = 0;
    BoundingBox original_view_box; // CropBox ∩ MediaBox as loaded
};

/// Parsed PDF with xref resolution, page tree, OCG states, and the
/// preprocessing pass that neutralizes extraction-hiding mechanisms.
class PdfDocument {
public:
    static PdfDocument load_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open: " + path);
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return load_bytes(std::move(bytes));
    }

    static PdfDocument load_bytes(std::string bytes) {
        PdfDocument doc;
        doc.data_ = std::move(bytes);
        doc.parse_file();
        return doc;
    }

    std::size_t page_count() const { return pages_.size(); }
    const PageInfo& page(std::size_t index) const {
        if (index >= pages_.size()) throw ParseError("page index out of range");
        return pages_[index];
    }
    bool preprocessed() const { return preprocessed_; }

    /// Current effective page box: CropBox ∩ MediaBox when a CropBox exists.
    BoundingBox effective_box(std::size_t index) const {
        const PageInfo& p = page(index);
        if (p.crop_box) return bbox_intersect(*p.crop_box, p.media_box);
        return p.media_box;
    }

    /// The region a compliant viewer displayed before preprocessing.
    BoundingBox original_view_box(std::size_t index) const {
        return page(index).original_view_box;
    }

    /// Removes CropBoxes, expands MediaBoxes by margin points per side, and
    /// forces every OCG visible, so extraction sees content those mechanisms
    /// would suppress. Idempotent; original view geometry and OCG states are
    /// kept for the renderer.
    void preprocess(double media_box_margin = 200.0) {
        if (preprocessed_) return;
        for (auto& p : pages_) {
            p.crop_box.reset();
            p.media_box = bbox_pad(normalize_bbox(p.media_box), media_box_margin);
            p.dict.erase("CropBox");
            Array mb;
            mb.push_back(Object::make_real(p.media_box.x0));
            mb.push_back(Object::make_real(p.media_box.y0));
            mb.push_back(Object::make_real(p.media_box.x1));
            mb.push_back(Object::make_real(p.media_box.y1));
            p.dict["MediaBox"] = Object::make_array(std::move(mb));
        }
        for (auto& [ref, state] : ocg_current_) state = true;
        preprocessed_ = true;
    }

    /// Resolves references (chains too); non-refs pass through.
    Object resolve(const Object& obj) const {
        Object cur = obj;
        int hops = 0;
        while (cur.is_ref()) {
            if (++hops > 32) throw ParseError("reference cycle");
            cur = get(cur.as_ref());
        }
        return cur;
    }

    Object get(Ref ref) const {
        auto cached = object_cache_.find(ref);
        if (cached != object_cache_.end()) return cached->second;
        Object obj = load_object(ref);
        object_cache_[ref] = obj;
        return obj;
    }

    /// Stream payload with filters applied.
    std::string decoded_stream(const Object& stream_obj) const {
        if (!stream_obj.is_stream()) throw ParseError("not a stream");
        const StreamData& sd = stream_obj.stream();
        std::string data = sd.raw;
        std::vector<Object> filters;
        Object filter = resolve(stream_obj.get("Filter"));
        if (filter.is_name()) {
            filters.push_back(filter);
        } else if (filter.is_array()) {
            for (const auto& f : filter.array()) filters.push_back(resolve(f));
        }
        std::vector<Object> parms;
        Object dp = resolve(stream_obj.get("DecodeParms"));
        if (dp.is_dict()) {
            parms.push_back(dp);
        } else if (dp.is_array()) {
            for (const auto& p : dp.array()) parms.push_back(resolve(p));
        }
        for (std::size_t i = 0; i < filters.size(); ++i) {
            const std::string& name = filters[i].as_name();
            Object parm = i < parms.size() ? parms[i] : Object();
            if (name == "FlateDecode" || name == "Fl") {
                data = detail::zlib_inflate(data);
                if (parm.is_dict()) {
                    int predictor = static_cast<int>(resolve(parm.get("Predictor")).is_number()
                                                         ? resolve(parm.get("Predictor")).as_int()
                                                         : 1);
                    if (predictor > 1) {
                        int colors = value_or(parm, "Colors", 1);
                        int bpc = value_or(parm, "BitsPerComponent", 8);
                        int columns = value_or(parm, "Columns", 1);
                        data = detail::apply_png_predictor(data, predictor, colors, bpc, columns);
                    }
                }
            } else if (name == "ASCIIHexDecode" || name == "AHx") {
                std::string out;
                for (char c : data) {
                    if (c == '>') break;
                    if (std::isxdigit(static_cast<unsigned char>(c))) out.push_back(c);
                }
                if (out.size() % 2) out.push_back('0');
                std::string bytes;
                auto nib = [](char c) {
                    return std::isdigit(static_cast<unsigned char>(c))
                               ? c - '0'
                               : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
                };
                for (std::size_t j = 0; j + 1 < out.size(); j += 2)
                    bytes.push_back(static_cast<char>((nib(out[j]) << 4) | nib(out[j + 1])));
                data = std::move(bytes);
            } else {
                throw ParseError("unsupported stream filter: " + name);
            }
        }
        return data;
    }

    /// Concatenated decoded content streams of a page.
    std::string page_content(std::size_t index) const {
        const PageInfo& p = page(index);
        Object contents = resolve([&] {
            auto it = p.dict.find("Contents");
            return it == p.dict.end() ? Object() : it->second;
        }());
        std::string out;
        if (contents.is_stream()) {
            out = decoded_stream(contents);
        } else if (contents.is_array()) {
            for (const auto& part : contents.array()) {
                Object s = resolve(part);
                if (s.is_stream()) {
                    out += decoded_stream(s);
                    out.push_back('\n');
                }
            }
        }
        return out;
    }

    Object page_resources(std::size_t index) const {
        auto it = page(index).dict.find("Resources");
        if (it == page(index).dict.end()) return Object::make_dict();
        Object res = resolve(it->second);
        return res.is_dict() ? res : Object::make_dict();
    }

    /// OCG visibility. Original = as loaded; current reflects preprocessing.
    bool ocg_visible_current(Ref ref) const {
        auto it = ocg_current_.find(ref);
        return it == ocg_current_.end() ? true : it->second;
    }
    bool ocg_visible_original(Ref ref) const {
        auto it = ocg_original_.find(ref);
        return it == ocg_original_.end() ? true : it->second;
    }
    bool has_ocgs() const { return !ocg_original_.empty(); }

private:
    static int value_or(const Object& dict, const std::string& key, int fallback) {
        const Object& v = dict.get(key);
        return v.is_number() ? static_cast<int>(v.as_int()) : fallback;
    }

    void parse_file() {
        if (data_.size() < 8 || data_.compare(0, 5, "%PDF-") != 0) {
            // some producers prepend junk; search the first 1 KiB
            std::size_t at = data_.find("%PDF-");
            if (at == std::string::npos || at > 1024) throw ParseError("missing %PDF header");
        }
        try {
            parse_xref_chain();
        } catch (const EncryptedError&) {
            throw;
        } catch (const Error&) {
            reconstruct_xref();
        }
        if (xref_.empty()) reconstruct_xref();
        if (trailer_.is_null()) throw ParseError("no trailer found");
        if (trailer_.has("Encrypt")) throw EncryptedError("password-protected PDF");
        build_pages();
        build_ocg_states();
        for (auto& p : pages_) {
            BoundingBox media = normalize_bbox(p.media_box);
            p.original_view_box =
                p.crop_box ? bbox_intersect(normalize_bbox(*p.crop_box), media) : media;
        }
    }

    void parse_xref_chain() {
        std::size_t tail_at = data_.rfind("startxref");
        if (tail_at == std::string::npos) throw ParseError("startxref not found");
        Lexer lexer(data_, tail_at + 9);
        Lexer::Token t = lexer.next();
        if (t.kind != Lexer::Token::Kind::Number) throw ParseError("bad startxref");
        std::set<std::size_t> seen;
        std::size_t offset = static_cast<std::size_t>(t.number);
        while (offset != 0 && offset < data_.size() && !seen.count(offset)) {
            seen.insert(offset);
            offset = parse_xref_section(offset);
        }
    }

    // returns the /Prev offset or 0
    std::size_t parse_xref_section(std::size_t offset) {
        Lexer lexer(data_, offset);
        std::size_t save = lexer.pos();
        Lexer::Token t = lexer.next();
        if (t.kind == Lexer::Token::Kind::Keyword && t.text == "xref") {
            // classic table
            while (true) {
                std::size_t row = lexer.pos();
                Lexer::Token a = lexer.next();
                if (a.kind == Lexer::Token::Kind::Keyword && a.text == "trailer") break;
                if (a.kind != Lexer::Token::Kind::Number) throw ParseError("bad xref table");
                Lexer::Token b = lexer.next();
                if (b.kind != Lexer::Token::Kind::Number) throw ParseError("bad xref subsection");
                int first = static_cast<int>(a.number);
                int count = static_cast<int>(b.number);
                (void)row;
                for (int i = 0; i < count; ++i) {
                    Lexer::Token off = lexer.next();
                    Lexer::Token gen = lexer.next();
                    Lexer::Token kind = lexer.next();
                    if (kind.kind != Lexer::Token::Kind::Keyword) throw ParseError("bad xref row");
                    if (kind.text == "n") {
                        Ref ref{first + i, static_cast<int>(gen.number)};
                        XrefEntry e;
                        e.offset = static_cast<std::size_t>(off.number);
                        xref_.emplace(ref.num, e);
                    }
                }
            }
            ObjectParser parser(lexer);
            Object trailer = parser.parse();
            merge_trailer(trailer);
            Object prev = trailer.get("Prev");
            if (trailer.has("XRefStm")) {
                Object xs = trailer.get("XRefStm");
                if (xs.is_number()) parse_xref_section(static_cast<std::size_t>(xs.as_int()));
            }
            return prev.is_number() ? static_cast<std::size_t>(prev.as_int()) : 0;
        }
        // xref stream: "n g obj <<...>> stream"
        lexer.seek(save);
        Object stream_obj = parse_object_at(offset).second;
        if (!stream_obj.is_stream()) throw ParseError("xref stream expected");
        merge_trailer(stream_obj);
        parse_xref_stream(stream_obj);
        Object prev = stream_obj.get("Prev");
        return prev.is_number() ? static_cast<std::size_t>(prev.as_int()) : 0;
    }

    void parse_xref_stream(const Object& stream_obj) {
        std::string data = decoded_stream(stream_obj);
        Object w = resolve(stream_obj.get("W"));
        if (!w.is_array() || w.array().size() < 3) throw ParseError("xref stream missing W");
        int w0 = static_cast<int>(resolve(w.array()[0]).as_int());
        int w1 = static_cast<int>(resolve(w.array()[1]).as_int());
        int w2 = static_cast<int>(resolve(w.array()[2]).as_int());
        std::vector<std::pair<int, int>> index;
        Object idx = resolve(stream_obj.get("Index"));
        if (idx.is_array()) {
            for (std::size_t i = 0; i + 1 < idx.array().size(); i += 2)
                index.emplace_back(static_cast<int>(resolve(idx.array()[i]).as_int()),
                                   static_cast<int>(resolve(idx.array()[i + 1]).as_int()));
        } else {
            int size = static_cast<int>(resolve(stream_obj.get("Size")).as_int());
            index.emplace_back(0, size);
        }
        const std::size_t row = static_cast<std::size_t>(w0 + w1 + w2);
        std::size_t pos = 0;
        auto read_field = [&](int width) -> std::uint64_t {
            std::uint64_t v = 0;
            for (int i = 0; i < width; ++i)
                v = (v << 8) | static_cast<unsigned char>(data[pos++]);
            return v;
        };
        for (auto [first, count] : index) {
            for (int i = 0; i < count && pos + row <= data.size(); ++i) {
                std::uint64_t type = w0 == 0 ? 1 : read_field(w0);
                std::uint64_t f1 = read_field(w1);
                std::uint64_t f2 = w2 == 0 ? 0 : read_field(w2);
                int num = first + i;
                if (xref_.count(num)) continue; // newest wins
                if (type == 1) {
                    XrefEntry e;
                    e.offset = static_cast<std::size_t>(f1);
                    xref_.emplace(num, e);
                } else if (type == 2) {
                    XrefEntry e;
                    e.in_object_stream = true;
                    e.container = static_cast<int>(f1);
                    e.index_in_container = static_cast<int>(f2);
                    xref_.emplace(num, e);
                }
            }
        }
    }

    void merge_trailer(const Object& t) {
        if (trailer_.is_null()) {
            Dict d;
            for (const auto& [k, v] : t.dict()) d[k] = v;
            trailer_ = Object::make_dict(std::move(d));
            return;
        }
        for (const auto& [k, v] : t.dict())
            if (!trailer_.has(k)) trailer_.dict()[k] = v;
    }

    void reconstruct_xref() {
        xref_.clear();
        // scan for "N G obj"
        std::size_t pos = 0;
        while (pos < data_.size()) {
            std::size_t at = data_.find(" obj", pos);
            if (at == std::string::npos) break;
            // walk back across "G" and "N"
            std::size_t p = at;
            auto skip_back_ws = [&](std::size_t i) {
                while (i > 0 && data_[i - 1] == ' ') --i;
                return i;
            };
            auto read_back_int = [&](std::size_t i, long& out) {
                std::size_t end = i;
                while (i > 0 && std::isdigit(static_cast<unsigned char>(data_[i - 1]))) --i;
                if (i == end) return std::size_t(std::string::npos);
                out = std::strtol(data_.substr(i, end - i).c_str(), nullptr, 10);
                return i;
            };
            long gen = 0, num = 0;
            std::size_t i = read_back_int(p, gen);
            if (i != std::string::npos) {
                i = skip_back_ws(i);
                std::size_t j = read_back_int(i, num);
                if (j != std::string::npos &&
                    (j == 0 || detail::is_pdf_whitespace(data_[j - 1]) || data_[j - 1] == '>')) {
                    XrefEntry e;
                    e.offset = j;
                    xref_[static_cast<int>(num)] = e; // later definitions win
                }
            }
            pos = at + 4;
        }
        // trailer: prefer the last "trailer" keyword; else find a catalog
        std::size_t tr = data_.rfind("trailer");
        if (tr != std::string::npos) {
            try {
                Lexer lexer(data_, tr + 7);
                ObjectParser parser(lexer);
                Object t = parser.parse();
                if (t.is_dict()) merge_trailer(t);
            } catch (const Error&) {
            }
        }
        if (trailer_.is_null() || !trailer_.has("Root")) {
            for (const auto& [num, entry] : xref_) {
                if (entry.in_object_stream) continue;
                try {
                    Object obj = parse_object_at(entry.offset).second;
                    Object type = resolve(obj.get("Type"));
                    if (type.is_name() && type.as_name() == "Catalog") {
                        Dict d;
                        d["Root"] = Object::make_ref(num, 0);
                        trailer_ = Object::make_dict(std::move(d));
                        break;
                    }
                    if (obj.is_stream() && resolve(obj.get("Type")).is_name() &&
                        resolve(obj.get("Type")).as_name() == "XRef" && obj.has("Root")) {
                        merge_trailer(obj);
                        // recover object-stream members the raw scan can't see
                        parse_xref_stream(obj);
                    }
                } catch (const Error&) {
                }
            }
        }
    }

    std::pair<Ref, Object> parse_object_at(std::size_t offset) const {
        Lexer lexer(data_, offset);
        Lexer::Token num = lexer.next();
        Lexer::Token gen = lexer.next();
        Lexer::Token kw = lexer.next();
        if (num.kind != Lexer::Token::Kind::Number || gen.kind != Lexer::Token::Kind::Number ||
            kw.kind != Lexer::Token::Kind::Keyword || kw.text != "obj")
            throw ParseError("indirect object expected");
        Ref ref{static_cast<int>(num.number), static_cast<int>(gen.number)};
        ObjectParser parser(lexer);
        Object obj = parser.parse();
        // stream payload?
        std::size_t save = lexer.pos();
        Lexer::Token next = lexer.next();
        if (next.kind == Lexer::Token::Kind::Keyword && next.text == "stream" && obj.is_dict()) {
            std::size_t p = next.offset + 6;
            if (p < data_.size() && data_[p] == '\r') ++p;
            if (p < data_.size() && data_[p] == '\n') ++p;
            std::size_t len = 0;
            Object len_obj = obj.get("Length");
            if (len_obj.is_ref()) len_obj = resolve(len_obj);
            if (len_obj.is_number() && len_obj.as_int() >= 0) {
                len = static_cast<std::size_t>(len_obj.as_int());
            }
            std::size_t end = p + len;
            std::size_t tok = end <= data_.size() ? find_token_after(end) : data_.size();
            bool plausible =
                end <= data_.size() && tok + 9 <= data_.size() && data_.compare(tok, 9, "endstream") == 0;
            if (!plausible) {
                std::size_t es = data_.find("endstream", p);
                if (es == std::string::npos) throw ParseError("endstream not found");
                end = es;
                while (end > p && (data_[end - 1] == '\n' || data_[end - 1] == '\r')) --end;
            }
            Dict d = obj.dict();
            return {ref, Object::make_stream(std::move(d), data_.substr(p, end - p))};
        }
        lexer.seek(save);
        return {ref, obj};
    }

    std::size_t find_token_after(std::size_t pos) const {
        while (pos < data_.size() && detail::is_pdf_whitespace(data_[pos])) ++pos;
        return pos;
    }

    Object load_object(Ref ref) const {
        auto it = xref_.find(ref.num);
        if (it == xref_.end()) return Object();
        const XrefEntry& e = it->second;
        if (!e.in_object_stream) {
            if (e.offset >= data_.size()) return Object();
            auto [got_ref, obj] = parse_object_at(e.offset);
            if (got_ref.num != ref.num) throw ParseError("xref offset mismatch");
            return obj;
        }
        // object stream container
        Object container = get(Ref{e.container, 0});
        if (!container.is_stream()) throw ParseError("object stream missing");
        std::string data = decoded_stream(container);
        int n = static_cast<int>(resolve(container.get("N")).as_int());
        int first = static_cast<int>(resolve(container.get("First")).as_int());
        Lexer header(data, 0);
        std::vector<std::pair<int, std::size_t>> offsets;
        for (int i = 0; i < n; ++i) {
            Lexer::Token onum = header.next();
            Lexer::Token ooff = header.next();
            if (onum.kind != Lexer::Token::Kind::Number) break;
            offsets.emplace_back(static_cast<int>(onum.number),
                                 static_cast<std::size_t>(ooff.number) + first);
        }
        if (e.index_in_container < 0 ||
            static_cast<std::size_t>(e.index_in_container) >= offsets.size())
            throw ParseError("object stream index out of range");
        auto [onum, ooff] = offsets[static_cast<std::size_t>(e.index_in_container)];
        if (onum != ref.num) {
            // some writers reorder; search
            bool found = false;
            for (auto [n2, o2] : offsets) {
                if (n2 == ref.num) {
                    ooff = o2;
                    found = true;
                    break;
                }
            }
            if (!found) return Object();
        }
        Lexer lexer(data, ooff);
        ObjectParser parser(lexer);
        return parser.parse();
    }

    void build_pages() {
        Object root = resolve(trailer_.get("Root"));
        if (!root.is_dict()) throw ParseError("no document catalog");
        catalog_ = root;
        Object pages = resolve(root.get("Pages"));
        if (!pages.is_dict()) throw ParseError("no page tree");
        Dict inherited;
        std::set<int> guard;
        walk_pages(root.get("Pages"), inherited, guard);
        if (pages_.empty()) throw ParseError("document has no pages");
    }

    void walk_pages(const Object& node_ref, Dict inherited, std::set<int>& guard) {
        Object node = resolve(node_ref);
        if (!node.is_dict()) return;
        if (node_ref.is_ref()) {
            if (guard.count(node_ref.as_ref().num)) return;
            guard.insert(node_ref.as_ref().num);
        }
        for (const char* key : {"Resources", "MediaBox", "CropBox", "Rotate"}) {
            if (node.has(key)) inherited[key] = node.get(key);
        }
        Object type = resolve(node.get("Type"));
        bool is_page = type.is_name() && type.as_name() == "Page";
        bool is_pages = type.is_name() && type.as_name() == "Pages";
        if (!is_page && (is_pages || node.has("Kids"))) {
            Object kids = resolve(node.get("Kids"));
            if (kids.is_array())
                for (const auto& kid : kids.array()) walk_pages(kid, inherited, guard);
            return;
        }
        PageInfo info;
        info.ref = node_ref.is_ref() ? node_ref.as_ref() : Ref{};
        info.dict = node.dict();
        for (const auto& [k, v] : inherited)
            if (!info.dict.count(k)) info.dict[k] = v;
        info.media_box = read_box(info.dict, "MediaBox").value_or(BoundingBox{0, 0, 612, 792});
        info.crop_box = read_box(info.dict, "CropBox");
        auto rot = info.dict.find("Rotate");
        if (rot != info.dict.end() && resolve(rot->second).is_number())
            info.rotate = static_cast<int>(resolve(rot->second).as_int());
        pages_.push_back(std::move(info));
    }

    std::optional<BoundingBox> read_box(const Dict& dict, const std::string& key) const {
        auto it = dict.find(key);
        if (it == dict.end()) return std::nullopt;
        Object arr = resolve(it->second);
        if (!arr.is_array() || arr.array().size() < 4) return std::nullopt;
        BoundingBox b;
        b.x0 = resolve(arr.array()[0]).as_double();
        b.y0 = resolve(arr.array()[1]).as_double();
        b.x1 = resolve(arr.array()[2]).as_double();
        b.y1 = resolve(arr.array()[3]).as_double();
        return normalize_bbox(b);
    }

    void build_ocg_states() {
        Object props = resolve(catalog_.get("OCProperties"));
        if (!props.is_dict()) return;
        Object ocgs = resolve(props.get("OCGs"));
        std::vector<Ref> all;
        if (ocgs.is_array())
            for (const auto& g : ocgs.array())
                if (g.is_ref()) all.push_back(g.as_ref());
        Object config = resolve(props.get("D"));
        bool base_on = true;
        std::set<int> on, off;
        if (config.is_dict()) {
            Object base = resolve(config.get("BaseState"));
            if (base.is_name() && base.as_name() == "OFF") base_on = false;
            Object on_arr = resolve(config.get("ON"));
            if (on_arr.is_array())
                for (const auto& g : on_arr.array())
                    if (g.is_ref()) on.insert(g.as_ref().num);
            Object off_arr = resolve(config.get("OFF"));
            if (off_arr.is_array())
                for (const auto& g : off_arr.array())
                    if (g.is_ref()) off.insert(g.as_ref().num);
        }
        for (Ref ref : all) {
            bool visible = base_on;
            if (on.count(ref.num)) visible = true;
            if (off.count(ref.num)) visible = false;
            // per-OCG usage /View /ViewState /OFF hides it from viewers
            Object ocg = resolve(Object::make_ref(ref.num, ref.gen));
            Object usage = resolve(ocg.get("Usage"));
            if (usage.is_dict()) {
                Object view = resolve(usage.get("View"));
                if (view.is_dict()) {
                    Object state = resolve(view.get("ViewState"));
                    if (state.is_name() && state.as_name() == "OFF") visible = false;
                }
            }
            ocg_original_[ref] = visible;
            ocg_current_[ref] = visible;
        }
    }

    struct XrefEntry {
        std::size_t offset = 0;
        bool in_object_stream = false;
        int container = 0;
        int index_in_container = 0;
    };

    std::string data_;
    std::map<int, XrefEntry> xref_;
    Object trailer_;
    Object catalog_;
    std::vector<PageInfo> pages_;
    std::map<Ref, bool> ocg_original_;
    std::map<Ref, bool> ocg_current_;
    bool preprocessed_ = false;
    mutable std::map<Ref, Object> object_cache_;
};

/// preprocess_pdf: parse + neutralize hiding mechanisms in one step.
inline PdfDocument preprocess_pdf(std::string bytes, double media_box_margin = 200.0) {
    PdfDocument doc = PdfDocument::load_bytes(std::move(bytes));
    doc.preprocess(media_box_margin);
    return doc;
}

} // namespace ghostlint::pdf
