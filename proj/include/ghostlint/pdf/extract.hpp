#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ghostlint/errors.hpp"
#include "ghostlint/model.hpp"
#include "ghostlint/pdf/content.hpp"
#include "ghostlint/pdf/document.hpp"
#include "ghostlint/subprocess.hpp"
#include "ghostlint/textnorm.hpp"

namespace ghostlint::pdf {

namespace extract_detail {

struct Fragment {
    double baseline = 0;
    double x0 = 0, x1 = 0;
    double em = 0;
    BoundingBox bbox;
    std::string text;
};

struct Line {
    double baseline = 0;
    double em = 0;
    BoundingBox bbox;
    std::vector<Fragment> fragments;
};

/// Collects glyph runs into positioned line fragments. Clip and page-box
/// filters reproduce what mainstream extractors see; the fallback mode
/// ignores clips.
class ExtractSink final : public ContentSink {
public:
    ExtractSink(bool respect_clips, std::optional<BoundingBox> page_filter)
        : respect_clips_(respect_clips), page_filter_(page_filter) {}

    void on_glyph_run(const GlyphRun& run) override {
        if (!run.ocg_visible_current) return;
        if (run.glyphs.empty()) return;
        BoundingBox run_box = run.glyphs.front().user_box;
        for (const auto& g : run.glyphs) run_box = bbox_union(run_box, g.user_box);
        if (respect_clips_ && run.clip && !bbox_overlaps(run_box, *run.clip)) return;
        if (page_filter_ && !bbox_overlaps(run_box, *page_filter_)) return;

        Fragment frag;
        double ox, oy;
        run.glyphs.front().trm.apply(0, 0, ox, oy);
        frag.baseline = oy;
        frag.em = run.glyphs.front().em_size;
        frag.bbox = run_box;
        frag.x0 = run_box.x0;
        frag.x1 = run_box.x1;
        std::string text;
        for (const auto& g : run.glyphs) {
            if (g.unicode) utf8_append(text, g.unicode);
        }
        frag.text = std::move(text);
        if (!is_blank(frag.text)) fragments_.push_back(std::move(frag));
    }

    std::vector<Fragment> take_fragments() { return std::move(fragments_); }

private:
    bool respect_clips_;
    std::optional<BoundingBox> page_filter_;
    std::vector<Fragment> fragments_;
};

inline std::vector<Line> assemble_lines(std::vector<Fragment> fragments) {
    std::vector<Line> lines;
    for (auto& frag : fragments) {
        Line* target = nullptr;
        if (!lines.empty()) {
            Line& last = lines.back();
            double tol = std::max(0.2 * std::max(last.em, frag.em), 0.5);
            if (std::abs(last.baseline - frag.baseline) <= tol) target = &last;
        }
        if (!target) {
            lines.push_back({frag.baseline, frag.em, frag.bbox, {}});
            target = &lines.back();
        }
        target->em = std::max(target->em, frag.em);
        target->bbox = target->fragments.empty() ? frag.bbox : bbox_union(target->bbox, frag.bbox);
        target->fragments.push_back(std::move(frag));
    }
    for (auto& line : lines) {
        std::sort(line.fragments.begin(), line.fragments.end(),
                  [](const Fragment& a, const Fragment& b) { return a.x0 < b.x0; });
    }
    return lines;
}

inline std::string line_text(const Line& line) {
    std::string out;
    double prev_x1 = 0;
    bool first = true;
    for (const auto& frag : line.fragments) {
        if (!first && frag.x0 - prev_x1 > 0.25 * std::max(line.em, 1.0) && !out.empty() &&
            out.back() != ' ')
            out.push_back(' ');
        out += frag.text;
        prev_x1 = std::max(prev_x1, frag.x1);
        first = false;
    }
    return out;
}

} // namespace extract_detail

/// One TextBlock per native layout block. Blocks split on paragraph-scale
/// vertical gaps or upward jumps (column changes). Invisible render modes,
/// zero-size and transparent text are all included; text hidden from the
/// extractor by clips (when respect_clips) or the page box is not.
inline std::vector<TextBlock> extract_text_blocks_page(const PdfDocument& doc,
                                                       std::size_t page_index,
                                                       bool respect_clips = true) {
    extract_detail::ExtractSink sink(respect_clips, doc.effective_box(page_index));
    ContentInterpreter interp(doc, sink);
    interp.run_page(page_index);
    auto lines = extract_detail::assemble_lines(sink.take_fragments());

    std::vector<TextBlock> blocks;
    std::vector<const extract_detail::Line*> block_lines;
    auto flush = [&]() {
        if (block_lines.empty()) return;
        TextBlock block;
        block.page_index = static_cast<int>(page_index);
        block.source = BlockSource::NativeBlock;
        BoundingBox bbox = block_lines.front()->bbox;
        std::string text;
        for (const auto* line : block_lines) {
            bbox = bbox_union(bbox, line->bbox);
            std::string lt = extract_detail::line_text(*line);
            if (!text.empty()) text.push_back('\n');
            text += lt;
        }
        block.bbox = normalize_bbox(bbox);
        block.text = std::move(text);
        block.block_id = "p" + std::to_string(page_index) + "b" + std::to_string(blocks.size());
        if (!is_blank(block.text)) blocks.push_back(std::move(block));
        block_lines.clear();
    };

    const extract_detail::Line* prev = nullptr;
    for (const auto& line : lines) {
        if (prev) {
            double em = std::max({prev->em, line.em, 1.0});
            double dy = prev->baseline - line.baseline; // positive: moving down
            bool new_block = dy > 2.0 * em           // paragraph-scale gap
                             || dy < -0.5 * em;      // upward jump: new column/region
            if (new_block) flush();
        }
        block_lines.push_back(&line);
        prev = &line;
    }
    flush();
    return blocks;
}

inline std::vector<TextBlock> extract_text_blocks(const PdfDocument& doc) {
    std::vector<TextBlock> blocks;
    for (std::size_t p = 0; p < doc.page_count(); ++p) {
        auto page_blocks = extract_text_blocks_page(doc, p);
        blocks.insert(blocks.end(), page_blocks.begin(), page_blocks.end());
    }
    return blocks;
}

/// True iff the page's content stream (or referenced form XObjects) performs
/// a clipping-path operation.
inline bool page_has_clipping_paths(const PdfDocument& doc, std::size_t page_index) {
    return ContentInterpreter::count_clip_ops(doc, page_index) > 0;
}

struct FallbackExtractorConfig {
    std::string extractor_path; // empty: builtin clip-ignoring extraction
    std::string document_path;  // original file, for the subprocess contract
};

/// Whole-page fallback block from a clip-ignoring extraction path. With an
/// external extractor configured, honors the subprocess contract
/// argv = [extractor, -f N, -l N, input-path, "-"]; nonzero exit raises
/// ExtractionError.
inline TextBlock extract_page_fallback(const PdfDocument& doc, std::size_t page_index,
                                       const FallbackExtractorConfig& cfg = {}) {
    TextBlock block;
    block.page_index = static_cast<int>(page_index);
    block.source = BlockSource::WholePageFallback;
    block.bbox = doc.effective_box(page_index);
    block.block_id = "p" + std::to_string(page_index) + "-fallback";
    if (!cfg.extractor_path.empty()) {
        std::string page_no = std::to_string(page_index + 1);
        ProcessResult res = run_process(
            {cfg.extractor_path, "-f", page_no, "-l", page_no, cfg.document_path, "-"});
        if (res.exit_code != 0)
            throw ExtractionError(cfg.extractor_path + " exited with " +
                                  std::to_string(res.exit_code));
        block.text = std::move(res.out);
        return block;
    }
    extract_detail::ExtractSink sink(/*respect_clips=*/false, doc.effective_box(page_index));
    ContentInterpreter interp(doc, sink);
    interp.run_page(page_index);
    auto lines = extract_detail::assemble_lines(sink.take_fragments());
    std::string text;
    for (const auto& line : lines) {
        if (!text.empty()) text.push_back('\n');
        text += extract_detail::line_text(line);
    }
    block.text = std::move(text);
    return block;
}

} // namespace ghostlint::pdf
