#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ghostlint/geometry.hpp"

namespace ghostlint {

enum class BlockSource {
    NativeBlock,
    WholePageFallback,
};

/// A unit of logically contiguous extracted text plus its page/viewport box.
struct TextBlock {
    std::string block_id;
    int page_index = 0;
    std::string text;
    BoundingBox bbox;
    BlockSource source = BlockSource::NativeBlock;
};

struct PhraseMatch {
    std::string phrase;
    double score = 0.0;
};

/// A confirmed hidden-prompt detection. hidden_spans is non-empty and every
/// hidden span overlaps at least one analyzer span.
struct Finding {
    std::string document_path;
    std::string block_id;
    int page_index = 0;
    std::vector<Span> hidden_spans;
    std::vector<PhraseMatch> matched_phrases;
    std::string evidence;
};

inline constexpr std::size_t kEvidenceLimit = 200;

/// Truncates evidence excerpts so reports stay shareable without reproducing
/// whole hidden payloads.
inline std::string make_evidence(std::string_view covered, std::size_t limit = kEvidenceLimit) {
    if (covered.size() <= limit) return std::string(covered);
    // do not split a UTF-8 sequence
    std::size_t cut = limit;
    while (cut > 0 && (static_cast<unsigned char>(covered[cut]) & 0xC0) == 0x80) --cut;
    return std::string(covered.substr(0, cut)) + "...";
}

} // namespace ghostlint
