#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ghostlint {

/// Axis-aligned box in page coordinates (points for PDF, CSS px for HTML).
/// Zero-area boxes are legal and represent offpage/degenerate elements.
struct BoundingBox {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    bool degenerate() const { return x0 == x1 || y0 == y1; }

    bool operator==(const BoundingBox& o) const {
        return x0 == o.x0 && y0 == o.y0 && x1 == o.x1 && y1 == o.y1;
    }
};

/// Coordinate-swaps so that x0 <= x1 and y0 <= y1. Idempotent.
inline BoundingBox normalize_bbox(BoundingBox b) {
    if (b.x0 > b.x1) std::swap(b.x0, b.x1);
    if (b.y0 > b.y1) std::swap(b.y0, b.y1);
    return b;
}

inline BoundingBox bbox_union(const BoundingBox& a, const BoundingBox& b) {
    return {std::min(a.x0, b.x0), std::min(a.y0, b.y0),
            std::max(a.x1, b.x1), std::max(a.y1, b.y1)};
}

/// Intersection, clamped to a (possibly degenerate) box. Disjoint inputs
/// collapse to a zero-area box at the boundary.
inline BoundingBox bbox_intersect(const BoundingBox& a, const BoundingBox& b) {
    BoundingBox r{std::max(a.x0, b.x0), std::max(a.y0, b.y0),
                  std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
    if (r.x1 < r.x0) r.x1 = r.x0;
    if (r.y1 < r.y0) r.y1 = r.y0;
    return r;
}

inline bool bbox_overlaps(const BoundingBox& a, const BoundingBox& b) {
    return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

inline BoundingBox bbox_pad(const BoundingBox& b, double pad) {
    return {b.x0 - pad, b.y0 - pad, b.x1 + pad, b.y1 + pad};
}

/// Contiguous character range [start, end) within one text block's text.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const { return end - start; }

    bool operator==(const Span& o) const { return start == o.start && end == o.end; }
    bool operator<(const Span& o) const {
        return start != o.start ? start < o.start : end < o.end;
    }
};

/// The text a span covers; valid spans satisfy 0 <= start < end <= text.size().
inline std::string_view span_text(std::string_view text, const Span& s) {
    return text.substr(s.start, s.end - s.start);
}

/// True iff the half-open ranges intersect. Touching ranges do not overlap.
inline bool spans_overlap(const Span& a, const Span& b) {
    return a.start < b.end && b.start < a.end;
}

/// Merges spans whose gap is <= adjacency_gap into maximal spans.
/// Output is sorted by start, pairwise non-overlapping, with gaps > adjacency_gap.
inline std::vector<Span> merge_spans(std::vector<Span> spans, std::size_t adjacency_gap) {
    if (spans.empty()) return spans;
    std::sort(spans.begin(), spans.end());
    std::vector<Span> out;
    out.push_back(spans.front());
    for (std::size_t i = 1; i < spans.size(); ++i) {
        Span& cur = out.back();
        const Span& next = spans[i];
        if (next.start <= cur.end + adjacency_gap) {
            cur.end = std::max(cur.end, next.end);
        } else {
            out.push_back(next);
        }
    }
    return out;
}

} // namespace ghostlint
