#pragma once

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ghostlint/analyzer.hpp"
#include "ghostlint/config.hpp"
#include "ghostlint/diff.hpp"
#include "ghostlint/errors.hpp"
#include "ghostlint/html/engine.hpp"
#include "ghostlint/model.hpp"
#include "ghostlint/ocr.hpp"
#include "ghostlint/pdf/document.hpp"
#include "ghostlint/pdf/extract.hpp"
#include "ghostlint/pdf/render.hpp"

namespace ghostlint {

enum class DocStatus { Ok, ParseError, EncryptedError, LoadError, UnsupportedFormat, IoError };

inline const char* doc_status_name(DocStatus s) {
    switch (s) {
        case DocStatus::Ok: return "ok";
        case DocStatus::ParseError: return "parse-error";
        case DocStatus::EncryptedError: return "encrypted";
        case DocStatus::LoadError: return "load-error";
        case DocStatus::UnsupportedFormat: return "unsupported-format";
        case DocStatus::IoError: return "io-error";
    }
    return "unknown";
}

struct UnverifiableBlock {
    std::string block_id;
    int page_index = 0;
    std::string reason;
};

struct ScanStats {
    std::size_t blocks_scanned = 0;
    std::size_t suspicious_blocks = 0;
    std::size_t ocr_tests = 0;
    double wall_ms = 0.0;
};

struct ScanReport {
    std::string document_path;
    DocKind format = DocKind::Auto;
    DocStatus status = DocStatus::Ok;
    std::string error;
    std::vector<Finding> findings;
    std::vector<UnverifiableBlock> unverifiable;
    ScanStats stats;
};

/// Format-agnostic view of a document: text blocks plus the minimal-region
/// image for any block.
class DocumentSource {
public:
    virtual ~DocumentSource() = default;
    virtual std::vector<TextBlock> blocks() = 0;
    virtual RasterImage region_image(const TextBlock& block) = 0;
};

/// PDF-backed source. Pages with clipping paths collapse to the whole-page
/// fallback block; page rasters render lazily so clean documents never pay
/// for rendering.
class PdfSource final : public DocumentSource {
public:
    PdfSource(const std::string& path, const ScanConfig& cfg)
        : path_(path), cfg_(cfg), doc_(pdf::PdfDocument::load_file(path)) {
        doc_.preprocess(cfg.media_box_margin);
    }

    std::vector<TextBlock> blocks() override {
        std::vector<TextBlock> out;
        for (std::size_t p = 0; p < doc_.page_count(); ++p) {
            if (pdf::page_has_clipping_paths(doc_, p)) {
                pdf::FallbackExtractorConfig fb;
                fb.extractor_path = cfg_.fallback_extractor_path;
                fb.document_path = path_;
                TextBlock block = pdf::extract_page_fallback(doc_, p, fb);
                if (!is_blank(block.text)) out.push_back(std::move(block));
            } else {
                auto page_blocks = pdf::extract_text_blocks_page(doc_, p);
                out.insert(out.end(), page_blocks.begin(), page_blocks.end());
            }
        }
        return out;
    }

    RasterImage region_image(const TextBlock& block) override {
        // blocks arrive in page order; a one-page raster cache keeps memory
        // flat on long documents
        if (!raster_ || raster_->page_index != block.page_index) {
            raster_ = pdf::render_page(doc_, static_cast<std::size_t>(block.page_index), cfg_.dpi);
        }
        return pdf::crop_block_image(*raster_, block, cfg_.crop_padding);
    }

private:
    std::string path_;
    ScanConfig cfg_;
    pdf::PdfDocument doc_;
    std::optional<pdf::PageRaster> raster_;
};

/// HTML-backed source over the built-in layout engine.
class HtmlSource final : public DocumentSource {
public:
    HtmlSource(const std::string& path, const ScanConfig& cfg) : cfg_(cfg) {
        html::HtmlRenderOptions options = cfg.html;
        options.hermetic = cfg.hermetic;
        page_ = html::render_html(path, options);
    }

    std::vector<TextBlock> blocks() override { return page_.text_nodes; }

    RasterImage region_image(const TextBlock& block) override {
        return html::crop_node_image(page_, block, cfg_.crop_padding);
    }

private:
    ScanConfig cfg_;
    html::RenderedPage page_;
};

inline DocKind sniff_format(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    char head[512] = {0};
    in.read(head, sizeof(head));
    std::string_view view(head, static_cast<std::size_t>(in.gcount()));
    if (view.substr(0, 5) == "%PDF-" || view.find("%PDF-") != std::string_view::npos)
        return DocKind::Pdf;
    std::string lower(view);
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower.find("<html") != std::string::npos || lower.find("<!doctype html") != std::string::npos)
        return DocKind::Html;
    if (path.size() > 4 && (path.substr(path.size() - 4) == ".htm" ||
                            path.substr(path.size() - 5) == ".html"))
        return DocKind::Html;
    if (path.size() > 4 && path.substr(path.size() - 4) == ".pdf") return DocKind::Pdf;
    throw UnsupportedFormat(path);
}

inline std::unique_ptr<DocumentSource> open_document(const std::string& path,
                                                     const ScanConfig& cfg) {
    DocKind kind = cfg.format == DocKind::Auto ? sniff_format(path) : cfg.format;
    if (kind == DocKind::Pdf) return std::make_unique<PdfSource>(path, cfg);
    return std::make_unique<HtmlSource>(path, cfg);
}

/// OCRConsistencyTest: renders the block's minimal region, OCRs it, and
/// returns the spans of block text absent from the OCR text. Empty result
/// means consistent (no hidden text).
inline std::vector<Span> ocr_consistency_test(DocumentSource& source, const TextBlock& block,
                                              const ScanConfig& cfg,
                                              const OcrEngine* engine = nullptr) {
    RasterImage region = source.region_image(block);
    OcrResult ocr = ocr_image(region, cfg.ocr, engine);
    return difference(block.text, ocr.text, cfg.diff);
}

namespace pipeline_detail {

inline Finding make_finding(const std::string& path, const TextBlock& block,
                            const SuspicionResult& suspicion, const std::vector<Span>& delta,
                            std::size_t adjacency_gap) {
    Finding finding;
    finding.document_path = path;
    finding.block_id = block.block_id;
    finding.page_index = block.page_index;
    std::vector<Span> hits;
    for (const auto& d : delta) {
        for (const auto& s : suspicion.spans) {
            if (!spans_overlap(d, s.span)) continue;
            hits.push_back(Span{std::max(d.start, s.span.start), std::min(d.end, s.span.end)});
            bool have = false;
            for (const auto& m : finding.matched_phrases) have = have || m.phrase == s.best.phrase;
            if (!have) finding.matched_phrases.push_back(s.best);
        }
    }
    if (hits.empty()) return finding;
    finding.hidden_spans = merge_spans(std::move(hits), adjacency_gap);
    std::string covered;
    for (const auto& span : finding.hidden_spans) {
        if (!covered.empty()) covered += " ... ";
        covered += span_text(block.text, span);
    }
    finding.evidence = make_evidence(covered);
    return finding;
}

} // namespace pipeline_detail

/// Scans one document: Analyze every block; OCR-test blocks with non-empty
/// suspicion; intersect suspicious spans with the difference set. Findings
/// accumulate across all blocks unless first_match requests the literal
/// return-after-first-suspicious-block behavior.
inline ScanReport scan_document(const std::string& path, const ScanConfig& cfg,
                                const Analyzer* analyzer = nullptr,
                                const OcrEngine* engine = nullptr) {
    auto start = std::chrono::steady_clock::now();
    ScanReport report;
    report.document_path = path;
    std::unique_ptr<Analyzer> owned_analyzer;
    if (!analyzer) {
        AnalyzerConfig acfg = cfg.analyzer;
        acfg.threshold = cfg.threshold;
        owned_analyzer = std::make_unique<TrigramAnalyzer>(cfg.phrase_list(), acfg);
        analyzer = owned_analyzer.get();
    }
    std::unique_ptr<OcrEngine> owned_engine;
    if (!engine) {
        owned_engine = make_ocr_engine(cfg.ocr);
        engine = owned_engine.get();
    }
    try {
        report.format = cfg.format == DocKind::Auto ? sniff_format(path) : cfg.format;
        std::unique_ptr<DocumentSource> source = open_document(path, cfg);
        std::vector<TextBlock> blocks = source->blocks();
        for (const auto& block : blocks) {
            ++report.stats.blocks_scanned;
            SuspicionResult suspicion = analyzer->analyze(block.text);
            if (suspicion.empty()) continue;
            ++report.stats.suspicious_blocks;
            try {
                ++report.stats.ocr_tests;
                std::vector<Span> delta = ocr_consistency_test(*source, block, cfg, engine);
                Finding finding = pipeline_detail::make_finding(path, block, suspicion, delta,
                                                                cfg.analyzer.adjacency_gap);
                if (!finding.hidden_spans.empty()) report.findings.push_back(std::move(finding));
            } catch (const Error& e) {
                report.unverifiable.push_back({block.block_id, block.page_index, e.what()});
            }
            if (cfg.first_match) break; // literal mode returns after the first
                                        // suspicious block's test
        }
    } catch (const ParseError& e) {
        report.status = DocStatus::ParseError;
        report.error = e.what();
    } catch (const EncryptedError& e) {
        report.status = DocStatus::EncryptedError;
        report.error = e.what();
    } catch (const UnsupportedFormat& e) {
        report.status = DocStatus::UnsupportedFormat;
        report.error = e.what();
    } catch (const LoadError& e) {
        report.status = DocStatus::LoadError;
        report.error = e.what();
    } catch (const BrowserError& e) {
        report.status = DocStatus::LoadError;
        report.error = e.what();
    } catch (const IoError& e) {
        report.status = DocStatus::IoError;
        report.error = e.what();
    }
    auto end = std::chrono::steady_clock::now();
    report.stats.wall_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(end - start).count();
    return report;
}

/// Scans paths independently with up to effective_jobs() workers; report
/// order matches input order; one document's failure never aborts the batch.
inline std::vector<ScanReport> scan_batch(const std::vector<std::string>& paths,
                                          const ScanConfig& cfg) {
    std::vector<ScanReport> reports(paths.size());
    if (paths.empty()) return reports;
    unsigned jobs = std::min<unsigned>(cfg.effective_jobs(),
                                       static_cast<unsigned>(paths.size()));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < paths.size(); ++i) reports[i] = scan_document(paths[i], cfg);
        return reports;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= paths.size()) break;
                reports[i] = scan_document(paths[i], cfg);
            }
        });
    }
    for (auto& t : workers) t.join();
    return reports;
}

} // namespace ghostlint
