#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ghostlint/config.hpp"
#include "ghostlint/corpus/generator.hpp"
#include "ghostlint/pipeline.hpp"
#include "ghostlint/report.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

// exit codes: 0 clean, 1 findings, 2 operational error, 3 unverifiable
// blocks with no findings
constexpr int kExitClean = 0;
constexpr int kExitFindings = 1;
constexpr int kExitError = 2;
constexpr int kExitUnverifiable = 3;

void print_human(const std::vector<ghostlint::ScanReport>& reports) {
    using namespace ghostlint;
    for (const auto& report : reports) {
        if (report.status != DocStatus::Ok) {
            std::cerr << report.document_path << ": " << doc_status_name(report.status) << ": "
                      << report.error << "\n";
            continue;
        }
        for (const auto& f : report.findings) {
            std::string phrase = f.matched_phrases.empty() ? "?" : f.matched_phrases[0].phrase;
            double score = f.matched_phrases.empty() ? 0.0 : f.matched_phrases[0].score;
            std::cout << report.document_path << ":page " << (f.page_index + 1) << ": hidden text"
                      << " matching \"" << phrase << "\" (score " << score << ")\n"
                      << "  block " << f.block_id << ", spans";
            for (const auto& s : f.hidden_spans) std::cout << " [" << s.start << "," << s.end << ")";
            std::cout << "\n  evidence: " << f.evidence << "\n";
        }
        for (const auto& u : report.unverifiable) {
            std::cout << report.document_path << ":page " << (u.page_index + 1) << ": block "
                      << u.block_id << " unverifiable: " << u.reason << "\n";
        }
        if (report.findings.empty() && report.unverifiable.empty())
            std::cout << report.document_path << ": clean (" << report.stats.blocks_scanned
                      << " blocks, " << report.stats.ocr_tests << " OCR tests)\n";
    }
}

int exit_code_for(const std::vector<ghostlint::ScanReport>& reports) {
    using namespace ghostlint;
    bool any_error = false, any_findings = false, any_unverifiable = false;
    for (const auto& r : reports) {
        any_error = any_error || r.status != DocStatus::Ok;
        any_findings = any_findings || !r.findings.empty();
        any_unverifiable = any_unverifiable || !r.unverifiable.empty();
    }
    if (any_error) return kExitError;
    if (any_findings) return kExitFindings;
    if (any_unverifiable) return kExitUnverifiable;
    return kExitClean;
}

} // namespace

int main(int argc, char** argv) {
    using namespace ghostlint;
    CLI::App app{"ghostlint: detects LLM prompts hidden from visual inspection in PDF and HTML "
                 "documents by comparing extracted text against OCR of the rendered region"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // scan
    auto* scan = app.add_subcommand("scan", "Scan documents for hidden LLM prompts");
    std::vector<std::string> paths;
    std::string format = "auto";
    std::string phrases_file, json_out, sarif_out, config_file;
    double threshold = 0.75;
    double dpi = 150.0;
    bool first_match = false;
    bool hermetic = false;
    unsigned jobs = 0;
    scan->add_option("paths", paths, "Documents to scan")->required()->expected(-1);
    scan->add_option("--format", format, "Input format: pdf, html or auto")
        ->check(CLI::IsMember({"pdf", "html", "auto"}));
    scan->add_option("--phrases", phrases_file, "Bad-phrase list file (one phrase per line)");
    scan->add_option("--threshold", threshold, "Analyzer similarity threshold (0,1]");
    scan->add_option("--dpi", dpi, "Render resolution for OCR consistency tests");
    scan->add_option("--json", json_out, "Write a JSON report to this file");
    scan->add_option("--sarif", sarif_out, "Write a SARIF report to this file");
    scan->add_flag("--first-match", first_match,
                   "Stop after the first suspicious block (literal detection algorithm)");
    scan->add_option("--jobs", jobs, "Parallel documents (default: CPU count)");
    scan->add_flag("--hermetic", hermetic, "Forbid any network access during HTML loads");
    scan->add_option("--config", config_file, "Config file (key = value lines)");

    // corpus generate
    auto* corpus_cmd = app.add_subcommand("corpus", "Synthetic corpus utilities");
    auto* gen = corpus_cmd->add_subcommand("generate", "Generate the hiding-method corpus");
    std::string out_dir;
    unsigned seed = 1;
    std::vector<std::string> prompts;
    gen->add_option("--out", out_dir, "Output directory")->required();
    gen->add_option("--seed", seed, "Deterministic generation seed");
    gen->add_option("--prompt", prompts, "Prompt text to plant (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the usage message on stderr
        return kExitError;
    }

    try {
        if (*gen) {
            auto corpus = corpus::generate_method_matrix_corpus(prompts, seed);
            corpus::write_corpus(corpus, out_dir);
            std::cout << "wrote " << corpus.size() << " documents + manifest.json to " << out_dir
                      << "\n";
            return kExitClean;
        }
        if (*scan) {
            ScanConfig cfg;
            apply_config_sources(cfg, config_file);
            if (format == "pdf") cfg.format = DocKind::Pdf;
            else if (format == "html") cfg.format = DocKind::Html;
            if (!phrases_file.empty()) cfg.phrases_path = phrases_file;
            if (scan->count("--threshold")) cfg.threshold = threshold;
            if (scan->count("--dpi")) cfg.dpi = dpi;
            cfg.first_match = first_match;
            if (scan->count("--jobs")) cfg.jobs = jobs;
            if (hermetic) cfg.hermetic = true;
            auto reports = scan_batch(paths, cfg);
            print_human(reports);
            if (!json_out.empty()) {
                std::ofstream out(json_out);
                if (!out) throw IoError("cannot write " + json_out);
                out << report_to_json(reports).dump(2) << "\n";
            }
            if (!sarif_out.empty()) {
                std::ofstream out(sarif_out);
                if (!out) throw IoError("cannot write " + sarif_out);
                out << report_to_sarif(reports, kVersion).dump(2) << "\n";
            }
            return exit_code_for(reports);
        }
    } catch (const Error& e) {
        std::cerr << "ghostlint: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "ghostlint: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
