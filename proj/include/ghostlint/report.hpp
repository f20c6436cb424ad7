#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ghostlint/pipeline.hpp"

namespace ghostlint {

inline const char* format_name(DocKind kind) {
    switch (kind) {
        case DocKind::Pdf: return "pdf";
        case DocKind::Html: return "html";
        default: return "auto";
    }
}

inline constexpr const char* kReportVersion = "1";

/// Stable-field-order JSON report:
/// {version, documents:[{path, format, status, findings:[...], stats}]}
inline nlohmann::ordered_json report_to_json(const std::vector<ScanReport>& reports) {
    nlohmann::ordered_json root;
    root["version"] = kReportVersion;
    nlohmann::ordered_json docs = nlohmann::ordered_json::array();
    for (const auto& report : reports) {
        nlohmann::ordered_json doc;
        doc["path"] = report.document_path;
        doc["format"] = format_name(report.format);
        doc["status"] = doc_status_name(report.status);
        if (!report.error.empty()) doc["error"] = report.error;
        nlohmann::ordered_json findings = nlohmann::ordered_json::array();
        for (const auto& f : report.findings) {
            for (const auto& span : f.hidden_spans) {
                nlohmann::ordered_json entry;
                entry["page"] = f.page_index;
                entry["block_id"] = f.block_id;
                entry["span"] = {{"start", span.start}, {"end", span.end}};
                entry["excerpt"] = f.evidence;
                entry["matched_phrase"] =
                    f.matched_phrases.empty() ? "" : f.matched_phrases.front().phrase;
                entry["score"] =
                    f.matched_phrases.empty() ? 0.0 : f.matched_phrases.front().score;
                findings.push_back(std::move(entry));
            }
        }
        doc["findings"] = std::move(findings);
        if (!report.unverifiable.empty()) {
            nlohmann::ordered_json unverifiable = nlohmann::ordered_json::array();
            for (const auto& u : report.unverifiable)
                unverifiable.push_back(
                    {{"page", u.page_index}, {"block_id", u.block_id}, {"reason", u.reason}});
            doc["unverifiable"] = std::move(unverifiable);
        }
        doc["stats"] = {{"blocks_scanned", report.stats.blocks_scanned},
                        {"suspicious_blocks", report.stats.suspicious_blocks},
                        {"ocr_tests", report.stats.ocr_tests},
                        {"wall_ms", report.stats.wall_ms}};
        docs.push_back(std::move(doc));
    }
    root["documents"] = std::move(docs);
    return root;
}

/// Minimal SARIF 2.1.0 shape: one result per finding span.
inline nlohmann::ordered_json report_to_sarif(const std::vector<ScanReport>& reports,
                                              const std::string& tool_version) {
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    for (const auto& report : reports) {
        for (const auto& f : report.findings) {
            for (const auto& span : f.hidden_spans) {
                nlohmann::ordered_json result;
                result["ruleId"] = "hidden-llm-prompt";
                result["level"] = "error";
                std::string phrase =
                    f.matched_phrases.empty() ? "" : f.matched_phrases.front().phrase;
                result["message"] = {
                    {"text", "Hidden text matching \"" + phrase + "\": " + f.evidence}};
                result["locations"] = nlohmann::ordered_json::array({nlohmann::ordered_json{
                    {"physicalLocation",
                     {{"artifactLocation", {{"uri", report.document_path}}},
                      {"region",
                       {{"startLine", f.page_index + 1},
                        {"charOffset", span.start},
                        {"charLength", span.end - span.start}}}}}}});
                results.push_back(std::move(result));
            }
        }
    }
    nlohmann::ordered_json run;
    run["tool"] = {{"driver",
                    {{"name", "ghostlint"},
                     {"version", tool_version},
                     {"rules", nlohmann::ordered_json::array(
                                   {nlohmann::ordered_json{
                                       {"id", "hidden-llm-prompt"},
                                       {"shortDescription",
                                        {{"text", "LLM prompt present in extracted text but "
                                                  "absent from the rendered page"}}}}})}}}};
    run["results"] = std::move(results);
    nlohmann::ordered_json root;
    root["$schema"] = "https://json.schemastore.org/sarif-2.1.0.json";
    root["version"] = "2.1.0";
    root["runs"] = nlohmann::ordered_json::array({std::move(run)});
    return root;
}

} // namespace ghostlint
