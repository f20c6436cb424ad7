#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <thread>

#include "ghostlint/analyzer.hpp"
#include "ghostlint/diff.hpp"
#include "ghostlint/errors.hpp"
#include "ghostlint/html/engine.hpp"
#include "ghostlint/ocr.hpp"

namespace ghostlint {

enum class DocKind { Auto, Pdf, Html };

struct ScanConfig {
    DocKind format = DocKind::Auto;
    double dpi = 150.0;
    double crop_padding = 2.0;        // points (PDF) / CSS px (HTML)
    double media_box_margin = 200.0;  // points per side
    bool first_match = false;         // literal single-return scanning
    unsigned jobs = 0;                // 0: hardware concurrency
    bool hermetic = true;

    std::optional<std::string> phrases_path;
    double threshold = 0.75;
    AnalyzerConfig analyzer;
    DiffConfig diff;
    OcrConfig ocr;
    html::HtmlRenderOptions html;
    std::string fallback_extractor_path;
    std::string browser_path; // reserved for an external layout engine

    unsigned effective_jobs() const {
        if (jobs > 0) return jobs;
        unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? hw : 1;
    }

    PhraseList phrase_list() const {
        PhraseList list = phrases_path ? load_phrase_list(*phrases_path, threshold)
                                       : default_phrase_list();
        list.threshold = threshold;
        return list;
    }
};

namespace config_detail {

inline std::string env_or_empty(const char* name) {
    const char* v = std::getenv(name);
    return v ? v : "";
}

/// key = value lines; '#' comments; quotes around values optional.
inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t\r");
            std::size_t e = s.find_last_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            s = s.substr(b, e - b + 1);
            if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                                  (s.front() == '\'' && s.back() == '\'')))
                s = s.substr(1, s.size() - 2);
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) out[key] = value;
    }
    return out;
}

} // namespace config_detail

/// Precedence below CLI flags: config file first, then environment.
inline void apply_config_sources(ScanConfig& cfg, const std::string& config_path = "") {
    if (!config_path.empty()) {
        auto kv = config_detail::parse_config_file(config_path);
        auto num = [&](const char* key, double& target) {
            auto it = kv.find(key);
            if (it != kv.end()) target = std::strtod(it->second.c_str(), nullptr);
        };
        num("dpi", cfg.dpi);
        num("threshold", cfg.threshold);
        num("crop_padding", cfg.crop_padding);
        num("media_box_margin", cfg.media_box_margin);
        if (kv.count("phrases")) cfg.phrases_path = kv["phrases"];
        if (kv.count("ocr_engine")) cfg.ocr.engine_path = kv["ocr_engine"];
        if (kv.count("fallback_extractor")) cfg.fallback_extractor_path = kv["fallback_extractor"];
        if (kv.count("browser")) cfg.browser_path = kv["browser"];
        if (kv.count("jobs")) cfg.jobs = static_cast<unsigned>(std::stoul(kv["jobs"]));
    }
    std::string v;
    if (!(v = config_detail::env_or_empty("GHOSTLINT_OCR_ENGINE")).empty())
        cfg.ocr.engine_path = v;
    if (!(v = config_detail::env_or_empty("GHOSTLINT_FALLBACK_EXTRACTOR")).empty())
        cfg.fallback_extractor_path = v;
    if (!(v = config_detail::env_or_empty("GHOSTLINT_BROWSER")).empty()) cfg.browser_path = v;
}

} // namespace ghostlint
