#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "riddler/error.hpp"
#include "riddler/types.hpp"

namespace riddler::service {

struct CorpusSource {
    std::string snapshot;  // takes precedence over files
    std::vector<std::pair<std::string, Genre>> files;
};

struct ServiceConfig {
    std::vector<Language> languages{Language::en};
    std::map<Language, CorpusSource> corpora;
    std::map<Language, std::vector<std::string>> pair_files;
    int default_k = 5;
    std::int64_t time_bonus_threshold_ms = 180'000;
    double tie_tolerance = 1e-9;
    std::size_t histogram_bins = 10;
    std::size_t min_annotations = 3;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string journal = "riddler-journal.jsonl";
    bool fsync = true;
    std::int64_t pending_expiry_ms = 24LL * 3600 * 1000;
    std::int64_t fifo_lease_ms = 180'000;
    int password_iterations = 100'000;
    std::uint64_t seed = 1;
    std::size_t mining_sample_n = 1'000'000;
    std::size_t mining_top_k = 250;
    bool strict_leakage_filter = false;
};

namespace detail {

inline void check_keys(const nlohmann::json& j, std::initializer_list<std::string_view> known, const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (auto k : known) ok = ok || key == k;
        if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

}  // namespace detail

// Relative paths resolve against `base` (normally the config file's directory).
inline ServiceConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base = {}) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    detail::check_keys(j,
                       {"languages", "corpora", "pair_files", "default_k", "time_bonus_threshold_s", "tie_tolerance",
                        "histogram_bins", "min_annotations", "listen", "journal", "fsync", "pending_expiry_h",
                        "fifo_lease_s", "password_iterations", "seed", "mining", "strict_leakage_filter"},
                       "config");
    ServiceConfig c;
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return (fp.is_absolute() || base.empty() ? fp : base / fp).string();
    };
    try {
        if (j.contains("languages")) {
            c.languages.clear();
            for (const auto& l : j.at("languages")) c.languages.push_back(parse_language(l.get<std::string>()));
            if (c.languages.empty()) throw ConfigError("no languages configured");
        }
        if (j.contains("corpora")) {
            for (const auto& [code, src] : j.at("corpora").items()) {
                const Language l = parse_language(code);
                detail::check_keys(src, {"snapshot", "files"}, "corpora." + code);
                CorpusSource cs;
                if (src.contains("snapshot")) cs.snapshot = resolve(src.at("snapshot").get<std::string>());
                if (src.contains("files"))
                    for (const auto& f : src.at("files"))
                        cs.files.emplace_back(resolve(f.at("path").get<std::string>()),
                                              parse_genre(f.at("genre").get<std::string>()));
                c.corpora[l] = std::move(cs);
            }
        }
        if (j.contains("pair_files"))
            for (const auto& [code, list] : j.at("pair_files").items())
                for (const auto& p : list) c.pair_files[parse_language(code)].push_back(resolve(p.get<std::string>()));
        c.default_k = j.value("default_k", c.default_k);
        if (c.default_k != 1 && c.default_k != 3 && c.default_k != 5) throw ConfigError("default_k must be 1, 3 or 5");
        if (j.contains("time_bonus_threshold_s"))
            c.time_bonus_threshold_ms = static_cast<std::int64_t>(j.at("time_bonus_threshold_s").get<double>() * 1000);
        c.tie_tolerance = j.value("tie_tolerance", c.tie_tolerance);
        if (!(c.tie_tolerance >= 0)) throw ConfigError("tie_tolerance must be non-negative");
        c.histogram_bins = j.value("histogram_bins", c.histogram_bins);
        if (c.histogram_bins < 1) throw ConfigError("histogram_bins must be at least 1");
        c.min_annotations = j.value("min_annotations", c.min_annotations);
        if (j.contains("listen")) {
            const auto& l = j.at("listen");
            detail::check_keys(l, {"host", "port"}, "listen");
            c.host = l.value("host", c.host);
            c.port = l.value("port", c.port);
        }
        if (j.contains("journal")) c.journal = resolve(j.at("journal").get<std::string>());
        c.fsync = j.value("fsync", c.fsync);
        if (j.contains("pending_expiry_h"))
            c.pending_expiry_ms = static_cast<std::int64_t>(j.at("pending_expiry_h").get<double>() * 3600 * 1000);
        if (j.contains("fifo_lease_s"))
            c.fifo_lease_ms = static_cast<std::int64_t>(j.at("fifo_lease_s").get<double>() * 1000);
        c.password_iterations = j.value("password_iterations", c.password_iterations);
        if (c.password_iterations < 1) throw ConfigError("password_iterations must be positive");
        c.seed = j.value("seed", c.seed);
        if (j.contains("mining")) {
            const auto& m = j.at("mining");
            detail::check_keys(m, {"sample_n", "top_k"}, "mining");
            c.mining_sample_n = m.value("sample_n", c.mining_sample_n);
            c.mining_top_k = m.value("top_k", c.mining_top_k);
        }
        c.strict_leakage_filter = j.value("strict_leakage_filter", c.strict_leakage_filter);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return c;
}

inline ServiceConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return parse_config(j, std::filesystem::path(path).parent_path());
}

}  // namespace riddler::service
