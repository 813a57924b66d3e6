#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "riddler/error.hpp"
#include "riddler/types.hpp"

namespace riddler {

enum class PairDifficulty { normal, known_difficult };

inline std::string_view to_string(PairDifficulty d) {
    return d == PairDifficulty::known_difficult ? "known_difficult" : "normal";
}

struct AnnotationRecord {
    AnnotationId id{};
    RiddleId riddle_id{};
    PlayerId player_id{};
    PairId pair_id{};
    Language language = Language::en;
    PairOrigin pair_origin = PairOrigin::manual;
    std::string choice;
    bool correct = false;
    std::int64_t elapsed_ms = 0;
    int k = 5;
    double points = 0;
    Timestamp timestamp = 0;
};

struct PlayerScores {
    PlayerId player_id{};
    double cracker_points = 0;
    std::optional<double> blanker_success_rate;  // percent
    std::uint64_t blanker_annotation_count = 0;
};

struct ScoringConfig {
    std::int64_t fast_threshold_ms = 180'000;
    double slow_factor = 0.2;
    double difficult_factor = 2.0;
    double min_points = 0.1;
    double max_points = 3.0;
    std::uint64_t difficult_min_records = 3;
    double difficult_below = 0.5;
};

// Fewer sentences make a riddle harder and worth more.
inline double base_points(int k) {
    switch (k) {
        case 5: return 0.5;
        case 3: return 1.0;
        case 1: return 1.5;
        default: throw ValidationError("k must be 1, 3 or 5");
    }
}

inline double score_annotation(bool correct, std::int64_t elapsed_ms, int k, PairDifficulty difficulty,
                               const ScoringConfig& cfg = {}) {
    if (elapsed_ms < 0) throw ValidationError("elapsed time is negative");
    const double base = base_points(k);
    if (!correct) return 0.0;
    const double d = difficulty == PairDifficulty::known_difficult ? cfg.difficult_factor : 1.0;
    const double t = elapsed_ms < cfg.fast_threshold_ms ? 1.0 : cfg.slow_factor;
    return std::clamp(base * d * t, cfg.min_points, cfg.max_points);
}

inline PairDifficulty classify_counts(std::uint64_t total, std::uint64_t correct, const ScoringConfig& cfg = {}) {
    if (total < cfg.difficult_min_records) return PairDifficulty::normal;
    return static_cast<double>(correct) < cfg.difficult_below * static_cast<double>(total) ? PairDifficulty::known_difficult
                                                                                          : PairDifficulty::normal;
}

inline PairDifficulty classify_pair_difficulty(std::span<const AnnotationRecord> records,
                                               const ScoringConfig& cfg = {}) {
    const auto correct = static_cast<std::uint64_t>(
        std::count_if(records.begin(), records.end(), [](const AnnotationRecord& r) { return r.correct; }));
    return classify_counts(records.size(), correct, cfg);
}

// Share of cracker failures on one proposer's pairs, in percent.
inline std::optional<double> blanker_rate(std::uint64_t total, std::uint64_t incorrect) {
    if (total == 0) return std::nullopt;
    return 100.0 * static_cast<double>(incorrect) / static_cast<double>(total);
}

inline std::optional<double> blanker_rate(std::span<const AnnotationRecord> records) {
    const auto incorrect = static_cast<std::uint64_t>(
        std::count_if(records.begin(), records.end(), [](const AnnotationRecord& r) { return !r.correct; }));
    return blanker_rate(records.size(), incorrect);
}

// ---------------------------------------------------------------- log export

inline constexpr std::string_view kLogHeader =
    "id,riddle_id,player_id,pair_id,language,pair_origin,choice,correct,elapsed_ms,k,points,timestamp";

inline std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void write_log_header(std::ostream& out) { out << kLogHeader << '\n'; }

inline void write_log_record(std::ostream& out, const AnnotationRecord& r) {
    out << raw(r.id) << ',' << raw(r.riddle_id) << ',' << raw(r.player_id) << ',' << raw(r.pair_id) << ','
        << to_string(r.language) << ',' << to_string(r.pair_origin) << ',' << csv_field(r.choice) << ','
        << (r.correct ? "true" : "false") << ',' << r.elapsed_ms << ',' << r.k << ',' << format_double(r.points) << ','
        << r.timestamp << '\n';
}

inline void write_log(std::ostream& out, std::span<const AnnotationRecord> records) {
    write_log_header(out);
    for (const auto& r : records) write_log_record(out, r);
}

struct LogReject {
    std::size_t line = 0;
    std::string reason;
};

struct LogReadResult {
    std::vector<AnnotationRecord> records;
    std::vector<LogReject> rejects;
};

namespace detail {

// One CSV line with RFC 4180 quoting; fields may not span lines.
inline std::optional<std::vector<std::string>> split_csv(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    std::size_t i = 0;
    for (;;) {
        cur.clear();
        if (i < line.size() && line[i] == '"') {
            ++i;
            for (;;) {
                if (i >= line.size()) return std::nullopt;
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        cur += '"';
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                cur += line[i++];
            }
            if (i < line.size() && line[i] != ',') return std::nullopt;
        } else {
            while (i < line.size() && line[i] != ',') {
                if (line[i] == '"') return std::nullopt;
                cur += line[i++];
            }
        }
        out.push_back(cur);
        if (i >= line.size()) break;
        ++i;  // comma
    }
    return out;
}

template <class T>
bool parse_int(std::string_view s, T& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

inline bool parse_real(std::string_view s, double& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

inline std::optional<AnnotationRecord> parse_log_fields(const std::vector<std::string>& f, std::string& why) {
    if (f.size() != 12) {
        why = "expected 12 fields, got " + std::to_string(f.size());
        return std::nullopt;
    }
    AnnotationRecord r;
    std::uint64_t id = 0, riddle = 0, player = 0, pair = 0;
    if (!parse_int(f[0], id) || !parse_int(f[1], riddle) || !parse_int(f[2], player) || !parse_int(f[3], pair)) {
        why = "bad id";
        return std::nullopt;
    }
    r.id = AnnotationId{id};
    r.riddle_id = RiddleId{riddle};
    r.player_id = PlayerId{player};
    r.pair_id = PairId{pair};
    auto lang = try_parse_language(f[4]);
    if (!lang) {
        why = "unknown language '" + f[4] + "'";
        return std::nullopt;
    }
    r.language = *lang;
    auto origin = try_parse_origin(f[5]);
    if (!origin) {
        why = "unknown pair origin '" + f[5] + "'";
        return std::nullopt;
    }
    r.pair_origin = *origin;
    r.choice = f[6];
    if (f[7] == "true" || f[7] == "1")
        r.correct = true;
    else if (f[7] == "false" || f[7] == "0")
        r.correct = false;
    else {
        why = "bad correct flag";
        return std::nullopt;
    }
    if (!parse_int(f[8], r.elapsed_ms) || r.elapsed_ms < 0) {
        why = "bad elapsed_ms";
        return std::nullopt;
    }
    if (!parse_int(f[9], r.k) || (r.k != 1 && r.k != 3 && r.k != 5)) {
        why = "bad k";
        return std::nullopt;
    }
    if (!parse_real(f[10], r.points) || r.points < 0 || r.points > 3.0 || (!r.correct && r.points != 0)) {
        why = "bad points";
        return std::nullopt;
    }
    if (!parse_int(f[11], r.timestamp)) {
        why = "bad timestamp";
        return std::nullopt;
    }
    return r;
}

}  // namespace detail

// Malformed records are skipped and listed in `rejects`. A missing or wrong
// header is an error.
inline LogReadResult read_log(std::istream& in) {
    LogReadResult out;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) return out;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kLogHeader) throw ParseError("annotation log header mismatch", 1);
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = detail::split_csv(line);
        if (!fields) {
            out.rejects.push_back({lineno, "bad quoting"});
            continue;
        }
        std::string why;
        if (auto r = detail::parse_log_fields(*fields, why))
            out.records.push_back(std::move(*r));
        else
            out.rejects.push_back({lineno, why});
    }
    return out;
}

}  // namespace riddler
