#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "riddler/error.hpp"
#include "riddler/scoring.hpp"
#include "riddler/types.hpp"

namespace riddler {

struct RateCell {
    std::uint64_t count = 0;
    std::uint64_t correct = 0;

    // Exact percentage; absent when nothing was collected.
    std::optional<double> success_percent() const {
        if (count == 0) return std::nullopt;
        return 100.0 * static_cast<double>(correct) / static_cast<double>(count);
    }
    std::optional<long> success_rounded() const {
        auto p = success_percent();
        if (!p) return std::nullopt;
        return std::lround(*p);
    }
};

// Row per language, column per origin plus the all-origins total.
struct BreakdownReport {
    static constexpr std::size_t kAll = 3;
    std::array<std::array<RateCell, 4>, 5> cells{};
    std::size_t rejects = 0;

    const RateCell& all(Language l) const { return cells[static_cast<std::size_t>(l)][kAll]; }
    const RateCell& at(Language l, PairOrigin o) const {
        return cells[static_cast<std::size_t>(l)][static_cast<std::size_t>(o)];
    }
};

inline BreakdownReport breakdown(std::span<const AnnotationRecord> log, std::size_t rejects = 0) {
    BreakdownReport rep;
    rep.rejects = rejects;
    for (const auto& r : log) {
        auto& row = rep.cells[static_cast<std::size_t>(r.language)];
        for (auto* c : {&row[static_cast<std::size_t>(r.pair_origin)], &row[BreakdownReport::kAll]}) {
            ++c->count;
            c->correct += r.correct;
        }
    }
    return rep;
}

struct PairTally {
    PairId pair{};
    Language language = Language::en;
    PairOrigin origin = PairOrigin::manual;
    std::uint64_t total = 0;
    std::uint64_t correct = 0;

    double rate() const { return static_cast<double>(correct) / static_cast<double>(total); }
    // rate >= num/den, decided on integers.
    bool at_least(std::uint64_t num, std::uint64_t den) const { return correct * den >= num * total; }
};

inline std::vector<PairTally> tally_pairs(std::span<const AnnotationRecord> log) {
    std::map<PairId, PairTally> m;
    for (const auto& r : log) {
        auto [it, fresh] = m.try_emplace(r.pair_id);
        auto& t = it->second;
        if (fresh) {
            t.pair = r.pair_id;
            t.language = r.language;
            t.origin = r.pair_origin;
        }
        ++t.total;
        t.correct += r.correct;
    }
    std::vector<PairTally> out;
    out.reserve(m.size());
    for (auto& [id, t] : m) out.push_back(t);
    return out;
}

// Bins are right-closed: the first is [0, 1/b], then (i/b, (i+1)/b].
struct SuccessHistogram {
    std::vector<double> bin_edges;
    std::vector<std::uint64_t> counts;
    std::size_t min_annotations = 3;
    std::uint64_t distinct_pairs = 0;
    std::uint64_t included_pairs = 0;
    std::uint64_t excluded_count = 0;
    std::uint64_t included_annotations = 0;
    std::uint64_t total_annotations = 0;
    std::vector<PairTally> included;

    // Over pairs passing the filter.
    std::optional<double> mean_annotations_per_pair() const {
        if (included_pairs == 0) return std::nullopt;
        return static_cast<double>(included_annotations) / static_cast<double>(included_pairs);
    }
    std::optional<double> mean_annotations_per_pair_all() const {
        if (distinct_pairs == 0) return std::nullopt;
        return static_cast<double>(total_annotations) / static_cast<double>(distinct_pairs);
    }

    // Included pairs whose success rate is at least num/den.
    std::uint64_t pairs_at_least(std::uint64_t num, std::uint64_t den) const {
        std::uint64_t n = 0;
        for (const auto& t : included) n += t.at_least(num, den);
        return n;
    }
};

inline std::size_t bin_of(std::uint64_t correct, std::uint64_t total, std::size_t bins) {
    // smallest i with correct/total <= (i+1)/bins
    const std::uint64_t scaled = correct * bins;
    std::uint64_t i = (scaled + total - 1) / total;
    return i == 0 ? 0 : static_cast<std::size_t>(i - 1);
}

inline SuccessHistogram histogram(std::span<const AnnotationRecord> log, std::size_t min_annotations = 3,
                                  std::size_t bins = 10) {
    if (bins < 1) throw ValidationError("histogram needs at least one bin");
    if (min_annotations < 1) throw ValidationError("min_annotations must be at least 1");
    SuccessHistogram h;
    h.min_annotations = min_annotations;
    h.counts.assign(bins, 0);
    for (std::size_t i = 0; i <= bins; ++i) h.bin_edges.push_back(static_cast<double>(i) / static_cast<double>(bins));
    for (const auto& t : tally_pairs(log)) {
        ++h.distinct_pairs;
        h.total_annotations += t.total;
        if (t.total < min_annotations) {
            ++h.excluded_count;
            continue;
        }
        ++h.included_pairs;
        h.included_annotations += t.total;
        ++h.counts[bin_of(t.correct, t.total, bins)];
        h.included.push_back(t);
    }
    return h;
}

inline double overall_success(std::span<const AnnotationRecord> log) {
    if (log.empty()) throw UndefinedValueError("success rate of an empty log");
    std::uint64_t c = 0;
    for (const auto& r : log) c += r.correct;
    return 100.0 * static_cast<double>(c) / static_cast<double>(log.size());
}

inline void write_breakdown(std::ostream& out, const BreakdownReport& rep) {
    static constexpr PairOrigin kOrigins[] = {PairOrigin::user_proposed, PairOrigin::manual, PairOrigin::embedding_mined};
    auto cell = [](const RateCell& c) {
        if (c.count == 0) return std::string("0\t-");
        return std::to_string(c.count) + '\t' + std::to_string(*c.success_rounded());
    };
    out << "language\tall_n\tall_pct\tuser_proposed_n\tuser_proposed_pct\tmanual_n\tmanual_pct\tembedding_mined_n\t"
           "embedding_mined_pct\n";
    for (Language l : kAllLanguages) {
        out << to_string(l) << '\t' << cell(rep.all(l));
        for (PairOrigin o : kOrigins) out << '\t' << cell(rep.at(l, o));
        out << '\n';
    }
    out << "rejects\t" << rep.rejects << '\n';
}

inline void write_histogram(std::ostream& out, const SuccessHistogram& h) {
    out << "# bins right-closed, min_annotations " << h.min_annotations << '\n';
    out << "low\thigh\tpairs\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        out << format_double(h.bin_edges[i]) << '\t' << format_double(h.bin_edges[i + 1]) << '\t' << h.counts[i] << '\n';
    out << "distinct_pairs\t" << h.distinct_pairs << '\n';
    out << "included_pairs\t" << h.included_pairs << '\n';
    out << "excluded_pairs\t" << h.excluded_count << '\n';
    auto opt = [](std::optional<double> v) { return v ? format_double(*v) : std::string("-"); };
    out << "mean_annotations_per_pair\t" << opt(h.mean_annotations_per_pair()) << '\n';
    out << "mean_annotations_per_pair_all\t" << opt(h.mean_annotations_per_pair_all()) << '\n';
    out << "pairs_rate_ge_0.9\t" << h.pairs_at_least(9, 10) << '\n';
    out << "pairs_rate_ge_0.8\t" << h.pairs_at_least(8, 10) << '\n';
}

}  // namespace riddler
