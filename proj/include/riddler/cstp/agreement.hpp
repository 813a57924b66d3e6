#pragma once

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "riddler/corpus.hpp"
#include "riddler/cstp/preference.hpp"
#include "riddler/cstp/template.hpp"
#include "riddler/scoring.hpp"
#include "riddler/types.hpp"

namespace riddler::cstp {

// What the evaluator needs to rebuild a served riddle.
struct RiddleView {
    Language language = Language::en;
    std::string target;
    std::string foil;
    IdList sentence_ids;
};

using RiddleLookup = std::function<std::optional<RiddleView>(RiddleId)>;
using IndexLookup = std::function<const CorpusIndex*(Language)>;

struct AgreementCounts {
    std::uint64_t n = 0;
    std::uint64_t human_correct = 0;
    std::uint64_t model_correct = 0;
    std::uint64_t agree = 0;

    std::optional<double> human_success() const { return rate(human_correct); }
    std::optional<double> model_success() const { return rate(model_correct); }
    std::optional<double> agreement() const { return rate(agree); }

    void add(bool human, bool model, bool same) {
        ++n;
        human_correct += human;
        model_correct += model;
        agree += same;
    }

private:
    std::optional<double> rate(std::uint64_t k) const {
        if (n == 0) return std::nullopt;
        return static_cast<double>(k) / static_cast<double>(n);
    }
};

struct AgreementRow {
    PairId pair{};
    Language language = Language::en;
    PairOrigin origin = PairOrigin::manual;
    AgreementCounts counts;
};

struct SkippedRecord {
    AnnotationId id{};
    std::string reason;
};

struct AgreementReport {
    AgreementCounts overall;
    std::vector<AgreementRow> pairs;  // by pair id
    std::map<PairOrigin, AgreementCounts> origins;
    std::vector<SkippedRecord> skipped;
    std::uint64_t abstentions = 0;  // sentences with no usable template
};

// Per-sentence preference of target over foil, combined by majority vote.
// A sentence whose template the judge cannot handle abstains.
inline Winner judge_riddle(const Judge& judge, const RiddleView& r, const CorpusIndex& index,
                           std::uint64_t* abstained = nullptr) {
    std::vector<Winner> votes;
    votes.reserve(r.sentence_ids.size());
    for (SentenceId id : r.sentence_ids) {
        const Sentence& s = index.at(id);
        try {
            votes.push_back(judge.prefer(make_template(s, r.target), r.target, r.foil).winner);
        } catch (const UnsupportedTemplateError&) {
            votes.push_back(Winner::tie);
            if (abstained) ++*abstained;
        }
    }
    return majority_vote(votes);
}

inline AgreementReport agreement_report(const Judge& judge, std::span<const AnnotationRecord> log,
                                        const RiddleLookup& riddles, const IndexLookup& indexes) {
    AgreementReport rep;
    std::map<PairId, AgreementRow> rows;
    for (const auto& rec : log) {
        auto r = riddles(rec.riddle_id);
        if (!r) {
            rep.skipped.push_back({rec.id, "riddle " + std::to_string(raw(rec.riddle_id)) + " not found"});
            continue;
        }
        const CorpusIndex* index = indexes(r->language);
        if (!index) {
            rep.skipped.push_back({rec.id, "no corpus for " + std::string(to_string(r->language))});
            continue;
        }
        Winner w;
        try {
            w = judge_riddle(judge, *r, *index, &rep.abstentions);
        } catch (const NotFoundError& e) {
            rep.skipped.push_back({rec.id, e.what()});
            continue;
        } catch (const UnknownTermError& e) {
            rep.skipped.push_back({rec.id, e.what()});
            continue;
        }
        const bool model = w == Winner::first;
        const bool same = (w == Winner::first && rec.correct) || (w == Winner::second && !rec.correct);
        rep.overall.add(rec.correct, model, same);
        rep.origins[rec.pair_origin].add(rec.correct, model, same);
        auto& row = rows[rec.pair_id];
        row.pair = rec.pair_id;
        row.language = rec.language;
        row.origin = rec.pair_origin;
        row.counts.add(rec.correct, model, same);
    }
    for (auto& [id, row] : rows) rep.pairs.push_back(row);
    return rep;
}

inline AgreementReport agreement_report(const Judge& judge, std::span<const AnnotationRecord> log,
                                        const RiddleLookup& riddles, const CorpusIndex& index) {
    return agreement_report(judge, log, riddles,
                            [&](Language l) { return l == index.language() ? &index : nullptr; });
}

inline void write_agreement_report(std::ostream& out, const AgreementReport& rep) {
    auto pct = [](std::optional<double> v) { return v ? format_double(*v) : std::string("-"); };
    out << "pair\tlanguage\torigin\tn\thuman_success\tmodel_success\tagreement\n";
    for (const auto& row : rep.pairs) {
        out << raw(row.pair) << '\t' << to_string(row.language) << '\t' << to_string(row.origin) << '\t'
            << row.counts.n << '\t' << pct(row.counts.human_success()) << '\t' << pct(row.counts.model_success())
            << '\t' << pct(row.counts.agreement()) << '\n';
    }
    out << "\n# summary\n";
    out << "records\t" << rep.overall.n << '\n';
    out << "human_success\t" << pct(rep.overall.human_success()) << '\n';
    out << "model_success\t" << pct(rep.overall.model_success()) << '\n';
    out << "agreement\t" << pct(rep.overall.agreement()) << '\n';
    for (const auto& [origin, c] : rep.origins)
        out << "origin " << to_string(origin) << '\t' << c.n << '\t' << pct(c.human_success()) << '\t'
            << pct(c.model_success()) << '\t' << pct(c.agreement()) << '\n';
    out << "abstentions\t" << rep.abstentions << '\n';
    out << "skipped\t" << rep.skipped.size() << '\n';
    for (const auto& s : rep.skipped) out << "skip " << raw(s.id) << '\t' << s.reason << '\n';
}

}  // namespace riddler::cstp
