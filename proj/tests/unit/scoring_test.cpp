#include <gtest/gtest.h>

#include <sstream>

#include "riddler/scoring.hpp"
#include "synth.hpp"

using namespace riddler;

namespace {

struct Cell {
    int k;
    PairDifficulty difficulty;
    bool fast;
    double points;
};

std::vector<Cell> table() {
    std::vector<Cell> out;
    for (int k : {1, 3, 5})
        for (auto d : {PairDifficulty::normal, PairDifficulty::known_difficult})
            for (bool fast : {true, false})
                out.push_back({k, d, fast, score_annotation(true, fast ? 1'000 : 200'000, k, d)});
    return out;
}

}  // namespace

TEST(Scoring, TwelveCellsHaveExactBounds) {
    const auto cells = table();
    ASSERT_EQ(cells.size(), 12u);
    for (const auto& c : cells) {
        const bool top = c.k == 1 && c.difficulty == PairDifficulty::known_difficult && c.fast;
        const bool bottom = c.k == 5 && c.difficulty == PairDifficulty::normal && !c.fast;
        if (top) {
            EXPECT_EQ(c.points, 3.0);
        } else if (bottom) {
            EXPECT_EQ(c.points, 0.1);
        } else {
            EXPECT_GT(c.points, 0.1);
            EXPECT_LT(c.points, 3.0);
        }
    }
}

TEST(Scoring, KnownCellValues) {
    EXPECT_DOUBLE_EQ(score_annotation(true, 0, 5, PairDifficulty::normal), 0.5);
    EXPECT_DOUBLE_EQ(score_annotation(true, 0, 3, PairDifficulty::normal), 1.0);
    EXPECT_DOUBLE_EQ(score_annotation(true, 0, 1, PairDifficulty::normal), 1.5);
    EXPECT_DOUBLE_EQ(score_annotation(true, 0, 3, PairDifficulty::known_difficult), 2.0);
    EXPECT_DOUBLE_EQ(score_annotation(true, 500'000, 3, PairDifficulty::normal), 0.2);
    EXPECT_DOUBLE_EQ(score_annotation(true, 500'000, 1, PairDifficulty::known_difficult), 0.6);
}

TEST(Scoring, MonotoneInEachFactor) {
    for (auto d : {PairDifficulty::normal, PairDifficulty::known_difficult})
        for (std::int64_t t : {1'000, 200'000}) {
            EXPECT_GT(score_annotation(true, t, 1, d), score_annotation(true, t, 3, d));
            EXPECT_GT(score_annotation(true, t, 3, d), score_annotation(true, t, 5, d));
        }
    for (int k : {1, 3, 5})
        for (std::int64_t t : {1'000, 200'000}) {
            EXPECT_GT(score_annotation(true, t, k, PairDifficulty::known_difficult),
                      score_annotation(true, t, k, PairDifficulty::normal));
        }
    for (int k : {1, 3, 5})
        for (auto d : {PairDifficulty::normal, PairDifficulty::known_difficult})
            EXPECT_GT(score_annotation(true, 1'000, k, d), score_annotation(true, 200'000, k, d));
}

TEST(Scoring, ThreeMinuteBoundary) {
    EXPECT_DOUBLE_EQ(score_annotation(true, 179'999, 3, PairDifficulty::normal), 1.0);
    EXPECT_DOUBLE_EQ(score_annotation(true, 180'000, 3, PairDifficulty::normal), 0.2);
}

TEST(Scoring, WrongAnswersScoreZero) {
    for (const auto& c : table()) EXPECT_EQ(score_annotation(false, c.fast ? 0 : 200'000, c.k, c.difficulty), 0.0);
}

TEST(Scoring, RejectsInvalidInput) {
    EXPECT_THROW(score_annotation(true, -1, 5, PairDifficulty::normal), ValidationError);
    EXPECT_THROW(score_annotation(true, 0, 4, PairDifficulty::normal), ValidationError);
}

TEST(Scoring, DifficultyNeedsThreeRecordsAndMostlyFailures) {
    EXPECT_EQ(classify_counts(0, 0), PairDifficulty::normal);
    EXPECT_EQ(classify_counts(2, 0), PairDifficulty::normal);
    EXPECT_EQ(classify_counts(3, 1), PairDifficulty::known_difficult);
    EXPECT_EQ(classify_counts(4, 2), PairDifficulty::normal);
    EXPECT_EQ(classify_counts(5, 2), PairDifficulty::known_difficult);
}

TEST(Scoring, BlankerRate) {
    EXPECT_FALSE(blanker_rate(0, 0).has_value());
    EXPECT_DOUBLE_EQ(*blanker_rate(4, 1), 25.0);
}

TEST(AnnotationLog, RoundTrip) {
    Rng rng(5);
    std::vector<AnnotationRecord> recs;
    for (int i = 1; i <= 500; ++i) {
        AnnotationRecord r;
        r.id = AnnotationId{static_cast<std::uint64_t>(i)};
        r.riddle_id = RiddleId{rng.below(1000) + 1};
        r.player_id = PlayerId{rng.below(50) + 1};
        r.pair_id = PairId{rng.below(80) + 1};
        r.language = kAllLanguages[rng.below(5)];
        r.pair_origin = static_cast<PairOrigin>(rng.below(3));
        r.choice = i % 17 == 0 ? "o,\"dd\"" : synth::root(rng, r.language);
        r.correct = rng.coin();
        r.elapsed_ms = static_cast<std::int64_t>(rng.below(500'000));
        r.k = std::array{1, 3, 5}[rng.below(3)];
        r.points = score_annotation(r.correct, r.elapsed_ms, r.k,
                                    rng.coin() ? PairDifficulty::normal : PairDifficulty::known_difficult);
        r.timestamp = 1'700'000'000'000 + i;
        recs.push_back(r);
    }
    std::stringstream ss;
    write_log(ss, recs);
    const auto back = read_log(ss);
    EXPECT_TRUE(back.rejects.empty());
    ASSERT_EQ(back.records.size(), recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& a = recs[i];
        const auto& b = back.records[i];
        EXPECT_EQ(raw(a.id), raw(b.id));
        EXPECT_EQ(raw(a.riddle_id), raw(b.riddle_id));
        EXPECT_EQ(raw(a.player_id), raw(b.player_id));
        EXPECT_EQ(raw(a.pair_id), raw(b.pair_id));
        EXPECT_EQ(a.language, b.language);
        EXPECT_EQ(a.pair_origin, b.pair_origin);
        EXPECT_EQ(a.choice, b.choice);
        EXPECT_EQ(a.correct, b.correct);
        EXPECT_EQ(a.elapsed_ms, b.elapsed_ms);
        EXPECT_EQ(a.k, b.k);
        EXPECT_EQ(a.points, b.points);
        EXPECT_EQ(a.timestamp, b.timestamp);
    }
}

TEST(AnnotationLog, SkipsMalformedRecords) {
    std::stringstream ss;
    ss << kLogHeader << '\n'
       << "1,1,1,1,en,manual,hyena,true,100,5,0.5,10\n"
       << "2,2,1,1,xx,manual,hyena,true,100,5,0.5,10\n"     // language
       << "3,3,1,1,en,manual,hyena,true,100,4,0.5,10\n"     // k
       << "4,4,1,1,en,manual,hyena,false,100,5,0.5,10\n"    // points on a miss
       << "5,5,1,1,en,manual,hyena,true,-3,5,0.5,10\n"      // elapsed
       << "6,6,1,1,en,manual,\"hyena,true,100,5,0.5,10\n"   // quoting
       << "7,7,1,1,en,manual,hyena,true,100,5\n";           // short
    const auto r = read_log(ss);
    EXPECT_EQ(r.records.size(), 1u);
    EXPECT_EQ(r.rejects.size(), 6u);
}

TEST(AnnotationLog, HeaderMismatchIsAnError) {
    std::istringstream in("id,foo\n1,2\n");
    EXPECT_THROW(read_log(in), ParseError);
}
