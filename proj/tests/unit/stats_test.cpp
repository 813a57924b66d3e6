#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "riddler/stats.hpp"
#include "synth.hpp"

using namespace riddler;

namespace {

const LogReadResult& fixture() {
    static const LogReadResult log = [] {
        std::ifstream in(synth::data_path("fixture_log.csv"));
        return read_log(in);
    }();
    return log;
}

AnnotationRecord rec(std::uint64_t id, std::uint64_t pair, bool correct, Language l = Language::en,
                     PairOrigin o = PairOrigin::manual) {
    AnnotationRecord r;
    r.id = AnnotationId{id};
    r.riddle_id = RiddleId{id};
    r.player_id = PlayerId{id};
    r.pair_id = PairId{pair};
    r.language = l;
    r.pair_origin = o;
    r.choice = "x";
    r.correct = correct;
    r.k = 5;
    r.points = correct ? 0.5 : 0.0;
    return r;
}

}  // namespace

TEST(Breakdown, FixtureCountsAndRates) {
    const auto& log = fixture();
    ASSERT_TRUE(log.rejects.empty());
    ASSERT_EQ(log.records.size(), 7262u);
    const auto rep = breakdown(log.records);
    EXPECT_EQ(rep.all(Language::fr).count, 3629u);
    EXPECT_EQ(rep.all(Language::en).count, 2098u);
    EXPECT_EQ(rep.all(Language::es).count, 1415u);
    EXPECT_EQ(rep.all(Language::it).count, 101u);
    EXPECT_EQ(rep.all(Language::ru).count, 19u);
    EXPECT_EQ(*rep.all(Language::fr).success_rounded(), 81);
    EXPECT_EQ(*rep.all(Language::en).success_rounded(), 79);
    EXPECT_EQ(*rep.all(Language::es).success_rounded(), 80);
    EXPECT_EQ(*rep.all(Language::it).success_rounded(), 79);
    EXPECT_EQ(*rep.all(Language::ru).success_rounded(), 95);
    EXPECT_EQ(rep.at(Language::es, PairOrigin::embedding_mined).count, 209u);
    EXPECT_EQ(rep.at(Language::es, PairOrigin::embedding_mined).correct, 109u);
    EXPECT_EQ(rep.at(Language::it, PairOrigin::user_proposed).count, 0u);
    EXPECT_FALSE(rep.at(Language::it, PairOrigin::user_proposed).success_rounded().has_value());
    EXPECT_NEAR(overall_success(log.records), 80.0, 1.0);
}

TEST(Breakdown, CellsSumToRowTotals) {
    const auto rep = breakdown(fixture().records);
    std::uint64_t all = 0;
    for (Language l : kAllLanguages) {
        std::uint64_t n = 0, c = 0;
        for (auto o : {PairOrigin::user_proposed, PairOrigin::manual, PairOrigin::embedding_mined}) {
            n += rep.at(l, o).count;
            c += rep.at(l, o).correct;
        }
        EXPECT_EQ(n, rep.all(l).count);
        EXPECT_EQ(c, rep.all(l).correct);
        all += n;
    }
    EXPECT_EQ(all, fixture().records.size());
}

TEST(Histogram, FixtureDistribution) {
    const auto h = histogram(fixture().records);
    EXPECT_EQ(h.distinct_pairs, 1656u);
    EXPECT_EQ(h.included_pairs, 1540u);
    EXPECT_EQ(h.excluded_count, 116u);
    EXPECT_EQ(h.counts, (std::vector<std::uint64_t>{10, 5, 5, 46, 58, 122, 207, 410, 89, 588}));
    EXPECT_EQ(h.pairs_at_least(9, 10), 588u);
    EXPECT_EQ(h.pairs_at_least(8, 10), 804u);
    EXPECT_NEAR(*h.mean_annotations_per_pair(), 4.6, 0.05);
    EXPECT_DOUBLE_EQ(*h.mean_annotations_per_pair_all(), 7262.0 / 1656.0);
    const auto five = histogram(fixture().records, 3, 5);
    EXPECT_EQ(five.counts, (std::vector<std::uint64_t>{15, 51, 180, 617, 677}));
}

TEST(Histogram, RightClosedBins) {
    std::vector<AnnotationRecord> log;
    std::uint64_t id = 1;
    auto add = [&](std::uint64_t pair, int correct, int total) {
        for (int i = 0; i < total; ++i) log.push_back(rec(id++, pair, i < correct));
    };
    add(1, 0, 4);  // 0.0
    add(2, 1, 5);  // 0.2 sits in (0.1, 0.2]
    add(3, 3, 3);  // 1.0
    add(4, 9, 10); // 0.9 sits in (0.8, 0.9]
    add(5, 1, 2);  // filtered out
    const auto h = histogram(log);
    ASSERT_EQ(h.bin_edges.size(), 11u);
    EXPECT_DOUBLE_EQ(h.bin_edges.front(), 0.0);
    EXPECT_DOUBLE_EQ(h.bin_edges.back(), 1.0);
    EXPECT_EQ(h.counts, (std::vector<std::uint64_t>{1, 1, 0, 0, 0, 0, 0, 0, 1, 1}));
    EXPECT_EQ(h.excluded_count, 1u);
    EXPECT_EQ(h.pairs_at_least(9, 10), 2u);
    EXPECT_EQ(histogram(log, 1).included_pairs, 5u);
}

TEST(Histogram, EmptyAndInvalidInput) {
    std::vector<AnnotationRecord> none;
    EXPECT_THROW(overall_success(none), UndefinedValueError);
    const auto h = histogram(none);
    EXPECT_FALSE(h.mean_annotations_per_pair().has_value());
    EXPECT_THROW(histogram(none, 3, 0), ValidationError);
    EXPECT_THROW(histogram(none, 0, 10), ValidationError);
}

TEST(Reports, WritersEmitEveryLanguageAndBin) {
    std::ostringstream b, h;
    write_breakdown(b, breakdown(fixture().records, 2));
    write_histogram(h, histogram(fixture().records));
    EXPECT_NE(b.str().find("fr\t3629\t81"), std::string::npos);
    EXPECT_NE(b.str().find("it\t101\t79\t0\t-"), std::string::npos);
    EXPECT_NE(b.str().find("rejects\t2"), std::string::npos);
    EXPECT_NE(h.str().find("0.9\t1\t588"), std::string::npos);
    EXPECT_NE(h.str().find("mean_annotations_per_pair\t4.6\n"), std::string::npos);
    EXPECT_NE(h.str().find("pairs_rate_ge_0.8\t804"), std::string::npos);
}
