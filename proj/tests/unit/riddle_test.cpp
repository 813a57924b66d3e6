#include <gtest/gtest.h>

#include <set>

#include "riddler/riddle.hpp"
#include "oracles.hpp"
#include "synth.hpp"

using namespace riddler;

namespace {

WordPair make_pair(Language l, std::string a, std::string b) {
    WordPair p;
    p.id = PairId{1};
    p.language = l;
    p.word_a = std::move(a);
    p.word_b = std::move(b);
    return p;
}

std::vector<std::string> animal_lines() {
    std::vector<std::string> out;
    for (int i = 0; i < 8; ++i) out.push_back("The hyena number " + std::to_string(i) + " laughed.");
    for (int i = 0; i < 8; ++i) out.push_back("A jackal called " + std::to_string(i) + " howled.");
    out.push_back("The hyena chased the jackal.");
    return out;
}

}  // namespace

TEST(Riddle, BuildsBlankedSentencesAndBothOptions) {
    auto ix = synth::corpus_of(Language::en, animal_lines());
    Rng rng(1);
    const auto r = build_riddle(make_pair(Language::en, "hyena", "jackal"), 5, *ix, rng);
    EXPECT_EQ(r.sentence_ids.size(), 5u);
    EXPECT_EQ(r.display_sentences.size(), 5u);
    for (const auto& s : r.display_sentences) {
        EXPECT_NE(s.find("___"), std::string::npos);
        EXPECT_EQ(s.find("hyena"), std::string::npos);
        EXPECT_EQ(s.find("jackal"), std::string::npos);
    }
    std::set<std::string> opts(r.options.begin(), r.options.end());
    EXPECT_EQ(opts, (std::set<std::string>{"hyena", "jackal"}));
    EXPECT_NE(r.target, r.foil);
}

TEST(Riddle, RejectsBadK) {
    auto ix = synth::corpus_of(Language::en, animal_lines());
    Rng rng(1);
    for (int k : {0, 2, 4, 6}) EXPECT_THROW(build_riddle(make_pair(Language::en, "hyena", "jackal"), k, *ix, rng), ValidationError);
}

TEST(Riddle, SwapsRolesWhenOneSideIsShort) {
    std::vector<std::string> lines;
    for (int i = 0; i < 6; ++i) lines.push_back("The hyena " + std::to_string(i) + " ran.");
    lines.push_back("A jackal slept.");
    auto ix = synth::corpus_of(Language::en, lines);
    int swapped = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const auto r = build_riddle(make_pair(Language::en, "hyena", "jackal"), 5, *ix, rng);
        EXPECT_EQ(r.target, "hyena");
        swapped += r.roles_swapped;
    }
    EXPECT_GT(swapped, 60);
    EXPECT_LT(swapped, 140);
}

TEST(Riddle, FailsWhenNeitherRoleHasEnough) {
    auto ix = synth::corpus_of(Language::en, {"The hyena ran.", "A jackal slept.", "The hyena and a jackal."});
    Rng rng(3);
    EXPECT_THROW(build_riddle(make_pair(Language::en, "hyena", "jackal"), 3, *ix, rng), NoRiddleError);
    const auto r = build_riddle(make_pair(Language::en, "hyena", "jackal"), 1, *ix, rng);
    EXPECT_EQ(r.k, 1);
}

TEST(Riddle, InactivePairOrWrongLanguage) {
    auto ix = synth::corpus_of(Language::en, animal_lines());
    Rng rng(1);
    auto p = make_pair(Language::en, "hyena", "jackal");
    p.state = PairState::deferred;
    EXPECT_THROW(build_riddle(p, 5, *ix, rng), ValidationError);
    EXPECT_THROW(build_riddle(make_pair(Language::fr, "hyena", "jackal"), 5, *ix, rng), ConsistencyError);
}

TEST(Riddle, AvoidsSelectionsAlreadySeen) {
    auto ix = synth::corpus_of(Language::en, animal_lines());
    Rng rng(8);
    std::set<std::uint64_t> seen;
    RiddleOptions opt;
    opt.already_seen = [&](std::uint64_t h) { return seen.contains(h); };
    for (int i = 0; i < 20; ++i) {
        const auto r = build_riddle(make_pair(Language::en, "hyena", "jackal"), 5, *ix, rng, opt);
        const auto h = sentence_set_hash(r.sentence_ids);
        EXPECT_FALSE(seen.contains(h));
        seen.insert(h);
    }
}

TEST(Riddle, SentenceSetHashIgnoresOrder) {
    EXPECT_EQ(sentence_set_hash({3, 1, 2}), sentence_set_hash({1, 2, 3}));
    EXPECT_NE(sentence_set_hash({1, 2, 3}), sentence_set_hash({1, 2, 4}));
}

TEST(Riddle, RolesAreBalanced) {
    auto ix = synth::corpus_of(Language::en, animal_lines());
    Rng rng(77);
    int a_target = 0, a_first_option = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const auto r = build_riddle(make_pair(Language::en, "hyena", "jackal"), 3, *ix, rng);
        a_target += r.target_is_word_a;
        a_first_option += r.options[0] == "hyena";
        ASSERT_FALSE(r.roles_swapped);
    }
    EXPECT_NEAR(static_cast<double>(a_target) / n, 0.5, 0.02);
    EXPECT_NEAR(static_cast<double>(a_first_option) / n, 0.5, 0.02);
}

TEST(Riddle, ConstraintSuiteOnRandomCorpora) {
    const auto c = oracles::riddle_constraint_suite(10000);
    EXPECT_GE(c.built, 10000u);
    EXPECT_EQ(c.failures, 0u) << c.first_failure;
}
