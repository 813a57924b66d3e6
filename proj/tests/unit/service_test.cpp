#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "game_fixture.hpp"

using namespace riddler;
using namespace riddler::service;
using game_fixture::ManualClock;

namespace {

struct Game : ::testing::Test {
    ManualClock clock;
    std::unique_ptr<GameService> game = game_fixture::make_game(clock);

    PlayerId player(const std::string& name) { return game->register_player(name, "secret-pw", Language::en); }
};

bool mentions(const std::vector<std::string>& sentences, const std::string& word) {
    for (const auto& s : sentences)
        for (const auto& t : text::tokenize(s, Language::en))
            if (t == word) return true;
    return false;
}

}  // namespace

TEST_F(Game, RegisterAndLogin) {
    const PlayerId alice = player("alice");
    EXPECT_THROW(player("alice"), ConflictError);
    EXPECT_THROW(game->register_player("bob", "short", Language::en), ValidationError);
    EXPECT_THROW(game->register_player("b ob", "secret-pw", Language::en), ValidationError);
    EXPECT_THROW(game->register_player("bob", "secret-pw", Language::fr), ValidationError);
    const auto token = game->login("alice", "secret-pw");
    EXPECT_EQ(game->authenticate(token), alice);
    EXPECT_THROW(game->login("alice", "wrong-pw"), AuthError);
    EXPECT_THROW(game->login("nobody", "secret-pw"), AuthError);
    EXPECT_THROW(game->authenticate("bogus"), AuthError);
    game->logout(token);
    EXPECT_THROW(game->authenticate(token), AuthError);
    EXPECT_EQ(game->profile(alice).k, 5);
}

TEST_F(Game, SettingsRejectTheOptOutKey) {
    const PlayerId alice = player("alice");
    EXPECT_THROW(game->update_settings(alice, {{"opt_out_manual_pairs", true}}), ValidationError);
    EXPECT_THROW(game->update_settings(alice, {{"k_setting", 4}}), ValidationError);
    EXPECT_THROW(game->update_settings(alice, {{"colour", "red"}}), ValidationError);
    EXPECT_EQ(game->update_settings(alice, {{"k_setting", 3}}).k, 3);
    EXPECT_EQ(game->profile(alice).k, 3);
}

TEST_F(Game, ServeAndAnswer) {
    game_fixture::add_manual_pairs(*game);
    const PlayerId alice = player("alice");
    const auto r = game->serve_riddle(alice);
    EXPECT_EQ(r.k, 5);
    ASSERT_EQ(r.sentences.size(), 5u);
    const auto target = game_fixture::target_of(*game, r.id);
    const auto foil = game_fixture::foil_of(*game, r.id);
    EXPECT_EQ((std::set<std::string>{r.options[0], r.options[1]}), (std::set<std::string>{target, foil}));
    EXPECT_FALSE(mentions(r.sentences, target));
    EXPECT_FALSE(mentions(r.sentences, foil));
    for (const auto& s : r.sentences) EXPECT_NE(s.find("___"), std::string::npos);
    EXPECT_EQ(game->pending_count(), 1u);

    EXPECT_THROW(game->submit_answer(alice, r.id, "wombat"), ValidationError);
    clock.advance(2000);
    const auto res = game->submit_answer(alice, r.id, target);
    EXPECT_TRUE(res.correct);
    EXPECT_DOUBLE_EQ(res.points, 0.5);
    EXPECT_EQ(res.answer, target);
    EXPECT_DOUBLE_EQ(game->scores(alice).cracker_points, 0.5);
    EXPECT_EQ(game->pending_count(), 0u);

    try {
        game->submit_answer(alice, r.id, foil);
        FAIL() << "second submission accepted";
    } catch (const DuplicateSubmissionError& e) {
        EXPECT_TRUE(e.first().correct);
        EXPECT_DOUBLE_EQ(e.first().points, 0.5);
    }
    ASSERT_EQ(game->annotation_log().size(), 1u);
    const auto rec = game->annotation_log()[0];
    EXPECT_EQ(rec.elapsed_ms, 2000);
    EXPECT_EQ(rec.choice, target);
    EXPECT_EQ(rec.pair_origin, PairOrigin::manual);
}

TEST_F(Game, WrongAnswerAndSlowAnswer) {
    game_fixture::add_manual_pairs(*game);
    const PlayerId alice = player("alice");
    game->update_settings(alice, {{"k_setting", 1}});
    auto r = game->serve_riddle(alice);
    auto res = game->submit_answer(alice, r.id, game_fixture::foil_of(*game, r.id));
    EXPECT_FALSE(res.correct);
    EXPECT_EQ(res.points, 0.0);
    r = game->serve_riddle(alice);
    clock.advance(180'000);
    res = game->submit_answer(alice, r.id, game_fixture::target_of(*game, r.id));
    EXPECT_DOUBLE_EQ(res.points, 1.5 * 0.2);
}

TEST_F(Game, OtherPlayersCannotAnswer) {
    game_fixture::add_manual_pairs(*game);
    const PlayerId alice = player("alice"), bob = player("bobby");
    const auto r = game->serve_riddle(alice);
    EXPECT_THROW(game->submit_answer(bob, r.id, r.options[0]), NotFoundError);
    EXPECT_THROW(game->submit_answer(alice, RiddleId{999}, r.options[0]), NotFoundError);
}

TEST_F(Game, PendingRiddlesExpire) {
    game_fixture::add_manual_pairs(*game);
    const PlayerId alice = player("alice");
    const auto r = game->serve_riddle(alice);
    clock.advance(game->config().pending_expiry_ms + 1);
    EXPECT_THROW(game->submit_answer(alice, r.id, r.options[0]), NotFoundError);
}

TEST_F(Game, EmptyQueueOnceEverythingIsAnswered) {
    game_fixture::add_manual_pairs(*game);
    const PlayerId alice = player("alice");
    for (int i = 0; i < 4; ++i) {
        const auto r = game->serve_riddle(alice);
        game->submit_answer(alice, r.id, r.options[0]);
    }
    EXPECT_THROW(game->serve_riddle(alice), EmptyQueueError);
    EXPECT_THROW(game->serve_riddle(alice, Language::fr), NotFoundError);
}

TEST_F(Game, Proposals) {
    const PlayerId alice = player("alice"), bob = player("bobby");
    auto ok = game->propose_pair(alice, Language::en, "Hyena", "lion");
    ASSERT_TRUE(ok.accepted());
    auto dup = game->propose_pair(bob, Language::en, "lion", "hyena");
    EXPECT_EQ(dup.reasons, (std::vector<std::string>{"pair already exists"}));
    EXPECT_EQ(game->propose_pair(alice, Language::en, "otter", "otters").reasons,
              (std::vector<std::string>{"identical stems", "'otters' not in vocabulary"}));
    EXPECT_EQ(game->propose_pair(alice, Language::en, "otter", "unicorn").reasons,
              (std::vector<std::string>{"'unicorn' not in vocabulary"}));
    EXPECT_EQ(game->propose_pair(alice, Language::en, "the otter", "lion").reasons,
              (std::vector<std::string>{"'the otter' is not a single word"}));
    EXPECT_EQ(game->propose_pair(alice, Language::en, "12", "13").reasons,
              (std::vector<std::string>{"fewer than 5 usable sentences in either role"}));
    EXPECT_THROW(game->propose_pair(alice, Language::fr, "a", "b"), ValidationError);

    // The proposer never sees their own pair; the next player gets it first.
    EXPECT_THROW(game->serve_riddle(alice), EmptyQueueError);
    EXPECT_EQ(game->fifo(Language::en), (std::vector<PairId>{*ok.pair}));
    const auto r = game->serve_riddle(bob);
    EXPECT_EQ((std::set<std::string>{r.options[0], r.options[1]}), (std::set<std::string>{"hyena", "lion"}));
    game->submit_answer(bob, r.id, game_fixture::foil_of(*game, r.id));
    const auto s = game->scores(alice);
    EXPECT_EQ(s.blanker_annotation_count, 1u);
    EXPECT_DOUBLE_EQ(*s.blanker_success_rate, 100.0);
    EXPECT_FALSE(game->scores(bob).blanker_success_rate.has_value());
    ASSERT_EQ(game->pairs_of(alice).size(), 1u);
    EXPECT_EQ(game->pairs_of(alice)[0].annotations, 1u);
    EXPECT_TRUE(game->fifo(Language::en).empty());
}

TEST_F(Game, ProposedPairsComeBeforeThePool) {
    game_fixture::add_manual_pairs(*game);
    const PlayerId alice = player("alice"), bob = player("bobby");
    const auto first = *game->propose_pair(alice, Language::en, "hyena", "lion").pair;
    clock.advance(10);
    const auto second = *game->propose_pair(alice, Language::en, "tiger", "otter").pair;
    auto r = game->serve_riddle(bob);
    EXPECT_EQ(game->queue_state(Language::en).size(), 6u);
    std::set<std::string> opts{r.options[0], r.options[1]};
    EXPECT_EQ(opts, (std::set<std::string>{"hyena", "lion"}));
    game->submit_answer(bob, r.id, r.options[0]);
    r = game->serve_riddle(bob);
    opts = {r.options[0], r.options[1]};
    EXPECT_EQ(opts, (std::set<std::string>{"tiger", "otter"}));
    EXPECT_NE(first, second);
}

TEST_F(Game, LeaderboardOrder) {
    game_fixture::add_manual_pairs(*game);
    const PlayerId alice = player("alice");
    clock.advance(1);
    const PlayerId bob = player("bobby");
    clock.advance(1);
    player("carol");
    for (PlayerId p : {bob, bob, alice}) {
        const auto r = game->serve_riddle(p);
        game->submit_answer(p, r.id, game_fixture::target_of(*game, r.id));
    }
    const auto lb = game->leaderboard(Language::en, 10);
    ASSERT_EQ(lb.size(), 3u);
    EXPECT_EQ(lb[0].username, "bobby");
    EXPECT_EQ(lb[1].username, "alice");
    EXPECT_EQ(lb[2].username, "carol");
    EXPECT_EQ(game->leaderboard(Language::en, 1).size(), 1u);
    EXPECT_TRUE(game->leaderboard(Language::fr, 10).empty());
}

TEST_F(Game, FriendsAndCompetition) {
    game_fixture::add_manual_pairs(*game);
    const PlayerId alice = player("alice"), bob = player("bobby"), carol = player("carol");
    EXPECT_FALSE(game->add_friend(alice, "bobby").mutual);
    EXPECT_THROW(game->create_competition(alice, {"bobby"}, 2), ForbiddenError);
    EXPECT_TRUE(game->add_friend(bob, "alice").mutual);
    EXPECT_THROW(game->add_friend(alice, "alice"), ValidationError);
    EXPECT_THROW(game->add_friend(alice, "nobody"), NotFoundError);
    EXPECT_THROW(game->create_competition(alice, {"bobby"}, 0), ValidationError);

    const SessionId c = game->create_competition(alice, {"bobby"}, 2);
    EXPECT_EQ(game->competition(alice, c).state, CompetitionState::open);
    EXPECT_THROW(game->competition(carol, c), ForbiddenError);
    EXPECT_THROW(game->serve_riddle(carol, std::nullopt, c), ForbiddenError);

    for (PlayerId p : {alice, bob}) {
        for (int i = 0; i < 2; ++i) {
            const auto r = game->serve_riddle(p, std::nullopt, c);
            EXPECT_EQ(r.competition, c);
            const bool right = p == alice;
            const auto res = game->submit_answer(p, r.id, right ? game_fixture::target_of(*game, r.id)
                                                                 : game_fixture::foil_of(*game, r.id));
            EXPECT_EQ(res.competition, c);
        }
        if (p == alice) {
            EXPECT_EQ(game->competition(alice, c).state, CompetitionState::running);
            EXPECT_THROW(game->serve_riddle(alice, std::nullopt, c), ConflictError);
        }
    }
    const auto v = game->competition(bob, c);
    EXPECT_EQ(v.state, CompetitionState::finished);
    ASSERT_EQ(v.standings.size(), 2u);
    EXPECT_EQ(v.standings[0].username, "alice");
    EXPECT_DOUBLE_EQ(v.standings[0].points, 1.0);
    ASSERT_TRUE(v.summary.has_value());
    EXPECT_NE(v.summary->find("Winner: alice!"), std::string::npos);
}

TEST_F(Game, CompetitionCanBeClosedEarly) {
    game_fixture::add_manual_pairs(*game);
    const PlayerId alice = player("alice"), bob = player("bobby");
    game->add_friend(alice, "bobby");
    game->add_friend(bob, "alice");
    const SessionId c = game->create_competition(bob, {"alice"}, 3);
    const auto v = game->close_competition(alice, c);
    EXPECT_EQ(v.state, CompetitionState::finished);
    EXPECT_NE(v.summary->find("It's a tie!"), std::string::npos);
    EXPECT_THROW(game->serve_riddle(alice, std::nullopt, c), ConflictError);
    EXPECT_THROW(game->competition(alice, SessionId{77}), NotFoundError);
}

TEST_F(Game, PairFiles) {
    const auto dir = synth::temp_dir("pairfile");
    const auto path = (dir / "pairs.tsv").string();
    {
        std::ofstream out(path);
        out << "# word_a\tword_b\torigin\nhyena\tjackal\tmanual\nlion\tlions\tembedding_mined\nzebra\tgiraffe\tembedding_mined\n";
    }
    const auto dropped = game->load_pair_file(path, Language::en);
    ASSERT_EQ(dropped.size(), 1u);
    EXPECT_EQ(dropped[0].reason, "identical stems; 'lions' not in vocabulary");
    EXPECT_EQ(game->all_pairs().size(), 2u);
    {
        std::ofstream out(path);
        out << "hyena\tjackal\tuser_proposed\n";
    }
    EXPECT_THROW(game->load_pair_file(path, Language::en), ParseError);
    EXPECT_THROW(game->load_pair_file((dir / "missing.tsv").string(), Language::en), IngestError);
}

namespace {

// Plays a fixed script against a journaled service.
void play(GameService& g, const ManualClock& clock) {
    game_fixture::add_manual_pairs(g);
    const PlayerId a = g.register_player("alice", "secret-pw", Language::en);
    const PlayerId b = g.register_player("bobby", "secret-pw", Language::en);
    g.propose_pair(a, Language::en, "hyena", "lion");
    g.add_friend(a, "bobby");
    g.add_friend(b, "alice");
    const SessionId c = g.create_competition(a, {"bobby"}, 1);
    for (PlayerId p : {b, b, a, b}) {
        const auto r = g.serve_riddle(p);
        clock.advance(3000);
        g.submit_answer(p, r.id, r.options[raw(r.id) % 2]);
    }
    const auto r = g.serve_riddle(a, std::nullopt, c);
    g.submit_answer(a, r.id, r.options[0]);
    g.serve_riddle(b);  // left pending
}

std::string state_of(const GameService& g) {
    std::ostringstream out;
    for (const auto& [name, s] : g.all_scores())
        out << name << ' ' << s.cracker_points << ' ' << s.blanker_annotation_count << ' '
            << s.blanker_success_rate.value_or(-1) << '\n';
    for (const auto& q : g.queue_state(Language::en))
        out << raw(q.id) << ' ' << q.count << ' ' << q.in_fifo << ' ' << static_cast<int>(q.state) << '\n';
    g.export_log(out);
    out << g.pending_count() << '\n';
    return out.str();
}

}  // namespace

TEST(Journal, ReplayRebuildsTheSameState) {
    const auto dir = synth::temp_dir("journal");
    const auto path = (dir / "events.jsonl").string();
    ManualClock clock;
    std::string before;
    {
        auto g = game_fixture::make_game(clock);
        g->open_journal(path);
        play(*g, clock);
        before = state_of(*g);
    }
    auto again = game_fixture::make_game(clock);
    again->open_journal(path);
    EXPECT_EQ(state_of(*again), before);

    // Offline replay from a stream gives the same log.
    auto offline = std::make_unique<GameService>(ServiceConfig{}, std::map<Language, CorpusPtr>{});
    std::ifstream in(path);
    offline->replay(in);
    std::ostringstream a, b;
    offline->export_log(a);
    again->export_log(b);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_TRUE(offline->riddle_view(RiddleId{1}).has_value());
    EXPECT_FALSE(offline->riddle_view(RiddleId{999}).has_value());

    // Ids keep counting after a restart.
    const PlayerId c = again->register_player("carol", "secret-pw", Language::en);
    EXPECT_EQ(raw(c), 3u);
}

TEST(Journal, TornTailIsDropped) {
    const auto dir = synth::temp_dir("torn");
    const auto path = (dir / "events.jsonl").string();
    ManualClock clock;
    std::string before;
    {
        auto g = game_fixture::make_game(clock);
        g->open_journal(path);
        play(*g, clock);
        before = state_of(*g);
    }
    const auto good_size = std::filesystem::file_size(path);
    {
        std::ofstream out(path, std::ios::app);
        out << R"({"type":"player","id":9,"username":"mallo)";
    }
    auto g = game_fixture::make_game(clock);
    g->open_journal(path);
    EXPECT_EQ(state_of(*g), before);
    EXPECT_EQ(std::filesystem::file_size(path), good_size);
}

TEST(Journal, CorruptLineIsAnError) {
    const auto dir = synth::temp_dir("corrupt");
    const auto path = (dir / "events.jsonl").string();
    {
        std::ofstream out(path);
        out << "{not json}\n";
    }
    ManualClock clock;
    auto g = game_fixture::make_game(clock);
    EXPECT_THROW(g->open_journal(path), ParseError);
    {
        std::ofstream out(path);
        out << R"({"type":"mystery"})" << '\n';
    }
    auto h = game_fixture::make_game(clock);
    EXPECT_THROW(h->open_journal(path), ConsistencyError);
}

TEST(Config, ParsesAndRejects) {
    const auto cfg = parse_config(nlohmann::json::parse(R"({
        "languages": ["en", "fr"],
        "corpora": {"en": {"snapshot": "en.snap"}, "fr": {"files": [{"path": "fr.txt", "genre": "subtitles"}]}},
        "default_k": 3,
        "time_bonus_threshold_s": 90,
        "listen": {"host": "0.0.0.0", "port": 9000},
        "mining": {"sample_n": 5000, "top_k": 12}
    })"),
                                  "/srv");
    EXPECT_EQ(cfg.languages.size(), 2u);
    EXPECT_EQ(cfg.corpora.at(Language::en).snapshot, "/srv/en.snap");
    EXPECT_EQ(cfg.corpora.at(Language::fr).files.at(0).first, "/srv/fr.txt");
    EXPECT_EQ(cfg.default_k, 3);
    EXPECT_EQ(cfg.time_bonus_threshold_ms, 90'000);
    EXPECT_EQ(cfg.port, 9000);
    EXPECT_EQ(cfg.mining_top_k, 12u);
    EXPECT_THROW(parse_config(nlohmann::json::parse(R"({"default_k": 2})")), ConfigError);
    EXPECT_THROW(parse_config(nlohmann::json::parse(R"({"colour": 1})")), ConfigError);
    EXPECT_THROW(parse_config(nlohmann::json::parse(R"({"languages": ["xx"]})")), std::exception);
    EXPECT_THROW(load_config("/nonexistent/riddler.json"), ConfigError);
    ServiceConfig missing;
    missing.languages = {Language::it};
    EXPECT_THROW(load_corpora(missing), ConfigError);
}

TEST(Config, SnapshotLanguageMustMatch) {
    const auto dir = synth::temp_dir("snapcfg");
    const auto path = (dir / "en.snap").string();
    {
        std::ofstream out(path, std::ios::binary);
        save_snapshot(*game_fixture::animal_corpus(), out);
    }
    EXPECT_EQ(load_snapshot_file(path, Language::en)->size(), game_fixture::animal_corpus()->size());
    EXPECT_THROW(load_snapshot_file(path, Language::fr), ConfigError);
}
