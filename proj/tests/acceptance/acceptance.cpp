// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "game_fixture.hpp"
#include "oracles.hpp"
#include "riddler/riddler.hpp"
#include "riddler/service.hpp"
#include "synth.hpp"

using namespace riddler;
using namespace riddler::service;
using game_fixture::ManualClock;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check, double limit_s = 0) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_s > 0 && secs >= limit_s) {
        o.ok = false;
        o.detail += "; over time limit";
    }
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << " (" << o.detail << "; " << t << ")" << std::endl;
    failures += !o.ok;
}

Outcome riddle_constraints() {
    const auto c = oracles::riddle_constraint_suite(10000);
    return {c.built >= 10000 && c.failures == 0,
            std::to_string(c.built) + " riddles, " + std::to_string(c.failures) + " violations" +
                (c.failures ? " first " + c.first_failure : "")};
}

Outcome eligibility() {
    auto ix = synth::corpus(2024, Language::en, 10000, 80);
    Rng lex_rng(2024);
    const auto lex = synth::lexicon(lex_rng, Language::en, 80);
    Rng rng(99);
    int mismatches = 0, nonempty = 0;
    for (int probe = 0; probe < 100; ++probe) {
        const auto& target = lex.forms[rng.below(lex.forms.size())];
        std::string foil = lex.forms[rng.below(lex.forms.size())];
        if (probe % 3 == 0) foil = lex.roots[rng.below(lex.roots.size())] + "s";
        const bool strict = probe % 5 == 0;
        const auto got = ix->eligible(target, foil, strict);
        mismatches += got != oracles::brute_eligible(*ix, target, foil, strict);
        nonempty += !got.empty();
    }
    return {ix->size() == 10000 && mismatches == 0,
            "100 probes over " + std::to_string(ix->size()) + " sentences, " + std::to_string(mismatches) +
                " mismatches, " + std::to_string(nonempty) + " non-empty"};
}

Outcome membership_invariance() {
    const auto bad = oracles::membership_renormalisation_mismatches(3, 1000);
    return {bad == 0, "1000 vectors, " + std::to_string(bad) + " mismatches"};
}

Outcome bayes_equivalence() {
    std::size_t comparisons = 0, mismatches = 0;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto r = oracles::bayes_vs_joint(seed);
        comparisons += r.comparisons;
        mismatches += r.mismatches;
    }
    return {comparisons > 0 && mismatches == 0,
            "6 corpora, " + std::to_string(comparisons) + " comparisons, " + std::to_string(mismatches) + " mismatches"};
}

Outcome bigram_desk_check() {
    const auto cases = oracles::bigram_cases();
    std::string errors;
    for (const auto& bc : cases)
        if (auto e = oracles::check_bigram_case(bc); !e.empty()) errors += (errors.empty() ? "" : ", ") + e;
    return {cases.size() >= 10 && errors.empty(), std::to_string(cases.size()) + " cases" + (errors.empty() ? "" : ": " + errors)};
}

Outcome scoring_table() {
    int cells = 0, bad = 0;
    for (int k : {1, 3, 5})
        for (auto d : {PairDifficulty::normal, PairDifficulty::known_difficult})
            for (bool fast : {true, false}) {
                ++cells;
                const double p = score_annotation(true, fast ? 1'000 : 200'000, k, d);
                const bool top = k == 1 && d == PairDifficulty::known_difficult && fast;
                const bool bottom = k == 5 && d == PairDifficulty::normal && !fast;
                if (top) bad += p != 3.0;
                else if (bottom) bad += p != 0.1;
                else bad += !(p > 0.1 && p < 3.0);
            }
    int non_monotone = 0;
    for (auto d : {PairDifficulty::normal, PairDifficulty::known_difficult})
        for (std::int64_t t : {1'000, 200'000}) {
            non_monotone += !(score_annotation(true, t, 1, d) > score_annotation(true, t, 3, d));
            non_monotone += !(score_annotation(true, t, 3, d) > score_annotation(true, t, 5, d));
        }
    for (int k : {1, 3, 5}) {
        for (std::int64_t t : {1'000, 200'000})
            non_monotone += !(score_annotation(true, t, k, PairDifficulty::known_difficult) >
                              score_annotation(true, t, k, PairDifficulty::normal));
        for (auto d : {PairDifficulty::normal, PairDifficulty::known_difficult})
            non_monotone += !(score_annotation(true, 1'000, k, d) > score_annotation(true, 200'000, k, d));
    }
    return {cells == 12 && bad == 0 && non_monotone == 0,
            std::to_string(cells) + " cells, " + std::to_string(bad) + " bound violations, " +
                std::to_string(non_monotone) + " monotonicity violations"};
}

Outcome stats_fixture() {
    std::ifstream in(synth::data_path("fixture_log.csv"));
    const auto log = read_log(in);
    const auto rep = breakdown(log.records);
    const std::map<Language, std::pair<std::uint64_t, int>> want = {
        {Language::fr, {3629, 81}}, {Language::en, {2098, 79}}, {Language::es, {1415, 80}},
        {Language::it, {101, 79}},  {Language::ru, {19, 95}},
    };
    std::string wrong;
    for (const auto& [l, v] : want) {
        const auto cell = rep.all(l);
        if (cell.count != v.first || cell.success_rounded() != v.second) wrong += " " + std::string(to_string(l));
    }
    const double overall = overall_success(log.records);
    const auto h = histogram(log.records);
    const double mean = h.mean_annotations_per_pair().value_or(0);
    const bool ok = log.rejects.empty() && wrong.empty() && std::fabs(overall - 80.0) <= 1.0 && h.distinct_pairs == 1656 &&
                    h.pairs_at_least(9, 10) == 588 && h.pairs_at_least(8, 10) == 804 && std::fabs(mean - 4.6) <= 0.05;
    std::ostringstream d;
    d << log.records.size() << " records, overall " << format_double(overall) << "%, " << h.distinct_pairs
      << " pairs, " << h.pairs_at_least(9, 10) << " >= 0.9, " << h.pairs_at_least(8, 10) << " >= 0.8, mean "
      << format_double(mean) << (wrong.empty() ? "" : ", wrong rows:" + wrong);
    return {ok, d.str()};
}

Outcome mining() {
    const auto bad = oracles::mining_mismatches(20);
    const auto cfg = load_config(std::string(RIDDLER_DATA_DIR) + "/config/example.json");
    return {bad.empty() && cfg.mining_top_k == 250 && MiningConfig{}.top_k == 250,
            "20 seeds, " + std::to_string(bad.size()) + " mismatches, configured top_k " + std::to_string(cfg.mining_top_k)};
}

// Randomised propose/serve/answer schedules against the game service. The
// test keeps its own model of proposals, annotations and FIFO leases, and
// checks each serve against it.
Outcome scheduler_priority() {
    const auto& animals = game_fixture::animals();
    std::size_t serves = 0, fifo_serves = 0, pool_violations = 0, own_violations = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        ManualClock clock;
        auto cfg = game_fixture::config();
        cfg.seed = seed;
        auto g = game_fixture::make_game(clock, cfg);
        game_fixture::add_manual_pairs(*g);
        const Timestamp lease_ms = g->config().fifo_lease_ms;
        std::vector<PlayerId> players;
        for (int i = 0; i < 4; ++i)
            players.push_back(g->register_player("p" + std::to_string(i), "secret-pw", Language::en));
        Rng rng(seed);

        struct Model {
            std::optional<PlayerId> proposer;
            std::uint64_t annotations = 0;
            std::optional<std::pair<PlayerId, Timestamp>> lease;
        };
        std::map<PairId, Model> model;
        for (const auto& p : g->all_pairs()) model[p.id] = {};
        struct Open {
            PlayerId player;
            RiddleId riddle;
            PairId pair;
        };
        std::vector<Open> open;

        auto pair_of = [&](RiddleId rid) {
            const auto v = g->riddle_view(rid);
            for (const auto& p : g->all_pairs())
                if ((p.word_a == v->target && p.word_b == v->foil) || (p.word_a == v->foil && p.word_b == v->target))
                    return p.id;
            throw ConsistencyError("served riddle has no pair");
        };

        for (int step = 0; step < 60; ++step) {
            const PlayerId who = players[rng.below(players.size())];
            switch (rng.below(4)) {
            case 0: {
                const auto& a = animals[rng.below(animals.size())];
                const auto& b = animals[rng.below(animals.size())];
                const auto r = g->propose_pair(who, Language::en, a, b);
                if (r.accepted()) model[*r.pair] = {who, 0, std::nullopt};
                break;
            }
            case 1:
            case 2: {
                const Timestamp now = clock.now->load();
                std::set<PairId> servable;
                std::map<PairId, PairState> states;
                for (const auto& q : g->queue_state(Language::en)) states[q.id] = q.state;
                for (const auto& [id, m] : model) {
                    if (!m.proposer || m.annotations > 0 || states[id] != PairState::active) continue;
                    if (*m.proposer == who) continue;
                    if (m.lease && m.lease->first != who && m.lease->second > now) continue;
                    servable.insert(id);
                }
                ServedRiddle r;
                try {
                    r = g->serve_riddle(who);
                } catch (const EmptyQueueError&) {
                    pool_violations += !servable.empty();
                    break;
                }
                ++serves;
                const PairId pid = pair_of(r.id);
                Model& m = model.at(pid);
                own_violations += m.proposer == who;
                if (!servable.empty()) {
                    ++fifo_serves;
                    pool_violations += !servable.contains(pid);
                }
                if (m.proposer && m.annotations == 0) m.lease = std::make_pair(who, now + lease_ms);
                open.push_back({who, r.id, pid});
                break;
            }
            default: {
                if (open.empty()) {
                    clock.advance(static_cast<Timestamp>(rng.below(static_cast<std::uint64_t>(lease_ms) * 3 / 2)));
                    break;
                }
                const auto i = rng.below(open.size());
                const Open o = open[i];
                open.erase(open.begin() + static_cast<std::ptrdiff_t>(i));
                const auto v = g->riddle_view(o.riddle);
                g->submit_answer(o.player, o.riddle, rng.below(2) ? v->target : v->foil);
                Model& m = model.at(o.pair);
                ++m.annotations;
                m.lease.reset();
                break;
            }
            }
            clock.advance(static_cast<Timestamp>(rng.below(20'000)));
        }
    }
    return {pool_violations == 0 && own_violations == 0 && fifo_serves > 0,
            "100 schedules, " + std::to_string(serves) + " serves, " + std::to_string(fifo_serves) +
                " with a proposed pair waiting, " + std::to_string(pool_violations) + " priority violations, " +
                std::to_string(own_violations) + " own-pair serves"};
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

std::vector<std::string> lines_of(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

// A live session records its state after every operation together with the
// journal length at that moment. Every journal prefix is then replayed on a
// fresh service, with and without a torn half-line after it.
Outcome crash_recovery() {
    const auto dir = synth::temp_dir("acceptance-crash");
    const auto path = (dir / "events.jsonl").string();
    ManualClock clock;
    std::map<std::size_t, std::string> at_boundary;
    {
        auto g = game_fixture::make_game(clock);
        g->open_journal(path);
        auto mark = [&] { at_boundary[lines_of(path).size()] = state_of(*g); };
        mark();
        game_fixture::add_manual_pairs(*g);
        mark();
        std::vector<PlayerId> ps;
        for (const char* n : {"alice", "bobby", "carol"}) {
            ps.push_back(g->register_player(n, "secret-pw", Language::en));
            mark();
        }
        g->propose_pair(ps[0], Language::en, "hyena", "lion");
        mark();
        g->propose_pair(ps[1], Language::en, "tiger", "otter");
        mark();
        Rng rng(5);
        for (int i = 0; i < 24; ++i) {
            const PlayerId p = ps[rng.below(ps.size())];
            ServedRiddle r;
            try {
                r = g->serve_riddle(p);
            } catch (const EmptyQueueError&) {
                continue;
            }
            mark();
            clock.advance(static_cast<Timestamp>(1000 + rng.below(250'000)));
            if (rng.below(5) == 0) continue;  // left pending
            g->submit_answer(p, r.id, r.options[rng.below(2)]);
            mark();
        }
    }
    const auto lines = lines_of(path);
    std::size_t checked = 0, mismatched = 0, torn_mismatched = 0;
    for (std::size_t n = 0; n <= lines.size(); ++n) {
        const auto prefix = (dir / ("prefix-" + std::to_string(n) + ".jsonl")).string();
        {
            std::ofstream out(prefix);
            for (std::size_t i = 0; i < n; ++i) out << lines[i] << '\n';
        }
        auto g = game_fixture::make_game(clock);
        g->open_journal(prefix);
        const auto state = state_of(*g);
        if (auto it = at_boundary.find(n); it != at_boundary.end()) {
            ++checked;
            mismatched += it->second != state;
        }
        if (n < lines.size()) {
            {
                std::ofstream out(prefix, std::ios::trunc);
                for (std::size_t i = 0; i < n; ++i) out << lines[i] << '\n';
                out << lines[n].substr(0, lines[n].size() / 2);
            }
            auto torn = game_fixture::make_game(clock);
            torn->open_journal(prefix);
            torn_mismatched += state_of(*torn) != state;
        }
    }
    std::filesystem::remove_all(dir);
    return {checked == at_boundary.size() && mismatched == 0 && torn_mismatched == 0,
            std::to_string(lines.size()) + " journal lines, " + std::to_string(checked) + " operation boundaries, " +
                std::to_string(mismatched) + " mismatches, " + std::to_string(torn_mismatched) + " torn-tail mismatches"};
}

// Coin-flip judge over 1000 synthetic riddles, scored through the agreement report.
Outcome coin_baseline() {
    auto ix = synth::corpus(77, Language::en, 3000, 40);
    Rng lex_rng(77);
    const auto lex = synth::lexicon(lex_rng, Language::en, 40);
    Rng rng(13);
    std::map<RiddleId, cstp::RiddleView> riddles;
    std::vector<AnnotationRecord> log;
    while (log.size() < 1000) {
        const auto& a = lex.forms[rng.below(lex.forms.size())];
        const auto& b = lex.forms[rng.below(lex.forms.size())];
        if (!pair_problems(Language::en, a, b, ix.get()).empty()) continue;
        Riddle r;
        try {
            r = build_riddle(oracles::word_pair(Language::en, a, b), std::array{1, 3, 5}[rng.below(3)], *ix, rng);
        } catch (const NoRiddleError&) {
            continue;
        }
        const RiddleId id{log.size() + 1};
        riddles[id] = {Language::en, r.target, r.foil, r.sentence_ids};
        AnnotationRecord rec;
        rec.id = AnnotationId{raw(id)};
        rec.riddle_id = id;
        rec.pair_id = PairId{raw(id)};
        rec.choice = r.target;
        rec.correct = true;
        rec.k = r.k;
        log.push_back(rec);
    }
    cstp::CoinFlipOracle coin(2021);
    cstp::DirectJudge judge(coin);
    const auto rep = cstp::agreement_report(
        judge, log,
        [&](RiddleId id) -> std::optional<cstp::RiddleView> {
            auto it = riddles.find(id);
            return it == riddles.end() ? std::nullopt : std::optional(it->second);
        },
        *ix);
    const double rate = rep.overall.n ? static_cast<double>(rep.overall.model_correct) / static_cast<double>(rep.overall.n) : 0;
    return {rep.overall.n == 1000 && std::fabs(rate - 0.5) <= 0.03,
            std::to_string(rep.overall.n) + " riddles, target accuracy " + format_double(100 * rate) + "%"};
}

}  // namespace

int main() {
    report("riddle_constraints", riddle_constraints, 60);
    report("eligibility_matches_brute_force", eligibility, 30);
    report("membership_renormalization_invariance", membership_invariance);
    report("bayes_matches_joint_conditional", bayes_equivalence);
    report("bigram_desk_check", bigram_desk_check);
    report("scoring_table_bounds", scoring_table);
    report("stats_fixture_reproduction", stats_fixture, 10);
    report("mining_matches_full_sort", mining);
    report("scheduler_priority", scheduler_priority);
    report("crash_recovery", crash_recovery);
    report("coin_baseline", coin_baseline);
    std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " failing" << std::endl;
    return failures ? 1 : 0;
}
