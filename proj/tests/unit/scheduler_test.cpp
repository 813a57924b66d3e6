#include <gtest/gtest.h>

#include <atomic>
#include <map>
#include <thread>

#include "riddler/scheduler.hpp"

using namespace riddler;

namespace {

WordPair pair(std::uint64_t id, PairOrigin origin, Timestamp at = 0, std::optional<std::uint64_t> proposer = {}) {
    WordPair p;
    p.id = PairId{id};
    p.language = Language::en;
    p.word_a = "a" + std::to_string(id);
    p.word_b = "b" + std::to_string(id);
    p.origin = origin;
    p.created_at = at;
    if (proposer) p.proposer = PlayerId{*proposer};
    return p;
}

constexpr PlayerId kAlice{1}, kBob{2}, kCarol{3};

}  // namespace

TEST(Scheduler, ProposedPairsFirstInProposalOrder) {
    Scheduler s;
    s.add_pair(pair(1, PairOrigin::manual));
    s.add_pair(pair(7, PairOrigin::user_proposed, 200, 9));
    s.add_pair(pair(5, PairOrigin::user_proposed, 100, 9));
    s.add_pair(pair(6, PairOrigin::user_proposed, 200, 9));
    EXPECT_EQ(s.fifo(Language::en), (std::vector<PairId>{PairId{5}, PairId{6}, PairId{7}}));
    Rng rng(1);
    EXPECT_EQ(s.next_pair(Language::en, kAlice, rng, 0), PairId{5});
    s.on_annotation_committed(Language::en, PairId{5}, kAlice, 1);
    EXPECT_EQ(s.next_pair(Language::en, kAlice, rng, 0), PairId{6});
    s.on_annotation_committed(Language::en, PairId{6}, kAlice, 1);
    EXPECT_EQ(s.next_pair(Language::en, kAlice, rng, 0), PairId{7});
    s.on_annotation_committed(Language::en, PairId{7}, kAlice, 1);
    EXPECT_TRUE(s.fifo(Language::en).empty());
    EXPECT_EQ(s.pool(Language::en).size(), 4u);
    EXPECT_EQ(s.next_pair(Language::en, kAlice, rng, 0), PairId{1});
}

TEST(Scheduler, NeverServesOwnOrAnsweredPairs) {
    Scheduler s;
    s.add_pair(pair(1, PairOrigin::user_proposed, 0, raw(kAlice)));
    s.add_pair(pair(2, PairOrigin::manual));
    Rng rng(1);
    for (int i = 0; i < 50; ++i) EXPECT_EQ(s.next_pair(Language::en, kAlice, rng, 0), PairId{2});
    s.on_annotation_committed(Language::en, PairId{2}, kAlice, 1);
    EXPECT_THROW(s.next_pair(Language::en, kAlice, rng, 0), EmptyQueueError);
    EXPECT_EQ(s.next_pair(Language::en, kBob, rng, 0), PairId{1});
}

TEST(Scheduler, EmptyLanguageThrows) {
    Scheduler s;
    Rng rng(1);
    EXPECT_THROW(s.next_pair(Language::it, kAlice, rng, 0), EmptyQueueError);
}

TEST(Scheduler, InactivePairsAreNotServed) {
    Scheduler s;
    s.add_pair(pair(1, PairOrigin::manual));
    s.add_pair(pair(2, PairOrigin::user_proposed, 0, 9));
    s.set_state(Language::en, PairId{2}, PairState::deferred);
    Rng rng(1);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(s.next_pair(Language::en, kAlice, rng, 0), PairId{1});
    s.set_state(Language::en, PairId{1}, PairState::rejected);
    EXPECT_THROW(s.next_pair(Language::en, kAlice, rng, 0), EmptyQueueError);
    s.set_state(Language::en, PairId{2}, PairState::active);
    EXPECT_EQ(s.next_pair(Language::en, kAlice, rng, 0), PairId{2});
    EXPECT_THROW(s.set_state(Language::en, PairId{99}, PairState::active), ConsistencyError);
}

TEST(Scheduler, LeaseHoldsHeadForOnePlayer) {
    Scheduler s(SchedulerConfig{1000});
    s.add_pair(pair(1, PairOrigin::user_proposed, 10, 9));
    s.add_pair(pair(2, PairOrigin::user_proposed, 20, 9));
    Rng rng(1);
    EXPECT_EQ(s.next_pair(Language::en, kAlice, rng, 0), PairId{1});
    EXPECT_EQ(s.next_pair(Language::en, kBob, rng, 10), PairId{2});
    EXPECT_EQ(s.next_pair(Language::en, kAlice, rng, 20), PairId{1});  // same player keeps it
    EXPECT_THROW(s.next_pair(Language::en, kCarol, rng, 30), EmptyQueueError);
    EXPECT_EQ(s.next_pair(Language::en, kCarol, rng, 1021), PairId{1});  // Alice's lease ran out
    s.release(Language::en, PairId{2}, kBob);
    EXPECT_EQ(s.next_pair(Language::en, kAlice, rng, 1022), PairId{2});
}

TEST(Scheduler, PoolWeightFavoursFewerAnnotations) {
    Scheduler s;
    s.add_pair(pair(1, PairOrigin::manual), 0);
    s.add_pair(pair(2, PairOrigin::manual), 10);
    Rng rng(123);
    const int n = 40000;
    int first = 0;
    for (int i = 0; i < n; ++i) first += s.next_pair(Language::en, kAlice, rng, 0) == PairId{1};
    // weights 1 and 1/11
    EXPECT_NEAR(static_cast<double>(first) / n, 11.0 / 12.0, 0.01);
    EXPECT_DOUBLE_EQ(Scheduler::weight(0), 1.0);
    EXPECT_DOUBLE_EQ(Scheduler::weight(10), 1.0 / 11.0);
}

TEST(Scheduler, CountsOnlyGrow) {
    Scheduler s;
    s.add_pair(pair(1, PairOrigin::manual));
    s.on_annotation_committed(Language::en, PairId{1}, kAlice, 3);
    s.on_annotation_committed(Language::en, PairId{1}, kBob, 2);
    EXPECT_EQ(s.find(Language::en, PairId{1})->count, 3u);
    EXPECT_THROW(s.on_annotation_committed(Language::en, PairId{42}, kAlice, 1), ConsistencyError);
}

TEST(Scheduler, ConcurrentServingConservesAnnotations) {
    Scheduler s(SchedulerConfig{0});  // no leases, so nobody waits on another thread
    const int pairs = 40;
    for (int i = 1; i <= pairs; ++i)
        s.add_pair(pair(i, i % 4 == 0 ? PairOrigin::user_proposed : PairOrigin::manual, i, i % 4 == 0 ? 1000 : 0));
    std::mutex mu;
    std::map<PairId, std::uint64_t> counts;
    std::atomic<int> served{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&, t] {
            Rng rng(Rng::mix(7, t));
            for (int player = 0; player < 5; ++player) {
                const PlayerId pid{static_cast<std::uint64_t>(t * 10 + player + 1)};
                for (;;) {
                    PairId id;
                    try {
                        id = s.next_pair(Language::en, pid, rng, 0);
                    } catch (const EmptyQueueError&) {
                        break;
                    }
                    std::uint64_t c;
                    {
                        std::lock_guard lock(mu);
                        c = ++counts[id];
                    }
                    s.on_annotation_committed(Language::en, id, pid, c);
                    ++served;
                }
            }
        });
    }
    for (auto& th : threads) th.join();
    // Every player sees every pair exactly once.
    EXPECT_EQ(served.load(), 8 * 5 * pairs);
    for (const auto& sp : s.snapshot(Language::en)) {
        EXPECT_EQ(sp.count, 40u);
        EXPECT_FALSE(sp.in_fifo);
    }
}
