#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "riddler/error.hpp"
#include "riddler/pairgen.hpp"
#include "riddler/random.hpp"
#include "riddler/types.hpp"

namespace riddler {

struct SchedulerConfig {
    // How long an unanswered FIFO head stays reserved for the player it was served to.
    std::int64_t lease_ms = 180'000;
};

// Where a pair currently sits; used by tests and diagnostics.
struct ScheduledPair {
    PairId id{};
    Language language = Language::en;
    PairOrigin origin = PairOrigin::manual;
    PairState state = PairState::active;
    std::uint64_t count = 0;
    bool in_fifo = false;
};

// Chooses the next pair for a player. Zero-annotation user-proposed pairs are
// served first in proposal order; everything else is drawn with weight
// 1 / (1 + annotation count). A player never gets a pair they proposed or one
// they already annotated. Each language has its own lock.
class Scheduler {
public:
    explicit Scheduler(SchedulerConfig cfg = {}) : cfg_(cfg) {}

    // Registers a pair with its current annotation count. Re-adding a known
    // pair updates its state and count.
    void add_pair(const WordPair& p, std::uint64_t count = 0) {
        auto& lane = lane_for(p.language);
        std::lock_guard lock(lane.mu);
        auto [it, inserted] = lane.pairs.try_emplace(p.id);
        Entry& e = it->second;
        if (inserted) {
            e.origin = p.origin;
            e.proposer = p.proposer;
            e.proposed_at = p.created_at;
        }
        e.state = p.state;
        e.count = std::max(e.count, count);
        place(lane, p.id, e);
    }

    void set_state(Language lang, PairId id, PairState state) {
        auto& lane = lane_for(lang);
        std::lock_guard lock(lane.mu);
        Entry& e = entry(lane, id);
        e.state = state;
        place(lane, id, e);
    }

    // Marks a pair annotated by `player` (e.g. while replaying history) without
    // touching its count.
    void note_annotated(Language lang, PlayerId player, PairId id) {
        auto& lane = lane_for(lang);
        std::lock_guard lock(lane.mu);
        entry(lane, id);
        lane.done[player].insert(id);
    }

    // Idempotent: the stored count only ever grows to the largest value seen.
    void on_annotation_committed(Language lang, PairId id, PlayerId player, std::uint64_t new_count) {
        auto& lane = lane_for(lang);
        std::lock_guard lock(lane.mu);
        Entry& e = entry(lane, id);
        e.count = std::max(e.count, new_count);
        e.lease.reset();
        lane.done[player].insert(id);
        place(lane, id, e);
    }

    // Drops a reservation, e.g. when the riddle expired or could not be built.
    void release(Language lang, PairId id, PlayerId player) {
        auto& lane = lane_for(lang);
        std::lock_guard lock(lane.mu);
        auto it = lane.pairs.find(id);
        if (it != lane.pairs.end() && it->second.lease && it->second.lease->player == player) it->second.lease.reset();
    }

    // Throws EmptyQueueError when nothing is servable to this player.
    PairId next_pair(Language lang, PlayerId player, Rng& rng, Timestamp now,
                     const std::unordered_set<PairId>* skip = nullptr) {
        auto& lane = lane_for(lang);
        std::lock_guard lock(lane.mu);
        const auto done_it = lane.done.find(player);
        const std::unordered_set<PairId>* done = done_it == lane.done.end() ? nullptr : &done_it->second;
        auto allowed = [&](PairId id, const Entry& e) {
            if (e.state != PairState::active) return false;
            if (e.proposer && *e.proposer == player) return false;
            if (done && done->contains(id)) return false;
            if (skip && skip->contains(id)) return false;
            return true;
        };
        for (const auto& [key, id] : lane.fifo) {
            Entry& e = lane.pairs.at(id);
            if (!allowed(id, e)) continue;
            if (e.lease && e.lease->player != player && e.lease->until > now) continue;
            e.lease = Lease{player, now + cfg_.lease_ms};
            return id;
        }
        double total = 0;
        for (PairId id : lane.pool) {
            const Entry& e = lane.pairs.at(id);
            if (allowed(id, e)) total += weight(e);
        }
        if (total <= 0) throw EmptyQueueError();
        double u = rng.unit() * total;
        std::optional<PairId> last;
        for (PairId id : lane.pool) {
            const Entry& e = lane.pairs.at(id);
            if (!allowed(id, e)) continue;
            last = id;
            u -= weight(e);
            if (u < 0) return id;
        }
        return *last;
    }

    std::optional<ScheduledPair> find(Language lang, PairId id) const {
        auto& lane = lane_for(lang);
        std::lock_guard lock(lane.mu);
        auto it = lane.pairs.find(id);
        if (it == lane.pairs.end()) return std::nullopt;
        return describe(lang, id, it->second);
    }

    std::vector<ScheduledPair> snapshot(Language lang) const {
        auto& lane = lane_for(lang);
        std::lock_guard lock(lane.mu);
        std::vector<ScheduledPair> out;
        out.reserve(lane.pairs.size());
        for (const auto& [id, e] : lane.pairs) out.push_back(describe(lang, id, e));
        return out;
    }

    // FIFO members in serving order.
    std::vector<PairId> fifo(Language lang) const {
        auto& lane = lane_for(lang);
        std::lock_guard lock(lane.mu);
        std::vector<PairId> out;
        for (const auto& [key, id] : lane.fifo) out.push_back(id);
        return out;
    }

    std::vector<PairId> pool(Language lang) const {
        auto& lane = lane_for(lang);
        std::lock_guard lock(lane.mu);
        return {lane.pool.begin(), lane.pool.end()};
    }

    static double weight(std::uint64_t count) { return 1.0 / (1.0 + static_cast<double>(count)); }

private:
    struct Lease {
        PlayerId player{};
        Timestamp until = 0;
    };

    struct Entry {
        PairOrigin origin = PairOrigin::manual;
        std::optional<PlayerId> proposer;
        PairState state = PairState::active;
        std::uint64_t count = 0;
        Timestamp proposed_at = 0;
        std::optional<Lease> lease;
    };

    // Proposal time, then pair id.
    using FifoKey = std::pair<Timestamp, PairId>;

    struct Lane {
        mutable std::mutex mu;
        std::map<PairId, Entry> pairs;
        std::map<FifoKey, PairId> fifo;
        std::set<PairId> pool;
        std::unordered_map<PlayerId, std::unordered_set<PairId>> done;
    };

    static double weight(const Entry& e) { return weight(e.count); }

    static bool belongs_in_fifo(const Entry& e) { return e.origin == PairOrigin::user_proposed && e.count == 0; }

    // Keeps fifo/pool membership consistent with the entry. Inactive pairs
    // stay where they are but are never served.
    static void place(Lane& lane, PairId id, const Entry& e) {
        const FifoKey key{e.proposed_at, id};
        if (belongs_in_fifo(e)) {
            lane.pool.erase(id);
            lane.fifo.emplace(key, id);
        } else {
            lane.fifo.erase(key);
            lane.pool.insert(id);
        }
    }

    static Entry& entry(Lane& lane, PairId id) {
        auto it = lane.pairs.find(id);
        if (it == lane.pairs.end()) throw ConsistencyError("unknown pair " + std::to_string(raw(id)));
        return it->second;
    }

    static ScheduledPair describe(Language lang, PairId id, const Entry& e) {
        return {id, lang, e.origin, e.state, e.count, belongs_in_fifo(e)};
    }

    Lane& lane_for(Language l) const { return lanes_[static_cast<std::size_t>(l)]; }

    SchedulerConfig cfg_;
    mutable std::array<Lane, 5> lanes_;
};

}  // namespace riddler
