#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "riddler/corpus.hpp"
#include "riddler/error.hpp"
#include "riddler/pairgen.hpp"
#include "riddler/random.hpp"
#include "riddler/types.hpp"

namespace riddler {

inline constexpr int kDefaultK = 5;
inline constexpr int kMaxK = 5;

inline bool valid_k(long long k) { return k == 1 || k == 3 || k == 5; }

struct Riddle {
    RiddleId id{};
    PairId pair_id{};
    Language language = Language::en;
    std::string target;
    std::string foil;
    int k = kDefaultK;
    IdList sentence_ids;
    std::vector<std::string> display_sentences;
    std::array<std::string, 2> options;
    Timestamp created_at = 0;
    bool target_is_word_a = true;
    bool roles_swapped = false;  // the coin-flip role had too few sentences
};

// Order-independent fingerprint of a sentence selection.
inline std::uint64_t sentence_set_hash(const IdList& ids) {
    IdList sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (SentenceId id : sorted) {
        for (int b = 0; b < 4; ++b) {
            h ^= (id >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

struct RiddleOptions {
    bool strict_leakage_filter = false;
    // Returns true for selections this player has already been shown.
    std::function<bool(std::uint64_t)> already_seen;
    int resample_attempts = 16;
};

// Builds a riddle for `pair`. Roles come from a fair coin; when the chosen
// target has fewer than k eligible sentences the roles are swapped once.
// Throws NoRiddleError when neither role works; the caller defers the pair.
inline Riddle build_riddle(const WordPair& pair, int k, const CorpusIndex& index, Rng& rng,
                           const RiddleOptions& opt = {}) {
    if (!valid_k(k)) throw ValidationError("k must be 1, 3 or 5");
    if (pair.state != PairState::active) throw ValidationError("pair is not active");
    if (pair.language != index.language()) throw ConsistencyError("pair and corpus languages differ");

    Riddle r;
    r.pair_id = pair.id;
    r.language = pair.language;
    r.k = k;
    const bool a_first = rng.coin();
    for (int attempt = 0; attempt < 2; ++attempt) {
        const bool target_is_a = (attempt == 0) == a_first;
        const std::string& target = target_is_a ? pair.word_a : pair.word_b;
        const std::string& foil = target_is_a ? pair.word_b : pair.word_a;
        const IdList eligible = index.eligible(target, foil, opt.strict_leakage_filter);
        if (eligible.size() < static_cast<std::size_t>(k)) continue;
        IdList chosen;
        bool fresh = false;
        for (int s = 0; s < std::max(1, opt.resample_attempts); ++s) {
            chosen = sample_sentences(eligible, static_cast<std::size_t>(k), rng);
            if (!opt.already_seen || !opt.already_seen(sentence_set_hash(chosen))) {
                fresh = true;
                break;
            }
        }
        if (!fresh) continue;
        r.target = target;
        r.foil = foil;
        r.target_is_word_a = target_is_a;
        r.roles_swapped = attempt == 1;
        r.sentence_ids = std::move(chosen);
        for (SentenceId id : r.sentence_ids) r.display_sentences.push_back(blank(index.at(id), target));
        r.options = {r.target, r.foil};
        rng.shuffle(r.options.begin(), r.options.end());
        return r;
    }
    throw NoRiddleError("not enough eligible sentences for '" + pair.word_a + "' / '" + pair.word_b + "'");
}

}  // namespace riddler
