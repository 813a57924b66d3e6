#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "riddler/corpus.hpp"
#include "riddler/cstp/agreement.hpp"
#include "riddler/error.hpp"
#include "riddler/pairgen.hpp"
#include "riddler/random.hpp"
#include "riddler/riddle.hpp"
#include "riddler/scheduler.hpp"
#include "riddler/scoring.hpp"
#include "riddler/service/config.hpp"
#include "riddler/service/credentials.hpp"
#include "riddler/service/journal.hpp"
#include "riddler/text/tokenize.hpp"
#include "riddler/text/unicode.hpp"
#include "riddler/types.hpp"

namespace riddler::service {

using Clock = std::function<Timestamp()>;

inline Timestamp system_now() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

struct Profile {
    PlayerId id{};
    std::string username;
    Language language = Language::en;
    int k = 5;
    Timestamp created_at = 0;
};

struct ServedRiddle {
    RiddleId id{};
    int k = 5;
    std::vector<std::string> sentences;
    std::array<std::string, 2> options;
    Timestamp served_at = 0;
    std::optional<SessionId> competition;
};

struct AnswerResult {
    RiddleId riddle_id{};
    bool correct = false;
    double points = 0;
    std::string answer;
    double cracker_points = 0;
    std::optional<SessionId> competition;
    std::optional<double> competition_points;
};

// A repeated submission; carries the result of the first one.
class DuplicateSubmissionError : public ConflictError {
public:
    explicit DuplicateSubmissionError(AnswerResult first)
        : ConflictError("riddle already answered"), first_(std::move(first)) {}
    const AnswerResult& first() const noexcept { return first_; }

private:
    AnswerResult first_;
};

struct ProposalResult {
    std::optional<PairId> pair;
    std::vector<std::string> reasons;
    bool accepted() const { return pair.has_value(); }
};

struct PairSummary {
    PairId id{};
    Language language = Language::en;
    std::string word_a;
    std::string word_b;
    PairOrigin origin = PairOrigin::manual;
    PairState state = PairState::active;
    std::uint64_t annotations = 0;
    std::uint64_t correct = 0;
    Timestamp created_at = 0;
};

struct LeaderboardRow {
    std::string username;
    Language language = Language::en;
    double cracker_points = 0;
};

struct FriendView {
    std::string username;
    bool mutual = false;
};

enum class CompetitionState { open, running, finished };

inline std::string_view to_string(CompetitionState s) {
    switch (s) {
        case CompetitionState::open: return "open";
        case CompetitionState::running: return "running";
        case CompetitionState::finished: return "finished";
    }
    return "?";
}

struct Standing {
    std::string username;
    double points = 0;
    int served = 0;
    int answered = 0;
};

struct CompetitionView {
    SessionId id{};
    Language language = Language::en;
    int riddle_count = 0;
    CompetitionState state = CompetitionState::open;
    std::vector<Standing> standings;  // best first
    std::optional<std::string> summary;
    Timestamp created_at = 0;
};

inline constexpr int kMaxRiddleK = 5;
inline constexpr std::string_view kOptOutSetting = "opt_out_manual_pairs";

// Game state plus its event journal. Every change is written as one event
// and then applied; starting up replays the same events, so the in-memory
// state is always a fold of the journal.
class GameService {
public:
    GameService(ServiceConfig cfg, std::map<Language, CorpusPtr> corpora, Clock clock = system_now)
        : cfg_(std::move(cfg)),
          corpora_(std::move(corpora)),
          clock_(std::move(clock)),
          scheduler_(SchedulerConfig{cfg_.fifo_lease_ms}) {
        scoring_.fast_threshold_ms = cfg_.time_bonus_threshold_ms;
        scoring_.difficult_min_records = cfg_.min_annotations;
    }

    GameService(const GameService&) = delete;
    GameService& operator=(const GameService&) = delete;

    // Replays the file and keeps appending to it.
    void open_journal(const std::string& path) {
        std::lock_guard lock(mu_);
        journal_ = Journal::open(path, cfg_.fsync, [this](const nlohmann::json& ev) { apply(ev); });
    }

    // Replays events from a stream without attaching a journal (offline tools).
    void replay(std::istream& in) {
        std::lock_guard lock(mu_);
        read_events(in, [this](const nlohmann::json& ev) { apply(ev); });
    }

    // Called after each event is applied, under the state lock.
    void set_observer(std::function<void(const nlohmann::json&)> f) {
        std::lock_guard lock(mu_);
        observer_ = std::move(f);
    }

    const ServiceConfig& config() const { return cfg_; }
    const CorpusIndex* corpus(Language l) const {
        auto it = corpora_.find(l);
        return it == corpora_.end() ? nullptr : it->second.get();
    }
    const ScoringConfig& scoring() const { return scoring_; }

    // ------------------------------------------------------------ accounts

    PlayerId register_player(const std::string& username, const std::string& password, Language language) {
        validate_username(username);
        if (password.size() < 6) throw ValidationError("password must have at least 6 characters");
        if (!language_enabled(language)) throw ValidationError("language not offered: " + std::string(to_string(language)));
        {
            std::lock_guard lock(mu_);
            if (by_name_.contains(username)) throw ConflictError("username taken");
        }
        const PasswordHash pw = hash_password(password, cfg_.password_iterations);
        std::lock_guard lock(mu_);
        if (by_name_.contains(username)) throw ConflictError("username taken");
        const PlayerId id{next_player_};
        commit({{"type", "player"},
                {"id", raw(id)},
                {"username", username},
                {"salt", pw.salt},
                {"hash", pw.hash},
                {"iterations", pw.iterations},
                {"language", to_string(language)},
                {"k", cfg_.default_k},
                {"created_at", clock_()}});
        return id;
    }

    std::string login(const std::string& username, const std::string& password) {
        PasswordHash pw;
        PlayerId id{};
        {
            std::lock_guard lock(mu_);
            auto it = by_name_.find(username);
            if (it == by_name_.end()) throw AuthError("bad username or password");
            id = it->second;
            pw = players_.at(id).password;
        }
        if (!verify_password(password, pw)) throw AuthError("bad username or password");
        std::string token = random_hex(24);
        std::lock_guard lock(mu_);
        tokens_[token] = id;
        return token;
    }

    void logout(const std::string& token) {
        std::lock_guard lock(mu_);
        tokens_.erase(token);
    }

    PlayerId authenticate(const std::string& token) const {
        std::lock_guard lock(mu_);
        auto it = tokens_.find(token);
        if (it == tokens_.end()) throw AuthError("missing or unknown session token");
        return it->second;
    }

    Profile profile(PlayerId id) const {
        std::lock_guard lock(mu_);
        const Player& p = player(id);
        return {p.id, p.username, p.language, p.k, p.created_at};
    }

    std::optional<PlayerId> find_player(const std::string& username) const {
        std::lock_guard lock(mu_);
        auto it = by_name_.find(username);
        if (it == by_name_.end()) return std::nullopt;
        return it->second;
    }

    // Accepts k_setting and language. The manual-pair opt-out key is
    // reserved and rejected.
    Profile update_settings(PlayerId id, const nlohmann::json& patch) {
        if (!patch.is_object()) throw ValidationError("settings must be an object");
        nlohmann::json ev{{"type", "settings"}, {"player", raw(id)}};
        for (const auto& [key, value] : patch.items()) {
            if (key == kOptOutSetting) throw ValidationError("setting '" + key + "' is not supported");
            if (key == "k_setting") {
                if (!value.is_number_integer() || !valid_k(value.get<long long>()))
                    throw ValidationError("k_setting must be 1, 3 or 5");
                ev["k"] = value.get<int>();
            } else if (key == "language") {
                if (!value.is_string()) throw ValidationError("language must be a string");
                auto l = try_parse_language(value.get<std::string>());
                if (!l || !language_enabled(*l)) throw ValidationError("language not offered");
                ev["language"] = to_string(*l);
            } else {
                throw ValidationError("unknown setting '" + key + "'");
            }
        }
        std::lock_guard lock(mu_);
        player(id);
        if (ev.size() > 2) commit(std::move(ev));
        const Player& p = player(id);
        return {p.id, p.username, p.language, p.k, p.created_at};
    }

    // ------------------------------------------------------------ pairs

    // Adds a curated or mined pair. Existing pairs are returned as is;
    // invalid ones come back with reasons.
    ProposalResult add_pair(Language lang, const std::string& a, const std::string& b, PairOrigin origin) {
        if (origin == PairOrigin::user_proposed) throw ValidationError("use propose_pair for player pairs");
        const CorpusIndex* ix = corpus(lang);
        auto reasons = pair_problems(lang, a, b, ix);
        std::lock_guard lock(mu_);
        if (auto existing = find_pair(lang, a, b)) return {*existing, {}};
        if (!reasons.empty()) return {std::nullopt, reasons};
        return {insert_pair(lang, a, b, origin, std::nullopt), {}};
    }

    ProposalResult propose_pair(PlayerId proposer, Language lang, const std::string& word_a, const std::string& word_b) {
        const CorpusIndex* ix = corpus(lang);
        if (!ix || !language_enabled(lang)) throw ValidationError("language not offered: " + std::string(to_string(lang)));
        const std::string a = text::lowercase(text::nfc(word_a));
        const std::string b = text::lowercase(text::nfc(word_b));
        std::vector<std::string> reasons;
        for (const auto& w : {a, b}) {
            auto toks = text::tokenize(w, lang);
            if (!w.empty() && (toks.size() != 1 || toks[0] != w)) reasons.push_back("'" + w + "' is not a single word");
        }
        if (reasons.empty()) {
            reasons = pair_problems(lang, a, b, ix);
            if (reasons.empty()) {
                const auto usable = std::max(ix->eligible(a, b, cfg_.strict_leakage_filter).size(),
                                             ix->eligible(b, a, cfg_.strict_leakage_filter).size());
                if (usable < static_cast<std::size_t>(kMaxRiddleK))
                    reasons.push_back("fewer than " + std::to_string(kMaxRiddleK) + " usable sentences in either role");
            }
        }
        std::lock_guard lock(mu_);
        player(proposer);
        if (reasons.empty() && find_pair(lang, a, b)) reasons.push_back("pair already exists");
        if (!reasons.empty()) return {std::nullopt, reasons};
        return {insert_pair(lang, a, b, PairOrigin::user_proposed, proposer), {}};
    }

    std::vector<PairSummary> pairs_of(PlayerId proposer) const {
        std::lock_guard lock(mu_);
        std::vector<PairSummary> out;
        for (const auto& [id, p] : pairs_)
            if (p.pair.proposer && *p.pair.proposer == proposer) out.push_back(summary(p));
        return out;
    }

    std::vector<PairSummary> all_pairs() const {
        std::lock_guard lock(mu_);
        std::vector<PairSummary> out;
        for (const auto& [id, p] : pairs_) out.push_back(summary(p));
        return out;
    }

    // Lines "word_a TAB word_b TAB origin"; '#' starts a comment.
    std::vector<DroppedPair> load_pair_file(const std::string& path, Language lang) {
        std::ifstream in(path);
        if (!in) throw IngestError("cannot read " + path);
        std::vector<DroppedPair> dropped;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            auto f = riddler::detail::split(line, '\t');
            if (f.size() < 3) throw ParseError(path + ": expected word_a, word_b, origin", lineno);
            auto origin = try_parse_origin(f[2]);
            if (!origin || *origin == PairOrigin::user_proposed)
                throw ParseError(path + ": origin must be manual or embedding_mined", lineno);
            auto r = add_pair(lang, f[0], f[1], *origin);
            if (!r.accepted()) dropped.push_back({f[0], f[1], join_reasons(r.reasons)});
        }
        return dropped;
    }

    // ------------------------------------------------------------ riddles

    ServedRiddle serve_riddle(PlayerId pid, std::optional<Language> requested = std::nullopt,
                              std::optional<SessionId> competition = std::nullopt) {
        Language lang{};
        int k = 5;
        RiddleId rid{};
        {
            std::lock_guard lock(mu_);
            const Player& p = player(pid);
            lang = requested.value_or(p.language);
            k = p.k;
            if (competition) {
                const Competition& c = competition_ref(*competition);
                if (!c.participants.contains(pid)) throw ForbiddenError("not a participant");
                if (c.state == CompetitionState::finished) throw ConflictError("competition is finished");
                if (c.served.at(pid) >= c.riddle_count) throw ConflictError("all competition riddles served");
                lang = c.language;
            }
            rid = RiddleId{next_riddle_++};
        }
        const CorpusIndex* ix = corpus(lang);
        if (!ix || !language_enabled(lang)) throw NotFoundError("language not offered: " + std::string(to_string(lang)));

        Rng rng(Rng::mix(cfg_.seed, raw(rid)));
        std::unordered_set<PairId> skip;
        for (;;) {
            const Timestamp now = clock_();
            const PairId pair_id = scheduler_.next_pair(lang, pid, rng, now, &skip);
            WordPair pair;
            std::set<std::uint64_t> seen;
            PairDifficulty difficulty{};
            {
                std::lock_guard lock(mu_);
                const PairRec& pr = pairs_.at(pair_id);
                pair = pr.pair;
                difficulty = classify_counts(pr.count, pr.correct, scoring_);
                if (auto it = seen_.find({pid, pair_id}); it != seen_.end()) seen = it->second;
            }
            RiddleOptions opt;
            opt.strict_leakage_filter = cfg_.strict_leakage_filter;
            opt.already_seen = [&](std::uint64_t h) { return seen.contains(h); };
            Riddle r;
            try {
                r = build_riddle(pair, k, *ix, rng, opt);
            } catch (const NoRiddleError&) {
                scheduler_.release(lang, pair_id, pid);
                skip.insert(pair_id);
                const bool enough = std::max(ix->eligible(pair.word_a, pair.word_b, opt.strict_leakage_filter).size(),
                                             ix->eligible(pair.word_b, pair.word_a, opt.strict_leakage_filter).size()) >=
                                    static_cast<std::size_t>(k);
                if (!enough) {
                    std::lock_guard lock(mu_);
                    if (pairs_.at(pair_id).pair.state == PairState::active)
                        commit({{"type", "pair_state"}, {"id", raw(pair_id)}, {"state", "deferred"}});
                }
                continue;
            }
            r.id = rid;
            r.created_at = now;
            std::lock_guard lock(mu_);
            if (competition) {
                const Competition& c = competition_ref(*competition);
                if (c.state == CompetitionState::finished || c.served.at(pid) >= c.riddle_count) {
                    scheduler_.release(lang, pair_id, pid);
                    throw ConflictError("competition changed while serving");
                }
            }
            commit({{"type", "riddle"},
                    {"id", raw(rid)},
                    {"player", raw(pid)},
                    {"pair", raw(pair_id)},
                    {"language", to_string(lang)},
                    {"target", r.target},
                    {"foil", r.foil},
                    {"k", r.k},
                    {"sentences", r.sentence_ids},
                    {"options", r.options},
                    {"served_at", now},
                    {"difficulty", to_string(difficulty)},
                    {"roles_swapped", r.roles_swapped},
                    {"competition", competition ? nlohmann::json(raw(*competition)) : nlohmann::json(nullptr)}});
            return {rid, r.k, r.display_sentences, r.options, now, competition};
        }
    }

    AnswerResult submit_answer(PlayerId pid, RiddleId rid, const std::string& choice) {
        std::lock_guard lock(mu_);
        player(pid);
        if (auto it = answered_.find(rid); it != answered_.end()) {
            if (it->second.player != pid) throw NotFoundError("unknown riddle");
            throw DuplicateSubmissionError(it->second.result);
        }
        auto it = pending_.find(rid);
        if (it == pending_.end() || it->second.player != pid) throw NotFoundError("unknown riddle");
        const Pending& p = it->second;
        const Timestamp now = clock_();
        if (now - p.served_at > cfg_.pending_expiry_ms) {
            scheduler_.release(p.language, p.pair, pid);
            throw NotFoundError("riddle expired");
        }
        if (choice != p.options[0] && choice != p.options[1]) throw ValidationError("choice is not one of the options");
        const bool correct = choice == p.target;
        const std::int64_t elapsed = std::max<std::int64_t>(0, now - p.served_at);
        const double points = score_annotation(correct, elapsed, p.k, p.difficulty, scoring_);
        const PairRec& pr = pairs_.at(p.pair);
        commit({{"type", "annotation"},
                {"id", next_annotation_},
                {"riddle", raw(rid)},
                {"player", raw(pid)},
                {"pair", raw(p.pair)},
                {"language", to_string(p.language)},
                {"origin", to_string(pr.pair.origin)},
                {"choice", choice},
                {"correct", correct},
                {"elapsed_ms", elapsed},
                {"k", p.k},
                {"points", points},
                {"timestamp", now}});
        return answered_.at(rid).result;
    }

    PlayerScores scores(PlayerId id) const {
        std::lock_guard lock(mu_);
        const Player& p = player(id);
        PlayerScores s;
        s.player_id = id;
        s.cracker_points = p.cracker_points;
        s.blanker_annotation_count = p.blanker_total;
        s.blanker_success_rate = blanker_rate(p.blanker_total, p.blanker_total - p.blanker_correct);
        return s;
    }

    // Highest points first, older accounts first on ties.
    std::vector<LeaderboardRow> leaderboard(Language lang, std::size_t limit) const {
        std::lock_guard lock(mu_);
        std::vector<const Player*> ps;
        for (const auto& [id, p] : players_)
            if (p.language == lang) ps.push_back(&p);
        std::sort(ps.begin(), ps.end(), [](const Player* x, const Player* y) {
            if (x->cracker_points != y->cracker_points) return x->cracker_points > y->cracker_points;
            if (x->created_at != y->created_at) return x->created_at < y->created_at;
            return x->id < y->id;
        });
        std::vector<LeaderboardRow> out;
        for (std::size_t i = 0; i < ps.size() && i < limit; ++i)
            out.push_back({ps[i]->username, ps[i]->language, ps[i]->cracker_points});
        return out;
    }

    // ------------------------------------------------------------ friends

    FriendView add_friend(PlayerId id, const std::string& username) {
        std::lock_guard lock(mu_);
        const Player& me = player(id);
        auto it = by_name_.find(username);
        if (it == by_name_.end()) throw NotFoundError("no such player");
        if (it->second == id) throw ValidationError("cannot befriend yourself");
        if (!me.friends.contains(it->second)) commit({{"type", "friend"}, {"player", raw(id)}, {"friend", raw(it->second)}});
        return {username, players_.at(it->second).friends.contains(id)};
    }

    std::vector<FriendView> friends(PlayerId id) const {
        std::lock_guard lock(mu_);
        std::vector<FriendView> out;
        for (PlayerId f : player(id).friends) {
            const Player& other = players_.at(f);
            out.push_back({other.username, other.friends.contains(id)});
        }
        return out;
    }

    // ------------------------------------------------------------ competitions

    SessionId create_competition(PlayerId creator, const std::vector<std::string>& friend_usernames, int riddle_count) {
        if (riddle_count < 1) throw ValidationError("riddle_count must be at least 1");
        if (friend_usernames.empty()) throw ValidationError("a competition needs at least one friend");
        std::lock_guard lock(mu_);
        const Player& me = player(creator);
        std::set<PlayerId> participants{creator};
        for (const auto& name : friend_usernames) {
            auto it = by_name_.find(name);
            if (it == by_name_.end()) throw NotFoundError("no such player: " + name);
            const PlayerId f = it->second;
            if (f == creator) throw ValidationError("cannot invite yourself");
            if (!me.friends.contains(f) || !players_.at(f).friends.contains(creator))
                throw ForbiddenError(name + " is not a mutual friend");
            participants.insert(f);
        }
        const SessionId id{next_competition_};
        nlohmann::json ids = nlohmann::json::array();
        for (PlayerId p : participants) ids.push_back(raw(p));
        commit({{"type", "competition"},
                {"id", raw(id)},
                {"creator", raw(creator)},
                {"participants", ids},
                {"language", to_string(me.language)},
                {"riddle_count", riddle_count},
                {"created_at", clock_()}});
        return id;
    }

    CompetitionView competition(PlayerId viewer, SessionId id) const {
        std::lock_guard lock(mu_);
        const Competition& c = competition_ref(id);
        if (!c.participants.contains(viewer)) throw ForbiddenError("not a participant");
        return view(c);
    }

    CompetitionView close_competition(PlayerId by, SessionId id) {
        std::lock_guard lock(mu_);
        const Competition& c = competition_ref(id);
        if (!c.participants.contains(by)) throw ForbiddenError("not a participant");
        if (c.state != CompetitionState::finished)
            commit({{"type", "competition_closed"}, {"id", raw(id)}, {"at", clock_()}});
        return view(competition_ref(id));
    }

    // ------------------------------------------------------------ data access

    std::vector<AnnotationRecord> annotation_log() const {
        std::lock_guard lock(mu_);
        return log_;
    }

    void export_log(std::ostream& out) const {
        std::lock_guard lock(mu_);
        write_log(out, log_);
    }

    std::optional<cstp::RiddleView> riddle_view(RiddleId id) const {
        std::lock_guard lock(mu_);
        auto it = riddles_.find(id);
        if (it == riddles_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t pending_count() const {
        std::lock_guard lock(mu_);
        return pending_.size();
    }

    std::vector<ScheduledPair> queue_state(Language lang) const { return scheduler_.snapshot(lang); }
    std::vector<PairId> fifo(Language lang) const { return scheduler_.fifo(lang); }

    // Scores keyed by username, for comparisons in tests and tools.
    std::map<std::string, PlayerScores> all_scores() const {
        std::map<std::string, PlayerScores> out;
        std::vector<PlayerId> ids;
        {
            std::lock_guard lock(mu_);
            for (const auto& [id, p] : players_) ids.push_back(id);
        }
        for (PlayerId id : ids) out[profile(id).username] = scores(id);
        return out;
    }

private:
    struct Player {
        PlayerId id{};
        std::string username;
        PasswordHash password;
        Language language = Language::en;
        int k = 5;
        Timestamp created_at = 0;
        std::set<PlayerId> friends;
        double cracker_points = 0;
        std::uint64_t blanker_total = 0;
        std::uint64_t blanker_correct = 0;
    };

    struct PairRec {
        WordPair pair;
        std::uint64_t count = 0;
        std::uint64_t correct = 0;
    };

    struct Pending {
        PlayerId player{};
        PairId pair{};
        Language language = Language::en;
        std::string target;
        std::array<std::string, 2> options;
        int k = 5;
        Timestamp served_at = 0;
        PairDifficulty difficulty = PairDifficulty::normal;
        std::optional<SessionId> competition;
    };

    struct Answered {
        PlayerId player{};
        AnswerResult result;
    };

    struct Competition {
        SessionId id{};
        PlayerId creator{};
        std::set<PlayerId> participants;
        Language language = Language::en;
        int riddle_count = 0;
        CompetitionState state = CompetitionState::open;
        std::map<PlayerId, double> points;
        std::map<PlayerId, int> served;
        std::map<PlayerId, int> answered;
        Timestamp created_at = 0;
        std::optional<std::string> summary;
    };

    struct SeenKey {
        PlayerId player;
        PairId pair;
        bool operator<(const SeenKey& o) const { return std::tie(player, pair) < std::tie(o.player, o.pair); }
    };

    static void validate_username(const std::string& u) {
        if (u.empty() || u.size() > 32) throw ValidationError("username must have 1 to 32 characters");
        for (unsigned char c : u)
            if (!(std::isalnum(c) || c == '_' || c == '-' || c == '.'))
                throw ValidationError("username may contain letters, digits, '_', '-' and '.'");
    }

    bool language_enabled(Language l) const {
        return std::find(cfg_.languages.begin(), cfg_.languages.end(), l) != cfg_.languages.end();
    }

    const Player& player(PlayerId id) const {
        auto it = players_.find(id);
        if (it == players_.end()) throw AuthError("unknown player");
        return it->second;
    }

    const Competition& competition_ref(SessionId id) const {
        auto it = competitions_.find(id);
        if (it == competitions_.end()) throw NotFoundError("unknown competition");
        return it->second;
    }

    std::optional<PairId> find_pair(Language lang, const std::string& a, const std::string& b) const {
        auto it = pair_keys_.find(pair_key(lang, a, b));
        if (it == pair_keys_.end()) return std::nullopt;
        return it->second;
    }

    static std::string pair_key(Language lang, const std::string& a, const std::string& b) {
        const auto& [lo, hi] = std::minmax(a, b);
        return std::string(to_string(lang)) + '\t' + lo + '\t' + hi;
    }

    PairId insert_pair(Language lang, const std::string& a, const std::string& b, PairOrigin origin,
                       std::optional<PlayerId> proposer) {
        const PairId id{next_pair_};
        commit({{"type", "pair"},
                {"id", raw(id)},
                {"language", to_string(lang)},
                {"word_a", a},
                {"word_b", b},
                {"origin", to_string(origin)},
                {"proposer", proposer ? nlohmann::json(raw(*proposer)) : nlohmann::json(nullptr)},
                {"state", "active"},
                {"created_at", clock_()}});
        return id;
    }

    static PairSummary summary(const PairRec& p) {
        return {p.pair.id,    p.pair.language, p.pair.word_a, p.pair.word_b,       p.pair.origin,
                p.pair.state, p.count,         p.correct,     p.pair.created_at};
    }

    CompetitionView view(const Competition& c) const {
        CompetitionView v;
        v.id = c.id;
        v.language = c.language;
        v.riddle_count = c.riddle_count;
        v.state = c.state;
        v.summary = c.summary;
        v.created_at = c.created_at;
        v.standings = standings(c);
        return v;
    }

    std::vector<Standing> standings(const Competition& c) const {
        std::vector<std::pair<PlayerId, Standing>> rows;
        for (PlayerId p : c.participants)
            rows.push_back({p, {players_.at(p).username, c.points.at(p), c.served.at(p), c.answered.at(p)}});
        std::stable_sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
            if (x.second.points != y.second.points) return x.second.points > y.second.points;
            return players_.at(x.first).created_at < players_.at(y.first).created_at;
        });
        std::vector<Standing> out;
        for (auto& [id, s] : rows) out.push_back(std::move(s));
        return out;
    }

    std::string competition_summary(const Competition& c) const {
        const auto rows = standings(c);
        std::ostringstream out;
        out << "Competition #" << raw(c.id) << " (" << to_string(c.language) << ", " << c.riddle_count
            << " riddles each): ";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) out << ", ";
            out << rows[i].username << ' ' << format_points(rows[i].points);
        }
        const bool tie = rows.size() > 1 && rows[0].points == rows[1].points;
        out << (tie ? ". It's a tie!" : ". Winner: " + rows[0].username + '!');
        return out.str();
    }

    static std::string format_points(double p) {
        std::ostringstream s;
        s.setf(std::ios::fixed);
        s.precision(1);
        s << p;
        return s.str();
    }

    void commit(nlohmann::json ev) {
        journal_.append(ev);
        apply(ev);
    }

    // The only place state changes. Must stay deterministic: replay feeds
    // the same events through here.
    void apply(const nlohmann::json& ev) {
        try {
            apply_event(ev);
        } catch (const nlohmann::json::exception& e) {
            throw ConsistencyError(std::string("malformed event: ") + e.what());
        }
        if (observer_) observer_(ev);
    }

    void apply_event(const nlohmann::json& ev) {
        const std::string type = ev.at("type").get<std::string>();
        if (type == "player") {
            Player p;
            p.id = PlayerId{ev.at("id").get<std::uint64_t>()};
            p.username = ev.at("username").get<std::string>();
            p.password = {ev.at("salt").get<std::string>(), ev.at("hash").get<std::string>(), ev.at("iterations").get<int>()};
            p.language = parse_language(ev.at("language").get<std::string>());
            p.k = ev.at("k").get<int>();
            p.created_at = ev.at("created_at").get<Timestamp>();
            if (players_.contains(p.id) || by_name_.contains(p.username)) throw ConsistencyError("duplicate player");
            by_name_[p.username] = p.id;
            next_player_ = std::max(next_player_, raw(p.id) + 1);
            players_.emplace(p.id, std::move(p));
        } else if (type == "settings") {
            Player& p = mutable_player(ev.at("player"));
            if (ev.contains("k")) p.k = ev.at("k").get<int>();
            if (ev.contains("language")) p.language = parse_language(ev.at("language").get<std::string>());
        } else if (type == "friend") {
            Player& p = mutable_player(ev.at("player"));
            const PlayerId f{ev.at("friend").get<std::uint64_t>()};
            if (!players_.contains(f)) throw ConsistencyError("unknown friend");
            p.friends.insert(f);
        } else if (type == "pair") {
            PairRec r;
            r.pair.id = PairId{ev.at("id").get<std::uint64_t>()};
            r.pair.language = parse_language(ev.at("language").get<std::string>());
            r.pair.word_a = ev.at("word_a").get<std::string>();
            r.pair.word_b = ev.at("word_b").get<std::string>();
            auto origin = try_parse_origin(ev.at("origin").get<std::string>());
            if (!origin) throw ConsistencyError("bad pair origin");
            r.pair.origin = *origin;
            if (!ev.at("proposer").is_null()) r.pair.proposer = PlayerId{ev.at("proposer").get<std::uint64_t>()};
            r.pair.state = parse_pair_state(ev.at("state").get<std::string>());
            r.pair.created_at = ev.at("created_at").get<Timestamp>();
            if (pairs_.contains(r.pair.id)) throw ConsistencyError("duplicate pair");
            pair_keys_[pair_key(r.pair.language, r.pair.word_a, r.pair.word_b)] = r.pair.id;
            next_pair_ = std::max(next_pair_, raw(r.pair.id) + 1);
            scheduler_.add_pair(r.pair, 0);
            pairs_.emplace(r.pair.id, std::move(r));
        } else if (type == "pair_state") {
            PairRec& r = mutable_pair(ev.at("id"));
            r.pair.state = parse_pair_state(ev.at("state").get<std::string>());
            scheduler_.set_state(r.pair.language, r.pair.id, r.pair.state);
        } else if (type == "riddle") {
            const RiddleId id{ev.at("id").get<std::uint64_t>()};
            Pending p;
            p.player = PlayerId{ev.at("player").get<std::uint64_t>()};
            p.pair = PairId{ev.at("pair").get<std::uint64_t>()};
            p.language = parse_language(ev.at("language").get<std::string>());
            p.target = ev.at("target").get<std::string>();
            p.options = ev.at("options").get<std::array<std::string, 2>>();
            p.k = ev.at("k").get<int>();
            p.served_at = ev.at("served_at").get<Timestamp>();
            p.difficulty = ev.at("difficulty").get<std::string>() == "known_difficult" ? PairDifficulty::known_difficult
                                                                                      : PairDifficulty::normal;
            if (!ev.at("competition").is_null()) p.competition = SessionId{ev.at("competition").get<std::uint64_t>()};
            if (riddles_.contains(id)) throw ConsistencyError("duplicate riddle");
            player(p.player);
            pairs_.at(p.pair);
            cstp::RiddleView rv;
            rv.language = p.language;
            rv.target = p.target;
            rv.foil = ev.at("foil").get<std::string>();
            rv.sentence_ids = ev.at("sentences").get<IdList>();
            seen_[{p.player, p.pair}].insert(sentence_set_hash(rv.sentence_ids));
            riddles_.emplace(id, std::move(rv));
            if (p.competition) {
                Competition& c = competitions_.at(*p.competition);
                ++c.served.at(p.player);
                if (c.state == CompetitionState::open) c.state = CompetitionState::running;
            }
            next_riddle_ = std::max(next_riddle_, raw(id) + 1);
            pending_.emplace(id, std::move(p));
        } else if (type == "annotation") {
            AnnotationRecord rec;
            rec.id = AnnotationId{ev.at("id").get<std::uint64_t>()};
            rec.riddle_id = RiddleId{ev.at("riddle").get<std::uint64_t>()};
            rec.player_id = PlayerId{ev.at("player").get<std::uint64_t>()};
            rec.pair_id = PairId{ev.at("pair").get<std::uint64_t>()};
            rec.language = parse_language(ev.at("language").get<std::string>());
            rec.pair_origin = *try_parse_origin(ev.at("origin").get<std::string>());
            rec.choice = ev.at("choice").get<std::string>();
            rec.correct = ev.at("correct").get<bool>();
            rec.elapsed_ms = ev.at("elapsed_ms").get<std::int64_t>();
            rec.k = ev.at("k").get<int>();
            rec.points = ev.at("points").get<double>();
            rec.timestamp = ev.at("timestamp").get<Timestamp>();
            auto pit = pending_.find(rec.riddle_id);
            if (pit == pending_.end() || answered_.contains(rec.riddle_id))
                throw ConsistencyError("annotation for a riddle that is not pending");
            const Pending pend = pit->second;
            pending_.erase(pit);
            Player& pl = players_.at(rec.player_id);
            pl.cracker_points += rec.points;
            PairRec& pr = pairs_.at(rec.pair_id);
            ++pr.count;
            pr.correct += rec.correct;
            if (pr.pair.proposer) {
                Player& owner = players_.at(*pr.pair.proposer);
                ++owner.blanker_total;
                owner.blanker_correct += rec.correct;
            }
            scheduler_.on_annotation_committed(rec.language, rec.pair_id, rec.player_id, pr.count);
            AnswerResult res;
            res.riddle_id = rec.riddle_id;
            res.correct = rec.correct;
            res.points = rec.points;
            res.answer = pend.target;
            res.cracker_points = pl.cracker_points;
            if (pend.competition) {
                Competition& c = competitions_.at(*pend.competition);
                res.competition = c.id;
                if (c.state != CompetitionState::finished) {
                    c.points.at(rec.player_id) += rec.points;
                    ++c.answered.at(rec.player_id);
                    bool done = true;
                    for (PlayerId p : c.participants) done = done && c.answered.at(p) >= c.riddle_count;
                    if (done) finish(c);
                }
                res.competition_points = c.points.at(rec.player_id);
            }
            answered_.emplace(rec.riddle_id, Answered{rec.player_id, res});
            next_annotation_ = std::max(next_annotation_, raw(rec.id) + 1);
            log_.push_back(std::move(rec));
        } else if (type == "competition") {
            Competition c;
            c.id = SessionId{ev.at("id").get<std::uint64_t>()};
            c.creator = PlayerId{ev.at("creator").get<std::uint64_t>()};
            for (const auto& p : ev.at("participants")) {
                const PlayerId id{p.get<std::uint64_t>()};
                player(id);
                c.participants.insert(id);
                c.points[id] = 0;
                c.served[id] = 0;
                c.answered[id] = 0;
            }
            c.language = parse_language(ev.at("language").get<std::string>());
            c.riddle_count = ev.at("riddle_count").get<int>();
            c.created_at = ev.at("created_at").get<Timestamp>();
            next_competition_ = std::max(next_competition_, raw(c.id) + 1);
            competitions_.emplace(c.id, std::move(c));
        } else if (type == "competition_closed") {
            auto it = competitions_.find(SessionId{ev.at("id").get<std::uint64_t>()});
            if (it == competitions_.end()) throw ConsistencyError("unknown competition");
            if (it->second.state != CompetitionState::finished) finish(it->second);
        } else {
            throw ConsistencyError("unknown event type '" + type + "'");
        }
    }

    void finish(Competition& c) {
        c.state = CompetitionState::finished;
        c.summary = competition_summary(c);
    }

    Player& mutable_player(const nlohmann::json& id) {
        auto it = players_.find(PlayerId{id.get<std::uint64_t>()});
        if (it == players_.end()) throw ConsistencyError("unknown player");
        return it->second;
    }

    PairRec& mutable_pair(const nlohmann::json& id) {
        auto it = pairs_.find(PairId{id.get<std::uint64_t>()});
        if (it == pairs_.end()) throw ConsistencyError("unknown pair");
        return it->second;
    }

    ServiceConfig cfg_;
    std::map<Language, CorpusPtr> corpora_;
    Clock clock_;
    ScoringConfig scoring_;
    Scheduler scheduler_;

    mutable std::mutex mu_;
    Journal journal_;
    std::function<void(const nlohmann::json&)> observer_;

    std::map<PlayerId, Player> players_;
    std::unordered_map<std::string, PlayerId> by_name_;
    std::unordered_map<std::string, PlayerId> tokens_;
    std::map<PairId, PairRec> pairs_;
    std::unordered_map<std::string, PairId> pair_keys_;
    std::map<RiddleId, Pending> pending_;
    std::map<RiddleId, Answered> answered_;
    std::map<RiddleId, cstp::RiddleView> riddles_;
    std::map<SeenKey, std::set<std::uint64_t>> seen_;
    std::map<SessionId, Competition> competitions_;
    std::vector<AnnotationRecord> log_;

    std::uint64_t next_player_ = 1;
    std::uint64_t next_pair_ = 1;
    std::uint64_t next_riddle_ = 1;
    std::uint64_t next_annotation_ = 1;
    std::uint64_t next_competition_ = 1;
};

}  // namespace riddler::service
