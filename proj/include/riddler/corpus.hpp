#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "riddler/error.hpp"
#include "riddler/random.hpp"
#include "riddler/text/stem.hpp"
#include "riddler/text/tokenize.hpp"
#include "riddler/text/unicode.hpp"
#include "riddler/types.hpp"

namespace riddler {

struct Sentence {
    SentenceId id = 0;
    Language language = Language::en;
    Genre genre = Genre::wikipedia;
    std::string raw_text;
    std::vector<std::string> tokens;
    std::vector<std::string> stems;
};

// Sentence ids carry their language in the top bits so ids from different
// language indexes never collide.
inline constexpr int kSentenceLangShift = 29;
inline constexpr SentenceId kSentenceSeqMask = (SentenceId{1} << kSentenceLangShift) - 1;

inline SentenceId make_sentence_id(Language lang, std::uint32_t seq) {
    return (static_cast<SentenceId>(lang) << kSentenceLangShift) | seq;
}
inline Language sentence_language(SentenceId id) { return static_cast<Language>(id >> kSentenceLangShift); }

namespace detail {

struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

template <class V>
using StringMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

}  // namespace detail

using IdList = std::vector<SentenceId>;

class CorpusIndex {
public:
    Language language() const { return language_; }
    std::size_t size() const { return sentences_.size(); }
    bool empty() const { return sentences_.empty(); }
    const std::vector<Sentence>& sentences() const { return sentences_; }

    const Sentence* find(SentenceId id) const {
        if (sentence_language(id) != language_) return nullptr;
        const std::uint32_t seq = id & kSentenceSeqMask;
        if (seq == 0 || seq > sentences_.size()) return nullptr;
        return &sentences_[seq - 1];
    }
    const Sentence& at(SentenceId id) const {
        const Sentence* s = find(id);
        if (!s) throw NotFoundError("no sentence " + std::to_string(id));
        return *s;
    }

    const IdList& with_token(std::string_view token) const { return lookup(token_index_, token); }
    const IdList& with_stem(std::string_view stem) const { return lookup(stem_index_, stem); }

    // Occurrence count of a token over the whole corpus; 0 when unseen.
    std::uint64_t count(std::string_view token) const {
        auto it = vocabulary_.find(token);
        return it == vocabulary_.end() ? 0 : it->second;
    }
    bool in_vocabulary(std::string_view token) const { return vocabulary_.contains(token); }
    const detail::StringMap<std::uint64_t>& vocabulary() const { return vocabulary_; }
    std::uint64_t token_total() const { return token_total_; }
    std::size_t genre_count(Genre g) const { return genre_counts_[static_cast<std::size_t>(g)]; }

    std::string stem(std::string_view token) const { return text::stem(token, language_); }

    // Sentences containing `target` and no token sharing the foil's stem.
    // With `strict`, sentences holding another inflection of the target
    // (same stem, different token) are dropped as well.
    IdList eligible(std::string_view target, std::string_view foil, bool strict = false) const {
        const IdList& base = with_token(target);
        if (base.empty()) return {};
        IdList out;
        const IdList& banned = with_stem(stem(foil));
        std::set_difference(base.begin(), base.end(), banned.begin(), banned.end(), std::back_inserter(out));
        if (strict) {
            const std::string target_stem = stem(target);
            std::erase_if(out, [&](SentenceId id) {
                const Sentence& s = at(id);
                for (std::size_t i = 0; i < s.tokens.size(); ++i)
                    if (s.stems[i] == target_stem && s.tokens[i] != target) return true;
                return false;
            });
        }
        return out;
    }

private:
    friend class CorpusBuilder;

    static const IdList& lookup(const detail::StringMap<IdList>& m, std::string_view key) {
        static const IdList kEmpty;
        auto it = m.find(key);
        return it == m.end() ? kEmpty : it->second;
    }

    Language language_ = Language::en;
    std::vector<Sentence> sentences_;
    detail::StringMap<IdList> token_index_;
    detail::StringMap<IdList> stem_index_;
    detail::StringMap<std::uint64_t> vocabulary_;
    std::uint64_t token_total_ = 0;
    std::array<std::size_t, 4> genre_counts_{};
};

using CorpusPtr = std::shared_ptr<const CorpusIndex>;

// Single-writer builder for one language. build() hands out an immutable
// index; the builder can keep ingesting and build again.
class CorpusBuilder {
public:
    explicit CorpusBuilder(Language lang) : index_(std::make_shared<CorpusIndex>()) { index_->language_ = lang; }

    Language language() const { return index_->language_; }
    std::size_t size() const { return index_->sentences_.size(); }

    // Returns false for blank lines, token-free lines and duplicates.
    bool add(std::string_view line, Genre genre) {
        std::string text = riddler::text::nfc(line);
        if (!raw_seen_.insert(text).second) return false;
        auto tokens = riddler::text::tokenize(text, index_->language_);
        if (tokens.empty()) {
            raw_seen_.erase(text);
            return false;
        }
        Sentence s;
        s.language = index_->language_;
        s.genre = genre;
        s.raw_text = std::move(text);
        s.stems.reserve(tokens.size());
        for (const auto& t : tokens) s.stems.push_back(cached_stem(t));
        s.tokens = std::move(tokens);
        append(std::move(s));
        return true;
    }

    std::size_t add_stream(std::istream& in, Genre genre, const std::string& source = "<stream>") {
        std::size_t added = 0;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!riddler::text::is_valid_utf8(line))
                throw IngestError(source + ":" + std::to_string(lineno) + ": invalid UTF-8");
            if (add(line, genre)) ++added;
        }
        if (in.bad()) throw IngestError(source + ": read error");
        return added;
    }

    std::size_t add_file(const std::string& path, Genre genre) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IngestError("cannot read " + path);
        return add_stream(in, genre, path);
    }

    // Inserts a fully formed sentence (used when loading snapshots).
    void add_prepared(Sentence s) {
        if (s.tokens.empty() || s.tokens.size() != s.stems.size())
            throw ConsistencyError("sentence " + std::to_string(s.id) + " has misaligned tokens and stems");
        if (!raw_seen_.insert(s.raw_text).second) return;
        append(std::move(s));
    }

    CorpusPtr build() const { return std::make_shared<const CorpusIndex>(*index_); }

private:
    const std::string& cached_stem(const std::string& token) {
        auto it = stem_cache_.find(token);
        if (it == stem_cache_.end())
            it = stem_cache_.emplace(token, riddler::text::stem(token, index_->language_)).first;
        return it->second;
    }

    void append(Sentence s) {
        CorpusIndex& ix = *index_;
        const auto seq = static_cast<std::uint32_t>(ix.sentences_.size() + 1);
        if (seq > kSentenceSeqMask) throw IngestError("corpus too large");
        s.id = make_sentence_id(ix.language_, seq);
        s.language = ix.language_;
        for (std::size_t i = 0; i < s.tokens.size(); ++i) {
            push_unique(ix.token_index_[s.tokens[i]], s.id);
            push_unique(ix.stem_index_[s.stems[i]], s.id);
            ++ix.vocabulary_[s.tokens[i]];
        }
        ix.token_total_ += s.tokens.size();
        ++ix.genre_counts_[static_cast<std::size_t>(s.genre)];
        ix.sentences_.push_back(std::move(s));
    }

    // Ids arrive in increasing order, so checking the tail keeps lists sorted
    // and duplicate-free.
    static void push_unique(IdList& v, SentenceId id) {
        if (v.empty() || v.back() != id) v.push_back(id);
    }

    std::shared_ptr<CorpusIndex> index_;
    std::unordered_set<std::string> raw_seen_;
    detail::StringMap<std::string> stem_cache_;
};

// k distinct ids drawn uniformly without replacement (partial Fisher-Yates).
inline IdList sample_sentences(const IdList& ids, std::size_t k, Rng& rng) {
    if (ids.size() < k)
        throw InsufficientContextError("need " + std::to_string(k) + " sentences, have " + std::to_string(ids.size()));
    IdList pool = ids;
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

// Line-oriented snapshot.
//
//   RIDDLER-CORPUS
//   version 1
//   language <code>
//   sentences <n>
//   <id> TAB <genre> TAB <escaped raw text> TAB <tokens> TAB <stems>
//
// Tokens and stems are space separated; they never contain whitespace.
inline constexpr std::string_view kSnapshotMagic = "RIDDLER-CORPUS";
inline constexpr int kSnapshotVersion = 1;

namespace detail {

inline std::string escape_field(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string unescape_field(std::string_view s, std::size_t line) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out += s[i];
            continue;
        }
        if (++i == s.size()) throw ParseError("dangling escape", line);
        switch (s[i]) {
            case '\\': out += '\\'; break;
            case 't': out += '\t'; break;
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            default: throw ParseError("bad escape", line);
        }
    }
    return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::string join(const std::vector<std::string>& v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

}  // namespace detail

inline void save_snapshot(const CorpusIndex& ix, std::ostream& out) {
    out << kSnapshotMagic << '\n'
        << "version " << kSnapshotVersion << '\n'
        << "language " << to_string(ix.language()) << '\n'
        << "sentences " << ix.size() << '\n';
    for (const auto& s : ix.sentences()) {
        out << s.id << '\t' << to_string(s.genre) << '\t' << detail::escape_field(s.raw_text) << '\t'
            << detail::join(s.tokens, ' ') << '\t' << detail::join(s.stems, ' ') << '\n';
    }
}

inline CorpusPtr load_snapshot(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto next = [&](std::string_view what) {
        if (!std::getline(in, line)) throw ParseError(std::string("truncated snapshot, expected ") + std::string(what), lineno + 1);
        ++lineno;
    };
    auto header = [&](std::string_view key) {
        next(key);
        if (!line.starts_with(key) || line.size() <= key.size() + 1 || line[key.size()] != ' ')
            throw ParseError("expected '" + std::string(key) + "'", lineno);
        return line.substr(key.size() + 1);
    };
    next("magic");
    if (line != kSnapshotMagic) throw ParseError("not a corpus snapshot", lineno);
    if (header("version") != std::to_string(kSnapshotVersion)) throw ParseError("unsupported snapshot version", lineno);
    const auto lang = try_parse_language(header("language"));
    if (!lang) throw ParseError("unknown language", lineno);
    std::size_t n = 0;
    try {
        n = std::stoull(header("sentences"));
    } catch (const std::exception&) {
        throw ParseError("bad sentence count", lineno);
    }
    CorpusBuilder b(*lang);
    for (std::size_t i = 0; i < n; ++i) {
        next("sentence");
        auto f = detail::split(line, '\t');
        if (f.size() != 5) throw ParseError("expected 5 fields", lineno);
        Sentence s;
        try {
            s.genre = parse_genre(f[1]);
        } catch (const Error&) {
            throw ParseError("unknown genre '" + f[1] + "'", lineno);
        }
        s.raw_text = detail::unescape_field(f[2], lineno);
        s.tokens = detail::split(f[3], ' ');
        s.stems = detail::split(f[4], ' ');
        if (s.tokens.size() != s.stems.size() || f[3].empty()) throw ParseError("misaligned tokens and stems", lineno);
        const std::size_t before = b.size();
        b.add_prepared(std::move(s));
        if (b.size() != before + 1 || std::to_string(make_sentence_id(*lang, static_cast<std::uint32_t>(b.size()))) != f[0])
            throw ParseError("sentence id out of sequence", lineno);
    }
    return b.build();
}

// Replaces every token equal to `target` with "___", keeping the original
// text between tokens.
inline constexpr std::string_view kBlank = "___";

inline std::string blank(const Sentence& s, std::string_view target) {
    const auto spans = text::tokenize_spans(s.raw_text, s.language);
    std::string out;
    std::size_t pos = 0;
    bool hit = false;
    for (const auto& t : spans) {
        if (t.text != target) continue;
        out.append(s.raw_text, pos, t.begin - pos);
        out += kBlank;
        pos = t.end;
        hit = true;
    }
    if (!hit) throw ConsistencyError("target '" + std::string(target) + "' not in sentence " + std::to_string(s.id));
    out.append(s.raw_text, pos, std::string::npos);
    return out;
}

}  // namespace riddler
