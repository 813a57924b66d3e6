#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "riddler/corpus.hpp"
#include "riddler/error.hpp"
#include "riddler/random.hpp"
#include "riddler/text/stem.hpp"
#include "riddler/text/unicode.hpp"
#include "riddler/types.hpp"

namespace riddler {

struct WordPair {
    PairId id{};
    Language language = Language::en;
    std::string word_a;
    std::string word_b;
    PairOrigin origin = PairOrigin::manual;
    std::optional<PlayerId> proposer;
    PairState state = PairState::active;
    Timestamp created_at = 0;
};

struct DroppedPair {
    std::string word_a;
    std::string word_b;
    std::string reason;
};

struct PairBatch {
    std::vector<WordPair> pairs;
    std::vector<DroppedPair> dropped;
    bool shortfall = false;
};

// Reasons a pair cannot become a riddle; empty when it can. The vocabulary
// check is skipped without an index.
inline std::vector<std::string> pair_problems(Language lang, std::string_view a, std::string_view b,
                                              const CorpusIndex* index = nullptr) {
    std::vector<std::string> out;
    if (a.empty() || b.empty()) {
        out.emplace_back("empty word");
        return out;
    }
    if (a == b) {
        out.emplace_back("identical words");
        return out;
    }
    for (auto w : {a, b}) {
        const auto toks = text::tokenize(w, lang);
        if (toks.size() != 1 || toks[0] != text::lowercase(w))
            out.push_back("'" + std::string(w) + "' is not a single word");
    }
    if (text::lowercase(a) == text::lowercase(b)) out.emplace_back("case variants");
    if (text::stem(text::lowercase(a), lang) == text::stem(text::lowercase(b), lang)) out.emplace_back("identical stems");
    if (index) {
        for (auto w : {a, b})
            if (!index->in_vocabulary(w)) out.push_back("'" + std::string(w) + "' not in vocabulary");
    }
    return out;
}

inline std::string join_reasons(const std::vector<std::string>& reasons) {
    std::string out;
    for (const auto& r : reasons) {
        if (!out.empty()) out += "; ";
        out += r;
    }
    return out;
}

// ---------------------------------------------------------------- series

struct Series {
    std::string name;
    std::vector<std::string> words;
};

inline std::vector<Series> parse_series(std::istream& in) {
    std::vector<Series> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t");
        std::string_view body(line.data() + first, last - first + 1);
        if (body.front() == '#') {
            body.remove_prefix(1);
            auto p = body.find_first_not_of(" \t");
            if (p == std::string_view::npos) throw ParseError("series header without a name", lineno);
            out.push_back({std::string(body.substr(p)), {}});
            continue;
        }
        if (out.empty()) throw ParseError("word before any '# name' header", lineno);
        if (!text::is_valid_utf8(body)) throw ParseError("invalid UTF-8", lineno);
        if (body.find_first_of(" \t") != std::string_view::npos)
            throw ParseError("more than one word on a line", lineno);
        out.back().words.emplace_back(body);
    }
    return out;
}

inline std::vector<Series> load_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot read " + path);
    try {
        return parse_series(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line());
    }
}

// All unordered pairs within each series; never across series.
inline PairBatch manual_series_pairs(Language lang, const std::vector<Series>& series,
                                     const CorpusIndex* index = nullptr) {
    PairBatch out;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.words.size(); ++i) {
            for (std::size_t j = i + 1; j < s.words.size(); ++j) {
                const auto& a = s.words[i];
                const auto& b = s.words[j];
                auto problems = pair_problems(lang, a, b, index);
                if (!problems.empty()) {
                    out.dropped.push_back({a, b, join_reasons(problems)});
                    continue;
                }
                WordPair p;
                p.language = lang;
                p.word_a = a;
                p.word_b = b;
                p.origin = PairOrigin::manual;
                out.pairs.push_back(std::move(p));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- embeddings

inline double cosine(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw DomainError("dimension mismatch");
    double dot = 0, nu = 0, nv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0 || nv == 0) throw DomainError("zero-norm vector");
    return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

class EmbeddingTable {
public:
    EmbeddingTable(Language lang, std::size_t dim) : language_(lang), dim_(dim) {
        if (dim == 0) throw DomainError("embedding dimension must be positive");
    }

    Language language() const { return language_; }
    std::size_t dimension() const { return dim_; }
    std::size_t size() const { return words_.size(); }
    const std::vector<std::string>& words() const { return words_; }
    const std::string& word(std::size_t i) const { return words_[i]; }

    std::span<const double> vector(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
    std::optional<std::size_t> find(std::string_view w) const {
        auto it = rows_.find(std::string(w));
        if (it == rows_.end()) return std::nullopt;
        return it->second;
    }

    // Returns false when the vector has zero norm or the word is already present.
    bool add(std::string word, std::span<const double> v) {
        if (v.size() != dim_) throw DomainError("dimension mismatch for '" + word + "'");
        double n = 0;
        for (double x : v) n += x * x;
        if (n == 0 || !std::isfinite(n)) return false;
        if (rows_.contains(word)) return false;
        rows_.emplace(word, words_.size());
        words_.push_back(std::move(word));
        data_.insert(data_.end(), v.begin(), v.end());
        norms_.push_back(std::sqrt(n));
        return true;
    }

    double cosine(std::size_t i, std::size_t j) const {
        auto u = vector(i), v = vector(j);
        double dot = 0;
        for (std::size_t d = 0; d < dim_; ++d) dot += u[d] * v[d];
        return std::clamp(dot / (norms_[i] * norms_[j]), -1.0, 1.0);
    }

private:
    Language language_;
    std::size_t dim_;
    std::vector<std::string> words_;
    std::vector<double> data_;
    std::vector<double> norms_;
    std::unordered_map<std::string, std::size_t> rows_;
};

// Text format: "<count> <dim>" then "<token> <v1> ... <vdim>" per line.
inline EmbeddingTable parse_embeddings(std::istream& in, Language lang) {
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw ParseError("missing '<count> <dimension>' header", 1);
    std::istringstream hs(line);
    long long count = -1, dim = -1;
    if (!(hs >> count >> dim) || count < 0 || dim <= 0) throw ParseError("bad header", lineno);
    EmbeddingTable table(lang, static_cast<std::size_t>(dim));
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (long long r = 0; r < count; ++r) {
        if (!next_line()) throw ParseError("expected " + std::to_string(count) + " vectors", lineno + 1);
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        for (auto& x : v) {
            std::string tok;
            if (!(ls >> tok)) throw ParseError("too few components for '" + word + "'", lineno);
            try {
                std::size_t used = 0;
                x = std::stod(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError("bad number '" + tok + "'", lineno);
            }
        }
        std::string extra;
        if (ls >> extra) throw ParseError("too many components for '" + word + "'", lineno);
        table.add(std::move(word), v);
    }
    return table;
}

inline EmbeddingTable load_embeddings(const std::string& path, Language lang) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot read " + path);
    return parse_embeddings(in, lang);
}

// ---------------------------------------------------------------- mining

struct MiningConfig {
    std::size_t sample_n = 1'000'000;
    std::size_t top_k = 250;
};

// sample_n uniform draws of two distinct rows (with replacement across
// draws), collapsed to the distinct unordered pairs (i < j), sorted.
inline std::vector<std::pair<std::size_t, std::size_t>> sample_index_pairs(std::size_t vocab, std::size_t sample_n,
                                                                           Rng& rng) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (vocab < 2) return out;
    out.reserve(sample_n);
    for (std::size_t i = 0; i < sample_n; ++i) {
        std::size_t a = rng.below(vocab);
        std::size_t b = rng.below(vocab - 1);
        if (b >= a) ++b;
        out.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct RankedPair {
    std::string word_a;  // lexicographically smaller
    std::string word_b;
    double cosine = 0;
};

// Cosine descending, then (word_a, word_b) ascending.
inline bool ranks_before(const RankedPair& x, const RankedPair& y) {
    if (x.cosine != y.cosine) return x.cosine > y.cosine;
    return std::tie(x.word_a, x.word_b) < std::tie(y.word_a, y.word_b);
}

using PairValidator = std::function<std::vector<std::string>(std::string_view, std::string_view)>;

inline PairBatch mine_pairs(const EmbeddingTable& table, std::size_t sample_n, std::size_t top_k, Rng& rng,
                            const PairValidator& extra = {}) {
    if (table.size() < 2) throw DomainError("need at least two embedded words");
    if (sample_n < top_k) throw DomainError("sample size below requested pair count");
    PairBatch out;
    if (top_k == 0) return out;
    const auto idx = sample_index_pairs(table.size(), sample_n, rng);
    std::vector<RankedPair> ranked;
    ranked.reserve(idx.size());
    for (auto [i, j] : idx) {
        const auto& a = table.word(i);
        const auto& b = table.word(j);
        ranked.push_back(a < b ? RankedPair{a, b, table.cosine(i, j)} : RankedPair{b, a, table.cosine(i, j)});
    }
    std::sort(ranked.begin(), ranked.end(), ranks_before);
    for (const auto& r : ranked) {
        if (out.pairs.size() == top_k) break;
        auto problems = pair_problems(table.language(), r.word_a, r.word_b);
        if (problems.empty() && extra) problems = extra(r.word_a, r.word_b);
        if (!problems.empty()) {
            out.dropped.push_back({r.word_a, r.word_b, join_reasons(problems)});
            continue;
        }
        WordPair p;
        p.language = table.language();
        p.word_a = r.word_a;
        p.word_b = r.word_b;
        p.origin = PairOrigin::embedding_mined;
        out.pairs.push_back(std::move(p));
    }
    out.shortfall = out.pairs.size() < top_k;
    return out;
}

}  // namespace riddler
