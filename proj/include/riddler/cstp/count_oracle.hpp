#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "riddler/corpus.hpp"
#include "riddler/cstp/preference.hpp"
#include "riddler/error.hpp"

namespace riddler::cstp {

// Smoothed corpus counts behind all four capabilities.
//
//   co-occurrence C(w,t): ordered token-position pairs inside one sentence
//   mass D(t) = sum_w C(w,t), total = sum_t D(t)
//   likelihood  P(w|t) = (C(w,t) + a) / (D(t) + a|V|)
//   prior       P(t)   = (D(t) + a|V|) / (total + a|V|^2)
//   membership  mean over context words of (S(t,w) + a) / (S(w) + 2a),
//               S counting sentences
//   next token  (B(h,x) + a) / (U(h) + a(|V| + 2)) with <s>, </s>, <unk>
//
// Context words outside the vocabulary carry no evidence and are skipped
// by the bag capabilities; the bigram model maps them to <unk>.
class CountOracle final : public Conditional, public ContextGenerative, public Membership, public Autoregressive {
public:
    CountOracle(const CorpusIndex& index, double alpha) : alpha_(alpha) {
        if (!(alpha > 0) || !std::isfinite(alpha)) throw DomainError("smoothing must be positive and finite");
        if (index.empty()) throw DomainError("cannot build an oracle from an empty corpus");
        for (const auto& [w, n] : index.vocabulary()) words_.push_back(w);
        std::sort(words_.begin(), words_.end());
        for (std::uint32_t i = 0; i < words_.size(); ++i) ids_.emplace(words_[i], i);
        const std::size_t v = words_.size();
        mass_.assign(v, 0);
        sentences_with_.assign(v, 0);
        history_.assign(v + 2, 0);
        sentence_count_ = index.size();

        std::vector<std::uint32_t> seq;
        std::unordered_map<std::uint32_t, std::uint64_t> mult;
        for (const Sentence& s : index.sentences()) {
            seq.clear();
            mult.clear();
            for (const auto& tok : s.tokens) {
                const std::uint32_t id = ids_.find(tok)->second;
                seq.push_back(id);
                ++mult[id];
            }
            const std::uint64_t len = seq.size();
            std::vector<std::pair<std::uint32_t, std::uint64_t>> types(mult.begin(), mult.end());
            for (std::size_t i = 0; i < types.size(); ++i) {
                const auto [a, ma] = types[i];
                mass_[a] += ma * (len - 1);
                ++sentences_with_[a];
                if (ma > 1) pair_counts_[key(a, a)] += ma * (ma - 1);
                for (std::size_t j = i + 1; j < types.size(); ++j) {
                    const auto [b, mb] = types[j];
                    pair_counts_[key(a, b)] += ma * mb;
                    ++sentence_pairs_[key(a, b)];
                }
            }
            std::uint32_t prev = bos();
            for (std::uint32_t id : seq) {
                ++bigrams_[ordered_key(prev, id)];
                ++history_[prev];
                prev = id;
            }
            ++bigrams_[ordered_key(prev, eos())];
            ++history_[prev];
        }
        for (auto m : mass_) total_mass_ += m;
    }

    double alpha() const { return alpha_; }
    std::size_t vocabulary_size() const { return words_.size(); }
    bool knows(std::string_view term) const { return ids_.contains(term); }

    std::uint64_t cooccurrence(std::string_view w, std::string_view t) const {
        auto a = ids_.find(w), b = ids_.find(t);
        if (a == ids_.end() || b == ids_.end()) return 0;
        return lookup(pair_counts_, key(a->second, b->second));
    }

    // Conditional: prior times the naive-Bayes likelihood.
    double log_score(std::string_view term, const ContextTemplate& c) const override {
        return log_prior(term) + log_likelihood(c, term);
    }

    double log_likelihood(const ContextTemplate& c, std::string_view term) const override {
        const std::uint32_t t = require(term);
        const double v = static_cast<double>(words_.size());
        const double denom = std::log(static_cast<double>(mass_[t]) + alpha_ * v);
        double total = 0;
        for (const auto& list : {std::cref(c.prefix), std::cref(c.suffix)}) {
            for (const auto& w : list.get()) {
                auto it = ids_.find(w);
                if (it == ids_.end()) continue;
                const double n = static_cast<double>(lookup(pair_counts_, key(it->second, t)));
                total += std::log(n + alpha_) - denom;
            }
        }
        return total;
    }

    double log_prior(std::string_view term) const override {
        const std::uint32_t t = require(term);
        const double v = static_cast<double>(words_.size());
        return std::log(static_cast<double>(mass_[t]) + alpha_ * v) -
               std::log(static_cast<double>(total_mass_) + alpha_ * v * v);
    }

    double membership(std::string_view term, const ContextTemplate& c) const override {
        const std::uint32_t t = require(term);
        double sum = 0;
        std::size_t n = 0;
        for (const auto& list : {std::cref(c.prefix), std::cref(c.suffix)}) {
            for (const auto& w : list.get()) {
                auto it = ids_.find(w);
                if (it == ids_.end()) continue;
                const std::uint32_t wi = it->second;
                const double both = wi == t ? static_cast<double>(sentences_with_[t])
                                            : static_cast<double>(lookup(sentence_pairs_, key(wi, t)));
                sum += (both + alpha_) / (static_cast<double>(sentences_with_[wi]) + 2 * alpha_);
                ++n;
            }
        }
        if (n == 0)
            return (static_cast<double>(sentences_with_[t]) + alpha_) / (static_cast<double>(sentence_count_) + 2 * alpha_);
        return sum / static_cast<double>(n);
    }

    double log_next(std::span<const std::string> history, std::string_view token) const override {
        const std::uint32_t h = history.empty() ? bos() : id_or_unk(history.back());
        const std::uint32_t x = id_or_unk(token);
        const double outcomes = static_cast<double>(words_.size() + 2);
        const double n = static_cast<double>(lookup(bigrams_, ordered_key(h, x)));
        return std::log(n + alpha_) - std::log(static_cast<double>(history_[h]) + alpha_ * outcomes);
    }

    // End-of-sentence probability after `history`.
    double log_end(std::span<const std::string> history) const {
        const std::uint32_t h = history.empty() ? bos() : id_or_unk(history.back());
        const double outcomes = static_cast<double>(words_.size() + 2);
        const double n = static_cast<double>(lookup(bigrams_, ordered_key(h, eos())));
        return std::log(n + alpha_) - std::log(static_cast<double>(history_[h]) + alpha_ * outcomes);
    }

    void require_term(std::string_view term) const override { require(term); }

private:
    // Extra ids: <s> in history position and </s> in next position share
    // index |V|; <unk> is |V| + 1 in both.
    std::uint32_t bos() const { return static_cast<std::uint32_t>(words_.size()); }
    std::uint32_t eos() const { return static_cast<std::uint32_t>(words_.size()); }
    std::uint32_t unk() const { return static_cast<std::uint32_t>(words_.size() + 1); }

    std::uint32_t id_or_unk(std::string_view w) const {
        auto it = ids_.find(w);
        return it == ids_.end() ? unk() : it->second;
    }

    std::uint32_t require(std::string_view term) const {
        auto it = ids_.find(term);
        if (it == ids_.end()) throw UnknownTermError(std::string(term));
        return it->second;
    }

    static std::uint64_t key(std::uint32_t a, std::uint32_t b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }
    static std::uint64_t ordered_key(std::uint32_t a, std::uint32_t b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

    static std::uint64_t lookup(const std::unordered_map<std::uint64_t, std::uint64_t>& m, std::uint64_t k) {
        auto it = m.find(k);
        return it == m.end() ? 0 : it->second;
    }

    double alpha_;
    std::vector<std::string> words_;
    detail::StringMap<std::uint32_t> ids_;
    std::vector<std::uint64_t> mass_;
    std::uint64_t total_mass_ = 0;
    std::unordered_map<std::uint64_t, std::uint64_t> pair_counts_;
    std::vector<std::uint64_t> sentences_with_;
    std::unordered_map<std::uint64_t, std::uint64_t> sentence_pairs_;
    std::size_t sentence_count_ = 0;
    std::unordered_map<std::uint64_t, std::uint64_t> bigrams_;
    std::vector<std::uint64_t> history_;
};

// Pure pseudo-random scores: each (term, template) gets a fixed uniform
// value derived from the seed. Serves as the chance baseline.
class CoinFlipOracle final : public Conditional {
public:
    explicit CoinFlipOracle(std::uint64_t seed) : seed_(seed) {}

    double log_score(std::string_view term, const ContextTemplate& c) const override {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ seed_;
        auto feed = [&](std::string_view s) {
            for (unsigned char ch : s) {
                h ^= ch;
                h *= 0x100000001b3ULL;
            }
            h ^= 0xff;
            h *= 0x100000001b3ULL;
        };
        feed(term);
        for (const auto& w : c.prefix) feed(w);
        feed("|");
        for (const auto& w : c.suffix) feed(w);
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
        return std::log((static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53);
    }

private:
    std::uint64_t seed_;
};

}  // namespace riddler::cstp
