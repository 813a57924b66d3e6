#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "riddler/corpus.hpp"
#include "riddler/error.hpp"

namespace riddler::cstp {

// A sentence with one slot: prefix tokens, the slot, suffix tokens.
struct ContextTemplate {
    std::vector<std::string> prefix;
    std::vector<std::string> suffix;

    std::size_t slot() const { return prefix.size(); }

    // All non-slot tokens, prefix first.
    std::vector<std::string> context() const {
        std::vector<std::string> out = prefix;
        out.insert(out.end(), suffix.begin(), suffix.end());
        return out;
    }

    std::vector<std::string> filled(std::string_view term) const {
        std::vector<std::string> out = prefix;
        out.emplace_back(term);
        out.insert(out.end(), suffix.begin(), suffix.end());
        return out;
    }
};

// The first occurrence of `target` becomes the slot; later occurrences are
// dropped so the candidate never shows up in its own context.
inline ContextTemplate make_template(const std::vector<std::string>& tokens, std::string_view target) {
    ContextTemplate t;
    bool found = false;
    for (const auto& tok : tokens) {
        if (tok == target) {
            found = true;
            continue;
        }
        (found ? t.suffix : t.prefix).push_back(tok);
    }
    if (!found) throw UnsupportedTemplateError("target '" + std::string(target) + "' not in sentence");
    if (t.prefix.empty() && t.suffix.empty()) throw UnsupportedTemplateError("sentence has no context besides the target");
    return t;
}

inline ContextTemplate make_template(const Sentence& s, std::string_view target) {
    return make_template(s.tokens, target);
}

}  // namespace riddler::cstp
