#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <unicode/utf8.h>

#include "riddler/text/unicode.hpp"
#include "riddler/types.hpp"

namespace riddler::text {

// A token and the byte range it was cut from.
struct TokenSpan {
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;
};

// French and Italian elide articles and pronouns ("l'", "dell'"); the
// elided word keeps its apostrophe and the host word becomes its own token.
inline bool splits_elision(Language lang) { return lang == Language::fr || lang == Language::it; }

namespace detail {

struct CodePoint {
    char32_t value;
    std::size_t begin;
    std::size_t end;
};

inline std::vector<CodePoint> decode(std::string_view s) {
    std::vector<CodePoint> out;
    out.reserve(s.size());
    const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
    const auto n = static_cast<int32_t>(s.size());
    int32_t i = 0;
    while (i < n) {
        const int32_t start = i;
        UChar32 c;
        U8_NEXT(p, i, n, c);
        out.push_back({c < 0 ? U'�' : static_cast<char32_t>(c), static_cast<std::size_t>(start),
                       static_cast<std::size_t>(i)});
    }
    return out;
}

inline std::string normalize_token(std::string_view surface) {
    std::string lowered = lowercase(surface);
    if (is_ascii(lowered)) return lowered;
    std::string out;
    for (char32_t c : to_u32(lowered)) append_utf8(out, is_apostrophe(c) ? U'\'' : c);
    return out;
}

}  // namespace detail

// Splits NFC text into lowercase tokens. Whitespace is dropped, every
// punctuation or symbol code point is its own token, and word tokens are
// maximal runs of letters, digits and marks. An apostrophe between two word
// characters stays inside the word, except for fr/it where it ends the
// elided word. Typographic apostrophes are folded to U+0027.
inline std::vector<TokenSpan> tokenize_spans(std::string_view text, Language lang) {
    std::vector<TokenSpan> tokens;
    const auto cps = detail::decode(text);
    const std::size_t n = cps.size();
    std::size_t i = 0;
    while (i < n) {
        const char32_t c = cps[i].value;
        if (is_space(c)) {
            ++i;
            continue;
        }
        if (!is_word_char(c)) {
            tokens.push_back({detail::normalize_token(text.substr(cps[i].begin, cps[i].end - cps[i].begin)),
                              cps[i].begin, cps[i].end});
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < n) {
            if (is_word_char(cps[j].value)) {
                ++j;
            } else if (is_apostrophe(cps[j].value) && j + 1 < n && is_word_char(cps[j + 1].value)) {
                ++j;
                if (splits_elision(lang)) break;
            } else {
                break;
            }
        }
        const std::size_t begin = cps[i].begin;
        const std::size_t end = cps[j - 1].end;
        tokens.push_back({detail::normalize_token(text.substr(begin, end - begin)), begin, end});
        i = j;
    }
    return tokens;
}

inline std::vector<std::string> tokenize(std::string_view text, Language lang) {
    std::vector<std::string> out;
    for (auto& t : tokenize_spans(text, lang)) out.push_back(std::move(t.text));
    return out;
}

}  // namespace riddler::text
