#pragma once

#include <string>
#include <string_view>

#include "riddler/text/snowball/english.hpp"
#include "riddler/text/snowball/french.hpp"
#include "riddler/text/snowball/italian.hpp"
#include "riddler/text/snowball/russian.hpp"
#include "riddler/text/snowball/spanish.hpp"
#include "riddler/text/unicode.hpp"
#include "riddler/types.hpp"

namespace riddler::text {

// Stems a lowercased token. Output matches the Snowball algorithms for the
// five supported languages.
inline std::u32string stem(std::u32string word, Language lang) {
    switch (lang) {
        case Language::en: return snowball::english::stem(std::move(word));
        case Language::fr: return snowball::french::stem(std::move(word));
        case Language::es: return snowball::spanish::stem(std::move(word));
        case Language::it: return snowball::italian::stem(std::move(word));
        case Language::ru: return snowball::russian::stem(std::move(word));
    }
    return word;
}

inline std::string stem(std::string_view token, Language lang) { return to_utf8(stem(to_u32(token), lang)); }

}  // namespace riddler::text
