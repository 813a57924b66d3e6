#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include "riddler/error.hpp"

namespace riddler {

using SentenceId = std::uint32_t;

enum class PairId : std::uint64_t {};
enum class PlayerId : std::uint64_t {};
enum class RiddleId : std::uint64_t {};
enum class AnnotationId : std::uint64_t {};
enum class SessionId : std::uint64_t {};

template <class E>
    requires std::is_enum_v<E>
constexpr std::underlying_type_t<E> raw(E e) noexcept {
    return static_cast<std::underlying_type_t<E>>(e);
}

// Milliseconds since the Unix epoch.
using Timestamp = std::int64_t;

enum class Language { en, es, fr, it, ru };

inline constexpr Language kAllLanguages[] = {Language::en, Language::es, Language::fr,
                                             Language::it, Language::ru};

inline std::string_view to_string(Language lang) {
    switch (lang) {
        case Language::en: return "en";
        case Language::es: return "es";
        case Language::fr: return "fr";
        case Language::it: return "it";
        case Language::ru: return "ru";
    }
    return "?";
}

inline std::optional<Language> try_parse_language(std::string_view code) {
    for (Language l : kAllLanguages)
        if (to_string(l) == code) return l;
    return std::nullopt;
}

inline Language parse_language(std::string_view code) {
    if (auto l = try_parse_language(code)) return *l;
    throw ConfigError("unsupported language: " + std::string(code));
}

enum class Genre { wikipedia, books, parliamentary, subtitles };

inline constexpr Genre kAllGenres[] = {Genre::wikipedia, Genre::books, Genre::parliamentary,
                                       Genre::subtitles};

inline std::string_view to_string(Genre g) {
    switch (g) {
        case Genre::wikipedia: return "wikipedia";
        case Genre::books: return "books";
        case Genre::parliamentary: return "parliamentary";
        case Genre::subtitles: return "subtitles";
    }
    return "?";
}

inline Genre parse_genre(std::string_view name) {
    for (Genre g : kAllGenres)
        if (to_string(g) == name) return g;
    throw ConfigError("unknown genre: " + std::string(name));
}

enum class PairOrigin { manual, embedding_mined, user_proposed };

inline std::string_view to_string(PairOrigin o) {
    switch (o) {
        case PairOrigin::manual: return "manual";
        case PairOrigin::embedding_mined: return "embedding_mined";
        case PairOrigin::user_proposed: return "user_proposed";
    }
    return "?";
}

inline std::optional<PairOrigin> try_parse_origin(std::string_view s) {
    if (s == "manual") return PairOrigin::manual;
    if (s == "embedding_mined") return PairOrigin::embedding_mined;
    if (s == "user_proposed") return PairOrigin::user_proposed;
    return std::nullopt;
}

enum class PairState { active, deferred, rejected };

inline std::string_view to_string(PairState s) {
    switch (s) {
        case PairState::active: return "active";
        case PairState::deferred: return "deferred";
        case PairState::rejected: return "rejected";
    }
    return "?";
}

inline PairState parse_pair_state(std::string_view s) {
    if (s == "active") return PairState::active;
    if (s == "deferred") return PairState::deferred;
    if (s == "rejected") return PairState::rejected;
    throw ValidationError("unknown pair state: " + std::string(s));
}

}  // namespace riddler

#define RIDDLER_ID_HASH(T)                                                           \
    template <>                                                                      \
    struct std::hash<riddler::T> {                                                   \
        std::size_t operator()(riddler::T id) const noexcept {                       \
            return std::hash<std::uint64_t>{}(riddler::raw(id));                     \
        }                                                                            \
    };
RIDDLER_ID_HASH(PairId)
RIDDLER_ID_HASH(PlayerId)
RIDDLER_ID_HASH(RiddleId)
RIDDLER_ID_HASH(AnnotationId)
RIDDLER_ID_HASH(SessionId)
#undef RIDDLER_ID_HASH
