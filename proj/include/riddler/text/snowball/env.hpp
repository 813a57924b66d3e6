#pragma once

#include <span>
#include <string>
#include <string_view>

// Minimal runtime for Snowball-style stemmers: a code point buffer with a
// cursor, forward/backward limits and a [bra, ket) slice, plus the usual
// grouping, literal and longest-suffix helpers. Positions are code point
// indexes.
namespace riddler::text::snowball {

struct Among {
    std::u32string_view s;
    int result;  // -1 marks an entry that matches but carries no action
};

class Env {
public:
    explicit Env(std::u32string word)
        : s(std::move(word)), limit(static_cast<int>(s.size())), ket(limit) {}

    std::u32string s;
    int cursor = 0;
    int limit = 0;
    int lb = 0;  // backward limit
    int bra = 0;
    int ket = 0;

    static bool in(std::u32string_view group, char32_t c) {
        return group.find(c) != std::u32string_view::npos;
    }

    char32_t at(int i) const { return s[static_cast<std::size_t>(i)]; }

    bool in_grouping(std::u32string_view g) {
        if (cursor >= limit || !in(g, at(cursor))) return false;
        ++cursor;
        return true;
    }
    bool out_grouping(std::u32string_view g) {
        if (cursor >= limit || in(g, at(cursor))) return false;
        ++cursor;
        return true;
    }
    // Advance to the first character outside / inside the grouping.
    bool go_in_grouping(std::u32string_view g) {
        while (cursor < limit) {
            if (!in(g, at(cursor))) return true;
            ++cursor;
        }
        return false;
    }
    bool go_out_grouping(std::u32string_view g) {
        while (cursor < limit) {
            if (in(g, at(cursor))) return true;
            ++cursor;
        }
        return false;
    }

    bool in_grouping_b(std::u32string_view g) {
        if (cursor <= lb || !in(g, at(cursor - 1))) return false;
        --cursor;
        return true;
    }
    bool out_grouping_b(std::u32string_view g) {
        if (cursor <= lb || in(g, at(cursor - 1))) return false;
        --cursor;
        return true;
    }
    bool go_out_grouping_b(std::u32string_view g) {
        while (cursor > lb) {
            if (in(g, at(cursor - 1))) return true;
            --cursor;
        }
        return false;
    }

    bool eq(char32_t c) {
        if (cursor >= limit || at(cursor) != c) return false;
        ++cursor;
        return true;
    }
    bool eq_b(char32_t c) {
        if (cursor <= lb || at(cursor - 1) != c) return false;
        --cursor;
        return true;
    }
    bool eq_s(std::u32string_view t) {
        const int n = static_cast<int>(t.size());
        if (limit - cursor < n || std::u32string_view(s).substr(static_cast<std::size_t>(cursor), t.size()) != t)
            return false;
        cursor += n;
        return true;
    }
    bool eq_s_b(std::u32string_view t) {
        const int n = static_cast<int>(t.size());
        if (cursor - lb < n ||
            std::u32string_view(s).substr(static_cast<std::size_t>(cursor - n), t.size()) != t)
            return false;
        cursor -= n;
        return true;
    }

    // Longest entry that is a prefix of [cursor, limit); moves the cursor past it.
    int find_among(std::span<const Among> v) {
        const Among* best = nullptr;
        for (const auto& a : v) {
            const int n = static_cast<int>(a.s.size());
            if (limit - cursor < n) continue;
            if (best && static_cast<int>(best->s.size()) >= n) continue;
            if (std::u32string_view(s).substr(static_cast<std::size_t>(cursor), a.s.size()) == a.s) best = &a;
        }
        if (!best) return 0;
        cursor += static_cast<int>(best->s.size());
        return best->result;
    }

    // Longest entry that is a suffix of [lb, cursor); moves the cursor before it.
    int find_among_b(std::span<const Among> v) {
        const Among* best = nullptr;
        for (const auto& a : v) {
            const int n = static_cast<int>(a.s.size());
            if (cursor - lb < n) continue;
            if (best && static_cast<int>(best->s.size()) >= n) continue;
            if (std::u32string_view(s).substr(static_cast<std::size_t>(cursor - n), a.s.size()) == a.s) best = &a;
        }
        if (!best) return 0;
        cursor -= static_cast<int>(best->s.size());
        return best->result;
    }

    void slice_from(std::u32string_view t) {
        const int adjustment = static_cast<int>(t.size()) - (ket - bra);
        s.replace(static_cast<std::size_t>(bra), static_cast<std::size_t>(ket - bra), t);
        limit += adjustment;
        if (cursor >= ket)
            cursor += adjustment;
        else if (cursor > bra)
            cursor = bra;
        ket = bra + static_cast<int>(t.size());
    }
    void slice_del() { slice_from(U""); }

    // Backward-mode save/restore: offsets from the end survive edits.
    int mark_b() const { return limit - cursor; }
    void reset_b(int m) { cursor = limit - m; }
};

}  // namespace riddler::text::snowball
