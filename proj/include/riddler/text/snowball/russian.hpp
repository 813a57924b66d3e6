#pragma once

#include <string>
#include <string_view>

#include "riddler/text/snowball/env.hpp"

namespace riddler::text::snowball::russian {

inline constexpr Among a_0[] = {
    {U"\u0432", 1},
    {U"\u0438\u0432", 2},
    {U"\u044b\u0432", 2},
    {U"\u0432\u0448\u0438", 1},
    {U"\u0438\u0432\u0448\u0438", 2},
    {U"\u044b\u0432\u0448\u0438", 2},
    {U"\u0432\u0448\u0438\u0441\u044c", 1},
    {U"\u0438\u0432\u0448\u0438\u0441\u044c", 2},
    {U"\u044b\u0432\u0448\u0438\u0441\u044c", 2},
};
inline constexpr Among a_1[] = {
    {U"\u0435\u0435", 1},
    {U"\u0438\u0435", 1},
    {U"\u043e\u0435", 1},
    {U"\u044b\u0435", 1},
    {U"\u0438\u043c\u0438", 1},
    {U"\u044b\u043c\u0438", 1},
    {U"\u0435\u0439", 1},
    {U"\u0438\u0439", 1},
    {U"\u043e\u0439", 1},
    {U"\u044b\u0439", 1},
    {U"\u0435\u043c", 1},
    {U"\u0438\u043c", 1},
    {U"\u043e\u043c", 1},
    {U"\u044b\u043c", 1},
    {U"\u0435\u0433\u043e", 1},
    {U"\u043e\u0433\u043e", 1},
    {U"\u0435\u043c\u0443", 1},
    {U"\u043e\u043c\u0443", 1},
    {U"\u0438\u0445", 1},
    {U"\u044b\u0445", 1},
    {U"\u0435\u044e", 1},
    {U"\u043e\u044e", 1},
    {U"\u0443\u044e", 1},
    {U"\u044e\u044e", 1},
    {U"\u0430\u044f", 1},
    {U"\u044f\u044f", 1},
};
inline constexpr Among a_2[] = {
    {U"\u0435\u043c", 1},
    {U"\u043d\u043d", 1},
    {U"\u0432\u0448", 1},
    {U"\u0438\u0432\u0448", 2},
    {U"\u044b\u0432\u0448", 2},
    {U"\u0449", 1},
    {U"\u044e\u0449", 1},
    {U"\u0443\u044e\u0449", 2},
};
inline constexpr Among a_3[] = {
    {U"\u0441\u044c", 1},
    {U"\u0441\u044f", 1},
};
inline constexpr Among a_4[] = {
    {U"\u043b\u0430", 1},
    {U"\u0438\u043b\u0430", 2},
    {U"\u044b\u043b\u0430", 2},
    {U"\u043d\u0430", 1},
    {U"\u0435\u043d\u0430", 2},
    {U"\u0435\u0442\u0435", 1},
    {U"\u0438\u0442\u0435", 2},
    {U"\u0439\u0442\u0435", 1},
    {U"\u0435\u0439\u0442\u0435", 2},
    {U"\u0443\u0439\u0442\u0435", 2},
    {U"\u043b\u0438", 1},
    {U"\u0438\u043b\u0438", 2},
    {U"\u044b\u043b\u0438", 2},
    {U"\u0439", 1},
    {U"\u0435\u0439", 2},
    {U"\u0443\u0439", 2},
    {U"\u043b", 1},
    {U"\u0438\u043b", 2},
    {U"\u044b\u043b", 2},
    {U"\u0435\u043c", 1},
    {U"\u0438\u043c", 2},
    {U"\u044b\u043c", 2},
    {U"\u043d", 1},
    {U"\u0435\u043d", 2},
    {U"\u043b\u043e", 1},
    {U"\u0438\u043b\u043e", 2},
    {U"\u044b\u043b\u043e", 2},
    {U"\u043d\u043e", 1},
    {U"\u0435\u043d\u043e", 2},
    {U"\u043d\u043d\u043e", 1},
    {U"\u0435\u0442", 1},
    {U"\u0443\u0435\u0442", 2},
    {U"\u0438\u0442", 2},
    {U"\u044b\u0442", 2},
    {U"\u044e\u0442", 1},
    {U"\u0443\u044e\u0442", 2},
    {U"\u044f\u0442", 2},
    {U"\u043d\u044b", 1},
    {U"\u0435\u043d\u044b", 2},
    {U"\u0442\u044c", 1},
    {U"\u0438\u0442\u044c", 2},
    {U"\u044b\u0442\u044c", 2},
    {U"\u0435\u0448\u044c", 1},
    {U"\u0438\u0448\u044c", 2},
    {U"\u044e", 2},
    {U"\u0443\u044e", 2},
};
inline constexpr Among a_5[] = {
    {U"\u0430", 1},
    {U"\u0435\u0432", 1},
    {U"\u043e\u0432", 1},
    {U"\u0435", 1},
    {U"\u0438\u0435", 1},
    {U"\u044c\u0435", 1},
    {U"\u0438", 1},
    {U"\u0435\u0438", 1},
    {U"\u0438\u0438", 1},
    {U"\u0430\u043c\u0438", 1},
    {U"\u044f\u043c\u0438", 1},
    {U"\u0438\u044f\u043c\u0438", 1},
    {U"\u0439", 1},
    {U"\u0435\u0439", 1},
    {U"\u0438\u0435\u0439", 1},
    {U"\u0438\u0439", 1},
    {U"\u043e\u0439", 1},
    {U"\u0430\u043c", 1},
    {U"\u0435\u043c", 1},
    {U"\u0438\u0435\u043c", 1},
    {U"\u043e\u043c", 1},
    {U"\u044f\u043c", 1},
    {U"\u0438\u044f\u043c", 1},
    {U"\u043e", 1},
    {U"\u0443", 1},
    {U"\u0430\u0445", 1},
    {U"\u044f\u0445", 1},
    {U"\u0438\u044f\u0445", 1},
    {U"\u044b", 1},
    {U"\u044c", 1},
    {U"\u044e", 1},
    {U"\u0438\u044e", 1},
    {U"\u044c\u044e", 1},
    {U"\u044f", 1},
    {U"\u0438\u044f", 1},
    {U"\u044c\u044f", 1},
};
inline constexpr Among a_6[] = {
    {U"\u043e\u0441\u0442", 1},
    {U"\u043e\u0441\u0442\u044c", 1},
};
inline constexpr Among a_7[] = {
    {U"\u0435\u0439\u0448\u0435", 1},
    {U"\u043d", 2},
    {U"\u0435\u0439\u0448", 1},
    {U"\u044c", 3},
};
inline constexpr std::u32string_view g_v = U"\u0430\u0435\u0438\u043e\u0443\u044b\u044d\u044e\u044f";

struct State {
    Env z;
    int pV = 0;
    int p2 = 0;
};

inline void mark_regions(State& st) {
    Env& z = st.z;
    st.pV = st.p2 = z.limit;
    z.cursor = 0;
    if (!z.go_out_grouping(g_v)) return;
    ++z.cursor;
    st.pV = z.cursor;
    if (!z.go_in_grouping(g_v)) return;
    ++z.cursor;
    if (!z.go_out_grouping(g_v)) return;
    ++z.cursor;
    if (!z.go_in_grouping(g_v)) return;
    ++z.cursor;
    st.p2 = z.cursor;
}

// Group 1 endings only count after а or я, which stays in the stem.
inline bool after_a_or_ya(Env& z) { return z.eq_b(U'а') || z.eq_b(U'я'); }

inline bool remove_grouped(Env& z, std::span<const Among> table) {
    z.ket = z.cursor;
    const int v = z.find_among_b(table);
    if (v == 0) return false;
    z.bra = z.cursor;
    if (v == 1 && !after_a_or_ya(z)) return false;
    z.slice_del();
    return true;
}

inline bool remove_plain(Env& z, std::span<const Among> table) {
    z.ket = z.cursor;
    if (z.find_among_b(table) == 0) return false;
    z.bra = z.cursor;
    z.slice_del();
    return true;
}

inline bool adjectival(Env& z) {
    if (!remove_plain(z, a_1)) return false;
    const int m = z.mark_b();
    if (!remove_grouped(z, a_2)) z.reset_b(m);
    return true;
}

inline void tidy_up(Env& z) {
    z.ket = z.cursor;
    const int v = z.find_among_b(a_7);
    if (v == 0) return;
    z.bra = z.cursor;
    if (v == 1) {
        z.slice_del();
        z.ket = z.cursor;
        if (!z.eq_b(U'н')) return;
        z.bra = z.cursor;
        if (!z.eq_b(U'н')) return;
        z.slice_del();
    } else if (v == 2) {
        if (!z.eq_b(U'н')) return;
        z.slice_del();
    } else {
        z.slice_del();
    }
}

inline std::u32string stem(std::u32string word) {
    for (auto& c : word)
        if (c == U'ё') c = U'е';
    State st{Env(std::move(word))};
    Env& z = st.z;
    mark_regions(st);
    z.cursor = z.limit;
    if (z.cursor < st.pV) return z.s;
    z.lb = st.pV;
    if (!remove_grouped(z, a_0)) {
        z.cursor = z.limit;
        if (!remove_plain(z, a_3)) z.cursor = z.limit;
        const int m = z.mark_b();
        if (!adjectival(z)) {
            z.reset_b(m);
            if (!remove_grouped(z, a_4)) {
                z.reset_b(m);
                remove_plain(z, a_5);
            }
        }
    }
    z.cursor = z.limit;
    z.ket = z.cursor;
    if (z.eq_b(U'и')) {
        z.bra = z.cursor;
        z.slice_del();
    }
    z.cursor = z.limit;
    z.ket = z.cursor;
    if (z.find_among_b(a_6) != 0) {
        z.bra = z.cursor;
        if (st.p2 <= z.cursor) z.slice_del();
    }
    z.cursor = z.limit;
    tidy_up(z);
    return z.s;
}

}  // namespace riddler::text::snowball::russian
