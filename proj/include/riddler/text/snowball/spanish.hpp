#pragma once

#include <string>
#include <string_view>

#include "riddler/text/snowball/env.hpp"
#include "riddler/text/snowball/regions.hpp"

namespace riddler::text::snowball::spanish {

inline constexpr Among a_0[] = {
    {U"", 6},
    {U"\u00e1", 1},
    {U"\u00e9", 2},
    {U"\u00ed", 3},
    {U"\u00f3", 4},
    {U"\u00fa", 5},
};
inline constexpr Among a_1[] = {
    {U"la", -1},
    {U"sela", -1},
    {U"le", -1},
    {U"me", -1},
    {U"se", -1},
    {U"lo", -1},
    {U"selo", -1},
    {U"las", -1},
    {U"selas", -1},
    {U"les", -1},
    {U"los", -1},
    {U"selos", -1},
    {U"nos", -1},
};
inline constexpr Among a_2[] = {
    {U"ando", 6},
    {U"iendo", 6},
    {U"yendo", 7},
    {U"\u00e1ndo", 2},
    {U"i\u00e9ndo", 1},
    {U"ar", 6},
    {U"er", 6},
    {U"ir", 6},
    {U"\u00e1r", 3},
    {U"\u00e9r", 4},
    {U"\u00edr", 5},
};
inline constexpr Among a_3[] = {
    {U"ic", -1},
    {U"ad", -1},
    {U"os", -1},
    {U"iv", 1},
};
inline constexpr Among a_4[] = {
    {U"able", 1},
    {U"ible", 1},
    {U"ante", 1},
};
inline constexpr Among a_5[] = {
    {U"ic", 1},
    {U"abil", 1},
    {U"iv", 1},
};
inline constexpr Among a_6[] = {
    {U"ica", 1},
    {U"ancia", 2},
    {U"encia", 5},
    {U"adora", 2},
    {U"osa", 1},
    {U"ista", 1},
    {U"iva", 9},
    {U"anza", 1},
    {U"log\u00eda", 3},
    {U"idad", 8},
    {U"able", 1},
    {U"ible", 1},
    {U"ante", 2},
    {U"mente", 7},
    {U"amente", 6},
    {U"acion", 2},
    {U"ucion", 4},
    {U"aci\u00f3n", 2},
    {U"uci\u00f3n", 4},
    {U"ico", 1},
    {U"ismo", 1},
    {U"oso", 1},
    {U"amiento", 1},
    {U"imiento", 1},
    {U"ivo", 9},
    {U"ador", 2},
    {U"icas", 1},
    {U"ancias", 2},
    {U"encias", 5},
    {U"adoras", 2},
    {U"osas", 1},
    {U"istas", 1},
    {U"ivas", 9},
    {U"anzas", 1},
    {U"log\u00edas", 3},
    {U"idades", 8},
    {U"ables", 1},
    {U"ibles", 1},
    {U"aciones", 2},
    {U"uciones", 4},
    {U"adores", 2},
    {U"antes", 2},
    {U"icos", 1},
    {U"ismos", 1},
    {U"osos", 1},
    {U"amientos", 1},
    {U"imientos", 1},
    {U"ivos", 9},
};
inline constexpr Among a_7[] = {
    {U"ya", 1},
    {U"ye", 1},
    {U"yan", 1},
    {U"yen", 1},
    {U"yeron", 1},
    {U"yendo", 1},
    {U"yo", 1},
    {U"yas", 1},
    {U"yes", 1},
    {U"yais", 1},
    {U"yamos", 1},
    {U"y\u00f3", 1},
};
inline constexpr Among a_8[] = {
    {U"aba", 2},
    {U"ada", 2},
    {U"ida", 2},
    {U"ara", 2},
    {U"iera", 2},
    {U"\u00eda", 2},
    {U"ar\u00eda", 2},
    {U"er\u00eda", 2},
    {U"ir\u00eda", 2},
    {U"ad", 2},
    {U"ed", 2},
    {U"id", 2},
    {U"ase", 2},
    {U"iese", 2},
    {U"aste", 2},
    {U"iste", 2},
    {U"an", 2},
    {U"aban", 2},
    {U"aran", 2},
    {U"ieran", 2},
    {U"\u00edan", 2},
    {U"ar\u00edan", 2},
    {U"er\u00edan", 2},
    {U"ir\u00edan", 2},
    {U"en", 1},
    {U"asen", 2},
    {U"iesen", 2},
    {U"aron", 2},
    {U"ieron", 2},
    {U"ar\u00e1n", 2},
    {U"er\u00e1n", 2},
    {U"ir\u00e1n", 2},
    {U"ado", 2},
    {U"ido", 2},
    {U"ando", 2},
    {U"iendo", 2},
    {U"ar", 2},
    {U"er", 2},
    {U"ir", 2},
    {U"as", 2},
    {U"abas", 2},
    {U"adas", 2},
    {U"idas", 2},
    {U"aras", 2},
    {U"ieras", 2},
    {U"\u00edas", 2},
    {U"ar\u00edas", 2},
    {U"er\u00edas", 2},
    {U"ir\u00edas", 2},
    {U"es", 1},
    {U"ases", 2},
    {U"ieses", 2},
    {U"abais", 2},
    {U"arais", 2},
    {U"ierais", 2},
    {U"\u00edais", 2},
    {U"ar\u00edais", 2},
    {U"er\u00edais", 2},
    {U"ir\u00edais", 2},
    {U"aseis", 2},
    {U"ieseis", 2},
    {U"asteis", 2},
    {U"isteis", 2},
    {U"\u00e1is", 2},
    {U"\u00e9is", 1},
    {U"ar\u00e9is", 2},
    {U"er\u00e9is", 2},
    {U"ir\u00e9is", 2},
    {U"ados", 2},
    {U"idos", 2},
    {U"amos", 2},
    {U"\u00e1bamos", 2},
    {U"\u00e1ramos", 2},
    {U"i\u00e9ramos", 2},
    {U"\u00edamos", 2},
    {U"ar\u00edamos", 2},
    {U"er\u00edamos", 2},
    {U"ir\u00edamos", 2},
    {U"emos", 1},
    {U"aremos", 2},
    {U"eremos", 2},
    {U"iremos", 2},
    {U"\u00e1semos", 2},
    {U"i\u00e9semos", 2},
    {U"imos", 2},
    {U"ar\u00e1s", 2},
    {U"er\u00e1s", 2},
    {U"ir\u00e1s", 2},
    {U"\u00eds", 2},
    {U"ar\u00e1", 2},
    {U"er\u00e1", 2},
    {U"ir\u00e1", 2},
    {U"ar\u00e9", 2},
    {U"er\u00e9", 2},
    {U"ir\u00e9", 2},
    {U"i\u00f3", 2},
};
inline constexpr Among a_9[] = {
    {U"a", 1},
    {U"e", 2},
    {U"o", 1},
    {U"os", 1},
    {U"\u00e1", 1},
    {U"\u00e9", 2},
    {U"\u00ed", 1},
    {U"\u00f3", 1},
};
inline constexpr std::u32string_view g_v = U"aeiou\u00e1\u00e9\u00ed\u00f3\u00fa\u00fc";

struct State {
    Env z;
    Regions r;
    bool rv() const { return r.pV <= z.cursor; }
    bool r1() const { return r.p1 <= z.cursor; }
    bool r2() const { return r.p2 <= z.cursor; }
};

// Deletes an optional literal suffix that must lie in R2. The cursor is left
// unchanged when it does not apply.
inline bool drop_in_r2(State& st, std::u32string_view suffix) {
    Env& z = st.z;
    const int m = z.mark_b();
    z.ket = z.cursor;
    if (!z.eq_s_b(suffix)) return z.reset_b(m), false;
    z.bra = z.cursor;
    if (!st.r2()) return z.reset_b(m), false;
    z.slice_del();
    return true;
}

inline bool drop_among_in_r2(State& st, std::span<const Among> table, int* which = nullptr) {
    Env& z = st.z;
    const int m = z.mark_b();
    z.ket = z.cursor;
    const int v = z.find_among_b(table);
    if (v == 0) return z.reset_b(m), false;
    z.bra = z.cursor;
    if (!st.r2()) return z.reset_b(m), false;
    z.slice_del();
    if (which) *which = v;
    return true;
}

inline void attached_pronoun(State& st) {
    static constexpr std::u32string_view kTo[] = {U"", U"iendo", U"ando", U"ar", U"er", U"ir"};
    Env& z = st.z;
    z.ket = z.cursor;
    if (z.find_among_b(a_1) == 0) return;
    z.bra = z.cursor;
    const int v = z.find_among_b(a_2);
    if (v == 0 || !st.rv()) return;
    if (v <= 5) {
        z.bra = z.cursor;
        z.slice_from(kTo[v]);
    } else if (v == 6) {
        z.slice_del();
    } else {
        if (!z.eq_b(U'u')) return;
        z.slice_del();
    }
}

inline bool standard_suffix(State& st) {
    Env& z = st.z;
    z.ket = z.cursor;
    const int v = z.find_among_b(a_6);
    if (v == 0) return false;
    z.bra = z.cursor;
    switch (v) {
        case 1:
            if (!st.r2()) return false;
            z.slice_del();
            break;
        case 2:
            if (!st.r2()) return false;
            z.slice_del();
            drop_in_r2(st, U"ic");
            break;
        case 3:
            if (!st.r2()) return false;
            z.slice_from(U"log");
            break;
        case 4:
            if (!st.r2()) return false;
            z.slice_from(U"u");
            break;
        case 5:
            if (!st.r2()) return false;
            z.slice_from(U"ente");
            break;
        case 6: {
            if (!st.r1()) return false;
            z.slice_del();
            const int m = z.mark_b();
            int w = 0;
            if (drop_among_in_r2(st, a_3, &w) && w == 1 && !drop_in_r2(st, U"at")) z.reset_b(m);
            break;
        }
        case 7:
            if (!st.r2()) return false;
            z.slice_del();
            drop_among_in_r2(st, a_4);
            break;
        case 8:
            if (!st.r2()) return false;
            z.slice_del();
            drop_among_in_r2(st, a_5);
            break;
        default:
            if (!st.r2()) return false;
            z.slice_del();
            drop_in_r2(st, U"at");
    }
    return true;
}

inline bool y_verb_suffix(State& st) {
    Env& z = st.z;
    if (z.cursor < st.r.pV) return false;
    const int saved = z.lb;
    z.lb = st.r.pV;
    z.ket = z.cursor;
    if (z.find_among_b(a_7) == 0) return z.lb = saved, false;
    z.bra = z.cursor;
    z.lb = saved;
    if (!z.eq_b(U'u')) return false;
    z.slice_del();
    return true;
}

inline bool verb_suffix(State& st) {
    Env& z = st.z;
    if (z.cursor < st.r.pV) return false;
    const int saved = z.lb;
    z.lb = st.r.pV;
    z.ket = z.cursor;
    const int v = z.find_among_b(a_8);
    if (v == 0) return z.lb = saved, false;
    z.bra = z.cursor;
    z.lb = saved;
    if (v == 1) {
        const int m = z.mark_b();
        if (z.eq_b(U'u')) {
            const int u = z.mark_b();
            if (z.eq_b(U'g'))
                z.reset_b(u);
            else
                z.reset_b(m);
        }
        z.bra = z.cursor;
    }
    z.slice_del();
    return true;
}

inline void residual_suffix(State& st) {
    Env& z = st.z;
    z.ket = z.cursor;
    const int v = z.find_among_b(a_9);
    if (v == 0) return;
    z.bra = z.cursor;
    if (!st.rv()) return;
    z.slice_del();
    if (v == 1) return;
    const int m = z.mark_b();
    z.ket = z.cursor;
    if (!z.eq_b(U'u')) return z.reset_b(m);
    z.bra = z.cursor;
    const int u = z.mark_b();
    if (!z.eq_b(U'g')) return z.reset_b(m);
    z.reset_b(u);
    if (!st.rv()) return z.reset_b(m);
    z.slice_del();
}

inline void postlude(Env& z) {
    for (auto& c : z.s) {
        switch (c) {
            case U'á': c = U'a'; break;
            case U'é': c = U'e'; break;
            case U'í': c = U'i'; break;
            case U'ó': c = U'o'; break;
            case U'ú': c = U'u'; break;
            default: break;
        }
    }
}

inline std::u32string stem(std::u32string word) {
    State st{Env(std::move(word)), {}};
    Env& z = st.z;
    mark_rv_iberian(z, g_v, st.r);
    mark_r1_r2(z, g_v, st.r);
    z.lb = 0;
    z.cursor = z.limit;
    attached_pronoun(st);
    z.cursor = z.limit;
    if (!standard_suffix(st)) {
        z.cursor = z.limit;
        if (!y_verb_suffix(st)) {
            z.cursor = z.limit;
            verb_suffix(st);
        }
    }
    z.cursor = z.limit;
    residual_suffix(st);
    postlude(z);
    return z.s;
}

}  // namespace riddler::text::snowball::spanish
