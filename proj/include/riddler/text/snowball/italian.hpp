#pragma once

#include <string>
#include <string_view>

#include "riddler/text/snowball/env.hpp"
#include "riddler/text/snowball/regions.hpp"

namespace riddler::text::snowball::italian {

inline constexpr Among a_0[] = {
    {U"all'", -1},
    {U"d'", -1},
    {U"dall'", -1},
    {U"dell'", -1},
    {U"gl'", -1},
    {U"l'", -1},
    {U"m'", -1},
    {U"nell'", -1},
    {U"quell'", -1},
    {U"quest'", -1},
    {U"s'", -1},
    {U"sull'", -1},
    {U"t'", -1},
    {U"tutt'", -1},
    {U"un'", -1},
    {U"v'", -1},
};
inline constexpr Among a_1[] = {
    {U"", 7},
    {U"qu", 6},
    {U"\u00e1", 1},
    {U"\u00e9", 2},
    {U"\u00ed", 3},
    {U"\u00f3", 4},
    {U"\u00fa", 5},
};
inline constexpr Among a_2[] = {
    {U"", 3},
    {U"I", 1},
    {U"U", 2},
};
inline constexpr Among a_3[] = {
    {U"la", -1},
    {U"cela", -1},
    {U"gliela", -1},
    {U"mela", -1},
    {U"tela", -1},
    {U"vela", -1},
    {U"le", -1},
    {U"cele", -1},
    {U"gliele", -1},
    {U"mele", -1},
    {U"tele", -1},
    {U"vele", -1},
    {U"ne", -1},
    {U"cene", -1},
    {U"gliene", -1},
    {U"mene", -1},
    {U"sene", -1},
    {U"tene", -1},
    {U"vene", -1},
    {U"ci", -1},
    {U"li", -1},
    {U"celi", -1},
    {U"glieli", -1},
    {U"meli", -1},
    {U"teli", -1},
    {U"veli", -1},
    {U"gli", -1},
    {U"mi", -1},
    {U"si", -1},
    {U"ti", -1},
    {U"vi", -1},
    {U"lo", -1},
    {U"celo", -1},
    {U"glielo", -1},
    {U"melo", -1},
    {U"telo", -1},
    {U"velo", -1},
};
inline constexpr Among a_4[] = {
    {U"ando", 1},
    {U"endo", 1},
    {U"ar", 2},
    {U"er", 2},
    {U"ir", 2},
};
inline constexpr Among a_5[] = {
    {U"ic", -1},
    {U"abil", -1},
    {U"os", -1},
    {U"iv", 1},
};
inline constexpr Among a_6[] = {
    {U"ic", 1},
    {U"abil", 1},
    {U"iv", 1},
};
inline constexpr Among a_7[] = {
    {U"ica", 1},
    {U"logia", 3},
    {U"osa", 1},
    {U"ista", 1},
    {U"iva", 9},
    {U"anza", 1},
    {U"enza", 5},
    {U"ice", 1},
    {U"atrice", 1},
    {U"iche", 1},
    {U"logie", 3},
    {U"abile", 1},
    {U"ibile", 1},
    {U"usione", 4},
    {U"azione", 2},
    {U"uzione", 4},
    {U"atore", 2},
    {U"ose", 1},
    {U"ante", 1},
    {U"mente", 1},
    {U"amente", 7},
    {U"iste", 1},
    {U"ive", 9},
    {U"anze", 1},
    {U"enze", 5},
    {U"ici", 1},
    {U"atrici", 1},
    {U"ichi", 1},
    {U"abili", 1},
    {U"ibili", 1},
    {U"ismi", 1},
    {U"usioni", 4},
    {U"azioni", 2},
    {U"uzioni", 4},
    {U"atori", 2},
    {U"osi", 1},
    {U"anti", 1},
    {U"amenti", 6},
    {U"imenti", 6},
    {U"isti", 1},
    {U"ivi", 9},
    {U"ico", 1},
    {U"ismo", 1},
    {U"oso", 1},
    {U"amento", 6},
    {U"imento", 6},
    {U"ivo", 9},
    {U"it\u00e0", 8},
    {U"ist\u00e0", 1},
    {U"ist\u00e8", 1},
    {U"ist\u00ec", 1},
};
inline constexpr Among a_8[] = {
    {U"isca", 1},
    {U"enda", 1},
    {U"ata", 1},
    {U"ita", 1},
    {U"uta", 1},
    {U"ava", 1},
    {U"eva", 1},
    {U"iva", 1},
    {U"erebbe", 1},
    {U"irebbe", 1},
    {U"isce", 1},
    {U"ende", 1},
    {U"are", 1},
    {U"ere", 1},
    {U"ire", 1},
    {U"asse", 1},
    {U"ate", 1},
    {U"avate", 1},
    {U"evate", 1},
    {U"ivate", 1},
    {U"ete", 1},
    {U"erete", 1},
    {U"irete", 1},
    {U"ite", 1},
    {U"ereste", 1},
    {U"ireste", 1},
    {U"ute", 1},
    {U"erai", 1},
    {U"irai", 1},
    {U"isci", 1},
    {U"endi", 1},
    {U"erei", 1},
    {U"irei", 1},
    {U"assi", 1},
    {U"ati", 1},
    {U"iti", 1},
    {U"eresti", 1},
    {U"iresti", 1},
    {U"uti", 1},
    {U"avi", 1},
    {U"evi", 1},
    {U"ivi", 1},
    {U"isco", 1},
    {U"ando", 1},
    {U"endo", 1},
    {U"Yamo", 1},
    {U"iamo", 1},
    {U"avamo", 1},
    {U"evamo", 1},
    {U"ivamo", 1},
    {U"eremo", 1},
    {U"iremo", 1},
    {U"assimo", 1},
    {U"ammo", 1},
    {U"emmo", 1},
    {U"eremmo", 1},
    {U"iremmo", 1},
    {U"immo", 1},
    {U"ano", 1},
    {U"iscano", 1},
    {U"avano", 1},
    {U"evano", 1},
    {U"ivano", 1},
    {U"eranno", 1},
    {U"iranno", 1},
    {U"ono", 1},
    {U"iscono", 1},
    {U"arono", 1},
    {U"erono", 1},
    {U"irono", 1},
    {U"erebbero", 1},
    {U"irebbero", 1},
    {U"assero", 1},
    {U"essero", 1},
    {U"issero", 1},
    {U"ato", 1},
    {U"ito", 1},
    {U"uto", 1},
    {U"avo", 1},
    {U"evo", 1},
    {U"ivo", 1},
    {U"ar", 1},
    {U"ir", 1},
    {U"er\u00e0", 1},
    {U"ir\u00e0", 1},
    {U"er\u00f2", 1},
    {U"ir\u00f2", 1},
};
inline constexpr std::u32string_view g_AEIO = U"aeio\u00e0\u00e8\u00ec\u00f2";
inline constexpr std::u32string_view g_CG = U"cg";
inline constexpr std::u32string_view g_v = U"aeiou\u00e0\u00e8\u00ec\u00f2\u00f9";

struct State {
    Env z;
    Regions r;
    bool rv() const { return r.pV <= z.cursor; }
    bool r1() const { return r.p1 <= z.cursor; }
    bool r2() const { return r.p2 <= z.cursor; }
};

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

inline void elisions(Env& z) {
    z.cursor = 0;
    z.bra = 0;
    if (z.find_among(a_0) == 0) return;
    z.ket = z.cursor;
    if (z.cursor >= z.limit) return;
    z.slice_del();
}

inline void prelude(Env& z) {
    std::u32string out;
    out.reserve(z.s.size());
    for (std::size_t i = 0; i < z.s.size(); ++i) {
        const char32_t c = z.s[i];
        switch (c) {
            case U'á': out += U'à'; break;
            case U'é': out += U'è'; break;
            case U'í': out += U'ì'; break;
            case U'ó': out += U'ò'; break;
            case U'ú': out += U'ù'; break;
            default:
                if (c == U'q' && i + 1 < z.s.size() && z.s[i + 1] == U'u') {
                    out += U"qU";
                    ++i;
                } else {
                    out += c;
                }
        }
    }
    for (std::size_t p = 0; p + 2 < out.size(); ++p) {
        if (!Env::in(g_v, out[p]) || !Env::in(g_v, out[p + 2])) continue;
        if (out[p + 1] == U'u')
            out[p + 1] = U'U';
        else if (out[p + 1] == U'i')
            out[p + 1] = U'I';
    }
    z.s = std::move(out);
    z.limit = static_cast<int>(z.s.size());
}

inline void attached_pronoun(State& st) {
    Env& z = st.z;
    z.ket = z.cursor;
    if (z.find_among_b(a_3) == 0) return;
    z.bra = z.cursor;
    const int v = z.find_among_b(a_4);
    if (v == 0 || !st.rv()) return;
    z.slice_from(v == 1 ? U"" : U"e");
}

inline bool standard_suffix(State& st) {
    Env& z = st.z;
    z.ket = z.cursor;
    const int v = z.find_among_b(a_7);
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
        case 6:
            if (!st.rv()) return false;
            z.slice_del();
            break;
        case 7: {
            if (!st.r1()) return false;
            z.slice_del();
            int w = 0;
            if (drop_among_in_r2(st, a_5, &w) && w == 1) drop_in_r2(st, U"at");
            break;
        }
        case 8:
            if (!st.r2()) return false;
            z.slice_del();
            drop_among_in_r2(st, a_6);
            break;
        default:
            if (!st.r2()) return false;
            z.slice_del();
            if (drop_in_r2(st, U"at")) drop_in_r2(st, U"ic");
    }
    return true;
}

inline bool verb_suffix(State& st) {
    Env& z = st.z;
    if (z.cursor < st.r.pV) return false;
    const int saved = z.lb;
    z.lb = st.r.pV;
    z.ket = z.cursor;
    if (z.find_among_b(a_8) == 0) return z.lb = saved, false;
    z.bra = z.cursor;
    z.slice_del();
    z.lb = saved;
    return true;
}

inline void vowel_suffix(State& st) {
    Env& z = st.z;
    z.ket = z.cursor;
    if (z.in_grouping_b(g_AEIO)) {
        z.bra = z.cursor;
        if (st.rv()) {
            z.slice_del();
            z.ket = z.cursor;
            if (z.eq_b(U'i')) {
                z.bra = z.cursor;
                if (st.rv()) z.slice_del();
            }
        }
    }
    z.cursor = z.limit;
    z.ket = z.cursor;
    if (!z.eq_b(U'h')) return;
    z.bra = z.cursor;
    if (!z.in_grouping_b(g_CG)) return;
    if (!st.rv()) return;
    z.slice_del();
}

inline std::u32string stem(std::u32string word) {
    State st{Env(std::move(word)), {}};
    Env& z = st.z;
    elisions(z);
    prelude(z);
    mark_rv_iberian(z, g_v, st.r, U"divan");
    mark_r1_r2(z, g_v, st.r);
    z.lb = 0;
    z.cursor = z.limit;
    attached_pronoun(st);
    z.cursor = z.limit;
    if (!standard_suffix(st)) {
        z.cursor = z.limit;
        verb_suffix(st);
    }
    z.cursor = z.limit;
    vowel_suffix(st);
    for (auto& c : z.s) {
        if (c == U'I')
            c = U'i';
        else if (c == U'U')
            c = U'u';
    }
    return z.s;
}

}  // namespace riddler::text::snowball::italian
