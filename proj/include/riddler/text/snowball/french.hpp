#pragma once

#include <string>
#include <string_view>

#include "riddler/text/snowball/env.hpp"

namespace riddler::text::snowball::french {

inline constexpr Among a_0[] = {
    {U"col", -1},
    {U"ni", 1},
    {U"par", -1},
    {U"tap", -1},
};
inline constexpr Among a_1[] = {
    {U"", 7},
    {U"H", 6},
    {U"He", 4},
    {U"Hi", 5},
    {U"I", 1},
    {U"U", 2},
    {U"Y", 3},
};
inline constexpr Among a_2[] = {
    {U"iqU", 3},
    {U"abl", 3},
    {U"I\u00e8r", 4},
    {U"i\u00e8r", 4},
    {U"eus", 2},
    {U"iv", 1},
};
inline constexpr Among a_3[] = {
    {U"ic", 2},
    {U"abil", 1},
    {U"iv", 3},
};
inline constexpr Among a_4[] = {
    {U"iqUe", 1},
    {U"atrice", 2},
    {U"ance", 1},
    {U"ence", 5},
    {U"logie", 3},
    {U"able", 1},
    {U"isme", 1},
    {U"euse", 12},
    {U"iste", 1},
    {U"ive", 8},
    {U"if", 8},
    {U"usion", 4},
    {U"ation", 2},
    {U"ution", 4},
    {U"ateur", 2},
    {U"iqUes", 1},
    {U"atrices", 2},
    {U"ances", 1},
    {U"ences", 5},
    {U"logies", 3},
    {U"ables", 1},
    {U"ismes", 1},
    {U"euses", 12},
    {U"istes", 1},
    {U"ives", 8},
    {U"ifs", 8},
    {U"usions", 4},
    {U"ations", 2},
    {U"utions", 4},
    {U"ateurs", 2},
    {U"ments", 16},
    {U"ements", 6},
    {U"issements", 13},
    {U"it\u00e9s", 7},
    {U"ment", 16},
    {U"ement", 6},
    {U"issement", 13},
    {U"amment", 14},
    {U"emment", 15},
    {U"aux", 10},
    {U"eaux", 9},
    {U"eux", 1},
    {U"oux", 11},
    {U"it\u00e9", 7},
};
inline constexpr Among a_5[] = {
    {U"ira", 1},
    {U"ie", 1},
    {U"isse", 1},
    {U"issante", 1},
    {U"i", 1},
    {U"irai", 1},
    {U"ir", 1},
    {U"iras", 1},
    {U"ies", 1},
    {U"\u00eemes", 1},
    {U"isses", 1},
    {U"issantes", 1},
    {U"\u00eetes", 1},
    {U"is", 1},
    {U"irais", 1},
    {U"issais", 1},
    {U"irions", 1},
    {U"issions", 1},
    {U"irons", 1},
    {U"issons", 1},
    {U"issants", 1},
    {U"it", 1},
    {U"irait", 1},
    {U"issait", 1},
    {U"issant", 1},
    {U"iraIent", 1},
    {U"issaIent", 1},
    {U"irent", 1},
    {U"issent", 1},
    {U"iront", 1},
    {U"\u00eet", 1},
    {U"iriez", 1},
    {U"issiez", 1},
    {U"irez", 1},
    {U"issez", 1},
};
inline constexpr Among a_6[] = {
    {U"al", 1},
    {U"\u00e9pl", -1},
    {U"auv", -1},
};
inline constexpr Among a_7[] = {
    {U"a", 3},
    {U"era", 2},
    {U"aise", 4},
    {U"asse", 3},
    {U"ante", 3},
    {U"\u00e9e", 2},
    {U"ai", 3},
    {U"erai", 2},
    {U"er", 2},
    {U"as", 3},
    {U"eras", 2},
    {U"\u00e2mes", 3},
    {U"aises", 4},
    {U"asses", 3},
    {U"antes", 3},
    {U"\u00e2tes", 3},
    {U"\u00e9es", 2},
    {U"ais", 4},
    {U"eais", 2},
    {U"erais", 2},
    {U"ions", 1},
    {U"erions", 2},
    {U"assions", 3},
    {U"erons", 2},
    {U"ants", 3},
    {U"\u00e9s", 2},
    {U"ait", 3},
    {U"erait", 2},
    {U"ant", 3},
    {U"aIent", 3},
    {U"eraIent", 2},
    {U"\u00e8rent", 2},
    {U"assent", 3},
    {U"eront", 2},
    {U"\u00e2t", 3},
    {U"ez", 2},
    {U"iez", 2},
    {U"eriez", 2},
    {U"assiez", 3},
    {U"erez", 2},
    {U"\u00e9", 2},
};
inline constexpr Among a_8[] = {
    {U"e", 3},
    {U"I\u00e8re", 2},
    {U"i\u00e8re", 2},
    {U"ion", 1},
    {U"Ier", 2},
    {U"ier", 2},
};
inline constexpr Among a_9[] = {
    {U"ell", -1},
    {U"eill", -1},
    {U"enn", -1},
    {U"onn", -1},
    {U"ett", -1},
};
inline constexpr std::u32string_view g_elision_char = U"cdjlmnst";
inline constexpr std::u32string_view g_keep_with_s = U"aiosu\u00e8";
inline constexpr std::u32string_view g_oux_ending = U"bhjlnp";
inline constexpr std::u32string_view g_v = U"aeiouy\u00e0\u00e2\u00e8\u00e9\u00ea\u00eb\u00ee\u00ef\u00f4\u00f9\u00fb";

struct State {
    Env z;
    int pV = 0;
    int p1 = 0;
    int p2 = 0;
    bool rv() const { return pV <= z.cursor; }
    bool r1() const { return p1 <= z.cursor; }
    bool r2() const { return p2 <= z.cursor; }
};

inline void elisions(Env& z) {
    z.cursor = 0;
    z.bra = 0;
    if (!z.in_grouping(g_elision_char) && !z.eq_s(U"qu")) return;
    if (!z.eq(U'\'')) return;
    z.ket = z.cursor;
    if (z.cursor >= z.limit) return;
    z.slice_del();
}

// Marks u/i/y that act as consonants, and splits diaereses into H + vowel.
inline bool prelude_at(Env& z, int p) {
    auto at = [&](int i) -> char32_t { return i < z.limit ? z.at(i) : 0; };
    auto set = [&](int b, int k, std::u32string_view t) {
        z.bra = b;
        z.ket = k;
        z.slice_from(t);
    };
    const char32_t c = at(p);
    if (p < z.limit && Env::in(g_v, c)) {
        const char32_t n = at(p + 1);
        const bool next_v = p + 2 < z.limit && Env::in(g_v, at(p + 2));
        if (n == U'u' && next_v) return set(p + 1, p + 2, U"U"), true;
        if (n == U'i' && next_v) return set(p + 1, p + 2, U"I"), true;
        if (n == U'y') return set(p + 1, p + 2, U"Y"), true;
    }
    if (c == U'ë') return set(p, p + 1, U"He"), true;
    if (c == U'ï') return set(p, p + 1, U"Hi"), true;
    if (c == U'y' && p + 1 < z.limit && Env::in(g_v, at(p + 1))) return set(p, p + 1, U"Y"), true;
    if (c == U'q' && at(p + 1) == U'u') return set(p + 1, p + 2, U"U"), true;
    return false;
}

inline void prelude(Env& z) {
    int p = 0;
    while (p < z.limit) {
        if (!prelude_at(z, p)) ++p;
    }
}

inline void mark_regions(State& st) {
    Env& z = st.z;
    st.pV = st.p1 = st.p2 = z.limit;
    z.cursor = 0;
    if (z.in_grouping(g_v) && z.in_grouping(g_v) && z.cursor < z.limit) {
        st.pV = z.cursor + 1;
    } else {
        z.cursor = 0;
        const int v = z.find_among(a_0);
        if (v != 0 && (v != 1 || z.in_grouping(g_v))) {
            st.pV = z.cursor;
        } else {
            z.cursor = 0;
            if (z.cursor < z.limit) {
                ++z.cursor;
                if (z.go_out_grouping(g_v)) st.pV = z.cursor + 1;
            }
        }
    }
    z.cursor = 0;
    if (!z.go_out_grouping(g_v)) return;
    ++z.cursor;
    if (!z.go_in_grouping(g_v)) return;
    ++z.cursor;
    st.p1 = z.cursor;
    if (!z.go_out_grouping(g_v)) return;
    ++z.cursor;
    if (!z.go_in_grouping(g_v)) return;
    ++z.cursor;
    st.p2 = z.cursor;
}

inline void postlude(Env& z) {
    std::u32string out;
    out.reserve(z.s.size());
    for (std::size_t i = 0; i < z.s.size(); ++i) {
        const char32_t c = z.s[i];
        const char32_t n = i + 1 < z.s.size() ? z.s[i + 1] : 0;
        if (c == U'H' && n == U'e') {
            out += U'ë';
            ++i;
        } else if (c == U'H' && n == U'i') {
            out += U'ï';
            ++i;
        } else if (c == U'H') {
        } else if (c == U'I') {
            out += U'i';
        } else if (c == U'U') {
            out += U'u';
        } else if (c == U'Y') {
            out += U'y';
        } else {
            out += c;
        }
    }
    z.s = std::move(out);
    z.limit = static_cast<int>(z.s.size());
}

// "ic" after a removed suffix: dropped in R2, otherwise rewritten.
inline void ic_tail(State& st) {
    Env& z = st.z;
    if (st.r2())
        z.slice_del();
    else
        z.slice_from(U"iqU");
}

inline bool standard_suffix(State& st) {
    Env& z = st.z;
    z.ket = z.cursor;
    int v = z.find_among_b(a_4);
    if (v == 0) return false;
    z.bra = z.cursor;
    switch (v) {
        case 1:
            if (!st.r2()) return false;
            z.slice_del();
            break;
        case 2: {
            if (!st.r2()) return false;
            z.slice_del();
            z.ket = z.cursor;
            const int m = z.mark_b();
            if (z.eq_s_b(U"ic")) {
                z.bra = z.cursor;
                ic_tail(st);
            } else {
                z.reset_b(m);
            }
            break;
        }
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
            z.slice_from(U"ent");
            break;
        case 6: {
            if (!st.rv()) return false;
            z.slice_del();
            const int m = z.mark_b();
            z.ket = z.cursor;
            const int w = z.find_among_b(a_2);
            if (w == 0) {
                z.reset_b(m);
                break;
            }
            z.bra = z.cursor;
            if (w == 1) {
                if (!st.r2()) {
                    z.reset_b(m);
                    break;
                }
                z.slice_del();
                z.ket = z.cursor;
                if (!z.eq_s_b(U"at")) {
                    z.reset_b(m);
                    break;
                }
                z.bra = z.cursor;
                if (!st.r2()) {
                    z.reset_b(m);
                    break;
                }
                z.slice_del();
            } else if (w == 2) {
                if (st.r2()) {
                    z.slice_del();
                } else if (st.r1()) {
                    z.slice_from(U"eux");
                } else {
                    z.reset_b(m);
                }
            } else if (w == 3) {
                if (!st.r2()) {
                    z.reset_b(m);
                    break;
                }
                z.slice_del();
            } else {
                if (!st.rv()) {
                    z.reset_b(m);
                    break;
                }
                z.slice_from(U"i");
            }
            break;
        }
        case 7: {
            if (!st.r2()) return false;
            z.slice_del();
            const int m = z.mark_b();
            z.ket = z.cursor;
            const int w = z.find_among_b(a_3);
            if (w == 0) {
                z.reset_b(m);
                break;
            }
            z.bra = z.cursor;
            if (w == 1) {
                if (st.r2())
                    z.slice_del();
                else
                    z.slice_from(U"abl");
            } else if (w == 2) {
                ic_tail(st);
            } else {
                if (!st.r2()) {
                    z.reset_b(m);
                    break;
                }
                z.slice_del();
            }
            break;
        }
        case 8: {
            if (!st.r2()) return false;
            z.slice_del();
            const int m = z.mark_b();
            z.ket = z.cursor;
            if (!z.eq_s_b(U"at")) {
                z.reset_b(m);
                break;
            }
            z.bra = z.cursor;
            if (!st.r2()) {
                z.reset_b(m);
                break;
            }
            z.slice_del();
            z.ket = z.cursor;
            if (!z.eq_s_b(U"ic")) {
                z.reset_b(m);
                break;
            }
            z.bra = z.cursor;
            ic_tail(st);
            break;
        }
        case 9:
            z.slice_from(U"eau");
            break;
        case 10:
            if (!st.r1()) return false;
            z.slice_from(U"al");
            break;
        case 11:
            if (!z.in_grouping_b(g_oux_ending)) return false;
            z.slice_from(U"ou");
            break;
        case 12:
            if (st.r2()) {
                z.slice_del();
            } else {
                if (!st.r1()) return false;
                z.slice_from(U"eux");
            }
            break;
        case 13:
            if (!st.r1()) return false;
            if (!z.out_grouping_b(g_v)) return false;
            z.slice_del();
            break;
        case 14:
            if (!st.rv()) return false;
            z.slice_from(U"ant");
            return false;
        case 15:
            if (!st.rv()) return false;
            z.slice_from(U"ent");
            return false;
        default: {
            const int m = z.mark_b();
            if (!z.in_grouping_b(g_v)) return false;
            if (!st.rv()) return false;
            z.reset_b(m);
            z.slice_del();
            return false;
        }
    }
    return true;
}

inline bool i_verb_suffix(State& st) {
    Env& z = st.z;
    if (z.cursor < st.pV) return false;
    const int saved = z.lb;
    z.lb = st.pV;
    z.ket = z.cursor;
    bool ok = false;
    if (z.find_among_b(a_5) != 0) {
        z.bra = z.cursor;
        const bool after_h = z.cursor > z.lb && z.at(z.cursor - 1) == U'H';
        if (!after_h && z.out_grouping_b(g_v)) {
            z.slice_del();
            ok = true;
        }
    }
    z.lb = saved;
    return ok;
}

inline bool verb_suffix(State& st) {
    Env& z = st.z;
    if (z.cursor < st.pV) return false;
    const int saved = z.lb;
    z.lb = st.pV;
    z.ket = z.cursor;
    const int v = z.find_among_b(a_7);
    if (v == 0) {
        z.lb = saved;
        return false;
    }
    z.bra = z.cursor;
    z.lb = saved;
    if (v == 1) {
        if (!st.r2()) return false;
        z.slice_del();
    } else if (v == 2) {
        z.slice_del();
    } else if (v == 3) {
        const int m = z.mark_b();
        if (z.eq_b(U'e') && st.rv())
            z.bra = z.cursor;
        else
            z.reset_b(m);
        z.slice_del();
    } else {
        const int m = z.mark_b();
        const int w = z.find_among_b(a_6);
        bool keep = false;
        if (w == -1) {
            keep = true;
        } else if (w == 1 && z.cursor > z.lb) {
            --z.cursor;
            keep = z.cursor <= z.lb;
        }
        if (keep) return false;
        z.reset_b(m);
        z.slice_del();
    }
    return true;
}

inline bool residual_suffix(State& st) {
    Env& z = st.z;
    {
        const int m = z.mark_b();
        z.ket = z.cursor;
        if (z.eq_b(U's')) {
            z.bra = z.cursor;
            const int m2 = z.mark_b();
            if (z.eq_s_b(U"Hi") || z.out_grouping_b(g_keep_with_s)) {
                z.reset_b(m2);
                z.slice_del();
            } else {
                z.reset_b(m);
            }
        } else {
            z.reset_b(m);
        }
    }
    if (z.cursor < st.pV) return false;
    const int saved = z.lb;
    z.lb = st.pV;
    z.ket = z.cursor;
    const int v = z.find_among_b(a_8);
    if (v == 0) {
        z.lb = saved;
        return false;
    }
    z.bra = z.cursor;
    if (v == 1) {
        if (!st.r2() || !(z.eq_b(U's') || z.eq_b(U't'))) {
            z.lb = saved;
            return false;
        }
        z.slice_del();
    } else if (v == 2) {
        z.slice_from(U"i");
    } else {
        z.slice_del();
    }
    z.lb = saved;
    return true;
}

inline void un_double(Env& z) {
    const int m = z.mark_b();
    if (z.find_among_b(a_9) == 0) return;
    z.reset_b(m);
    z.ket = z.cursor;
    if (z.cursor <= z.lb) return;
    --z.cursor;
    z.bra = z.cursor;
    z.slice_del();
}

inline void un_accent(Env& z) {
    int consonants = 0;
    while (z.out_grouping_b(g_v)) ++consonants;
    if (consonants == 0) return;
    z.ket = z.cursor;
    if (!z.eq_b(U'é') && !z.eq_b(U'è')) return;
    z.bra = z.cursor;
    z.slice_from(U"e");
}

inline std::u32string stem(std::u32string word) {
    State st{Env(std::move(word))};
    Env& z = st.z;
    elisions(z);
    prelude(z);
    mark_regions(st);
    z.lb = 0;
    z.cursor = z.limit;
    if (standard_suffix(st) || (z.cursor = z.limit, i_verb_suffix(st)) || (z.cursor = z.limit, verb_suffix(st))) {
        z.cursor = z.limit;
        z.ket = z.cursor;
        if (z.eq_b(U'Y')) {
            z.bra = z.cursor;
            z.slice_from(U"i");
        } else if (z.eq_b(U'ç')) {
            z.bra = z.cursor;
            z.slice_from(U"c");
        }
    } else {
        z.cursor = z.limit;
        residual_suffix(st);
    }
    z.cursor = z.limit;
    un_double(z);
    z.cursor = z.limit;
    un_accent(z);
    postlude(z);
    return z.s;
}

}  // namespace riddler::text::snowball::french
