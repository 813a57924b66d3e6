#pragma once

#include <string>
#include <string_view>

#include "riddler/text/snowball/env.hpp"

namespace riddler::text::snowball::english {

inline constexpr Among a_0[] = {
    {U"arsen", -1},
    {U"commun", -1},
    {U"emerg", -1},
    {U"gener", -1},
    {U"inter", -1},
    {U"later", -1},
    {U"organ", -1},
    {U"past", -1},
    {U"univers", -1},
};
inline constexpr Among a_1[] = {
    {U"'", 1},
    {U"'s'", 1},
    {U"'s", 1},
};
inline constexpr Among a_10[] = {
    {U"e", 1},
    {U"l", 2},
};
inline constexpr Among a_11[] = {
    {U"andes", -1},
    {U"atlas", -1},
    {U"bias", -1},
    {U"cosmos", -1},
    {U"early", 6},
    {U"gently", 4},
    {U"howe", -1},
    {U"idly", 3},
    {U"news", -1},
    {U"only", 7},
    {U"singly", 8},
    {U"skies", 2},
    {U"skis", 1},
    {U"sky", -1},
    {U"ugly", 5},
};
inline constexpr Among a_2[] = {
    {U"ied", 2},
    {U"s", 3},
    {U"ies", 2},
    {U"sses", 1},
    {U"ss", -1},
    {U"us", -1},
};
inline constexpr Among a_3[] = {
    {U"succ", 1},
    {U"proc", 1},
    {U"exc", 1},
};
inline constexpr Among a_4[] = {
    {U"even", 2},
    {U"cann", 2},
    {U"inn", 2},
    {U"earr", 2},
    {U"herr", 2},
    {U"out", 2},
    {U"y", 1},
};
inline constexpr Among a_5[] = {
    {U"", -1},
    {U"ed", 2},
    {U"eed", 1},
    {U"ing", 3},
    {U"edly", 2},
    {U"eedly", 1},
    {U"ingly", 2},
};
inline constexpr Among a_6[] = {
    {U"", 3},
    {U"bb", 2},
    {U"dd", 2},
    {U"ff", 2},
    {U"gg", 2},
    {U"bl", 1},
    {U"mm", 2},
    {U"nn", 2},
    {U"pp", 2},
    {U"rr", 2},
    {U"at", 1},
    {U"tt", 2},
    {U"iz", 1},
};
inline constexpr Among a_7[] = {
    {U"anci", 3},
    {U"enci", 2},
    {U"ogi", 14},
    {U"li", 16},
    {U"bli", 12},
    {U"abli", 4},
    {U"alli", 8},
    {U"fulli", 9},
    {U"lessli", 15},
    {U"ousli", 10},
    {U"entli", 5},
    {U"aliti", 8},
    {U"biliti", 12},
    {U"iviti", 11},
    {U"tional", 1},
    {U"ational", 7},
    {U"alism", 8},
    {U"ation", 7},
    {U"ization", 6},
    {U"izer", 6},
    {U"ator", 7},
    {U"iveness", 11},
    {U"fulness", 9},
    {U"ousness", 10},
    {U"ogist", 13},
};
inline constexpr Among a_8[] = {
    {U"icate", 4},
    {U"ative", 6},
    {U"alize", 3},
    {U"iciti", 4},
    {U"ical", 4},
    {U"tional", 1},
    {U"ational", 2},
    {U"ful", 5},
    {U"ness", 5},
};
inline constexpr Among a_9[] = {
    {U"ic", 1},
    {U"ance", 1},
    {U"ence", 1},
    {U"able", 1},
    {U"ible", 1},
    {U"ate", 1},
    {U"ive", 1},
    {U"ize", 1},
    {U"iti", 1},
    {U"al", 1},
    {U"ism", 1},
    {U"ion", 2},
    {U"er", 1},
    {U"ous", 1},
    {U"ant", 1},
    {U"ent", 1},
    {U"ment", 1},
    {U"ement", 1},
};
inline constexpr std::u32string_view g_aeo = U"aeo";
inline constexpr std::u32string_view g_v = U"aeiouy";
inline constexpr std::u32string_view g_v_WXY = U"Yaeiouwxy";
inline constexpr std::u32string_view g_valid_LI = U"cdeghkmnrt";

inline constexpr std::u32string_view kExceptionForms[] = {U"ski", U"sky", U"idl", U"gentl", U"ugli", U"earli", U"onli", U"singl"};

struct State {
    Env z;
    int p1 = 0;
    int p2 = 0;
    bool y_found = false;
};

inline void prelude(State& st) {
    auto& s = st.z.s;
    if (!s.empty() && s[0] == U'\'') s.erase(0, 1);
    if (!s.empty() && s[0] == U'y') {
        s[0] = U'Y';
        st.y_found = true;
    }
    for (std::size_t p = 0; p + 1 < s.size(); ++p) {
        if (Env::in(g_v, s[p]) && s[p + 1] == U'y') {
            s[p + 1] = U'Y';
            st.y_found = true;
        }
    }
    st.z.limit = static_cast<int>(s.size());
}

inline void mark_regions(State& st) {
    Env& z = st.z;
    st.p1 = st.p2 = z.limit;
    z.cursor = 0;
    if (z.find_among(a_0) == 0) {
        z.cursor = 0;
        if (!z.go_out_grouping(g_v)) return;
        ++z.cursor;
        if (!z.go_in_grouping(g_v)) return;
        ++z.cursor;
    }
    st.p1 = z.cursor;
    if (!z.go_out_grouping(g_v)) return;
    ++z.cursor;
    if (!z.go_in_grouping(g_v)) return;
    ++z.cursor;
    st.p2 = z.cursor;
}

inline bool shortv(Env& z) {
    const int m = z.mark_b();
    if (z.out_grouping_b(g_v_WXY) && z.in_grouping_b(g_v) && z.out_grouping_b(g_v)) return true;
    z.reset_b(m);
    if (z.out_grouping_b(g_v) && z.in_grouping_b(g_v) && z.cursor <= z.lb) return true;
    z.reset_b(m);
    return z.eq_s_b(U"past");
}

inline void step_1a(State& st) {
    Env& z = st.z;
    int m = z.mark_b();
    z.ket = z.cursor;
    if (z.find_among_b(a_1) != 0) {
        z.bra = z.cursor;
        z.slice_del();
    } else {
        z.reset_b(m);
    }
    z.ket = z.cursor;
    const int v = z.find_among_b(a_2);
    if (v == 0) return;
    z.bra = z.cursor;
    if (v == 1) {
        z.slice_from(U"ss");
    } else if (v == 2) {
        if (z.cursor - 2 >= z.lb) {
            z.cursor -= 2;
            z.slice_from(U"i");
        } else {
            z.slice_from(U"ie");
        }
    } else if (v == 3) {
        if (z.cursor <= z.lb) return;
        --z.cursor;
        if (!z.go_out_grouping_b(g_v)) return;
        z.slice_del();
    }
}

inline void step_1b(State& st) {
    Env& z = st.z;
    z.ket = z.cursor;
    int v = z.find_among_b(a_5);
    z.bra = z.cursor;
    const int m1 = z.mark_b();
    bool general = false;
    if (v == 1) {
        if (z.cursor >= st.p1) {
            const int m3 = z.mark_b();
            if (!(z.find_among_b(a_3) != 0 && z.cursor <= z.lb)) {
                z.reset_b(m3);
                z.slice_from(U"ee");
            }
        }
        return;
    } else if (v == 2) {
        general = true;
    } else if (v == 3) {
        v = z.find_among_b(a_4);
        if (v == 0) {
            general = true;
        } else if (v == 1) {
            const int m4 = z.mark_b();
            if (z.out_grouping_b(g_v) && z.cursor <= z.lb) {
                z.reset_b(m4);
                z.bra = z.cursor;
                z.slice_from(U"ie");
                return;
            }
            general = true;
        } else {
            if (z.cursor <= z.lb) return;
            general = true;
        }
    } else {
        return;
    }
    if (!general) return;
    z.reset_b(m1);
    const int m5 = z.mark_b();
    if (!z.go_out_grouping_b(g_v)) return;
    z.reset_b(m5);
    z.slice_del();
    z.ket = z.bra = z.cursor;
    const int m6 = z.mark_b();
    v = z.find_among_b(a_6);
    if (v == 1) {
        z.slice_from(U"e");
        return;
    } else if (v == 2) {
        const int m7 = z.mark_b();
        if (z.in_grouping_b(g_aeo) && z.cursor <= z.lb) return;
        z.reset_b(m7);
    } else {
        if (z.cursor != st.p1) return;
        const int m8 = z.mark_b();
        if (!shortv(z)) return;
        z.reset_b(m8);
        z.slice_from(U"e");
        return;
    }
    z.reset_b(m6);
    z.ket = z.cursor;
    if (z.cursor <= z.lb) return;
    --z.cursor;
    z.bra = z.cursor;
    z.slice_del();
}

inline void step_1c(State& st) {
    Env& z = st.z;
    z.ket = z.cursor;
    if (!z.eq_b(U'y') && !z.eq_b(U'Y')) return;
    z.bra = z.cursor;
    if (!z.out_grouping_b(g_v)) return;
    if (z.cursor <= z.lb) return;
    z.slice_from(U"i");
}

inline void step_2(State& st) {
    static constexpr std::u32string_view kTo[] = {U"",    U"tion", U"ence", U"ance", U"able", U"ent", U"ize", U"ate", U"al",
                                                  U"ful", U"ous",  U"ive",  U"ble",  U"og",   U"",    U"less"};
    Env& z = st.z;
    z.ket = z.cursor;
    const int v = z.find_among_b(a_7);
    if (v == 0) return;
    z.bra = z.cursor;
    if (z.cursor < st.p1) return;
    if (v == 14) {
        if (!z.eq_b(U'l')) return;
        z.slice_from(U"og");
    } else if (v == 16) {
        if (!z.in_grouping_b(g_valid_LI)) return;
        z.slice_del();
    } else {
        z.slice_from(kTo[v]);
    }
}

inline void step_3(State& st) {
    Env& z = st.z;
    z.ket = z.cursor;
    const int v = z.find_among_b(a_8);
    if (v == 0) return;
    z.bra = z.cursor;
    if (z.cursor < st.p1) return;
    switch (v) {
        case 1: z.slice_from(U"tion"); break;
        case 2: z.slice_from(U"ate"); break;
        case 3: z.slice_from(U"al"); break;
        case 4: z.slice_from(U"ic"); break;
        case 5: z.slice_del(); break;
        default:
            if (z.cursor < st.p2) return;
            z.slice_del();
    }
}

inline void step_4(State& st) {
    Env& z = st.z;
    z.ket = z.cursor;
    const int v = z.find_among_b(a_9);
    if (v == 0) return;
    z.bra = z.cursor;
    if (z.cursor < st.p2) return;
    if (v == 1) {
        z.slice_del();
    } else {
        if (!z.eq_b(U's') && !z.eq_b(U't')) return;
        z.slice_del();
    }
}

inline void step_5(State& st) {
    Env& z = st.z;
    z.ket = z.cursor;
    const int v = z.find_among_b(a_10);
    if (v == 0) return;
    z.bra = z.cursor;
    if (v == 1) {
        if (z.cursor < st.p2) {
            if (z.cursor < st.p1) return;
            const int m = z.mark_b();
            if (shortv(z)) return;
            z.reset_b(m);
        }
        z.slice_del();
    } else {
        if (z.cursor < st.p2) return;
        if (!z.eq_b(U'l')) return;
        z.slice_del();
    }
}

inline std::u32string stem(std::u32string word) {
    for (const auto& a : a_11) {
        if (a.s == word) return a.result > 0 ? std::u32string(kExceptionForms[a.result - 1]) : word;
    }
    if (word.size() < 3) return word;
    State st{Env(std::move(word))};
    prelude(st);
    mark_regions(st);
    Env& z = st.z;
    z.lb = 0;
    using Step = void (*)(State&);
    for (Step f : {step_1a, step_1b, step_1c, step_2, step_3, step_4, step_5}) {
        z.cursor = z.limit;
        f(st);
    }
    if (st.y_found) {
        for (auto& c : z.s)
            if (c == U'Y') c = U'y';
    }
    return z.s;
}

}  // namespace riddler::text::snowball::english
