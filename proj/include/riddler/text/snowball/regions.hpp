#pragma once

#include <string_view>

#include "riddler/text/snowball/env.hpp"

namespace riddler::text::snowball {

struct Regions {
    int pV = 0;
    int p1 = 0;
    int p2 = 0;
};

// R1 and R2: each starts after the first non-vowel that follows a vowel.
inline void mark_r1_r2(Env& z, std::u32string_view v, Regions& r) {
    r.p1 = r.p2 = z.limit;
    z.cursor = 0;
    if (!z.go_out_grouping(v)) return;
    ++z.cursor;
    if (!z.go_in_grouping(v)) return;
    ++z.cursor;
    r.p1 = z.cursor;
    if (!z.go_out_grouping(v)) return;
    ++z.cursor;
    if (!z.go_in_grouping(v)) return;
    ++z.cursor;
    r.p2 = z.cursor;
}

// RV as used by the Spanish and Italian stemmers. The optional prefix is an
// exception that fixes RV right after it.
inline void mark_rv_iberian(Env& z, std::u32string_view v, Regions& r, std::u32string_view prefix = {}) {
    r.pV = z.limit;
    z.cursor = 0;
    if (z.in_grouping(v)) {
        const int c = z.cursor;
        if (z.out_grouping(v) && z.go_out_grouping(v)) {
            r.pV = z.cursor + 1;
            return;
        }
        z.cursor = c;
        if (z.in_grouping(v) && z.go_in_grouping(v)) {
            r.pV = z.cursor + 1;
            return;
        }
    }
    z.cursor = 0;
    if (!prefix.empty() && z.eq_s(prefix)) {
        r.pV = z.cursor;
        return;
    }
    z.cursor = 0;
    if (!z.out_grouping(v)) return;
    const int c = z.cursor;
    if (z.out_grouping(v) && z.go_out_grouping(v)) {
        r.pV = z.cursor + 1;
        return;
    }
    z.cursor = c;
    if (!z.in_grouping(v)) return;
    if (z.cursor >= z.limit) return;
    r.pV = z.cursor + 1;
}

}  // namespace riddler::text::snowball
