#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dfrm/bitset.hpp"
#include "dfrm/errors.hpp"
#include "dfrm/frame.hpp"
#include "dfrm/poset.hpp"

namespace dfrm {

/// Meet-semilattice closed under all finite meets, so it carries a top
/// element (the empty meet). This is the generator side of a frame
/// presentation.
struct MeetSemilattice {
    FinPoset poset;
    int top = 0;
    std::vector<int> meet;  // n*n row-major

    int size() const { return poset.size(); }
    bool leq(int i, int j) const { return poset.leq(i, j); }
    int meet_of(int i, int j) const { return meet[i * size() + j]; }
    const std::string& label(int i) const { return poset.labels[i]; }

    friend bool operator==(const MeetSemilattice& a, const MeetSemilattice& b) {
        return a.poset.labels == b.poset.labels && a.poset.up == b.poset.up && a.top == b.top &&
               a.meet == b.meet;
    }
};

struct SemilatticeValidation {
    bool ok = true;
    std::string message;
    int a = 0, b = 0, c = 0;
};

inline SemilatticeValidation validate_meet_semilattice(const MeetSemilattice& s) {
    SemilatticeValidation r;
    const int n = s.size();
    auto fail = [&](std::string msg, int a, int b, int c) {
        r.ok = false;
        r.message = std::move(msg);
        r.a = a;
        r.b = b;
        r.c = c;
        return r;
    };
    if (auto v = validate_poset(s.poset)) return fail("order is not a poset: " + v->law, v->a, v->b, v->c);
    if (s.meet.size() != static_cast<std::size_t>(n) * n) return fail("meet table not total", 0, 0, 0);
    for (int v : s.meet)
        if (v < 0 || v >= n) return fail("meet table index out of range", 0, 0, 0);
    if (s.top < 0 || s.top >= n) return fail("top index out of range", 0, 0, 0);
    for (int i = 0; i < n; ++i)
        if (!s.leq(i, s.top)) return fail("top is not greatest", i, s.top, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int m = s.meet_of(x, y);
            if (!s.leq(m, x) || !s.leq(m, y)) return fail("meet is not a lower bound", x, y, m);
            for (int z = 0; z < n; ++z)
                if (s.leq(z, x) && s.leq(z, y) && !s.leq(z, m))
                    return fail("meet is not greatest", x, y, z);
        }
    return r;
}

/// Derives the meet table and top from the order; throws if some pair
/// lacks a greatest lower bound or there is no top.
inline MeetSemilattice semilattice_from_poset(FinPoset poset) {
    const int n = poset.size();
    if (n == 0) throw StructureError("empty carrier");
    MeetSemilattice s;
    s.poset = std::move(poset);
    s.meet.assign(static_cast<std::size_t>(n) * n, 0);
    for (int x = 0; x < n; ++x)
        for (int y = x; y < n; ++y) {
            Bitset lower = s.poset.down[x] & s.poset.down[y];
            int best = -1;
            lower.for_each([&](int c) {
                if (best == -1 || s.poset.leq(best, c)) best = c;
            });
            bool ok = best != -1;
            if (ok)
                lower.for_each([&](int c) {
                    if (!s.poset.leq(c, best)) ok = false;
                });
            if (!ok)
                throw StructureError("no meet of '" + s.poset.labels[x] + "' and '" +
                                     s.poset.labels[y] + "'");
            s.meet[x * n + y] = s.meet[y * n + x] = best;
        }
    int top = -1;
    for (int i = 0; i < n; ++i) {
        bool greatest = true;
        for (int j = 0; j < n; ++j)
            if (!s.poset.leq(j, i)) greatest = false;
        if (greatest) top = i;
    }
    if (top == -1) throw StructureError("no top element");
    s.top = top;
    return s;
}

inline MeetSemilattice semilattice_from_leq(std::vector<std::string> labels,
                                            const std::vector<std::pair<int, int>>& leq_pairs) {
    return semilattice_from_poset(poset_from_leq(std::move(labels), leq_pairs));
}

/// Forgets the joins of a frame.
inline MeetSemilattice as_meet_semilattice(const FinFrame& f) {
    MeetSemilattice s;
    s.poset = f.poset;
    s.top = f.top;
    s.meet = f.meet;
    return s;
}

}  // namespace dfrm
