#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "dfrm/bitset.hpp"
#include "dfrm/errors.hpp"
#include "dfrm/frame.hpp"
#include "dfrm/semilattice.hpp"

namespace dfrm {

/// A cover U -| a declares the equation "join U = a"; U must lie below a.
struct Cover {
    int covered;      // a
    Bitset coverers;  // U, subset of the base carrier

    friend bool operator==(const Cover& x, const Cover& y) {
        return x.covered == y.covered && x.coverers == y.coverers;
    }
    friend bool operator<(const Cover& x, const Cover& y) {
        if (x.covered != y.covered) return x.covered < y.covered;
        return x.coverers < y.coverers;
    }
};

/// Generators-and-covers description of a frame. `stable` records that
/// the cover set has been verified (or completed) to satisfy the
/// stability condition: U -| a and b <= a imply {u /\ b : u in U} -| b.
struct FramePresentation {
    MeetSemilattice base;
    std::vector<Cover> covers;
    bool stable = false;
};

namespace detail {
inline void check_cover_shape(const MeetSemilattice& base, const Cover& c) {
    if (c.covered < 0 || c.covered >= base.size())
        throw StructureError("cover target index out of range");
    if (c.coverers.universe() != base.size())
        throw StructureError("cover set universe mismatch");
    int bad = -1;
    c.coverers.for_each([&](int u) {
        if (bad == -1 && !base.leq(u, c.covered)) bad = u;
    });
    if (bad != -1)
        throw StructureError("malformed cover: '" + base.label(bad) + "' is not below '" +
                             base.label(c.covered) + "'");
}
}  // namespace detail

/// Least superset of the covers closed under the stability condition.
/// Derived covers of derived covers collapse onto derived covers of the
/// originals, so the worklist terminates quickly; we still run to a
/// fixpoint. Output covers are deduplicated and canonically sorted.
inline FramePresentation stability_close(const FramePresentation& pres) {
    const MeetSemilattice& b = pres.base;
    if (auto v = validate_meet_semilattice(b); !v.ok)
        throw StructureError("presentation base: " + v.message);
    for (const Cover& c : pres.covers) detail::check_cover_shape(b, c);

    std::set<Cover> seen;
    std::vector<Cover> work;
    auto push = [&](Cover c) {
        if (seen.insert(c).second) work.push_back(std::move(c));
    };
    for (const Cover& c : pres.covers) push(c);
    for (std::size_t qi = 0; qi < work.size(); ++qi) {
        Cover c = work[qi];
        b.poset.down[c.covered].for_each([&](int lower) {
            Cover derived{lower, Bitset(b.size())};
            c.coverers.for_each([&](int u) { derived.coverers.set(b.meet_of(u, lower)); });
            push(std::move(derived));
        });
    }
    FramePresentation res{b, std::vector<Cover>(seen.begin(), seen.end()), true};
    return res;
}

/// Smallest C-ideal containing M: the least fixpoint of downward
/// closure and cover saturation above M.
inline Bitset c_ideal_generate(const FramePresentation& pres, const Bitset& m) {
    if (!pres.stable) throw StructureError("presentation is not stability-closed");
    const MeetSemilattice& b = pres.base;
    if (m.universe() != b.size()) throw StructureError("generator set universe mismatch");
    Bitset s = m;
    bool changed = true;
    while (changed) {
        changed = false;
        Bitset down = down_closure(b.poset, s);
        if (down != s) {
            s = down;
            changed = true;
        }
        for (const Cover& c : pres.covers)
            if (!s.test(c.covered) && c.coverers.subset_of(s)) {
                s.set(c.covered);
                changed = true;
            }
    }
    return s;
}

/// The frame of all C-ideals of a stable presentation, elements in
/// increasing numeric order of their member sets.
struct CIdlFrame {
    FramePtr frame;
    std::vector<Bitset> ideals;

    int index_of(const Bitset& ideal) const {
        auto it = index_map.find(ideal);
        return it == index_map.end() ? -1 : it->second;
    }

    std::unordered_map<Bitset, int> index_map;  // filled by enumerate_c_ideals
};

namespace detail {
inline std::string ideal_label(const MeetSemilattice& b, const Bitset& members) {
    std::string s = "{";
    bool fst = true;
    members.for_each([&](int i) {
        if (!fst) s += ',';
        fst = false;
        s += b.label(i);
    });
    return s + "}";
}
}  // namespace detail

/// Enumerates every subset of the base and keeps the downward-closed,
/// cover-saturated ones. Meets of ideals are intersections; joins are
/// generated from the union by fixpoint rather than read off any table.
inline CIdlFrame enumerate_c_ideals(const FramePresentation& pres, const Capacity& cap = {}) {
    if (!pres.stable) throw StructureError("presentation is not stability-closed");
    const MeetSemilattice& b = pres.base;
    const int n = b.size();
    cap.require_subsets(n, "enumerate_c_ideals");

    // The scan works on machine words; the guard keeps n <= subset_bits <= 30.
    std::vector<std::uint64_t> down64(n), ideal_masks;
    for (int i = 0; i < n; ++i) {
        std::uint64_t w = 0;
        b.poset.down[i].for_each([&](int j) { w |= std::uint64_t(1) << j; });
        down64[i] = w;
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> covers64;  // (U, {a})
    covers64.reserve(pres.covers.size());
    for (const Cover& c : pres.covers) {
        std::uint64_t u = 0;
        c.coverers.for_each([&](int j) { u |= std::uint64_t(1) << j; });
        covers64.emplace_back(u, std::uint64_t(1) << c.covered);
    }
    const std::uint64_t limit = std::uint64_t(1) << n;
    for (std::uint64_t s = 0; s < limit; ++s) {
        bool ok = true;
        for (int i = 0; ok && i < n; ++i)
            if ((s >> i) & 1)
                if ((down64[i] & ~s) != 0) ok = false;
        for (auto [u, a] : covers64) {
            if (!ok) break;
            if ((u & ~s) == 0 && (a & ~s) != 0) ok = false;
        }
        if (ok) ideal_masks.push_back(s);
    }
    // Masks were produced in increasing numeric order already.

    CIdlFrame out;
    const int m = static_cast<int>(ideal_masks.size());
    out.ideals.reserve(m);
    std::unordered_map<std::uint64_t, int> by_mask;
    for (int i = 0; i < m; ++i) {
        out.ideals.push_back(Bitset::from_mask(n, ideal_masks[i]));
        by_mask[ideal_masks[i]] = i;
        out.index_map[out.ideals.back()] = i;
    }

    auto generate64 = [&](std::uint64_t s) {
        bool changed = true;
        while (changed) {
            changed = false;
            std::uint64_t d = s;
            for (int i = 0; i < n; ++i)
                if ((s >> i) & 1) d |= down64[i];
            if (d != s) {
                s = d;
                changed = true;
            }
            for (auto [u, a] : covers64)
                if ((u & ~s) == 0 && (a & ~s) != 0) {
                    s |= a;
                    changed = true;
                }
        }
        return s;
    };

    FinFrame f;
    f.poset.labels.reserve(m);
    for (int i = 0; i < m; ++i) f.poset.labels.push_back(detail::ideal_label(b, out.ideals[i]));
    f.poset.up.assign(m, Bitset(m));
    f.poset.down.assign(m, Bitset(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if ((ideal_masks[i] & ~ideal_masks[j]) == 0) {
                f.poset.up[i].set(j);
                f.poset.down[j].set(i);
            }
    f.meet.assign(static_cast<std::size_t>(m) * m, 0);
    f.join.assign(static_cast<std::size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            auto mi = by_mask.find(ideal_masks[i] & ideal_masks[j]);
            if (mi == by_mask.end())
                throw StructureError("intersection of C-ideals is not a C-ideal");
            auto ji = by_mask.find(generate64(ideal_masks[i] | ideal_masks[j]));
            if (ji == by_mask.end())
                throw StructureError("generated join of C-ideals is not a C-ideal");
            f.meet[i * m + j] = f.meet[j * m + i] = mi->second;
            f.join[i * m + j] = f.join[j * m + i] = ji->second;
        }
    f.bottom = by_mask.at(generate64(0));
    f.top = by_mask.at(limit - 1);
    out.frame = share(std::move(f));
    return out;
}

/// The translation b |-> <{b}> from generators to ideals. Verified to
/// be a meet-semilattice homomorphism turning every cover into a join.
inline std::vector<int> sem_map(const FramePresentation& pres, const CIdlFrame& cidl) {
    const MeetSemilattice& b = pres.base;
    std::vector<int> sem(b.size());
    for (int i = 0; i < b.size(); ++i) {
        int idx = cidl.index_of(c_ideal_generate(pres, Bitset::single(b.size(), i)));
        if (idx == -1) throw StructureError("sem image is not an enumerated ideal");
        sem[i] = idx;
    }
    const FinFrame& f = *cidl.frame;
    for (int x = 0; x < b.size(); ++x)
        for (int y = 0; y < b.size(); ++y)
            if (sem[b.meet_of(x, y)] != f.meet_of(sem[x], sem[y]))
                throw StructureError("sem is not a meet-semilattice homomorphism");
    if (sem[b.top] != f.top) throw StructureError("sem does not preserve the top");
    for (const Cover& c : pres.covers) {
        int acc = f.bottom;
        c.coverers.for_each([&](int u) { acc = f.join_of(acc, sem[u]); });
        if (acc != sem[c.covered]) throw StructureError("sem does not turn a cover into a join");
    }
    return sem;
}

/// Extends a qualifying map f : B -> L to the frame homomorphism
/// f-bar(I) = join of f[I]. The preconditions (finite meets preserved,
/// covers sent to joins) are checked, not assumed; a violation is
/// reported with its witness.
inline FrameHom extend_universal(const FramePresentation& pres, const CIdlFrame& cidl,
                                 const std::vector<int>& f, const FramePtr& target) {
    if (!pres.stable) throw StructureError("presentation is not stability-closed");
    const MeetSemilattice& b = pres.base;
    const FinFrame& l = *target;
    if (f.size() != static_cast<std::size_t>(b.size()))
        throw StructureError("extend_universal: map is not total on the generators");
    for (int v : f)
        if (v < 0 || v >= l.size()) throw StructureError("extend_universal: image out of range");
    if (f[b.top] != l.top)
        throw StructureError("extend_universal: top of the generators is not sent to the top");
    for (int x = 0; x < b.size(); ++x)
        for (int y = x; y < b.size(); ++y)
            if (f[b.meet_of(x, y)] != l.meet_of(f[x], f[y]))
                throw StructureError("extend_universal: meet of '" + b.label(x) + "' and '" +
                                     b.label(y) + "' is not preserved");
    for (const Cover& c : pres.covers) {
        int acc = l.bottom;
        c.coverers.for_each([&](int u) { acc = l.join_of(acc, f[u]); });
        if (acc != f[c.covered])
            throw StructureError("extend_universal: cover of '" + b.label(c.covered) +
                                 "' is not sent to a join");
    }

    FrameHom h{cidl.frame, target, {}};
    h.map.reserve(cidl.ideals.size());
    for (const Bitset& ideal : cidl.ideals) {
        int acc = l.bottom;
        ideal.for_each([&](int u) { acc = l.join_of(acc, f[u]); });
        h.map.push_back(acc);
    }
    if (auto v = check_frame_hom(*cidl.frame, l, h.map))
        throw StructureError("extend_universal: extension is not a frame homomorphism (" + v->law +
                             ")");
    std::vector<int> sem = sem_map(pres, cidl);
    for (int i = 0; i < b.size(); ++i)
        if (h.map[sem[i]] != f[i])
            throw StructureError("extend_universal: extension does not factor the map");
    return h;
}

}  // namespace dfrm
