#pragma once

// Test-only oracles, kept independent of the library paths they check.

#include <cstdint>
#include <random>
#include <vector>

#include "dfrm/closure.hpp"
#include "dfrm/conditions.hpp"
#include "dfrm/dframe.hpp"
#include "dfrm/frame.hpp"

namespace testutil {

/// Re-checks a map against the defining equations, without touching
/// check_frame_hom.
inline bool is_hom_by_definition(const dfrm::FinFrame& s, const dfrm::FinFrame& d,
                                 const std::vector<int>& map) {
    if (map[s.bottom] != d.bottom || map[s.top] != d.top) return false;
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b) {
            if (map[s.meet_of(a, b)] != d.meet_of(map[a], map[b])) return false;
            if (map[s.join_of(a, b)] != d.join_of(map[a], map[b])) return false;
        }
    return true;
}

/// Counts homomorphisms by scanning every map |dst|^|src|, no pruning.
inline std::size_t count_homs_brute(const dfrm::FinFrame& s, const dfrm::FinFrame& d) {
    std::size_t count = 0;
    std::vector<int> map(s.size(), 0);
    for (;;) {
        if (is_hom_by_definition(s, d, map)) ++count;
        int k = 0;
        while (k < s.size()) {
            if (++map[k] < d.size()) break;
            map[k] = 0;
            ++k;
        }
        if (k == s.size()) break;
    }
    return count;
}

/// Downsets of an explicit poset given by a leq predicate, counted by
/// brute subset scan. Oracle for C-ideal counts of cover-free
/// presentations and for coproduct sizes.
template <class Leq>
inline int count_downsets(int n, Leq leq) {
    int count = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << n); ++s) {
        bool ok = true;
        for (int i = 0; ok && i < n; ++i)
            if ((s >> i) & 1)
                for (int j = 0; j < n; ++j)
                    if (leq(j, i) && !((s >> j) & 1)) {
                        ok = false;
                        break;
                    }
        if (ok) ++count;
    }
    return count;
}

/// The number of downsets of the product of two chains with a and b
/// nontrivial elements each (the grid oracle for coproduct sizes).
inline int grid_downset_count(int a, int b) {
    int n = a * b;
    return count_downsets(n, [&](int i, int j) {
        return i % a <= j % a && i / a <= j / a;
    });
}

/// All topologies (families closed under union and intersection,
/// containing the empty and full sets) on n labelled points.
inline std::vector<std::vector<dfrm::Bitset>> all_topologies(int n) {
    using dfrm::Bitset;
    const int subsets = 1 << n;
    std::vector<std::vector<Bitset>> out;
    // A family is a set of subsets; bit k of the family mask selects
    // the subset with point mask k.
    for (std::uint64_t fam = 0; fam < (std::uint64_t(1) << subsets); ++fam) {
        if (!((fam >> 0) & 1)) continue;             // empty set
        if (!((fam >> (subsets - 1)) & 1)) continue; // full set
        bool closed = true;
        for (int a = 0; closed && a < subsets; ++a) {
            if (!((fam >> a) & 1)) continue;
            for (int b = a; b < subsets; ++b) {
                if (!((fam >> b) & 1)) continue;
                if (!((fam >> (a | b)) & 1) || !((fam >> (a & b)) & 1)) {
                    closed = false;
                    break;
                }
            }
        }
        if (!closed) continue;
        std::vector<Bitset> opens;
        for (int a = 0; a < subsets; ++a)
            if ((fam >> a) & 1) opens.push_back(Bitset::from_mask(n, a));
        out.push_back(std::move(opens));
    }
    return out;
}

/// All bispaces on exactly n points.
inline std::vector<dfrm::FinBispace> all_bispaces(int n) {
    std::vector<dfrm::FinBispace> out;
    auto tops = all_topologies(n);
    for (const auto& tp : tops)
        for (const auto& tm : tops) {
            dfrm::FinBispace x;
            for (int i = 0; i < n; ++i) x.points.push_back(std::string(1, 'a' + i));
            x.opens_plus = tp;
            x.opens_minus = tm;
            out.push_back(std::move(x));
        }
    return out;
}

/// Every labelled frame (= bounded distributive lattice) on exactly n
/// elements, by scanning all reflexive relations and filtering.
inline std::vector<dfrm::FramePtr> all_labelled_frames(int n) {
    std::vector<dfrm::FramePtr> out;
    std::vector<std::pair<int, int>> off;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) off.emplace_back(i, j);
    const int bits = static_cast<int>(off.size());
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << bits); ++mask) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) leq[i][j] = i == j;
        for (int b = 0; b < bits; ++b)
            if ((mask >> b) & 1) leq[off[b].first][off[b].second] = true;
        bool ok = true;
        for (int i = 0; ok && i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (leq[i][j] && leq[j][i]) {
                    ok = false;
                    break;
                }
        if (!ok) continue;
        // transitivity: already-closed relations only, so each poset
        // appears exactly once
        for (int i = 0; ok && i < n; ++i)
            for (int j = 0; ok && j < n; ++j) {
                if (!leq[i][j]) continue;
                for (int k = 0; k < n; ++k)
                    if (leq[j][k] && !leq[i][k]) {
                        ok = false;
                        break;
                    }
            }
        if (!ok) continue;
        std::vector<std::string> labels;
        for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
        std::vector<std::pair<int, int>> pairs;
        for (int b = 0; b < bits; ++b)
            if ((mask >> b) & 1) pairs.push_back(off[b]);
        dfrm::FinFrame f;
        try {
            f = dfrm::frame_from_leq(std::move(labels), pairs);
        } catch (const dfrm::StructureError&) {
            continue;  // not a bounded lattice
        }
        if (!dfrm::validate_frame(f).ok()) continue;  // not distributive
        out.push_back(dfrm::share(std::move(f)));
    }
    return out;
}

/// Random poset on up to max_pts labelled points, as its downset
/// lattice: a uniform-ish source of small distributive lattices.
inline dfrm::FramePtr random_downset_frame(std::mt19937_64& rng, int max_pts) {
    int n = 1 + static_cast<int>(rng() % max_pts);
    // random DAG order: i < j can hold only for i < j as integers
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) leq[i][i] = true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() % 3 == 0) leq[i][j] = true;
    // transitive closure
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (leq[i][k] && leq[k][j]) leq[i][j] = true;
    // enumerate downsets
    std::vector<std::uint64_t> downs;
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << n); ++s) {
        bool ok = true;
        for (int i = 0; ok && i < n; ++i)
            if ((s >> i) & 1)
                for (int j = 0; j < n; ++j)
                    if (leq[j][i] && !((s >> j) & 1)) ok = false;
        if (ok) downs.push_back(s);
    }
    const int m = static_cast<int>(downs.size());
    std::vector<std::string> labels;
    for (int i = 0; i < m; ++i) labels.push_back("d" + std::to_string(i));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if ((downs[i] & ~downs[j]) == 0) pairs.emplace_back(i, j);
    return dfrm::share(dfrm::frame_from_leq(std::move(labels), pairs));
}

/// Re-evaluates a failed condition's witness against the stated
/// quantifiers, independently of the checker's own scan.
inline bool witness_violates(const dfrm::ClosureStack& s, const dfrm::ConditionReport& r) {
    using dfrm::ConditionId;
    if (r.holds || !r.witness) return false;
    const dfrm::FinFrame& lp = *s.plus;
    const dfrm::FinFrame& lm = *s.minus;
    const auto& w = r.witness->pairs;
    auto contot_shape = [&](const dfrm::PairRelation& a_rel, const dfrm::PairRelation& b_rel,
                            bool plus_side, bool equality) {
        if (w.size() != 2 || !a_rel.contains(w[0]) || !b_rel.contains(w[1])) return false;
        bool premise = plus_side ? (equality ? w[0].plus == w[1].plus : lp.leq(w[1].plus, w[0].plus))
                                 : (equality ? w[0].minus == w[1].minus
                                             : lm.leq(w[1].minus, w[0].minus));
        bool conclusion = plus_side ? lm.leq(w[0].minus, w[1].minus) : lp.leq(w[0].plus, w[1].plus);
        return premise && !conclusion;
    };
    auto inclusion_shape = [&](const dfrm::PairRelation& lhs, const dfrm::PairRelation& rhs,
                               bool need_plus_gen, bool need_minus_gen) {
        if (w.size() != 1 || !lhs.contains(w[0]) || rhs.contains(w[0])) return false;
        if (need_plus_gen && !s.gens.plus.test(w[0].plus)) return false;
        if (need_minus_gen && !s.gens.minus.test(w[0].minus)) return false;
        return true;
    };
    switch (r.id) {
        case ConditionId::Lambda0Plus:
            return contot_shape(s.d_down_con_wedge_vee, s.up_tot_wedge_vee, true, true);
        case ConditionId::Lambda0Minus:
            return contot_shape(s.d_down_con_wedge_vee, s.up_tot_wedge_vee, false, true);
        case ConditionId::Lambda1Plus:
            return contot_shape(s.d_down_con_wedge_vee, s.tot_wedge_vee, true, false);
        case ConditionId::Lambda1Minus:
            return contot_shape(s.d_down_con_wedge_vee, s.tot_wedge_vee, false, false);
        case ConditionId::Lambda2Plus:
            return contot_shape(s.d_down_con_wedge_vee, s.tot_wedge, true, false);
        case ConditionId::Lambda2Minus:
            return contot_shape(s.d_down_con_wedge_vee, s.tot_vee, false, false);
        case ConditionId::Lambda3Plus:
            return contot_shape(s.con_wedge_vee_bigvee, s.tot_wedge, true, false);
        case ConditionId::Lambda3Minus:
            return contot_shape(s.con_wedge_vee_bigwedge, s.tot_vee, false, false);
        case ConditionId::Lambda4Plus:
            return contot_shape(s.con_wedge_bigvee, s.tot_wedge, true, false);
        case ConditionId::Lambda4Minus:
            return contot_shape(s.con_vee_bigwedge, s.tot_vee, false, false);
        case ConditionId::AlphaPlus: {
            // (family join, y) against beta: the family of everything
            // compatible with y realizes the join
            if (w.size() != 2 || !s.tot_wedge.contains(w[1])) return false;
            int y = w[0].minus, xmax = lp.bottom;
            for (int x = 0; x < lp.size(); ++x)
                if (s.down_con_wedge_vee.contains(x, y)) xmax = lp.join_of(xmax, x);
            return xmax == w[0].plus && lp.leq(w[1].plus, xmax) && !lm.leq(y, w[1].minus);
        }
        case ConditionId::AlphaMinus: {
            if (w.size() != 2 || !s.tot_vee.contains(w[1])) return false;
            int x = w[0].plus, ymax = lm.bottom;
            for (int y = 0; y < lm.size(); ++y)
                if (s.down_con_wedge_vee.contains(x, y)) ymax = lm.join_of(ymax, y);
            return ymax == w[0].minus && lm.leq(w[1].minus, ymax) && !lp.leq(x, w[1].plus);
        }
        case ConditionId::RInd: {
            if (w.size() != 1) return false;
            dfrm::PairRelation dbar = dfrm::d_bar(s.down_con_wedge_vee, s.gens);
            return s.gens.plus.test(w[0].plus) && s.gens.minus.test(w[0].minus) &&
                   dbar.contains(w[0]) && !s.down_con_wedge_vee.contains(w[0]);
        }
        case ConditionId::IndSplitPlus:
            return inclusion_shape(dfrm::down_close(s.con_wedge_bigvee), s.down_con_wedge_vee,
                                   true, true);
        case ConditionId::IndSplitMinus:
            return inclusion_shape(dfrm::down_close(s.con_vee_bigwedge), s.down_con_wedge_vee,
                                   true, true);
        case ConditionId::MuPlus:
            return contot_shape(s.con_vee, s.tot_wedge, true, false);
        case ConditionId::MuMinus:
            return contot_shape(s.con_wedge, s.tot_vee, false, false);
        case ConditionId::IndepPlus:
            return inclusion_shape(dfrm::down_close(s.con_wedge_bigvee),
                                   dfrm::down_close(s.con_vee), false, true);
        case ConditionId::IndepMinus:
            return inclusion_shape(dfrm::down_close(s.con_vee_bigwedge),
                                   dfrm::down_close(s.con_wedge), true, false);
    }
    return false;
}

/// Random downward- and meet/join-closed relation containing tt and ff.
inline dfrm::PairRelation random_closed_relation(std::mt19937_64& rng, const dfrm::FramePtr& lp,
                                                 const dfrm::FramePtr& lm, int seeds) {
    dfrm::PairRelation r = dfrm::PairRelation::empty(lp, lm);
    for (int k = 0; k < seeds; ++k)
        r.add(static_cast<int>(rng() % lp->size()), static_cast<int>(rng() % lm->size()));
    r = dfrm::adjoin_units(r);
    return dfrm::down_close(dfrm::wedge_vee_close(dfrm::down_close(r), dfrm::FiniteCloseMode::MeetJoin));
}

}  // namespace testutil
