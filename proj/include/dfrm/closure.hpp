#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dfrm/bitset.hpp"
#include "dfrm/dframe.hpp"
#include "dfrm/errors.hpp"
#include "dfrm/frame.hpp"
#include "dfrm/presentation.hpp"

namespace dfrm {

// ---------------------------------------------------------------------------
// Order closures of pair relations

/// { a | exists b in R with a information-below b }.
inline PairRelation down_close(const PairRelation& r) {
    PairRelation out = PairRelation::empty(r.plus, r.minus);
    const FinFrame& lp = *r.plus;
    const FinFrame& lm = *r.minus;
    r.for_each([&](PairElement b) {
        lp.poset.down[b.plus].for_each([&](int p) {
            lm.poset.down[b.minus].for_each([&](int m) { out.add(p, m); });
        });
    });
    return out;
}

inline PairRelation up_close(const PairRelation& r) {
    PairRelation out = PairRelation::empty(r.plus, r.minus);
    const FinFrame& lp = *r.plus;
    const FinFrame& lm = *r.minus;
    r.for_each([&](PairElement b) {
        lp.poset.up[b.plus].for_each([&](int p) {
            lm.poset.up[b.minus].for_each([&](int m) { out.add(p, m); });
        });
    });
    return out;
}

// ---------------------------------------------------------------------------
// Algebraic closures

enum class FiniteCloseMode { Meet, Join, MeetJoin };

/// Least superset closed under the selected logical pair operations.
inline PairRelation wedge_vee_close(const PairRelation& r, FiniteCloseMode mode) {
    PairRelation out = r;
    const FinFrame& lp = *r.plus;
    const FinFrame& lm = *r.minus;
    bool changed = true;
    while (changed) {
        changed = false;
        auto pairs = out.to_vector();
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = i; j < pairs.size(); ++j) {
                if (mode != FiniteCloseMode::Join) {
                    PairElement m = logical_meet(lp, lm, pairs[i], pairs[j]);
                    if (!out.contains(m)) {
                        out.add(m);
                        changed = true;
                    }
                }
                if (mode != FiniteCloseMode::Meet) {
                    PairElement jn = logical_join(lp, lm, pairs[i], pairs[j]);
                    if (!out.contains(jn)) {
                        out.add(jn);
                        changed = true;
                    }
                }
            }
    }
    return out;
}

enum class BigJoinMode {
    JoinAll,  // families contribute (join of pluses, meet of minuses)
    MeetAll,  // families contribute (meet of pluses, join of minuses)
};

/// Closure under joins (resp. meets) of arbitrary nonempty families in
/// the logical order. On a finite carrier a family folds into repeated
/// binary steps, so this is the binary closure; the literal
/// family-enumeration variant below is kept as an independent oracle.
inline PairRelation big_join_close(const PairRelation& r, BigJoinMode mode) {
    return wedge_vee_close(
        r, mode == BigJoinMode::JoinAll ? FiniteCloseMode::Join : FiniteCloseMode::Meet);
}

/// { fold of F | F a nonempty subset of R }, enumerated literally.
inline PairRelation big_join_close_enumerated(const PairRelation& r, BigJoinMode mode,
                                              const Capacity& cap = {}) {
    auto pairs = r.to_vector();
    const int k = static_cast<int>(pairs.size());
    cap.require_family(k, "big_join_close_enumerated");
    PairRelation out = PairRelation::empty(r.plus, r.minus);
    const FinFrame& lp = *r.plus;
    const FinFrame& lm = *r.minus;
    const std::uint64_t limit = k >= 64 ? 0 : (std::uint64_t(1) << k);
    for (std::uint64_t s = 1; s < limit; ++s) {
        PairElement acc{-1, -1};
        for (int i = 0; i < k; ++i)
            if ((s >> i) & 1) {
                if (acc.plus == -1) acc = pairs[i];
                else
                    acc = mode == BigJoinMode::JoinAll ? logical_join(lp, lm, acc, pairs[i])
                                                       : logical_meet(lp, lm, acc, pairs[i]);
            }
        out.add(acc);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Directed closure

/// One-step closure under suprema of directed subsets. Directed sets
/// are nonempty by convention, and a nonempty directed subset of a
/// finite poset contains its maximum, so the closure returns its input;
/// the literal variant re-derives this by enumeration.
inline PairRelation d_one_step(const PairRelation& r) { return r; }

inline PairRelation d_one_step_literal(const PairRelation& r, const Capacity& cap = {}) {
    auto pairs = r.to_vector();
    const int k = static_cast<int>(pairs.size());
    cap.require_family(k, "d_one_step_literal");
    PairRelation out = r;
    const FinFrame& lp = *r.plus;
    const FinFrame& lm = *r.minus;
    const std::uint64_t limit = k >= 64 ? 0 : (std::uint64_t(1) << k);
    for (std::uint64_t s = 1; s < limit; ++s) {
        std::vector<int> sel;
        for (int i = 0; i < k; ++i)
            if ((s >> i) & 1) sel.push_back(i);
        bool directed = true;
        for (std::size_t i = 0; i < sel.size() && directed; ++i)
            for (std::size_t j = i; j < sel.size() && directed; ++j) {
                bool bounded = false;
                for (int c : sel)
                    if (info_below(lp, lm, pairs[sel[i]], pairs[c]) &&
                        info_below(lp, lm, pairs[sel[j]], pairs[c])) {
                        bounded = true;
                        break;
                    }
                directed = bounded;
            }
        if (!directed) continue;
        PairElement sup = pairs[sel[0]];
        for (int c : sel) sup = info_join(lp, lm, sup, pairs[c]);
        out.add(sup);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generator sets and the independent-join closure

/// Chosen generating subsets of the two carriers: every element must be
/// the join of the generators below it.
struct GeneratorSet {
    Bitset plus;
    Bitset minus;
};

inline bool generates(const FinFrame& f, const Bitset& gens) {
    for (int x = 0; x < f.size(); ++x)
        if (join_of_set(f, f.poset.down[x] & gens) != x) return false;
    return true;
}

inline GeneratorSet full_generators(const FramePtr& plus, const FramePtr& minus) {
    return {Bitset::full(plus->size()), Bitset::full(minus->size())};
}

/// The join-irreducible elements (x strictly above the join of its
/// strict downset) always generate a finite lattice.
inline Bitset join_irreducibles(const FinFrame& f) {
    Bitset g(f.size());
    for (int x = 0; x < f.size(); ++x) {
        Bitset strict = f.poset.down[x];
        strict.reset(x);
        if (join_of_set(f, strict) != x) g.set(x);
    }
    return g;
}

/// Generators of x: the generators below it.
inline Bitset generators_below(const FinFrame& f, const Bitset& gens, int x) {
    return f.poset.down[x] & gens;
}

/// All pairs (join A+, join A-) where A+ and A- are subsets of the
/// generator sets with A+ x A- inside R. Either side may be empty; an
/// empty side contributes the bottom. Enumerates the plus families and
/// closes the compatible minus generators under joins.
inline PairRelation d_bar(const PairRelation& r, const GeneratorSet& gens,
                          const Capacity& cap = {}) {
    const FinFrame& lp = *r.plus;
    const FinFrame& lm = *r.minus;
    std::vector<int> gp = gens.plus.to_vector();
    const int k = static_cast<int>(gp.size());
    cap.require_family(k, "d_bar");

    // Row masks: for a plus generator g, the minus generators h with (g,h) in R.
    std::vector<Bitset> row(k, Bitset(lm.size()));
    for (int i = 0; i < k; ++i) {
        gens.minus.for_each([&](int h) {
            if (r.contains(gp[i], h)) row[i].set(h);
        });
    }

    PairRelation out = PairRelation::empty(r.plus, r.minus);
    const std::uint64_t limit = k >= 64 ? 0 : (std::uint64_t(1) << k);
    std::vector<char> minus_join_reachable(lm.size());
    for (std::uint64_t s = 0; s < limit; ++s) {
        int pj = lp.bottom;
        Bitset compatible = gens.minus;
        for (int i = 0; i < k; ++i)
            if ((s >> i) & 1) {
                pj = lp.join_of(pj, gp[i]);
                compatible &= row[i];
            }
        // Joins of subsets of the compatible minus generators: close
        // {bottom} under joining one compatible generator at a time.
        std::fill(minus_join_reachable.begin(), minus_join_reachable.end(), 0);
        minus_join_reachable[lm.bottom] = 1;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int x = 0; x < lm.size(); ++x) {
                if (!minus_join_reachable[x]) continue;
                compatible.for_each([&](int h) {
                    int j = lm.join_of(x, h);
                    if (!minus_join_reachable[j]) {
                        minus_join_reachable[j] = 1;
                        changed = true;
                    }
                });
            }
        }
        for (int x = 0; x < lm.size(); ++x)
            if (minus_join_reachable[x]) out.add(pj, x);
    }
    return out;
}

/// Adjoins the logical units tt and ff.
inline PairRelation adjoin_units(const PairRelation& r) {
    PairRelation out = r;
    out.add(pair_tt(*r.plus, *r.minus));
    out.add(pair_ff(*r.plus, *r.minus));
    return out;
}

// ---------------------------------------------------------------------------
// Least consistency / totality

/// Least relation containing R that holds tt and ff and is closed
/// downward, under logical meets and joins, and under directed suprema.
/// Computed as a fixpoint; each pass produces fresh relations so the
/// intermediate stages stay comparable.
inline PairRelation con_min(const PairRelation& r) {
    PairRelation s = adjoin_units(r);
    for (;;) {
        PairRelation next = d_one_step(wedge_vee_close(down_close(s), FiniteCloseMode::MeetJoin));
        if (next == s) return s;
        s = next;
    }
}

/// Least relation containing R with tt, ff, closed upward and under
/// logical meets and joins.
inline PairRelation tot_min(const PairRelation& r) {
    PairRelation s = adjoin_units(r);
    for (;;) {
        PairRelation next = wedge_vee_close(up_close(s), FiniteCloseMode::MeetJoin);
        if (next == s) return s;
        s = next;
    }
}

// ---------------------------------------------------------------------------
// Generating a pre-d-frame from a presentation

/// Two frame presentations plus generating relations on generator pairs.
struct PreDFramePresentation {
    FramePresentation plus;
    FramePresentation minus;
    std::vector<PairElement> con1;  // pairs of generator indices (B+ i, B- i)
    std::vector<PairElement> tot1;
};

inline void validate_predframe_presentation(const PreDFramePresentation& p) {
    for (const PairElement& e : p.con1)
        if (e.plus < 0 || e.plus >= p.plus.base.size() || e.minus < 0 ||
            e.minus >= p.minus.base.size())
            throw StructureError("con1 generator pair out of range");
    for (const PairElement& e : p.tot1)
        if (e.plus < 0 || e.plus >= p.plus.base.size() || e.minus < 0 ||
            e.minus >= p.minus.base.size())
            throw StructureError("tot1 generator pair out of range");
}

/// Everything the generation step produces: the ideal frames, the
/// translations from generators, the embedded seed relations, and the
/// candidate structure with the least consistency and totality.
struct GeneratedPreDFrame {
    PreDFramePresentation pres;
    CIdlFrame cidl_plus;
    CIdlFrame cidl_minus;
    std::vector<int> sem_plus;
    std::vector<int> sem_minus;
    GeneratorSet gens;      // images of the generators inside the frames
    PairRelation con1;      // embedded seeds (units not adjoined)
    PairRelation tot1;
    DFrame result;
};

inline GeneratedPreDFrame generate_pre_dframe(const PreDFramePresentation& p,
                                              const Capacity& cap = {}) {
    if (!p.plus.stable || !p.minus.stable)
        throw StructureError("generate_pre_dframe: presentations must be stability-closed");
    validate_predframe_presentation(p);

    GeneratedPreDFrame g;
    g.pres = p;
    g.cidl_plus = enumerate_c_ideals(p.plus, cap);
    g.cidl_minus = enumerate_c_ideals(p.minus, cap);
    g.sem_plus = sem_map(p.plus, g.cidl_plus);
    g.sem_minus = sem_map(p.minus, g.cidl_minus);

    g.gens.plus = Bitset(g.cidl_plus.frame->size());
    for (int v : g.sem_plus) g.gens.plus.set(v);
    g.gens.minus = Bitset(g.cidl_minus.frame->size());
    for (int v : g.sem_minus) g.gens.minus.set(v);

    g.con1 = PairRelation::empty(g.cidl_plus.frame, g.cidl_minus.frame);
    for (const PairElement& e : p.con1) g.con1.add(g.sem_plus[e.plus], g.sem_minus[e.minus]);
    g.tot1 = PairRelation::empty(g.cidl_plus.frame, g.cidl_minus.frame);
    for (const PairElement& e : p.tot1) g.tot1.add(g.sem_plus[e.plus], g.sem_minus[e.minus]);

    g.result = DFrame{g.cidl_plus.frame, g.cidl_minus.frame, con_min(g.con1), tot_min(g.tot1)};
    return g;
}

// ---------------------------------------------------------------------------
// Universal property of generated pre-d-frames

struct UniversalOptions {
    bool check_unique = false;
    Capacity cap{};
};

/// Extends a presentation-preserving pair of maps f : B+- -> M to the
/// d-frame homomorphism with f = f-bar o sem. Every precondition is
/// checked: meet preservation, covers to joins, and con1/tot1 landing in
/// the target relations. Optionally verifies uniqueness by enumeration.
inline DFrameHom verify_dfrm_universal(const GeneratedPreDFrame& g, const DFrame& m,
                                       const std::vector<int>& f_plus,
                                       const std::vector<int>& f_minus,
                                       const UniversalOptions& opts = {}) {
    for (const PairElement& e : g.pres.con1) {
        if (!m.con.contains(f_plus[e.plus], f_minus[e.minus]))
            throw StructureError("verify_dfrm_universal: con1 pair ('" +
                                 g.pres.plus.base.label(e.plus) + "','" +
                                 g.pres.minus.base.label(e.minus) +
                                 "') is not sent into the target consistency");
    }
    for (const PairElement& e : g.pres.tot1) {
        if (!m.tot.contains(f_plus[e.plus], f_minus[e.minus]))
            throw StructureError("verify_dfrm_universal: tot1 pair ('" +
                                 g.pres.plus.base.label(e.plus) + "','" +
                                 g.pres.minus.base.label(e.minus) +
                                 "') is not sent into the target totality");
    }
    DFrameHom h{extend_universal(g.pres.plus, g.cidl_plus, f_plus, m.plus),
                extend_universal(g.pres.minus, g.cidl_minus, f_minus, m.minus)};
    if (auto chk = is_dframe_hom(h, g.result, m); !chk.ok)
        throw StructureError("verify_dfrm_universal: extension does not preserve " + chk.which);
    if (opts.check_unique) {
        int found = 0;
        for (const DFrameHom& cand : enumerate_dframe_homs(g.result, m, opts.cap)) {
            bool factors = true;
            for (std::size_t i = 0; i < f_plus.size() && factors; ++i)
                if (cand.plus.map[g.sem_plus[i]] != f_plus[i]) factors = false;
            for (std::size_t i = 0; i < f_minus.size() && factors; ++i)
                if (cand.minus.map[g.sem_minus[i]] != f_minus[i]) factors = false;
            if (factors) ++found;
        }
        if (found != 1)
            throw StructureError("verify_dfrm_universal: expected exactly one factoring "
                                 "homomorphism, found " +
                                 std::to_string(found));
    }
    return h;
}

/// Membership of a pair of joins in con, computed directly and via the
/// all-pairs criterion; the two routes must agree on any structure
/// satisfying the six pre-d-frame axioms.
inline bool split_join_membership(const DFrame& d, const std::vector<int>& fam_plus,
                                  const std::vector<int>& fam_minus) {
    const FinFrame& lp = *d.plus;
    const FinFrame& lm = *d.minus;
    int jp = lp.bottom, jm = lm.bottom;
    for (int x : fam_plus) jp = lp.join_of(jp, x);
    for (int y : fam_minus) jm = lm.join_of(jm, y);
    bool direct = d.con.contains(jp, jm);
    bool all_pairs = true;
    for (int x : fam_plus)
        for (int y : fam_minus)
            if (!d.con.contains(x, y)) all_pairs = false;
    if (direct != all_pairs)
        throw StructureError("split_join_membership: direct and all-pairs routes disagree");
    return direct;
}

}  // namespace dfrm
