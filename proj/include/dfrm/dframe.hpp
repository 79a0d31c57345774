#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dfrm/bitset.hpp"
#include "dfrm/errors.hpp"
#include "dfrm/frame.hpp"

namespace dfrm {

/// A point of the two-sorted carrier L+ x L-.
struct PairElement {
    int plus = 0;
    int minus = 0;

    friend bool operator==(PairElement a, PairElement b) {
        return a.plus == b.plus && a.minus == b.minus;
    }
    friend bool operator!=(PairElement a, PairElement b) { return !(a == b); }
    friend bool operator<(PairElement a, PairElement b) {
        if (a.plus != b.plus) return a.plus < b.plus;
        return a.minus < b.minus;
    }
};

// Two orders live on L+ x L-: the information order compares both
// coordinates upward; the logical order reverses the minus coordinate.
inline bool info_below(const FinFrame& lp, const FinFrame& lm, PairElement a, PairElement b) {
    return lp.leq(a.plus, b.plus) && lm.leq(a.minus, b.minus);
}
inline bool logical_below(const FinFrame& lp, const FinFrame& lm, PairElement a, PairElement b) {
    return lp.leq(a.plus, b.plus) && lm.leq(b.minus, a.minus);
}

inline PairElement logical_join(const FinFrame& lp, const FinFrame& lm, PairElement a, PairElement b) {
    return {lp.join_of(a.plus, b.plus), lm.meet_of(a.minus, b.minus)};
}
inline PairElement logical_meet(const FinFrame& lp, const FinFrame& lm, PairElement a, PairElement b) {
    return {lp.meet_of(a.plus, b.plus), lm.join_of(a.minus, b.minus)};
}
inline PairElement info_join(const FinFrame& lp, const FinFrame& lm, PairElement a, PairElement b) {
    return {lp.join_of(a.plus, b.plus), lm.join_of(a.minus, b.minus)};
}
inline PairElement info_meet(const FinFrame& lp, const FinFrame& lm, PairElement a, PairElement b) {
    return {lp.meet_of(a.plus, b.plus), lm.meet_of(a.minus, b.minus)};
}

inline PairElement pair_tt(const FinFrame& lp, const FinFrame& lm) { return {lp.top, lm.bottom}; }
inline PairElement pair_ff(const FinFrame& lp, const FinFrame& lm) { return {lp.bottom, lm.top}; }
inline PairElement pair_bot(const FinFrame& lp, const FinFrame& lm) { return {lp.bottom, lm.bottom}; }
inline PairElement pair_top(const FinFrame& lp, const FinFrame& lm) { return {lp.top, lm.top}; }

/// Subset of L+ x L- as a boolean matrix. Closure properties are
/// checked by predicates, never enforced by the type.
struct PairRelation {
    FramePtr plus;
    FramePtr minus;
    Bitset members;

    static PairRelation empty(FramePtr p, FramePtr m) {
        PairRelation r{p, m, Bitset(p->size() * m->size())};
        return r;
    }
    static PairRelation full(FramePtr p, FramePtr m) {
        PairRelation r{p, m, Bitset::full(p->size() * m->size())};
        return r;
    }

    int np() const { return plus->size(); }
    int nm() const { return minus->size(); }
    int idx(int p, int m) const { return p * nm() + m; }
    PairElement at(int raw) const { return {raw / nm(), raw % nm()}; }

    bool contains(int p, int m) const { return members.test(idx(p, m)); }
    bool contains(PairElement e) const { return contains(e.plus, e.minus); }
    void add(int p, int m) { members.set(idx(p, m)); }
    void add(PairElement e) { add(e.plus, e.minus); }
    bool empty_set() const { return members.empty(); }
    int count() const { return members.count(); }

    template <class F>
    void for_each(F f) const {
        members.for_each([&](int raw) { f(at(raw)); });
    }
    std::vector<PairElement> to_vector() const {
        std::vector<PairElement> v;
        v.reserve(count());
        for_each([&](PairElement e) { v.push_back(e); });
        return v;
    }

    friend bool operator==(const PairRelation& a, const PairRelation& b) {
        return a.np() == b.np() && a.nm() == b.nm() && a.members == b.members;
    }
    friend bool operator!=(const PairRelation& a, const PairRelation& b) { return !(a == b); }
};

inline void require_same_carriers(const PairRelation& a, const PairRelation& b) {
    if (a.np() != b.np() || a.nm() != b.nm())
        throw StructureError("pair relations live over mismatched carriers");
}

/// Two frames linked by consistency and totality.
struct DFrame {
    FramePtr plus;
    FramePtr minus;
    PairRelation con;
    PairRelation tot;

    friend bool operator==(const DFrame& a, const DFrame& b) {
        return *a.plus == *b.plus && *a.minus == *b.minus && a.con == b.con && a.tot == b.tot;
    }
};

// ---------------------------------------------------------------------------
// Axioms

enum class DFrameAxiom {
    ConDown,       // con downward closed in the information order
    TotUp,         // tot upward closed
    ConTotUnits,   // tt and ff belong to both relations
    ConMeetJoin,   // con closed under logical meet and join
    TotMeetJoin,   // tot closed under logical meet and join
    ConDirected,   // con contains suprema of its directed subsets
    ConTot,        // shared coordinate forces information comparability
};

inline const char* axiom_name(DFrameAxiom a) {
    switch (a) {
        case DFrameAxiom::ConDown: return "con-down";
        case DFrameAxiom::TotUp: return "tot-up";
        case DFrameAxiom::ConTotUnits: return "con,tot-tt,ff";
        case DFrameAxiom::ConMeetJoin: return "con-meet,join";
        case DFrameAxiom::TotMeetJoin: return "tot-meet,join";
        case DFrameAxiom::ConDirected: return "con-dirsup";
        case DFrameAxiom::ConTot: return "con-tot";
    }
    return "?";
}

struct AxiomReport {
    DFrameAxiom axiom{};
    bool holds = true;
    std::vector<PairElement> witness;  // offending pairs, scan-order minimal
};

/// All seven axiom checks, each with a scan-order-minimal witness on
/// failure. Six passing with only the last failing identifies a
/// pre-d-frame. The directed-suprema axiom cannot fail on a finite
/// carrier (a finite directed set contains its maximum); it is still
/// checked literally on subsets up to the capacity guard.
inline std::array<AxiomReport, 7> check_axioms(const DFrame& d, const Capacity& cap = {}) {
    const FinFrame& lp = *d.plus;
    const FinFrame& lm = *d.minus;
    if (d.con.np() != lp.size() || d.con.nm() != lm.size())
        throw StructureError("consistency relation lives over mismatched carriers");
    require_same_carriers(d.con, d.tot);
    std::array<AxiomReport, 7> out;
    for (int i = 0; i < 7; ++i) out[i].axiom = static_cast<DFrameAxiom>(i);

    auto fail = [&](DFrameAxiom a, std::vector<PairElement> w) {
        AxiomReport& r = out[static_cast<int>(a)];
        if (!r.holds) return;
        r.holds = false;
        r.witness = std::move(w);
    };

    // (con-down) and (tot-up)
    for (int p = 0; p < lp.size() && out[0].holds; ++p)
        for (int m = 0; m < lm.size() && out[0].holds; ++m) {
            if (!d.con.contains(p, m)) continue;
            for (int q = 0; q < lp.size() && out[0].holds; ++q) {
                if (!lp.leq(q, p)) continue;
                for (int u = 0; u < lm.size(); ++u)
                    if (lm.leq(u, m) && !d.con.contains(q, u)) {
                        fail(DFrameAxiom::ConDown, {{q, u}, {p, m}});
                        break;
                    }
            }
        }
    for (int p = 0; p < lp.size() && out[1].holds; ++p)
        for (int m = 0; m < lm.size() && out[1].holds; ++m) {
            if (!d.tot.contains(p, m)) continue;
            for (int q = 0; q < lp.size() && out[1].holds; ++q) {
                if (!lp.leq(p, q)) continue;
                for (int u = 0; u < lm.size(); ++u)
                    if (lm.leq(m, u) && !d.tot.contains(q, u)) {
                        fail(DFrameAxiom::TotUp, {{q, u}, {p, m}});
                        break;
                    }
            }
        }

    PairElement tt = pair_tt(lp, lm), ff = pair_ff(lp, lm);
    if (!d.con.contains(tt)) fail(DFrameAxiom::ConTotUnits, {tt});
    else if (!d.con.contains(ff)) fail(DFrameAxiom::ConTotUnits, {ff});
    else if (!d.tot.contains(tt)) fail(DFrameAxiom::ConTotUnits, {tt});
    else if (!d.tot.contains(ff)) fail(DFrameAxiom::ConTotUnits, {ff});

    auto close_check = [&](const PairRelation& r, DFrameAxiom which) {
        auto pairs = r.to_vector();
        for (std::size_t i = 0; i < pairs.size() && out[static_cast<int>(which)].holds; ++i)
            for (std::size_t j = i; j < pairs.size(); ++j) {
                PairElement jn = logical_join(lp, lm, pairs[i], pairs[j]);
                PairElement mt = logical_meet(lp, lm, pairs[i], pairs[j]);
                if (!r.contains(jn) || !r.contains(mt)) {
                    fail(which, {pairs[i], pairs[j]});
                    break;
                }
            }
    };
    close_check(d.con, DFrameAxiom::ConMeetJoin);
    close_check(d.tot, DFrameAxiom::TotMeetJoin);

    // (con-dirsup): literal enumeration of directed subsets -- every
    // nonempty subset when con is small, subsets of size <= 3 otherwise.
    // On a finite carrier a directed set contains its maximum, so the
    // supremum is already a member; the literal scan keeps the checker
    // honest should the carriers grow.
    {
        auto pairs = d.con.to_vector();
        const int k = static_cast<int>(pairs.size());
        const int full_scan_limit = std::min(cap.family_bits, 12);
        auto check_subset = [&](const std::vector<int>& sel) {
            if (!out[5].holds || sel.empty()) return;
            for (std::size_t i = 0; i < sel.size(); ++i)
                for (std::size_t j = i; j < sel.size(); ++j) {
                    bool bounded = false;
                    for (int c : sel)
                        if (info_below(lp, lm, pairs[sel[i]], pairs[c]) &&
                            info_below(lp, lm, pairs[sel[j]], pairs[c])) {
                            bounded = true;
                            break;
                        }
                    if (!bounded) return;  // not directed
                }
            PairElement sup = pairs[sel[0]];
            for (int c : sel) sup = info_join(lp, lm, sup, pairs[c]);
            if (!d.con.contains(sup)) {
                std::vector<PairElement> w;
                for (int c : sel) w.push_back(pairs[c]);
                fail(DFrameAxiom::ConDirected, std::move(w));
            }
        };
        if (k > 0 && k <= full_scan_limit) {
            const std::uint64_t limit = std::uint64_t(1) << k;
            for (std::uint64_t s = 1; s < limit && out[5].holds; ++s) {
                std::vector<int> sel;
                for (int i = 0; i < k; ++i)
                    if ((s >> i) & 1) sel.push_back(i);
                check_subset(sel);
            }
        } else {
            for (int i = 0; i < k && out[5].holds; ++i)
                for (int j = i; j < k && out[5].holds; ++j)
                    for (int l = j; l < k && out[5].holds; ++l) check_subset({i, j, l});
        }
    }

    // (con-tot)
    for (int raw = 0; raw < d.con.members.universe() && out[6].holds; ++raw) {
        if (!d.con.members.test(raw)) continue;
        PairElement a = d.con.at(raw);
        for (int rb = 0; rb < d.tot.members.universe(); ++rb) {
            if (!d.tot.members.test(rb)) continue;
            PairElement b = d.tot.at(rb);
            if ((a.plus == b.plus || a.minus == b.minus) && !info_below(lp, lm, a, b)) {
                fail(DFrameAxiom::ConTot, {a, b});
                break;
            }
        }
    }
    return out;
}

inline bool all_axioms_hold(const std::array<AxiomReport, 7>& r) {
    for (const auto& a : r)
        if (!a.holds) return false;
    return true;
}
inline bool is_pre_dframe(const std::array<AxiomReport, 7>& r) {
    for (int i = 0; i < 6; ++i)
        if (!r[i].holds) return false;
    return true;
}

/// The (con-tot) axiom alone, with a witness when it fails.
inline std::optional<std::pair<PairElement, PairElement>> contot_violation(const DFrame& d) {
    auto reports = check_axioms(d);
    const AxiomReport& r = reports[static_cast<int>(DFrameAxiom::ConTot)];
    if (r.holds) return std::nullopt;
    return std::make_pair(r.witness[0], r.witness[1]);
}

// ---------------------------------------------------------------------------
// Bispaces

/// Finite bitopological space: one point set, two topologies.
struct FinBispace {
    std::vector<std::string> points;
    std::vector<Bitset> opens_plus;
    std::vector<Bitset> opens_minus;

    int size() const { return static_cast<int>(points.size()); }
};

struct BispaceValidation {
    bool ok = true;
    std::string message;
};

inline BispaceValidation validate_bispace(const FinBispace& x) {
    auto check_topology = [&](const std::vector<Bitset>& opens, const char* side) -> BispaceValidation {
        const int n = x.size();
        Bitset empty(n), all = Bitset::full(n);
        auto has = [&](const Bitset& s) {
            return std::find(opens.begin(), opens.end(), s) != opens.end();
        };
        if (!has(empty)) return {false, std::string(side) + ": empty set is not open"};
        if (!has(all)) return {false, std::string(side) + ": full set is not open"};
        for (const Bitset& a : opens)
            for (const Bitset& b : opens) {
                if (!has(a | b)) return {false, std::string(side) + ": not closed under union"};
                if (!has(a & b)) return {false, std::string(side) + ": not closed under intersection"};
            }
        return {true, ""};
    };
    if (auto r = check_topology(x.opens_plus, "plus opens"); !r.ok) return r;
    if (auto r = check_topology(x.opens_minus, "minus opens"); !r.ok) return r;
    return {true, ""};
}

namespace detail {
inline FramePtr open_set_frame(const std::vector<std::string>& points,
                               std::vector<Bitset> opens) {
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    const int m = static_cast<int>(opens.size());
    FinFrame f;
    f.poset.labels.reserve(m);
    for (const Bitset& o : opens) {
        std::string lbl = "{";
        bool fst = true;
        o.for_each([&](int p) {
            if (!fst) lbl += ',';
            fst = false;
            lbl += points[p];
        });
        f.poset.labels.push_back(lbl + "}");
    }
    f.poset.up.assign(m, Bitset(m));
    f.poset.down.assign(m, Bitset(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (opens[i].subset_of(opens[j])) {
                f.poset.up[i].set(j);
                f.poset.down[j].set(i);
            }
    f.meet.assign(static_cast<std::size_t>(m) * m, 0);
    f.join.assign(static_cast<std::size_t>(m) * m, 0);
    auto find = [&](const Bitset& s) {
        auto it = std::lower_bound(opens.begin(), opens.end(), s);
        if (it == opens.end() || !(*it == s))
            throw StructureError("open-set family is not a topology");
        return static_cast<int>(it - opens.begin());
    };
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            int mi = find(opens[i] & opens[j]);
            int ji = find(opens[i] | opens[j]);
            f.meet[i * m + j] = f.meet[j * m + i] = mi;
            f.join[i * m + j] = f.join[j * m + i] = ji;
        }
    f.bottom = find(Bitset(points.empty() ? 0 : static_cast<int>(points.size())));
    f.top = find(Bitset::full(static_cast<int>(points.size())));
    return share(std::move(f));
}
}  // namespace detail

/// The d-frame of a bispace: open-set frames on both sides, con the
/// disjoint pairs, tot the covering pairs.
inline DFrame omega_d(const FinBispace& x) {
    if (auto v = validate_bispace(x); !v.ok) throw StructureError("omega_d: " + v.message);
    std::vector<Bitset> plus = x.opens_plus, minus = x.opens_minus;
    std::sort(plus.begin(), plus.end());
    plus.erase(std::unique(plus.begin(), plus.end()), plus.end());
    std::sort(minus.begin(), minus.end());
    minus.erase(std::unique(minus.begin(), minus.end()), minus.end());

    DFrame d;
    d.plus = detail::open_set_frame(x.points, plus);
    d.minus = detail::open_set_frame(x.points, minus);
    d.con = PairRelation::empty(d.plus, d.minus);
    d.tot = PairRelation::empty(d.plus, d.minus);
    Bitset all = Bitset::full(x.size());
    for (int p = 0; p < static_cast<int>(plus.size()); ++p)
        for (int m = 0; m < static_cast<int>(minus.size()); ++m) {
            if (!plus[p].intersects(minus[m])) d.con.add(p, m);
            if ((plus[p] | minus[m]) == all) d.tot.add(p, m);
        }
    return d;
}

// ---------------------------------------------------------------------------
// D-frame homomorphisms

struct DFrameHom {
    FrameHom plus;
    FrameHom minus;
};

struct DFrameHomCheck {
    bool ok = true;
    std::string which;  // "con" | "tot"
    PairElement witness;
};

/// True iff both components are frame homomorphisms and con and tot are
/// preserved forward. Component failures are structural errors.
inline DFrameHomCheck is_dframe_hom(const DFrameHom& h, const DFrame& src, const DFrame& dst) {
    if (auto v = check_frame_hom(*src.plus, *dst.plus, h.plus.map))
        throw StructureError("plus component is not a frame homomorphism (" + v->law + ")");
    if (auto v = check_frame_hom(*src.minus, *dst.minus, h.minus.map))
        throw StructureError("minus component is not a frame homomorphism (" + v->law + ")");
    DFrameHomCheck r;
    src.con.for_each([&](PairElement a) {
        if (!r.ok) return;
        if (!dst.con.contains(h.plus.map[a.plus], h.minus.map[a.minus])) {
            r.ok = false;
            r.which = "con";
            r.witness = a;
        }
    });
    if (!r.ok) return r;
    src.tot.for_each([&](PairElement a) {
        if (!r.ok) return;
        if (!dst.tot.contains(h.plus.map[a.plus], h.minus.map[a.minus])) {
            r.ok = false;
            r.which = "tot";
            r.witness = a;
        }
    });
    return r;
}

inline DFrameHom compose(const DFrameHom& g, const DFrameHom& f) {
    return {compose(g.plus, f.plus), compose(g.minus, f.minus)};
}

/// All d-frame homomorphisms src -> dst, by filtering the componentwise
/// frame homomorphism enumerations.
inline std::vector<DFrameHom> enumerate_dframe_homs(const DFrame& src, const DFrame& dst,
                                                    const Capacity& cap = {}) {
    std::vector<DFrameHom> out;
    auto plus_homs = enumerate_homs(src.plus, dst.plus, cap);
    auto minus_homs = enumerate_homs(src.minus, dst.minus, cap);
    for (const FrameHom& hp : plus_homs)
        for (const FrameHom& hm : minus_homs) {
            DFrameHom h{hp, hm};
            if (is_dframe_hom(h, src, dst).ok) out.push_back(h);
        }
    return out;
}

}  // namespace dfrm
