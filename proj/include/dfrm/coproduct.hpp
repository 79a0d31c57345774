#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dfrm/bitset.hpp"
#include "dfrm/closure.hpp"
#include "dfrm/conditions.hpp"
#include "dfrm/dframe.hpp"
#include "dfrm/errors.hpp"
#include "dfrm/frame.hpp"
#include "dfrm/presentation.hpp"

namespace dfrm {

// ---------------------------------------------------------------------------
// The restricted product carrier

/// All tuples over a finite family of frames, a meet-semilattice under
/// the coordinatewise meet with the all-tops tuple on top. (With a
/// finite index set the "all but finitely many coordinates are 1"
/// restriction is vacuous.) Tuples are indexed row-major with component
/// 0 most significant.
struct RestrictedProduct {
    std::vector<FramePtr> components;
    std::vector<int> strides;
    int tuples = 1;

    static RestrictedProduct over(std::vector<FramePtr> comps) {
        RestrictedProduct p;
        p.components = std::move(comps);
        if (p.components.empty()) throw StructureError("empty coproduct family");
        p.strides.assign(p.components.size(), 1);
        for (int j = static_cast<int>(p.components.size()) - 2; j >= 0; --j)
            p.strides[j] = p.strides[j + 1] * p.components[j + 1]->size();
        p.tuples = p.strides[0] * p.components[0]->size();
        return p;
    }

    int arity() const { return static_cast<int>(components.size()); }
    int coord(int t, int j) const { return (t / strides[j]) % components[j]->size(); }

    int index(const std::vector<int>& coords) const {
        int t = 0;
        for (int j = 0; j < arity(); ++j) t += coords[j] * strides[j];
        return t;
    }

    /// a *_j u : coordinate j replaced by a.
    int star(int j, int a, int u) const {
        return u + (a - coord(u, j)) * strides[j];
    }

    int ones() const {
        std::vector<int> c(arity());
        for (int j = 0; j < arity(); ++j) c[j] = components[j]->top;
        return index(c);
    }

    bool leq(int u, int v) const {
        for (int j = 0; j < arity(); ++j)
            if (!components[j]->leq(coord(u, j), coord(v, j))) return false;
        return true;
    }
    int meet(int u, int v) const {
        std::vector<int> c(arity());
        for (int j = 0; j < arity(); ++j) c[j] = components[j]->meet_of(coord(u, j), coord(v, j));
        return index(c);
    }

    /// Membership in n: some coordinate is the component bottom.
    bool in_n(int u) const {
        for (int j = 0; j < arity(); ++j)
            if (coord(u, j) == components[j]->bottom) return true;
        return false;
    }

    std::string label(int t) const {
        std::string s = "(";
        for (int j = 0; j < arity(); ++j) {
            if (j) s += ',';
            s += components[j]->label(coord(t, j));
        }
        return s + ")";
    }

    MeetSemilattice to_semilattice() const {
        FinPoset poset;
        poset.labels.reserve(tuples);
        for (int t = 0; t < tuples; ++t) poset.labels.push_back(label(t));
        poset.up.assign(tuples, Bitset(tuples));
        poset.down.assign(tuples, Bitset(tuples));
        for (int u = 0; u < tuples; ++u)
            for (int v = 0; v < tuples; ++v)
                if (leq(u, v)) {
                    poset.up[u].set(v);
                    poset.down[v].set(u);
                }
        MeetSemilattice s;
        s.poset = std::move(poset);
        s.top = ones();
        s.meet.assign(static_cast<std::size_t>(tuples) * tuples, 0);
        for (int u = 0; u < tuples; ++u)
            for (int v = 0; v < tuples; ++v) s.meet[u * tuples + v] = meet(u, v);
        return s;
    }
};

/// Every cover { a^k *_j u : k in K } -| (join K) *_j u, over all
/// components j, all contexts u and all subsets K of the component,
/// including K = {} (which pins n as the bottom ideal). The family is
/// closed under the stability condition as generated: a derived
/// instance collapses onto the generated cover with the meets folded
/// into K and the context.
inline std::vector<Cover> coproduct_covers(const RestrictedProduct& b, const Capacity& cap = {}) {
    std::set<Cover> out;
    for (int j = 0; j < b.arity(); ++j) {
        const FinFrame& comp = *b.components[j];
        cap.require_family(comp.size(), "coproduct_covers");
        for (int u = 0; u < b.tuples; ++u) {
            if (b.coord(u, j) != comp.top) continue;  // contexts ignore coordinate j
            const std::uint64_t limit = std::uint64_t(1) << comp.size();
            for (std::uint64_t k = 0; k < limit; ++k) {
                Cover c{0, Bitset(b.tuples)};
                int join = comp.bottom;
                for (int a = 0; a < comp.size(); ++a)
                    if ((k >> a) & 1) {
                        c.coverers.set(b.star(j, a, u));
                        join = comp.join_of(join, a);
                    }
                c.covered = b.star(j, join, u);
                out.insert(std::move(c));
            }
        }
    }
    return std::vector<Cover>(out.begin(), out.end());
}

// ---------------------------------------------------------------------------
// Frame coproducts

/// One side of a coproduct: the presented frame of C-ideals over the
/// restricted product, with the translation and the injections.
struct FrameCoproduct {
    RestrictedProduct base;
    FramePresentation pres;
    CIdlFrame cidl;
    std::vector<int> sem;             // tuple -> ideal element
    std::vector<FrameHom> injections;  // component -> coproduct

    const FramePtr& frame() const { return cidl.frame; }
    /// The ideal of a *_j ones.
    int strip(int j, int a) const { return sem[base.star(j, a, base.ones())]; }
};

inline FrameCoproduct frame_coproduct(std::vector<FramePtr> components, const Capacity& cap = {}) {
    FrameCoproduct c;
    c.base = RestrictedProduct::over(std::move(components));
    cap.require_subsets(c.base.tuples, "frame_coproduct");
    c.pres.base = c.base.to_semilattice();
    c.pres.covers = coproduct_covers(c.base, cap);
    c.pres.stable = true;  // the generated family is stability-closed; see coproduct_covers
    c.cidl = enumerate_c_ideals(c.pres, cap);
    c.sem = sem_map(c.pres, c.cidl);
    for (int j = 0; j < c.base.arity(); ++j) {
        FrameHom inj{c.base.components[j], c.cidl.frame, {}};
        inj.map.reserve(c.base.components[j]->size());
        for (int a = 0; a < c.base.components[j]->size(); ++a)
            inj.map.push_back(c.strip(j, a));
        if (auto v = check_frame_hom(*inj.source, *inj.target, inj.map))
            throw StructureError("coproduct injection is not a frame homomorphism (" + v->law +
                                 ")");
        c.injections.push_back(std::move(inj));
    }
    // the bottom ideal is exactly n
    const Bitset& bottom = c.cidl.ideals[c.cidl.frame->bottom];
    for (int t = 0; t < c.base.tuples; ++t)
        if (bottom.test(t) != c.base.in_n(t))
            throw StructureError("bottom ideal of the coproduct is not n");
    return c;
}

// ---------------------------------------------------------------------------
// D-frame coproducts

struct DFrameCoproduct {
    std::vector<DFrame> components;
    FrameCoproduct plus;
    FrameCoproduct minus;
    std::vector<PairElement> con1_tuples;  // (plus tuple, minus tuple)
    std::vector<PairElement> tot1_tuples;
    PairRelation con1;  // embedded in the ideal frames
    PairRelation tot1;
    GeneratorSet gens;
    DFrame result;
    std::vector<DFrameHom> injections;

    ClosureStack closure_stack() const {
        return build_closure_stack(plus.frame(), minus.frame(), con1, tot1, gens);
    }
};

inline DFrameCoproduct dframe_coproduct(const std::vector<DFrame>& family,
                                        const Capacity& cap = {}) {
    if (family.empty()) throw StructureError("empty coproduct family");
    DFrameCoproduct c;
    c.components = family;
    std::vector<FramePtr> plus, minus;
    for (const DFrame& d : family) {
        plus.push_back(d.plus);
        minus.push_back(d.minus);
    }
    c.plus = frame_coproduct(plus, cap);
    c.minus = frame_coproduct(minus, cap);

    c.con1 = PairRelation::empty(c.plus.frame(), c.minus.frame());
    c.tot1 = PairRelation::empty(c.plus.frame(), c.minus.frame());
    const int onesp = c.plus.base.ones();
    const int onesm = c.minus.base.ones();
    for (int j = 0; j < static_cast<int>(family.size()); ++j) {
        family[j].con.for_each([&](PairElement e) {
            PairElement t{c.plus.base.star(j, e.plus, onesp), c.minus.base.star(j, e.minus, onesm)};
            c.con1_tuples.push_back(t);
            c.con1.add(c.plus.sem[t.plus], c.minus.sem[t.minus]);
        });
        family[j].tot.for_each([&](PairElement e) {
            PairElement t{c.plus.base.star(j, e.plus, onesp), c.minus.base.star(j, e.minus, onesm)};
            c.tot1_tuples.push_back(t);
            c.tot1.add(c.plus.sem[t.plus], c.minus.sem[t.minus]);
        });
    }

    c.gens.plus = Bitset(c.plus.frame()->size());
    for (int v : c.plus.sem) c.gens.plus.set(v);
    c.gens.minus = Bitset(c.minus.frame()->size());
    for (int v : c.minus.sem) c.gens.minus.set(v);

    c.result = DFrame{c.plus.frame(), c.minus.frame(), con_min(c.con1), tot_min(c.tot1)};
    if (!all_axioms_hold(check_axioms(c.result, cap)))
        throw StructureError("coproduct result fails a d-frame axiom");

    for (int j = 0; j < static_cast<int>(family.size()); ++j) {
        DFrameHom inj{c.plus.injections[j], c.minus.injections[j]};
        if (auto chk = is_dframe_hom(inj, family[j], c.result); !chk.ok)
            throw StructureError("coproduct injection does not preserve " + chk.which);
        c.injections.push_back(std::move(inj));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Strips, rectangles and crosses

struct GeometryTag {
    enum class Kind { Strip, Rectangle, Cross, Other };
    Kind kind = Kind::Other;
    bool is_strip = false;
    bool is_rectangle = false;
    bool is_cross = false;
    std::vector<int> rect_coords;    // per component, when rectangle
    std::vector<int> rect_support;   // components with coordinate != top
    std::vector<int> cross_coords;   // largest strip value per component, when cross
    std::vector<int> cross_support;  // components with strip value != bottom
};

/// Classifies an element of one coproduct side. A rectangle is an
/// element of the embedded tuple carrier; a cross is a finite union of
/// strips; a strip is the image of a single component element.
inline GeometryTag classify_geometry(const FrameCoproduct& c, int element) {
    GeometryTag tag;

    // rectangle: the coordinatewise join of the members outside n,
    // or the all-bottoms tuple for n itself
    {
        const Bitset& ideal = c.cidl.ideals[element];
        std::vector<int> coords(c.base.arity());
        bool any = false;
        for (int j = 0; j < c.base.arity(); ++j) coords[j] = c.base.components[j]->bottom;
        ideal.for_each([&](int t) {
            if (c.base.in_n(t)) return;
            any = true;
            for (int j = 0; j < c.base.arity(); ++j)
                coords[j] = c.base.components[j]->join_of(coords[j], c.base.coord(t, j));
        });
        // with no members outside n the coords stay all-bottom, whose
        // image is n itself
        int u = c.base.index(coords);
        (void)any;
        if (c.sem[u] == element) {
            tag.is_rectangle = true;
            tag.rect_coords = coords;
            for (int j = 0; j < c.base.arity(); ++j)
                if (coords[j] != c.base.components[j]->top) tag.rect_support.push_back(j);
        }
    }

    // cross: union of the largest strips inside the element
    {
        std::vector<int> coords(c.base.arity());
        Bitset uni(c.base.tuples);
        for (int j = 0; j < c.base.arity(); ++j) {
            const FinFrame& comp = *c.base.components[j];
            int best = comp.bottom;
            for (int a = 0; a < comp.size(); ++a)
                if (c.cidl.ideals[c.strip(j, a)].subset_of(c.cidl.ideals[element]))
                    best = comp.join_of(best, a);
            coords[j] = best;
            uni |= c.cidl.ideals[c.strip(j, best)];
        }
        if (uni == c.cidl.ideals[element]) {
            tag.is_cross = true;
            tag.cross_coords = coords;
            for (int j = 0; j < c.base.arity(); ++j)
                if (coords[j] != c.base.components[j]->bottom) tag.cross_support.push_back(j);
        }
    }

    // strip: image of one component element
    for (int j = 0; j < c.base.arity() && !tag.is_strip; ++j)
        for (int a = 0; a < c.base.components[j]->size(); ++a)
            if (c.strip(j, a) == element) {
                tag.is_strip = true;
                break;
            }

    tag.kind = tag.is_strip        ? GeometryTag::Kind::Strip
               : tag.is_rectangle ? GeometryTag::Kind::Rectangle
               : tag.is_cross     ? GeometryTag::Kind::Cross
                                  : GeometryTag::Kind::Other;
    return tag;
}

/// For a rectangle below a cross, some supported coordinate of the
/// rectangle sits below the matching strip of the cross. Requires
/// gamma <= delta; returns the first such coordinate in index order.
inline std::optional<int> rec_cross_check(const FrameCoproduct& c, int gamma, int delta) {
    GeometryTag g = classify_geometry(c, gamma);
    GeometryTag d = classify_geometry(c, delta);
    if (!g.is_rectangle) throw StructureError("rec_cross_check: first element is not a rectangle");
    if (!d.is_cross) throw StructureError("rec_cross_check: second element is not a cross");
    if (!c.frame()->leq(gamma, delta))
        throw StructureError("rec_cross_check: rectangle is not below the cross");
    for (int j : g.rect_support)
        if (c.base.components[j]->leq(g.rect_coords[j], d.cross_coords[j])) return j;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Canonical forms of finite combinations

enum class PairKind { ConMeet, ConJoin, TotMeet, TotJoin };

/// A closure member decomposed into one strip pair per component, with
/// its finite support (components whose pair differs from the unit).
struct CanonicalForm {
    std::vector<PairElement> strip_pairs;  // component-element pairs (a+, a-)
    std::vector<int> support;
};

/// Decomposes a member of the meet-closure (rectangle plus, cross
/// minus) or join-closure (cross plus, rectangle minus) of the seed
/// relations into per-component strip pairs lying in the component
/// relation, and re-verifies that the combination reproduces the input.
/// Inputs outside the stated closures are a structural error.
inline CanonicalForm canonical_form(const DFrameCoproduct& c, PairElement alpha, PairKind kind) {
    const bool meet_kind = kind == PairKind::ConMeet || kind == PairKind::TotMeet;
    const bool con_kind = kind == PairKind::ConMeet || kind == PairKind::ConJoin;
    const FrameCoproduct& rect_side = meet_kind ? c.plus : c.minus;
    const FrameCoproduct& cross_side = meet_kind ? c.minus : c.plus;
    const int rect_elem = meet_kind ? alpha.plus : alpha.minus;
    const int cross_elem = meet_kind ? alpha.minus : alpha.plus;

    GeometryTag rect = classify_geometry(rect_side, rect_elem);
    GeometryTag cross = classify_geometry(cross_side, cross_elem);
    if (!rect.is_rectangle)
        throw StructureError("canonical_form: expected a rectangle coordinate");
    if (!cross.is_cross) throw StructureError("canonical_form: expected a cross coordinate");

    const int arity = c.plus.base.arity();
    std::vector<int> rect_coords = rect.rect_coords;
    std::vector<int> cross_coords = cross.cross_coords;
    if (rect_elem == rect_side.frame()->bottom) {
        // The tuple representative of n is not unique; keep the
        // rectangle at the unit wherever the cross carries no support,
        // so the decomposition stays slim.
        if (cross_elem == cross_side.frame()->top) {
            // happens only for the logical unit: put all weight on
            // component 0
            for (int j = 0; j < arity; ++j) {
                rect_coords[j] = j == 0 ? rect_side.base.components[j]->bottom
                                        : rect_side.base.components[j]->top;
                cross_coords[j] = j == 0 ? cross_side.base.components[j]->top
                                         : cross_side.base.components[j]->bottom;
            }
        } else {
            bool any = false;
            for (int j = 0; j < arity; ++j) {
                bool supported = cross_coords[j] != cross_side.base.components[j]->bottom;
                rect_coords[j] = supported ? rect_side.base.components[j]->bottom
                                           : rect_side.base.components[j]->top;
                any = any || supported;
            }
            if (!any) rect_coords[0] = rect_side.base.components[0]->bottom;
        }
    }

    CanonicalForm out;
    for (int j = 0; j < arity; ++j) {
        PairElement comp_pair = meet_kind ? PairElement{rect_coords[j], cross_coords[j]}
                                          : PairElement{cross_coords[j], rect_coords[j]};
        const PairRelation& rel = con_kind ? c.components[j].con : c.components[j].tot;
        if (!rel.contains(comp_pair))
            throw StructureError("canonical_form: component pair is not in the component relation");
        out.strip_pairs.push_back(comp_pair);
        PairElement unit = meet_kind ? pair_tt(*c.components[j].plus, *c.components[j].minus)
                                     : pair_ff(*c.components[j].plus, *c.components[j].minus);
        if (comp_pair != unit) out.support.push_back(j);
    }

    // recombination: fold the strip pairs with the logical operation
    const FinFrame& lp = *c.plus.frame();
    const FinFrame& lm = *c.minus.frame();
    PairElement acc = meet_kind ? pair_tt(lp, lm) : pair_ff(lp, lm);
    for (int j = 0; j < arity; ++j) {
        PairElement strips{c.plus.strip(j, out.strip_pairs[j].plus),
                           c.minus.strip(j, out.strip_pairs[j].minus)};
        acc = meet_kind ? logical_meet(lp, lm, acc, strips) : logical_join(lp, lm, acc, strips);
    }
    if (acc != alpha)
        throw StructureError("canonical_form: recombination does not reproduce the element");
    return out;
}

// ---------------------------------------------------------------------------
// Per-claim exhaustive suites

struct StripsIsoReport {
    bool applicable = true;  // false when some component is trivial
    bool iso = false;
    std::string detail;
};

/// The strips of index i with the restricted seed relations form a
/// structure isomorphic to the i-th component, via the injection.
inline StripsIsoReport strips_iso_check(const DFrameCoproduct& c, int i) {
    StripsIsoReport r;
    for (const DFrame& d : c.components)
        if (d.plus->size() == 1 || d.minus->size() == 1) {
            r.applicable = false;
            r.detail = "a component is trivial";
            return r;
        }
    const DFrame& comp = c.components[i];
    const FrameHom& ip = c.plus.injections[i];
    const FrameHom& im = c.minus.injections[i];

    auto injective = [](const std::vector<int>& m) {
        std::set<int> seen(m.begin(), m.end());
        return seen.size() == m.size();
    };
    if (!injective(ip.map) || !injective(im.map)) {
        r.detail = "injection is not one-one";
        return r;
    }
    // image is exactly the strip family; order reflected both ways
    std::set<int> strips_p, strips_m;
    for (int a = 0; a < comp.plus->size(); ++a) strips_p.insert(c.plus.strip(i, a));
    for (int a = 0; a < comp.minus->size(); ++a) strips_m.insert(c.minus.strip(i, a));
    if (std::set<int>(ip.map.begin(), ip.map.end()) != strips_p ||
        std::set<int>(im.map.begin(), im.map.end()) != strips_m) {
        r.detail = "injection image is not the strip family";
        return r;
    }
    for (int a = 0; a < comp.plus->size(); ++a)
        for (int b = 0; b < comp.plus->size(); ++b)
            if (comp.plus->leq(a, b) != c.plus.frame()->leq(ip.map[a], ip.map[b])) {
                r.detail = "plus order is not reflected";
                return r;
            }
    for (int a = 0; a < comp.minus->size(); ++a)
        for (int b = 0; b < comp.minus->size(); ++b)
            if (comp.minus->leq(a, b) != c.minus.frame()->leq(im.map[a], im.map[b])) {
                r.detail = "minus order is not reflected";
                return r;
            }
    // seed relations restricted to strips match the component relations
    for (int a = 0; a < comp.plus->size(); ++a)
        for (int b = 0; b < comp.minus->size(); ++b) {
            if (comp.con.contains(a, b) != c.con1.contains(ip.map[a], im.map[b])) {
                r.detail = "consistency is not reflected on strips";
                return r;
            }
            if (comp.tot.contains(a, b) != c.tot1.contains(ip.map[a], im.map[b])) {
                r.detail = "totality is not reflected on strips";
                return r;
            }
        }
    r.iso = true;
    return r;
}

struct CoprBasicsReport {
    bool order_iff = true;       // off n, ideal inclusion mirrors the tuple order
    bool injective_off_n = true;
    bool meet_identity = true;   // (a (+)_j u) meet (b (+)_j u) = (a meet b) (+)_j u
    bool join_identity = true;   // joins of (a^k (+)_j u) = (join a^k) (+)_j u
    bool n_collapse = true;      // every tuple of n embeds onto the bottom
    int n_tuples = 0;

    bool all() const {
        return order_iff && injective_off_n && meet_identity && join_identity && n_collapse;
    }
};

/// The four embedding facts, checked exhaustively over one side.
inline CoprBasicsReport copr_basics_side(const FrameCoproduct& c, const Capacity& cap = {}) {
    CoprBasicsReport r;
    const FinFrame& f = *c.frame();
    for (int u = 0; u < c.base.tuples; ++u) {
        if (c.base.in_n(u)) {
            ++r.n_tuples;
            if (c.sem[u] != f.bottom) r.n_collapse = false;
            continue;
        }
        for (int v = 0; v < c.base.tuples; ++v) {
            if (f.leq(c.sem[u], c.sem[v]) != c.base.leq(u, v)) r.order_iff = false;
            if (v != u && !c.base.in_n(v) && c.sem[u] == c.sem[v]) r.injective_off_n = false;
        }
    }
    for (int j = 0; j < c.base.arity(); ++j) {
        const FinFrame& comp = *c.base.components[j];
        for (int u = 0; u < c.base.tuples; ++u) {
            for (int a = 0; a < comp.size(); ++a)
                for (int b = 0; b < comp.size(); ++b) {
                    int lhs = f.meet_of(c.sem[c.base.star(j, a, u)], c.sem[c.base.star(j, b, u)]);
                    int rhs = c.sem[c.base.star(j, comp.meet_of(a, b), u)];
                    if (lhs != rhs) r.meet_identity = false;
                }
            cap.require_family(comp.size(), "copr_basics_side");
            for (std::uint64_t k = 0; k < (std::uint64_t(1) << comp.size()); ++k) {
                int fold = f.bottom;
                int join = comp.bottom;
                for (int a = 0; a < comp.size(); ++a)
                    if ((k >> a) & 1) {
                        fold = f.join_of(fold, c.sem[c.base.star(j, a, u)]);
                        join = comp.join_of(join, a);
                    }
                if (fold != c.sem[c.base.star(j, join, u)]) r.join_identity = false;
            }
        }
    }
    return r;
}

struct CoprBasicsSuite {
    CoprBasicsReport plus;
    CoprBasicsReport minus;
    bool all() const { return plus.all() && minus.all(); }
};

inline CoprBasicsSuite copr_basics_suite(const DFrameCoproduct& c, const Capacity& cap = {}) {
    return {copr_basics_side(c.plus, cap), copr_basics_side(c.minus, cap)};
}

// ---------------------------------------------------------------------------
// The universal property

/// Builds the mediating homomorphism of a cocone and verifies it: each
/// leg must be a d-frame homomorphism; the induced map on tuples
/// (the meet of the legs' coordinate images) must preserve meets and
/// send every generated cover to a join -- re-deriving executably that
/// joins of star-tuples are preserved -- and the result must factor
/// every leg through the injections. Optionally verifies uniqueness by
/// enumerating all candidate homomorphisms.
inline DFrameHom coproduct_universal_check(const DFrameCoproduct& c, const DFrame& m,
                                           const std::vector<DFrameHom>& cocone,
                                           bool check_unique = true, const Capacity& cap = {}) {
    if (cocone.size() != c.components.size())
        throw StructureError("cocone arity does not match the family");
    for (std::size_t j = 0; j < cocone.size(); ++j)
        if (auto chk = is_dframe_hom(cocone[j], c.components[j], m); !chk.ok)
            throw StructureError("cocone leg " + std::to_string(j) + " does not preserve " +
                                 chk.which);

    auto tuple_map = [&](const FrameCoproduct& side, bool plus_side) {
        std::vector<int> f(side.base.tuples);
        const FinFrame& target = plus_side ? *m.plus : *m.minus;
        for (int u = 0; u < side.base.tuples; ++u) {
            int acc = target.top;
            for (int j = 0; j < side.base.arity(); ++j) {
                const FrameHom& leg = plus_side ? cocone[j].plus : cocone[j].minus;
                acc = target.meet_of(acc, leg.map[side.base.coord(u, j)]);
            }
            f[u] = acc;
        }
        return f;
    };
    std::vector<int> fp = tuple_map(c.plus, true);
    std::vector<int> fm = tuple_map(c.minus, false);

    DFrameHom med{extend_universal(c.plus.pres, c.plus.cidl, fp, m.plus),
                  extend_universal(c.minus.pres, c.minus.cidl, fm, m.minus)};
    if (auto chk = is_dframe_hom(med, c.result, m); !chk.ok)
        throw StructureError("mediating map does not preserve " + chk.which);
    for (std::size_t j = 0; j < cocone.size(); ++j) {
        if (compose(med.plus, c.plus.injections[j]).map != cocone[j].plus.map ||
            compose(med.minus, c.minus.injections[j]).map != cocone[j].minus.map)
            throw StructureError("mediating map does not factor cocone leg " + std::to_string(j));
    }
    if (check_unique) {
        int found = 0;
        for (const DFrameHom& cand : enumerate_dframe_homs(c.result, m, cap)) {
            bool factors = true;
            for (std::size_t j = 0; j < cocone.size() && factors; ++j)
                if (compose(cand.plus, c.plus.injections[j]).map != cocone[j].plus.map ||
                    compose(cand.minus, c.minus.injections[j]).map != cocone[j].minus.map)
                    factors = false;
            if (factors) ++found;
        }
        if (found != 1)
            throw StructureError("expected exactly one mediating homomorphism, found " +
                                 std::to_string(found));
    }
    return med;
}

}  // namespace dfrm
