#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dfrm/closure.hpp"
#include "dfrm/conditions.hpp"
#include "dfrm/errors.hpp"
#include "dfrm/semilattice.hpp"

namespace dfrm {

struct SearchConfig {
    int max_b = 2;    // largest generator carrier per side
    int max_rel = 2;  // largest seed relation per kind
    int max_covers = -1;  // cover-set size bound; -1 enumerates every subset
    enum class Mode { Exhaustive, Random } mode = Mode::Exhaustive;
    int samples = 100;       // random mode
    std::uint64_t seed = 1;  // random mode; fixed seed gives identical output
    long max_instances = 20'000'000;  // exhaustive-mode workload guard
    Capacity cap{};

    void validate() const {
        if (max_b <= 0 || max_rel < 0 || samples <= 0)
            throw StructureError("search bounds must be positive");
        if (mode == Mode::Exhaustive && max_b > 3)
            throw StructureError("exhaustive search requires max_b <= 3");
    }
};

struct SearchFindings {
    long instances = 0;
    long contot_failures = 0;  // instances whose generated structure fails the axiom
    long separations = 0;      // axiom holds but a sufficient bundle misses it
    std::vector<std::string> implication_violations;  // must stay empty
    std::vector<std::string> cross_check_failures;    // must stay empty
    std::vector<std::string> separation_details;
};

namespace detail {

/// Compact deterministic encoding of a presentation instance.
inline std::string encode_instance(const PreDFramePresentation& p) {
    std::ostringstream os;
    auto side = [&](const FramePresentation& f, char tag) {
        os << "B" << tag << "[n=" << f.base.size() << ";leq=";
        for (int i = 0; i < f.base.size(); ++i)
            for (int j = 0; j < f.base.size(); ++j)
                if (i != j && f.base.leq(i, j)) os << i << "<" << j << ",";
        os << "]C" << tag << "[";
        for (const Cover& c : f.covers) {
            os << c.covered << "<={";
            bool fst = true;
            c.coverers.for_each([&](int u) {
                if (!fst) os << ",";
                fst = false;
                os << u;
            });
            os << "};";
        }
        os << "]";
    };
    side(p.plus, '+');
    side(p.minus, '-');
    os << "con1[";
    for (const PairElement& e : p.con1) os << "(" << e.plus << "," << e.minus << ")";
    os << "]tot1[";
    for (const PairElement& e : p.tot1) os << "(" << e.plus << "," << e.minus << ")";
    os << "]";
    return os.str();
}

/// All labelled meet-semilattices with at most max_n elements,
/// enumerated via every reflexive-transitive-antisymmetric relation.
inline std::vector<MeetSemilattice> all_meet_semilattices(int max_n) {
    std::vector<MeetSemilattice> out;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<std::pair<int, int>> off;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) off.emplace_back(i, j);
        const int bits = static_cast<int>(off.size());
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << bits); ++mask) {
            std::vector<std::pair<int, int>> leq;
            for (int b = 0; b < bits; ++b)
                if ((mask >> b) & 1) leq.push_back(off[b]);
            std::vector<std::string> labels;
            for (int i = 0; i < n; ++i) labels.push_back("b" + std::to_string(i));
            FinPoset poset;
            try {
                poset = poset_from_leq(std::move(labels), leq);
            } catch (const StructureError&) {
                continue;  // cyclic
            }
            // only relations that are their own transitive closure, so
            // each poset appears once
            bool canonical = true;
            for (int b = 0; b < bits && canonical; ++b)
                if (!((mask >> b) & 1) && poset.leq(off[b].first, off[b].second)) canonical = false;
            if (!canonical) continue;
            try {
                out.push_back(semilattice_from_poset(std::move(poset)));
            } catch (const StructureError&) {
                continue;  // missing meets or top
            }
        }
    }
    return out;
}

/// Every stability-closed presentation over the base with cover sets
/// drawn from all candidate covers (subsets up to max_covers, or every
/// subset when unbounded), deduplicated after closure.
inline std::vector<FramePresentation> closed_presentations(const MeetSemilattice& base,
                                                           int max_covers) {
    std::vector<Cover> candidates;
    for (int a = 0; a < base.size(); ++a) {
        std::vector<int> below = base.poset.down[a].to_vector();
        const int k = static_cast<int>(below.size());
        for (std::uint64_t m = 0; m < (std::uint64_t(1) << k); ++m) {
            Cover c{a, Bitset(base.size())};
            for (int b = 0; b < k; ++b)
                if ((m >> b) & 1) c.coverers.set(below[b]);
            candidates.push_back(std::move(c));
        }
    }
    const int bits = static_cast<int>(candidates.size());
    if (bits > 20) throw CapacityError("cover candidate space too large for enumeration");

    std::set<std::vector<Cover>> seen;
    std::vector<FramePresentation> out;
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << bits); ++m) {
        int sz = __builtin_popcountll(m);
        if (max_covers >= 0 && sz > max_covers) continue;
        FramePresentation p;
        p.base = base;
        for (int b = 0; b < bits; ++b)
            if ((m >> b) & 1) p.covers.push_back(candidates[b]);
        FramePresentation closed = stability_close(p);
        if (seen.insert(closed.covers).second) out.push_back(std::move(closed));
    }
    return out;
}

/// All subsets of generator pairs up to the size bound.
inline std::vector<std::vector<PairElement>> all_seed_relations(int np, int nm, int max_rel) {
    std::vector<PairElement> pairs;
    for (int a = 0; a < np; ++a)
        for (int b = 0; b < nm; ++b) pairs.push_back({a, b});
    const int bits = static_cast<int>(pairs.size());
    std::vector<std::vector<PairElement>> out;
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << bits); ++m) {
        if (__builtin_popcountll(m) > max_rel) continue;
        std::vector<PairElement> rel;
        for (int b = 0; b < bits; ++b)
            if ((m >> b) & 1) rel.push_back(pairs[b]);
        out.push_back(std::move(rel));
    }
    return out;
}

struct InstanceOutcome {
    bool implication_violation = false;
    bool cross_check_failure = false;
    bool ground = false;
    bool separation = false;
    std::string violation_name;
};

inline InstanceOutcome evaluate_instance(const PreDFramePresentation& p, const Capacity& cap) {
    InstanceOutcome o;
    GeneratedPreDFrame g = generate_pre_dframe(p, cap);

    // the one-step formulas must reproduce the fixpoint relations
    PairRelation con_formula =
        d_one_step(down_close(wedge_vee_close(adjoin_units(g.con1), FiniteCloseMode::MeetJoin)));
    PairRelation tot_formula =
        up_close(wedge_vee_close(adjoin_units(g.tot1), FiniteCloseMode::MeetJoin));
    if (g.result.con != con_formula || g.result.tot != tot_formula) {
        o.cross_check_failure = true;
        return o;
    }

    try {
        GateResult gate = theorem_contot_gate(g, cap);
        o.ground = gate.ground_contot;
        o.separation = gate.separation();
        ImplicationSuite imp = stage_implication_suite(gate.ladder);
        for (const Implication& i : imp.claimed)
            if (i.violated()) {
                o.implication_violation = true;
                o.violation_name = i.name;
                break;
            }
    } catch (const StructureError& e) {
        // a holding bundle over a failing axiom or an internal
        // disagreement; both are findings, never silent
        o.implication_violation = true;
        o.violation_name = e.what();
    }
    return o;
}

inline void record(SearchFindings& f, const PreDFramePresentation& p, const InstanceOutcome& o) {
    ++f.instances;
    if (!o.ground) ++f.contot_failures;
    if (o.separation) {
        ++f.separations;
        if (f.separation_details.size() < 50)
            f.separation_details.push_back(encode_instance(p));
    }
    if (o.implication_violation)
        f.implication_violations.push_back(o.violation_name + " @ " + encode_instance(p));
    if (o.cross_check_failure) f.cross_check_failures.push_back(encode_instance(p));
}

/// Random meet-subsemilattice of a small powerset lattice: a random
/// mask family closed under intersection, always containing the full
/// set as the top. Returns the carrier together with the member masks.
struct SampledSemilattice {
    MeetSemilattice base;
    std::vector<int> masks;  // element index -> ambient subset mask
};

inline SampledSemilattice random_subsemilattice(std::mt19937_64& rng, int atoms, int extra) {
    const int full = (1 << atoms) - 1;
    std::set<int> family{full};
    for (int i = 0; i < extra; ++i) family.insert(static_cast<int>(rng() % (full + 1)));
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> cur(family.begin(), family.end());
        for (int a : cur)
            for (int b : cur)
                if (family.insert(a & b).second) changed = true;
    }
    std::vector<int> masks(family.begin(), family.end());
    std::vector<std::string> labels;
    for (int m : masks) labels.push_back("s" + std::to_string(m));
    std::vector<std::pair<int, int>> leq;
    for (std::size_t i = 0; i < masks.size(); ++i)
        for (std::size_t j = 0; j < masks.size(); ++j)
            if ((masks[i] & ~masks[j]) == 0) leq.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return {semilattice_from_leq(std::move(labels), leq), std::move(masks)};
}

/// Covers whose join genuinely holds in the ambient powerset: U below
/// a with the union of the members equal to a.
inline FramePresentation random_presentation(std::mt19937_64& rng, int max_covers_budget) {
    for (;;) {
        int atoms = 2 + static_cast<int>(rng() % 2);
        SampledSemilattice sampled =
            random_subsemilattice(rng, atoms, 1 + static_cast<int>(rng() % 4));
        const MeetSemilattice& base = sampled.base;
        const std::vector<int>& masks = sampled.masks;

        FramePresentation p;
        p.base = base;
        int want = static_cast<int>(rng() % 3);
        for (int c = 0; c < want; ++c) {
            int a = static_cast<int>(rng() % base.size());
            std::vector<int> below = base.poset.down[a].to_vector();
            Cover cover{a, Bitset(base.size())};
            int uni = 0;
            for (int b : below)
                if (rng() & 1) {
                    cover.coverers.set(b);
                    uni |= masks[b];
                }
            if (uni != masks[a]) continue;  // the join must actually hold there
            p.covers.push_back(std::move(cover));
        }
        FramePresentation closed = stability_close(p);
        if (static_cast<int>(closed.covers.size()) <= max_covers_budget) return closed;
    }
}

}  // namespace detail

inline SearchFindings run_search(const SearchConfig& cfg) {
    cfg.validate();
    SearchFindings f;
    if (cfg.mode == SearchConfig::Mode::Exhaustive) {
        std::vector<FramePresentation> presentations;
        for (const MeetSemilattice& base : detail::all_meet_semilattices(cfg.max_b))
            for (FramePresentation& p : detail::closed_presentations(base, cfg.max_covers))
                presentations.push_back(std::move(p));
        // workload guard before any instance runs
        long projected = 0;
        for (const FramePresentation& pp : presentations)
            for (const FramePresentation& pm : presentations) {
                long combos = static_cast<long>(
                    detail::all_seed_relations(pp.base.size(), pm.base.size(), cfg.max_rel).size());
                projected += combos * combos;
            }
        if (projected > cfg.max_instances)
            throw CapacityError("exhaustive sweep would run " + std::to_string(projected) +
                                " instances, over the guard of " +
                                std::to_string(cfg.max_instances));
        for (const FramePresentation& pp : presentations)
            for (const FramePresentation& pm : presentations) {
                auto cons = detail::all_seed_relations(pp.base.size(), pm.base.size(), cfg.max_rel);
                for (const auto& con1 : cons)
                    for (const auto& tot1 : cons) {
                        PreDFramePresentation inst{pp, pm, con1, tot1};
                        detail::record(f, inst, detail::evaluate_instance(inst, cfg.cap));
                    }
            }
    } else {
        std::mt19937_64 rng(cfg.seed);
        for (int s = 0; s < cfg.samples; ++s) {
            PreDFramePresentation inst;
            inst.plus = detail::random_presentation(rng, 40);
            inst.minus = detail::random_presentation(rng, 40);
            auto draw_rel = [&](std::vector<PairElement>& rel) {
                int count = static_cast<int>(rng() % (cfg.max_rel + 1));
                for (int i = 0; i < count; ++i)
                    rel.push_back({static_cast<int>(rng() % inst.plus.base.size()),
                                   static_cast<int>(rng() % inst.minus.base.size())});
            };
            draw_rel(inst.con1);
            draw_rel(inst.tot1);
            detail::record(f, inst, detail::evaluate_instance(inst, cfg.cap));
        }
    }
    std::sort(f.separation_details.begin(), f.separation_details.end());
    std::sort(f.implication_violations.begin(), f.implication_violations.end());
    std::sort(f.cross_check_failures.begin(), f.cross_check_failures.end());
    return f;
}

inline std::string search_report(const SearchConfig& cfg, const SearchFindings& f) {
    std::ostringstream os;
    os << "search mode="
       << (cfg.mode == SearchConfig::Mode::Exhaustive ? "exhaustive" : "random")
       << " max-b=" << cfg.max_b << " max-rel=" << cfg.max_rel;
    if (cfg.mode == SearchConfig::Mode::Random)
        os << " samples=" << cfg.samples << " seed=" << cfg.seed;
    os << "\n";
    os << "instances            " << f.instances << "\n";
    os << "contot failures      " << f.contot_failures << "\n";
    os << "separations          " << f.separations << "\n";
    os << "implication breaches " << f.implication_violations.size() << "\n";
    os << "cross-check breaches " << f.cross_check_failures.size() << "\n";
    for (const std::string& v : f.implication_violations) os << "BREACH " << v << "\n";
    for (const std::string& v : f.cross_check_failures) os << "CROSS-CHECK " << v << "\n";
    for (const std::string& v : f.separation_details) os << "separation " << v << "\n";
    return os.str();
}

}  // namespace dfrm
