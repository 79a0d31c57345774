#pragma once

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "dfrm/conditions.hpp"
#include "dfrm/coproduct.hpp"
#include "dfrm/errors.hpp"
#include "dfrm/search.hpp"
#include "dfrm/standard.hpp"
#include "dfrm/text.hpp"

namespace dfrm {

/// Exit statuses shared by the command drivers:
/// 0 success, 1 mathematical failure with witness, 2 input error,
/// 3 capacity guard.
struct CommandResult {
    int status = 0;
    std::string report;
};

namespace detail {

inline std::string pair_str(const FinFrame& lp, const FinFrame& lm, PairElement e) {
    return "(" + lp.label(e.plus) + "," + lm.label(e.minus) + ")";
}

inline nlohmann::json ladder_json(const ClosureStack& s, const LadderReport& l) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ConditionReport& r : l.reports) {
        nlohmann::json j;
        j["condition"] = condition_name(r.id);
        j["holds"] = r.holds;
        if (r.witness) {
            nlohmann::json w = nlohmann::json::array();
            for (PairElement e : r.witness->pairs) w.push_back(pair_str(*s.plus, *s.minus, e));
            j["witness"] = w;
        }
        arr.push_back(j);
    }
    return arr;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// validate

inline CommandResult cmd_validate(const std::string& text, bool dump_json = false) {
    Document doc;
    try {
        doc = parse(text);
    } catch (const ParseError& e) {
        return {2, std::string(e.what()) + "\n"};
    }
    std::ostringstream os;
    nlohmann::json dump = nlohmann::json::array();
    bool failed = false;
    for (const Document::Entry& e : doc.entries) {
        std::string verdict = "ok";
        if (const FramePtr* f = std::get_if<FramePtr>(&e.decl)) {
            FrameValidation v = validate_frame(**f);
            if (!v.ok()) {
                failed = true;
                verdict = v.message;
                if (v.status == FrameValidation::Status::LawViolation) {
                    verdict += " at (" + (*f)->label(v.witness[0]) + "," +
                               (*f)->label(v.witness[1]) + "," + (*f)->label(v.witness[2]) + ")";
                }
            }
        } else if (const MeetSemilattice* s = std::get_if<MeetSemilattice>(&e.decl)) {
            auto v = validate_meet_semilattice(*s);
            if (!v.ok) {
                failed = true;
                verdict = v.message;
            }
        } else if (const PresentationDecl* p = std::get_if<PresentationDecl>(&e.decl)) {
            try {
                stability_close(p->pres);
            } catch (const StructureError& err) {
                failed = true;
                verdict = err.what();
            }
        } else if (const FinBispace* x = std::get_if<FinBispace>(&e.decl)) {
            auto v = validate_bispace(*x);
            if (!v.ok) {
                failed = true;
                verdict = v.message;
            }
        } else if (const DFrameDecl* d = std::get_if<DFrameDecl>(&e.decl)) {
            auto reports = check_axioms(d->dframe);
            for (const AxiomReport& r : reports)
                if (!r.holds) {
                    failed = true;
                    verdict = std::string("axiom ") + axiom_name(r.axiom) + " fails";
                    if (!r.witness.empty())
                        verdict += " at " + detail::pair_str(*d->dframe.plus, *d->dframe.minus,
                                                             r.witness[0]);
                    break;
                }
        } else if (const PreDFrameDecl* d = std::get_if<PreDFrameDecl>(&e.decl)) {
            try {
                PreDFramePresentation closed = d->pres;
                closed.plus = stability_close(closed.plus);
                closed.minus = stability_close(closed.minus);
                validate_predframe_presentation(closed);
            } catch (const StructureError& err) {
                failed = true;
                verdict = err.what();
            }
        }
        os << declaration_kind(e.decl) << " " << e.name << ": " << verdict << "\n";
        dump.push_back({{"kind", declaration_kind(e.decl)}, {"name", e.name},
                        {"verdict", verdict}});
    }
    return {failed ? 1 : 0, dump_json ? dump.dump(2) + "\n" : os.str()};
}

// ---------------------------------------------------------------------------
// gen

namespace detail {

inline const PreDFrameDecl* find_predframe(const Document& doc, const std::string& name,
                                           std::string& err) {
    const Document::Entry* e = doc.find(name);
    if (!e) {
        err = "no declaration named '" + name + "'";
        return nullptr;
    }
    const PreDFrameDecl* d = std::get_if<PreDFrameDecl>(&e->decl);
    if (!d) err = "'" + name + "' is not a predframe";
    return d;
}

inline GeneratedPreDFrame generate_from_decl(const PreDFrameDecl& d, const Capacity& cap) {
    PreDFramePresentation closed = d.pres;
    closed.plus = stability_close(closed.plus);
    closed.minus = stability_close(closed.minus);
    return generate_pre_dframe(closed, cap);
}

}  // namespace detail

/// Generates the pre-d-frame of a presentation and prints it in the
/// document format, with the axiom verdicts as trailing comments.
inline CommandResult cmd_gen(const std::string& text, const std::string& name,
                             const Capacity& cap = {}) {
    Document doc;
    try {
        doc = parse(text);
    } catch (const ParseError& e) {
        return {2, std::string(e.what()) + "\n"};
    }
    std::string err;
    const PreDFrameDecl* d = detail::find_predframe(doc, name, err);
    if (!d) return {2, err + "\n"};

    GeneratedPreDFrame g;
    try {
        g = detail::generate_from_decl(*d, cap);
    } catch (const CapacityError& e) {
        return {3, std::string(e.what()) + "\n"};
    } catch (const StructureError& e) {
        return {2, std::string(e.what()) + "\n"};
    }

    Document out;
    out.entries.push_back({name + ".plus", g.result.plus});
    out.entries.push_back({name + ".minus", g.result.minus});
    out.entries.push_back(
        {name + ".gen", DFrameDecl{name + ".plus", name + ".minus", g.result}});
    std::ostringstream os;
    os << serialize(out);
    os << "\n";
    auto reports = check_axioms(g.result, cap);
    for (const AxiomReport& r : reports)
        os << "# axiom " << axiom_name(r.axiom) << ": " << (r.holds ? "pass" : "FAIL") << "\n";
    os << "# " << (all_axioms_hold(reports) ? "d-frame" : "pre-d-frame only") << "\n";
    return {0, os.str()};
}

// ---------------------------------------------------------------------------
// check

/// Runs the full condition ladder and the two sufficient-condition
/// gates on a generated presentation. Mathematical failure (the
/// generated structure is not a d-frame, or a claimed implication
/// breaks) exits 1 with the witnesses printed.
inline CommandResult cmd_check(const std::string& text, const std::string& name,
                               bool with_conditions = false, bool dump_json = false,
                               const Capacity& cap = {}) {
    Document doc;
    try {
        doc = parse(text);
    } catch (const ParseError& e) {
        return {2, std::string(e.what()) + "\n"};
    }
    std::string err;
    const PreDFrameDecl* d = detail::find_predframe(doc, name, err);
    if (!d) return {2, err + "\n"};

    try {
        GeneratedPreDFrame g = detail::generate_from_decl(*d, cap);
        ClosureStack s = build_closure_stack(g);
        LadderReport ladder = run_condition_ladder(s, cap);
        GateResult gate;
        gate.ladder = ladder;
        using C = ConditionId;
        gate.ladder_bundle = ladder.holds(C::Lambda4Plus) && ladder.holds(C::Lambda4Minus) &&
                             ladder.holds(C::IndSplitPlus) && ladder.holds(C::IndSplitMinus);
        gate.micro_bundle = ladder.holds(C::MuPlus) && ladder.holds(C::MuMinus) &&
                            ladder.holds(C::IndepPlus) && ladder.holds(C::IndepMinus);
        gate.ground_witness = contot_violation(g.result);
        gate.ground_contot = !gate.ground_witness.has_value();
        ImplicationSuite imp = stage_implication_suite(ladder);

        const FinFrame& lp = *g.result.plus;
        const FinFrame& lm = *g.result.minus;
        std::ostringstream os;
        nlohmann::json j;
        os << "generated " << name << ": |L+| = " << lp.size() << ", |L-| = " << lm.size()
           << "\n";
        if (with_conditions) {
            os << "condition    holds  witness\n";
            for (const ConditionReport& r : ladder.reports) {
                os << std::string(condition_name(r.id)) +
                          std::string(13 - std::string(condition_name(r.id)).size(), ' ')
                   << (r.holds ? "yes" : "no ") << "   ";
                if (r.witness) {
                    bool fst = true;
                    for (PairElement e : r.witness->pairs) {
                        if (!fst) os << " ";
                        fst = false;
                        os << detail::pair_str(lp, lm, e);
                    }
                } else {
                    os << "-";
                }
                os << "\n";
            }
        }
        os << "ladder bundle (lambda4 + split independence): "
           << (gate.ladder_bundle ? "holds" : "fails") << "\n";
        os << "micro bundle (mu + independence): " << (gate.micro_bundle ? "holds" : "fails")
           << "\n";
        os << "con-tot on the generated structure: " << (gate.ground_contot ? "holds" : "FAILS");
        if (gate.ground_witness)
            os << "  witness " << detail::pair_str(lp, lm, gate.ground_witness->first) << " vs "
               << detail::pair_str(lp, lm, gate.ground_witness->second);
        os << "\n";
        bool imp_violated = false;
        for (const Implication& i : imp.claimed)
            if (i.violated()) {
                imp_violated = true;
                os << "IMPLICATION VIOLATED: " << i.name << "\n";
            }
        if (!imp_violated) os << "stage implications: all consistent\n";
        if (gate.separation())
            os << "note: con-tot holds but a sufficient bundle misses it (separation)\n";

        if (dump_json) {
            j["name"] = name;
            j["sizes"] = {lp.size(), lm.size()};
            j["conditions"] = detail::ladder_json(s, ladder);
            j["ladder_bundle"] = gate.ladder_bundle;
            j["micro_bundle"] = gate.micro_bundle;
            j["contot"] = gate.ground_contot;
            j["implications_consistent"] = !imp_violated;
        }
        int status = (gate.ground_contot && !imp_violated) ? 0 : 1;
        return {status, dump_json ? j.dump(2) + "\n" : os.str()};
    } catch (const CapacityError& e) {
        return {3, std::string(e.what()) + "\n"};
    } catch (const StructureError& e) {
        return {2, std::string(e.what()) + "\n"};
    }
}

// ---------------------------------------------------------------------------
// coproduct

/// Builds the coproduct of named d-frames and emits it in the document
/// format together with a certificate: axioms, the micro conditions,
/// strip isomorphisms, embedding facts and the rectangle-cross scan.
inline CommandResult cmd_coproduct(const std::string& text, const std::vector<std::string>& names,
                                   bool dump_json = false, const Capacity& cap = {}) {
    Document doc;
    try {
        doc = parse(text);
    } catch (const ParseError& e) {
        return {2, std::string(e.what()) + "\n"};
    }
    std::vector<DFrame> family;
    for (const std::string& n : names) {
        const DFrameDecl* d = doc.find_as<DFrameDecl>(n);
        if (!d) return {2, "no dframe named '" + n + "'\n"};
        family.push_back(d->dframe);
    }

    try {
        DFrameCoproduct c = dframe_coproduct(family, cap);
        std::string name = names[0];
        for (std::size_t i = 1; i < names.size(); ++i) name += "+" + names[i];

        Document out;
        out.entries.push_back({name + ".plus", c.result.plus});
        out.entries.push_back({name + ".minus", c.result.minus});
        out.entries.push_back({name, DFrameDecl{name + ".plus", name + ".minus", c.result}});

        std::ostringstream os;
        os << serialize(out) << "\n";
        nlohmann::json j;
        os << "# cert: sizes |L+| = " << c.result.plus->size()
           << ", |L-| = " << c.result.minus->size() << ", |B+| = " << c.plus.base.tuples
           << ", |B-| = " << c.minus.base.tuples << "\n";
        auto reports = check_axioms(c.result, cap);
        bool ok = true;
        for (const AxiomReport& r : reports) {
            os << "# cert: axiom " << axiom_name(r.axiom) << " " << (r.holds ? "pass" : "FAIL")
               << "\n";
            ok = ok && r.holds;
        }
        ClosureStack s = c.closure_stack();
        for (Side side : {Side::Plus, Side::Minus}) {
            ConditionReport mu = check_mu(s, side);
            ConditionReport ind = check_indep(s, side);
            os << "# cert: " << condition_name(mu.id) << " " << (mu.holds ? "pass" : "FAIL")
               << ", " << condition_name(ind.id) << " " << (ind.holds ? "pass" : "FAIL") << "\n";
            ok = ok && mu.holds && ind.holds;
        }
        for (std::size_t i = 0; i < family.size(); ++i) {
            StripsIsoReport r = strips_iso_check(c, static_cast<int>(i));
            os << "# cert: strips " << i << " "
               << (!r.applicable ? "not-applicable (trivial component)"
                                 : (r.iso ? "iso" : "FAIL: " + r.detail))
               << "\n";
            ok = ok && (!r.applicable || r.iso);
        }
        CoprBasicsSuite basics = copr_basics_suite(c, cap);
        os << "# cert: embedding facts " << (basics.all() ? "pass" : "FAIL") << " (n carries "
           << basics.plus.n_tuples << "+" << basics.minus.n_tuples << " tuples)\n";
        ok = ok && basics.all();
        // rectangle-below-cross scan over both sides
        long checked = 0;
        for (const FrameCoproduct* side : {&c.plus, &c.minus}) {
            const FinFrame& f = *side->frame();
            for (int g = 0; g < f.size(); ++g) {
                GeometryTag tg = classify_geometry(*side, g);
                if (!tg.is_rectangle || tg.rect_support.empty()) continue;
                for (int del = 0; del < f.size(); ++del) {
                    GeometryTag td = classify_geometry(*side, del);
                    if (!td.is_cross || !f.leq(g, del)) continue;
                    if (!rec_cross_check(*side, g, del).has_value()) ok = false;
                    ++checked;
                }
            }
        }
        os << "# cert: rectangle-cross pairs checked " << checked << "\n";
        os << "# cert: " << (ok ? "PASS" : "FAIL") << "\n";
        if (dump_json) {
            j["name"] = name;
            j["sizes"] = {c.result.plus->size(), c.result.minus->size()};
            j["pass"] = ok;
            j["rect_cross_pairs"] = checked;
            return {ok ? 0 : 1, j.dump(2) + "\n"};
        }
        return {ok ? 0 : 1, os.str()};
    } catch (const CapacityError& e) {
        return {3, std::string(e.what()) + "\n"};
    } catch (const StructureError& e) {
        return {1, std::string("coproduct construction failed: ") + e.what() + "\n"};
    }
}

// ---------------------------------------------------------------------------
// search

inline CommandResult cmd_search(const SearchConfig& cfg, bool dump_json = false) {
    try {
        SearchFindings f = run_search(cfg);
        bool failed = !f.implication_violations.empty() || !f.cross_check_failures.empty();
        if (dump_json) {
            nlohmann::json j;
            j["instances"] = f.instances;
            j["contot_failures"] = f.contot_failures;
            j["separations"] = f.separations;
            j["implication_violations"] = f.implication_violations;
            j["cross_check_failures"] = f.cross_check_failures;
            return {failed ? 1 : 0, j.dump(2) + "\n"};
        }
        return {failed ? 1 : 0, search_report(cfg, f)};
    } catch (const CapacityError& e) {
        return {3, std::string(e.what()) + "\n"};
    } catch (const StructureError& e) {
        return {2, std::string(e.what()) + "\n"};
    }
}

}  // namespace dfrm
