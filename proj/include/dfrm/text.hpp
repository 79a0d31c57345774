#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "dfrm/closure.hpp"
#include "dfrm/dframe.hpp"
#include "dfrm/errors.hpp"
#include "dfrm/frame.hpp"
#include "dfrm/presentation.hpp"
#include "dfrm/semilattice.hpp"

namespace dfrm {

/// Parse failure with a 1-based location of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + msg),
          line_(line),
          col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

/// Declarations that reference earlier ones keep the names so a
/// document can be re-emitted exactly.
struct PresentationDecl {
    std::string base_name;
    FramePresentation pres;  // as written: not stability-closed
};
struct DFrameDecl {
    std::string plus_name, minus_name;
    DFrame dframe;
};
struct PreDFrameDecl {
    std::string plus_name, minus_name;
    PreDFramePresentation pres;
};

using Declaration =
    std::variant<FramePtr, MeetSemilattice, PresentationDecl, FinBispace, DFrameDecl, PreDFrameDecl>;

struct Document {
    struct Entry {
        std::string name;
        Declaration decl;
    };
    std::vector<Entry> entries;

    const Entry* find(const std::string& name) const {
        for (const Entry& e : entries)
            if (e.name == name) return &e;
        return nullptr;
    }
    template <class T>
    const T* find_as(const std::string& name) const {
        const Entry* e = find(name);
        if (!e) return nullptr;
        return std::get_if<T>(&e->decl);
    }
};

inline const char* declaration_kind(const Declaration& d) {
    switch (d.index()) {
        case 0: return "frame";
        case 1: return "semilattice";
        case 2: return "presentation";
        case 3: return "bispace";
        case 4: return "dframe";
        case 5: return "predframe";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct Token {
    std::string text;
    int col;  // 1-based
};

struct Line {
    int number;
    bool indented;
    std::vector<Token> tokens;
};

inline std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string raw = text.substr(pos, eol - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw = raw.substr(0, hash);
        Line line{number, !raw.empty() && (raw[0] == ' ' || raw[0] == '\t'), {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
            std::size_t start = i;
            while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
            if (i > start) line.tokens.push_back({raw.substr(start, i - start),
                                                  static_cast<int>(start) + 1});
        }
        if (!line.tokens.empty()) out.push_back(std::move(line));
        if (eol == text.size()) break;
        pos = eol + 1;
    }
    return out;
}

/// Shared elem/leq body collector for frames and semilattices.
struct CarrierBody {
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> leq;
    std::unordered_map<std::string, int> index;

    int lookup(const Token& t, int line) const {
        auto it = index.find(t.text);
        if (it == index.end())
            throw ParseError(line, t.col, "unknown element '" + t.text + "'");
        return it->second;
    }
};

}  // namespace detail

/// Parses a document: named declarations in file order, each a header
/// line with indented key lines beneath. Forward references are
/// rejected; loaders run eagerly so structural defects surface at the
/// declaration.
inline Document parse(const std::string& text) {
    using detail::Line;
    using detail::Token;
    std::vector<Line> lines = detail::tokenize(text);
    Document doc;

    std::size_t i = 0;
    while (i < lines.size()) {
        const Line& header = lines[i];
        if (header.indented)
            throw ParseError(header.number, header.tokens[0].col,
                             "expected a declaration header, got an indented line");
        const std::string& kind = header.tokens[0].text;
        bool known = kind == "frame" || kind == "semilattice" || kind == "presentation" ||
                     kind == "bispace" || kind == "dframe" || kind == "predframe";
        if (!known)
            throw ParseError(header.number, header.tokens[0].col,
                             "unknown declaration kind '" + kind + "'");
        if (header.tokens.size() != 2)
            throw ParseError(header.number, header.tokens[0].col,
                             "expected '" + kind + " <name>'");
        const std::string name = header.tokens[1].text;
        if (doc.find(name))
            throw ParseError(header.number, header.tokens[1].col,
                             "duplicate name '" + name + "'");

        std::vector<const Line*> body;
        ++i;
        while (i < lines.size() && lines[i].indented) body.push_back(&lines[i++]);

        auto key_error = [&](const Line& l, const std::string& what) -> ParseError {
            return ParseError(l.number, l.tokens[0].col, what);
        };
        auto resolve = [&](const Token& t, int line) -> const Document::Entry& {
            const Document::Entry* e = doc.find(t.text);
            if (!e) throw ParseError(line, t.col, "reference to undeclared '" + t.text + "'");
            return *e;
        };

        if (kind == "frame" || kind == "semilattice") {
            detail::CarrierBody c;
            for (const Line* l : body) {
                const std::string& key = l->tokens[0].text;
                if (key == "elem") {
                    if (l->tokens.size() != 2) throw key_error(*l, "expected 'elem <label>'");
                    if (c.index.count(l->tokens[1].text))
                        throw ParseError(l->number, l->tokens[1].col,
                                         "duplicate element '" + l->tokens[1].text + "'");
                    c.index[l->tokens[1].text] = static_cast<int>(c.labels.size());
                    c.labels.push_back(l->tokens[1].text);
                } else if (key == "leq") {
                    if (l->tokens.size() != 3) throw key_error(*l, "expected 'leq <a> <b>'");
                    c.leq.emplace_back(c.lookup(l->tokens[1], l->number),
                                       c.lookup(l->tokens[2], l->number));
                } else {
                    throw key_error(*l, "unknown key '" + key + "' in " + kind);
                }
            }
            try {
                if (kind == "frame")
                    doc.entries.push_back({name, share(frame_from_leq(c.labels, c.leq))});
                else
                    doc.entries.push_back({name, semilattice_from_leq(c.labels, c.leq)});
            } catch (const StructureError& e) {
                throw ParseError(header.number, header.tokens[0].col,
                                 name + ": " + e.what());
            }
        } else if (kind == "presentation") {
            PresentationDecl d;
            std::vector<std::pair<const detail::Line*, bool>> cover_lines;
            const MeetSemilattice* base = nullptr;
            for (const Line* l : body) {
                const std::string& key = l->tokens[0].text;
                if (key == "base") {
                    if (l->tokens.size() != 2) throw key_error(*l, "expected 'base <semilattice>'");
                    const Document::Entry& e = resolve(l->tokens[1], l->number);
                    base = std::get_if<MeetSemilattice>(&e.decl);
                    if (!base)
                        throw ParseError(l->number, l->tokens[1].col,
                                         "'" + e.name + "' is not a semilattice");
                    d.base_name = e.name;
                    d.pres.base = *base;
                } else if (key == "cover") {
                    cover_lines.push_back({l, false});
                } else {
                    throw key_error(*l, "unknown key '" + key + "' in presentation");
                }
            }
            if (!base) throw key_error(header, "presentation '" + name + "' has no base");
            for (auto& [l, done] : cover_lines) {
                (void)done;
                // cover <a> <= u1 u2 ...
                if (l->tokens.size() < 3 || l->tokens[2].text != "<=")
                    throw key_error(*l, "expected 'cover <a> <= [u...]'");
                auto find_elem = [&](const Token& t) {
                    int idx = base->poset.index_of(t.text);
                    if (idx < 0)
                        throw ParseError(l->number, t.col, "unknown element '" + t.text + "'");
                    return idx;
                };
                Cover c{find_elem(l->tokens[1]), Bitset(base->size())};
                for (std::size_t k = 3; k < l->tokens.size(); ++k)
                    c.coverers.set(find_elem(l->tokens[k]));
                d.pres.covers.push_back(std::move(c));
            }
            doc.entries.push_back({name, std::move(d)});
        } else if (kind == "bispace") {
            FinBispace x;
            std::unordered_map<std::string, int> pts;
            for (const Line* l : body) {
                const std::string& key = l->tokens[0].text;
                if (key == "point") {
                    if (l->tokens.size() != 2) throw key_error(*l, "expected 'point <label>'");
                    if (pts.count(l->tokens[1].text))
                        throw ParseError(l->number, l->tokens[1].col, "duplicate point");
                    pts[l->tokens[1].text] = static_cast<int>(x.points.size());
                    x.points.push_back(l->tokens[1].text);
                } else if (key == "open+" || key == "open-") {
                    Bitset o(static_cast<int>(x.points.size()));
                    for (std::size_t k = 1; k < l->tokens.size(); ++k) {
                        auto it = pts.find(l->tokens[k].text);
                        if (it == pts.end())
                            throw ParseError(l->number, l->tokens[k].col,
                                             "unknown point '" + l->tokens[k].text + "'");
                        o.set(it->second);
                    }
                    (key == "open+" ? x.opens_plus : x.opens_minus).push_back(std::move(o));
                } else {
                    throw key_error(*l, "unknown key '" + key + "' in bispace");
                }
            }
            doc.entries.push_back({name, std::move(x)});
        } else if (kind == "dframe") {
            DFrameDecl d;
            FramePtr plus, minus;
            std::vector<const Line*> rel_lines;
            for (const Line* l : body) {
                const std::string& key = l->tokens[0].text;
                if (key == "plus" || key == "minus") {
                    if (l->tokens.size() != 2) throw key_error(*l, "expected '" + key + " <frame>'");
                    const Document::Entry& e = resolve(l->tokens[1], l->number);
                    const FramePtr* f = std::get_if<FramePtr>(&e.decl);
                    if (!f)
                        throw ParseError(l->number, l->tokens[1].col,
                                         "'" + e.name + "' is not a frame");
                    (key == "plus" ? plus : minus) = *f;
                    (key == "plus" ? d.plus_name : d.minus_name) = e.name;
                } else if (key == "con" || key == "tot") {
                    rel_lines.push_back(l);
                } else {
                    throw key_error(*l, "unknown key '" + key + "' in dframe");
                }
            }
            if (!plus || !minus)
                throw key_error(header, "dframe '" + name + "' needs plus and minus frames");
            d.dframe.plus = plus;
            d.dframe.minus = minus;
            d.dframe.con = PairRelation::empty(plus, minus);
            d.dframe.tot = PairRelation::empty(plus, minus);
            for (const Line* l : rel_lines) {
                if (l->tokens.size() != 3)
                    throw key_error(*l, "expected '" + l->tokens[0].text + " <a> <b>'");
                int a = plus->poset.index_of(l->tokens[1].text);
                if (a < 0)
                    throw ParseError(l->number, l->tokens[1].col,
                                     "unknown plus element '" + l->tokens[1].text + "'");
                int b = minus->poset.index_of(l->tokens[2].text);
                if (b < 0)
                    throw ParseError(l->number, l->tokens[2].col,
                                     "unknown minus element '" + l->tokens[2].text + "'");
                (l->tokens[0].text == "con" ? d.dframe.con : d.dframe.tot).add(a, b);
            }
            doc.entries.push_back({name, std::move(d)});
        } else {  // predframe
            PreDFrameDecl d;
            const PresentationDecl* plus = nullptr;
            const PresentationDecl* minus = nullptr;
            std::vector<const Line*> rel_lines;
            for (const Line* l : body) {
                const std::string& key = l->tokens[0].text;
                if (key == "plus" || key == "minus") {
                    if (l->tokens.size() != 2)
                        throw key_error(*l, "expected '" + key + " <presentation>'");
                    const Document::Entry& e = resolve(l->tokens[1], l->number);
                    const PresentationDecl* p = std::get_if<PresentationDecl>(&e.decl);
                    if (!p)
                        throw ParseError(l->number, l->tokens[1].col,
                                         "'" + e.name + "' is not a presentation");
                    (key == "plus" ? plus : minus) = p;
                    (key == "plus" ? d.plus_name : d.minus_name) = e.name;
                } else if (key == "con" || key == "tot") {
                    rel_lines.push_back(l);
                } else {
                    throw key_error(*l, "unknown key '" + key + "' in predframe");
                }
            }
            if (!plus || !minus)
                throw key_error(header, "predframe '" + name + "' needs plus and minus sides");
            d.pres.plus = plus->pres;
            d.pres.minus = minus->pres;
            for (const Line* l : rel_lines) {
                if (l->tokens.size() != 3)
                    throw key_error(*l, "expected '" + l->tokens[0].text + " <b+> <b->'");
                int a = plus->pres.base.poset.index_of(l->tokens[1].text);
                if (a < 0)
                    throw ParseError(l->number, l->tokens[1].col,
                                     "unknown plus generator '" + l->tokens[1].text + "'");
                int b = minus->pres.base.poset.index_of(l->tokens[2].text);
                if (b < 0)
                    throw ParseError(l->number, l->tokens[2].col,
                                     "unknown minus generator '" + l->tokens[2].text + "'");
                (l->tokens[0].text == "con" ? d.pres.con1 : d.pres.tot1).push_back({a, b});
            }
            doc.entries.push_back({name, std::move(d)});
        }
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

/// Covering pairs of the order (its Hasse diagram); the closure is
/// recovered on load.
inline std::vector<std::pair<int, int>> hasse_pairs(const FinPoset& p) {
    std::vector<std::pair<int, int>> out;
    const int n = p.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b || !p.leq(a, b)) continue;
            bool covering = true;
            for (int c = 0; c < n && covering; ++c)
                if (c != a && c != b && p.leq(a, c) && p.leq(c, b)) covering = false;
            if (covering) out.emplace_back(a, b);
        }
    return out;
}

inline void emit_carrier(std::ostringstream& os, const FinPoset& p) {
    for (int i = 0; i < p.size(); ++i) os << "  elem " << p.labels[i] << "\n";
    for (auto [a, b] : hasse_pairs(p)) os << "  leq " << p.labels[a] << " " << p.labels[b] << "\n";
}

}  // namespace detail

inline std::string serialize(const Document& doc) {
    std::ostringstream os;
    bool first = true;
    for (const Document::Entry& e : doc.entries) {
        if (!first) os << "\n";
        first = false;
        os << declaration_kind(e.decl) << " " << e.name << "\n";
        if (const FramePtr* f = std::get_if<FramePtr>(&e.decl)) {
            detail::emit_carrier(os, (*f)->poset);
        } else if (const MeetSemilattice* s = std::get_if<MeetSemilattice>(&e.decl)) {
            detail::emit_carrier(os, s->poset);
        } else if (const PresentationDecl* p = std::get_if<PresentationDecl>(&e.decl)) {
            os << "  base " << p->base_name << "\n";
            for (const Cover& c : p->pres.covers) {
                os << "  cover " << p->pres.base.label(c.covered) << " <=";
                c.coverers.for_each([&](int u) { os << " " << p->pres.base.label(u); });
                os << "\n";
            }
        } else if (const FinBispace* x = std::get_if<FinBispace>(&e.decl)) {
            for (const std::string& pt : x->points) os << "  point " << pt << "\n";
            for (const Bitset& o : x->opens_plus) {
                os << "  open+";
                o.for_each([&](int p) { os << " " << x->points[p]; });
                os << "\n";
            }
            for (const Bitset& o : x->opens_minus) {
                os << "  open-";
                o.for_each([&](int p) { os << " " << x->points[p]; });
                os << "\n";
            }
        } else if (const DFrameDecl* d = std::get_if<DFrameDecl>(&e.decl)) {
            os << "  plus " << d->plus_name << "\n";
            os << "  minus " << d->minus_name << "\n";
            d->dframe.con.for_each([&](PairElement a) {
                os << "  con " << d->dframe.plus->label(a.plus) << " "
                   << d->dframe.minus->label(a.minus) << "\n";
            });
            d->dframe.tot.for_each([&](PairElement a) {
                os << "  tot " << d->dframe.plus->label(a.plus) << " "
                   << d->dframe.minus->label(a.minus) << "\n";
            });
        } else if (const PreDFrameDecl* d = std::get_if<PreDFrameDecl>(&e.decl)) {
            os << "  plus " << d->plus_name << "\n";
            os << "  minus " << d->minus_name << "\n";
            for (const PairElement& a : d->pres.con1)
                os << "  con " << d->pres.plus.base.label(a.plus) << " "
                   << d->pres.minus.base.label(a.minus) << "\n";
            for (const PairElement& a : d->pres.tot1)
                os << "  tot " << d->pres.plus.base.label(a.plus) << " "
                   << d->pres.minus.base.label(a.minus) << "\n";
        }
    }
    return os.str();
}

}  // namespace dfrm
