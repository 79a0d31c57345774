#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dfrm/bitset.hpp"
#include "dfrm/errors.hpp"
#include "dfrm/poset.hpp"

namespace dfrm {

/// Finite distributive lattice with explicit order and operation
/// tables; at this scale these are exactly the finite frames.
struct FinFrame {
    FinPoset poset;
    int bottom = 0;
    int top = 0;
    std::vector<int> meet;  // n*n row-major
    std::vector<int> join;

    int size() const { return poset.size(); }
    bool leq(int i, int j) const { return poset.leq(i, j); }
    int meet_of(int i, int j) const { return meet[i * size() + j]; }
    int join_of(int i, int j) const { return join[i * size() + j]; }
    const std::string& label(int i) const { return poset.labels[i]; }

    friend bool operator==(const FinFrame& a, const FinFrame& b) {
        return a.poset.labels == b.poset.labels && a.poset.up == b.poset.up &&
               a.bottom == b.bottom && a.top == b.top && a.meet == b.meet && a.join == b.join;
    }
};

/// Frames are immutable after construction; shared ownership makes the
/// values built on top of them (relations, homs) cheap to copy.
using FramePtr = std::shared_ptr<const FinFrame>;

inline FramePtr share(FinFrame f) { return std::make_shared<const FinFrame>(std::move(f)); }

// ---------------------------------------------------------------------------
// Validation

struct FrameValidation {
    enum class Status { Pass, Structural, LawViolation };
    Status status = Status::Pass;
    std::string message;           // structural problem or violated law name
    std::array<int, 3> witness{};  // element indices for a law violation

    bool ok() const { return status == Status::Pass; }
};

/// Full check that the candidate is a finite frame: lattice laws
/// against the order, bounds, and distributivity by triple scan.
/// Malformed tables are a structural error, not a law violation.
inline FrameValidation validate_frame(const FinFrame& f) {
    FrameValidation r;
    const int n = f.size();
    auto structural = [&](const std::string& msg) {
        r.status = FrameValidation::Status::Structural;
        r.message = msg;
        return r;
    };
    if (auto v = validate_poset(f.poset))
        return structural("order is not a poset: " + v->law);
    if (f.meet.size() != static_cast<std::size_t>(n) * n ||
        f.join.size() != static_cast<std::size_t>(n) * n)
        return structural("operation tables are not total");
    for (int v : f.meet)
        if (v < 0 || v >= n) return structural("meet table index out of range");
    for (int v : f.join)
        if (v < 0 || v >= n) return structural("join table index out of range");
    if (f.bottom < 0 || f.bottom >= n || f.top < 0 || f.top >= n)
        return structural("bottom/top index out of range");

    auto law = [&](const char* name, int a, int b, int c) {
        r.status = FrameValidation::Status::LawViolation;
        r.message = name;
        r.witness = {a, b, c};
        return r;
    };
    for (int i = 0; i < n; ++i) {
        if (!f.leq(f.bottom, i)) return law("bottom", f.bottom, i, i);
        if (!f.leq(i, f.top)) return law("top", i, f.top, i);
    }
    // meet(x,y) must be the greatest lower bound, join the least upper.
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int m = f.meet_of(x, y);
            if (!f.leq(m, x) || !f.leq(m, y)) return law("meet-lower-bound", x, y, m);
            int j = f.join_of(x, y);
            if (!f.leq(x, j) || !f.leq(y, j)) return law("join-upper-bound", x, y, j);
            for (int z = 0; z < n; ++z) {
                if (f.leq(z, x) && f.leq(z, y) && !f.leq(z, m)) return law("meet-greatest", x, y, z);
                if (f.leq(x, z) && f.leq(y, z) && !f.leq(j, z)) return law("join-least", x, y, z);
            }
        }
    // Binary distributivity; on a finite carrier this is equivalent to
    // the infinitary law.
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (f.meet_of(x, f.join_of(y, z)) != f.join_of(f.meet_of(x, y), f.meet_of(x, z)))
                    return law("distributivity", x, y, z);
    return r;
}

/// Derives bottom, top and both operation tables from the order alone.
/// Throws if some pair has no greatest lower / least upper bound.
inline FinFrame frame_from_poset(FinPoset poset) {
    const int n = poset.size();
    if (n == 0) throw StructureError("empty carrier");
    FinFrame f;
    f.poset = std::move(poset);
    f.meet.assign(static_cast<std::size_t>(n) * n, 0);
    f.join.assign(static_cast<std::size_t>(n) * n, 0);
    auto extremum = [&](const Bitset& candidates, bool greatest) -> int {
        int best = -1;
        candidates.for_each([&](int c) {
            if (best == -1) best = c;
            else if (greatest ? f.poset.leq(best, c) : f.poset.leq(c, best)) best = c;
        });
        if (best == -1) return -1;
        // best must actually bound every candidate
        bool ok = true;
        candidates.for_each([&](int c) {
            if (greatest ? !f.poset.leq(c, best) : !f.poset.leq(best, c)) ok = false;
        });
        return ok ? best : -1;
    };
    for (int x = 0; x < n; ++x)
        for (int y = x; y < n; ++y) {
            int m = extremum(f.poset.down[x] & f.poset.down[y], true);
            if (m == -1)
                throw StructureError("no meet of '" + f.poset.labels[x] + "' and '" +
                                     f.poset.labels[y] + "'");
            int j = extremum(f.poset.up[x] & f.poset.up[y], false);
            if (j == -1)
                throw StructureError("no join of '" + f.poset.labels[x] + "' and '" +
                                     f.poset.labels[y] + "'");
            f.meet[x * n + y] = f.meet[y * n + x] = m;
            f.join[x * n + y] = f.join[y * n + x] = j;
        }
    int bot = extremum(Bitset::full(n), false);
    int top = extremum(Bitset::full(n), true);
    if (bot == -1 || top == -1) throw StructureError("no bottom or top element");
    f.bottom = bot;
    f.top = top;
    return f;
}

inline FinFrame frame_from_leq(std::vector<std::string> labels,
                               const std::vector<std::pair<int, int>>& leq_pairs) {
    return frame_from_poset(poset_from_leq(std::move(labels), leq_pairs));
}

// ---------------------------------------------------------------------------
// Basic operations

/// { x | exists s in S with x <= s }.
inline Bitset downset(const FinFrame& f, const Bitset& s) { return down_closure(f.poset, s); }
inline Bitset upset(const FinFrame& f, const Bitset& s) { return up_closure(f.poset, s); }

/// Join of a subset; the empty join is the bottom.
inline int join_of_set(const FinFrame& f, const Bitset& s) {
    int acc = f.bottom;
    s.for_each([&](int i) { acc = f.join_of(acc, i); });
    return acc;
}
inline int meet_of_set(const FinFrame& f, const Bitset& s) {
    int acc = f.top;
    s.for_each([&](int i) { acc = f.meet_of(acc, i); });
    return acc;
}

// ---------------------------------------------------------------------------
// Homomorphisms

/// Map preserving binary meet, binary join, bottom and top; on finite
/// carriers this is exactly a frame homomorphism.
struct FrameHom {
    FramePtr source;
    FramePtr target;
    std::vector<int> map;

    int operator()(int i) const { return map[i]; }
};

struct HomViolation {
    std::string law;  // "bottom" | "top" | "meet" | "join"
    int a = 0, b = 0;
};

inline std::optional<HomViolation> check_frame_hom(const FinFrame& src, const FinFrame& dst,
                                                   const std::vector<int>& map) {
    if (map.size() != static_cast<std::size_t>(src.size()))
        throw StructureError("hom map is not total");
    for (int v : map)
        if (v < 0 || v >= dst.size()) throw StructureError("hom map index out of range");
    if (map[src.bottom] != dst.bottom) return HomViolation{"bottom", src.bottom, src.bottom};
    if (map[src.top] != dst.top) return HomViolation{"top", src.top, src.top};
    for (int a = 0; a < src.size(); ++a)
        for (int b = a; b < src.size(); ++b) {
            if (map[src.meet_of(a, b)] != dst.meet_of(map[a], map[b]))
                return HomViolation{"meet", a, b};
            if (map[src.join_of(a, b)] != dst.join_of(map[a], map[b]))
                return HomViolation{"join", a, b};
        }
    return std::nullopt;
}

inline bool is_frame_hom(const FrameHom& h) {
    return !check_frame_hom(*h.source, *h.target, h.map).has_value();
}

inline FrameHom identity_hom(const FramePtr& f) {
    FrameHom h{f, f, {}};
    h.map.resize(f->size());
    for (int i = 0; i < f->size(); ++i) h.map[i] = i;
    return h;
}

inline FrameHom compose(const FrameHom& g, const FrameHom& f) {
    // g after f
    FrameHom h{f.source, g.target, {}};
    h.map.reserve(f.map.size());
    for (int v : f.map) h.map.push_back(g.map[v]);
    return h;
}

/// Exhaustive backtracking search for all frame homomorphisms
/// src -> dst. The tree is |dst|^|src| before pruning; the guard keeps
/// accidental blowups loud.
inline std::vector<FrameHom> enumerate_homs(const FramePtr& src, const FramePtr& dst,
                                            const Capacity& cap = {}) {
    const FinFrame& s = *src;
    const FinFrame& d = *dst;
    const int n = s.size();
    if (n * std::log2(static_cast<double>(d.size())) > cap.hom_bits)
        throw CapacityError("enumerate_homs: |dst|^|src| search exceeds guard");

    std::vector<FrameHom> out;
    std::vector<int> map(n, -1);

    // After assigning element k, every constraint whose participants
    // are all assigned must already hold.
    auto consistent = [&](int k) {
        if (k == s.bottom && map[k] != d.bottom) return false;
        if (k == s.top && map[k] != d.top) return false;
        for (int i = 0; i <= k; ++i) {
            if (s.leq(i, k) && !d.leq(map[i], map[k])) return false;
            if (s.leq(k, i) && !d.leq(map[k], map[i])) return false;
            int m = s.meet_of(i, k);
            if (m <= k && map[s.meet_of(i, k)] != d.meet_of(map[i], map[k])) return false;
            int j = s.join_of(i, k);
            if (j <= k && map[j] != d.join_of(map[i], map[k])) return false;
        }
        // Previously assigned pairs whose meet/join is exactly k.
        for (int i = 0; i < k; ++i)
            for (int j = i; j < k; ++j) {
                if (s.meet_of(i, j) == k && d.meet_of(map[i], map[j]) != map[k]) return false;
                if (s.join_of(i, j) == k && d.join_of(map[i], map[j]) != map[k]) return false;
            }
        return true;
    };

    std::function<void(int)> rec = [&](int k) {
        if (k == n) {
            out.push_back(FrameHom{src, dst, map});
            return;
        }
        for (int c = 0; c < d.size(); ++c) {
            map[k] = c;
            if (consistent(k)) rec(k + 1);
        }
        map[k] = -1;
    };
    rec(0);
    return out;
}

}  // namespace dfrm
