#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dfrm/bitset.hpp"
#include "dfrm/errors.hpp"

namespace dfrm {

/// Finite poset. Elements are dense indices in declaration order; the
/// order relation is kept as up-sets and down-sets for fast masking.
struct FinPoset {
    std::vector<std::string> labels;
    std::vector<Bitset> up;    // up[i]   = { j : i <= j }
    std::vector<Bitset> down;  // down[i] = { j : j <= i }

    int size() const { return static_cast<int>(labels.size()); }
    bool leq(int i, int j) const { return up[i].test(j); }

    int index_of(const std::string& label) const {
        for (int i = 0; i < size(); ++i)
            if (labels[i] == label) return i;
        return -1;
    }
};

struct PosetViolation {
    std::string law;  // "unique-labels" | "reflexive" | "antisymmetric" | "transitive"
    int a = 0, b = 0, c = 0;
};

inline std::optional<PosetViolation> validate_poset(const FinPoset& p) {
    const int n = p.size();
    std::unordered_set<std::string> seen;
    for (int i = 0; i < n; ++i)
        if (!seen.insert(p.labels[i]).second) return PosetViolation{"unique-labels", i, i, i};
    for (int i = 0; i < n; ++i)
        if (!p.leq(i, i)) return PosetViolation{"reflexive", i, i, i};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && p.leq(i, j) && p.leq(j, i)) return PosetViolation{"antisymmetric", i, j, j};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!p.leq(i, j)) continue;
            for (int k = 0; k < n; ++k)
                if (p.leq(j, k) && !p.leq(i, k)) return PosetViolation{"transitive", i, j, k};
        }
    return std::nullopt;
}

/// Builds a poset from a generating relation: takes the
/// reflexive-transitive closure and rejects cycles (antisymmetry).
inline FinPoset poset_from_leq(std::vector<std::string> labels,
                               const std::vector<std::pair<int, int>>& leq_pairs) {
    const int n = static_cast<int>(labels.size());
    FinPoset p;
    p.labels = std::move(labels);
    p.up.assign(n, Bitset(n));
    for (int i = 0; i < n; ++i) p.up[i].set(i);
    for (auto [a, b] : leq_pairs) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw StructureError("leq pair index out of range");
        p.up[a].set(b);
    }
    // Floyd-Warshall style closure on the up-sets.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            Bitset acc = p.up[i];
            p.up[i].for_each([&](int j) { acc |= p.up[j]; });
            if (acc != p.up[i]) {
                p.up[i] = acc;
                changed = true;
            }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (p.leq(i, j) && p.leq(j, i))
                throw StructureError("antisymmetry violated between '" + p.labels[i] + "' and '" +
                                     p.labels[j] + "'");
    p.down.assign(n, Bitset(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (p.leq(j, i)) p.down[i].set(j);
    if (auto v = validate_poset(p))
        throw StructureError("not a poset: " + v->law);
    return p;
}

/// Downward closure of S.
inline Bitset down_closure(const FinPoset& p, const Bitset& s) {
    Bitset r(p.size());
    s.for_each([&](int i) { r |= p.down[i]; });
    return r;
}

/// Upward closure of S.
inline Bitset up_closure(const FinPoset& p, const Bitset& s) {
    Bitset r(p.size());
    s.for_each([&](int i) { r |= p.up[i]; });
    return r;
}

}  // namespace dfrm
