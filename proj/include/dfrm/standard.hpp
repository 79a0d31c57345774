#pragma once

#include <string>
#include <vector>

#include "dfrm/dframe.hpp"
#include "dfrm/frame.hpp"

namespace dfrm {

/// Chain 0 < c1 < ... < 1. For n == 3 the middle element is labelled
/// "m" to match the texts this library trades in.
inline FramePtr make_chain(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        if (i == 0) labels.push_back("0");
        else if (i == n - 1) labels.push_back("1");
        else if (n == 3) labels.push_back("m");
        else labels.push_back("c" + std::to_string(i));
    }
    if (n == 1) labels = {"0"};
    std::vector<std::pair<int, int>> leq;
    for (int i = 0; i + 1 < n; ++i) leq.emplace_back(i, i + 1);
    return share(frame_from_leq(std::move(labels), leq));
}

inline FramePtr make_frame2() { return make_chain(2); }
inline FramePtr make_chain3() { return make_chain(3); }
inline FramePtr make_trivial_frame() { return make_chain(1); }

/// 0 < a,b < 1 with a and b incomparable.
inline FramePtr make_diamond() {
    return share(frame_from_leq({"0", "a", "b", "1"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
}

/// The pentagon: 0 < a < 1 and 0 < b < c < 1, a incomparable to b and c.
/// A bounded lattice that is not distributive; validation rejects it.
inline FramePtr make_pentagon() {
    return share(
        frame_from_leq({"0", "a", "b", "c", "1"}, {{0, 1}, {1, 4}, {0, 2}, {2, 3}, {3, 4}}));
}

/// Powerset of k atoms as a frame; elements ordered by subset mask.
inline FramePtr make_powerset(int k) {
    const int n = 1 << k;
    std::vector<std::string> labels;
    for (int s = 0; s < n; ++s) {
        std::string l = "{";
        bool fst = true;
        for (int i = 0; i < k; ++i)
            if ((s >> i) & 1) {
                if (!fst) l += ',';
                fst = false;
                l += static_cast<char>('p' + i);
            }
        labels.push_back(l + "}");
    }
    std::vector<std::pair<int, int>> leq;
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            if ((s & ~t) == 0) leq.emplace_back(s, t);
    return share(frame_from_leq(std::move(labels), leq));
}

// ---------------------------------------------------------------------------
// Standard bispaces and their d-frames

inline FinBispace one_point_bispace() {
    FinBispace x;
    x.points = {"p"};
    x.opens_plus = {Bitset(1), Bitset::full(1)};
    x.opens_minus = {Bitset(1), Bitset::full(1)};
    return x;
}

/// Two points x, y; {y} open on the plus side, {x} on the minus side.
inline FinBispace sierpinski_bispace() {
    FinBispace x;
    x.points = {"x", "y"};
    x.opens_plus = {Bitset(2), Bitset::of(2, {1}), Bitset::full(2)};
    x.opens_minus = {Bitset(2), Bitset::of(2, {0}), Bitset::full(2)};
    return x;
}

/// The four-element d-frame on 2 x 2 carriers.
inline DFrame make_two_d() { return omega_d(one_point_bispace()); }

/// The nine-element d-frame on 3 x 3 carriers.
inline DFrame make_sier() { return omega_d(sierpinski_bispace()); }

/// The one-element d-frame.
inline DFrame make_trivial_dframe() {
    DFrame d;
    d.plus = make_trivial_frame();
    d.minus = make_trivial_frame();
    d.con = PairRelation::full(d.plus, d.minus);
    d.tot = PairRelation::full(d.plus, d.minus);
    return d;
}

}  // namespace dfrm
