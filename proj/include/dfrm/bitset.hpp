#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace dfrm {

/// Dynamic bitset over a fixed universe of indices. Every set-valued
/// datum in the library (element sets, ideals, pair relations) is one
/// of these; the exhaustive loops that dominate runtime iterate word
/// by word.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int universe) : n_(universe), w_(words_for(universe), 0) {}

    static Bitset full(int universe) {
        Bitset b(universe);
        for (int i = 0; i < universe; ++i) b.set(i);
        return b;
    }
    static Bitset of(int universe, std::initializer_list<int> bits) {
        Bitset b(universe);
        for (int i : bits) b.set(i);
        return b;
    }
    static Bitset single(int universe, int i) {
        Bitset b(universe);
        b.set(i);
        return b;
    }
    /// Low `universe` bits of a machine word; universe must be <= 64.
    static Bitset from_mask(int universe, std::uint64_t mask) {
        assert(universe <= 64);
        Bitset b(universe);
        if (!b.w_.empty()) b.w_[0] = mask;
        return b;
    }

    int universe() const { return n_; }

    bool test(int i) const {
        assert(i >= 0 && i < n_);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(int i) {
        assert(i >= 0 && i < n_);
        w_[i >> 6] |= std::uint64_t(1) << (i & 63);
    }
    void reset(int i) {
        assert(i >= 0 && i < n_);
        w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }

    bool empty() const {
        for (auto w : w_)
            if (w) return false;
        return true;
    }
    int count() const {
        int c = 0;
        for (auto w : w_) c += __builtin_popcountll(w);
        return c;
    }

    bool subset_of(const Bitset& o) const {
        assert(n_ == o.n_);
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }
    bool intersects(const Bitset& o) const {
        assert(n_ == o.n_);
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    Bitset& operator|=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    /// Set difference.
    Bitset& operator-=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }
    friend bool operator!=(const Bitset& a, const Bitset& b) { return !(a == b); }

    /// Numeric order (bit i has weight 2^i); used for canonical sorting.
    friend bool operator<(const Bitset& a, const Bitset& b) {
        assert(a.n_ == b.n_);
        for (std::size_t k = a.w_.size(); k-- > 0;)
            if (a.w_[k] != b.w_[k]) return a.w_[k] < b.w_[k];
        return false;
    }

    /// Index of the lowest set bit, or -1.
    int first() const { return next(-1); }
    /// Lowest set bit strictly above i, or -1.
    int next(int i) const {
        for (int k = i + 1; k < n_;) {
            std::uint64_t w = w_[k >> 6] >> (k & 63);
            if (w) return k + __builtin_ctzll(w);
            k = ((k >> 6) + 1) << 6;
        }
        return -1;
    }

    template <class F>
    void for_each(F f) const {
        for (int i = first(); i >= 0; i = next(i)) f(i);
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        v.reserve(count());
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

    std::size_t hash() const {
        std::size_t h = std::hash<int>()(n_);
        for (auto w : w_) h = h * 1099511628211ull + std::hash<std::uint64_t>()(w);
        return h;
    }

    std::string to_string() const {
        std::string s = "{";
        bool fst = true;
        for_each([&](int i) {
            if (!fst) s += ',';
            fst = false;
            s += std::to_string(i);
        });
        return s + "}";
    }

private:
    static std::size_t words_for(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace dfrm

template <>
struct std::hash<dfrm::Bitset> {
    std::size_t operator()(const dfrm::Bitset& b) const { return b.hash(); }
};
