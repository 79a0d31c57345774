#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace dfrm {

/// Malformed input data: bad indices, non-total tables, violated
/// preconditions. Distinct from a law violation, which is an ordinary
/// (reported) result, and from a capacity breach.
class StructureError : public std::runtime_error {
public:
    explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

/// An exhaustive enumeration would exceed the configured size guard.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Size guards for the exhaustive engines. Guards are explicit and
/// conservative; nothing is silently truncated.
struct Capacity {
    /// 2^subset_bits is the limit for full subset scans (ideal
    /// enumeration, tuple universes).
    int subset_bits = 20;
    /// 2^family_bits limits family enumeration (independent-set joins,
    /// literal big-join oracles, literal directed-subset scans).
    int family_bits = 20;
    /// |dst|^|src| hom searches must satisfy |src|*log2|dst| <= hom_bits.
    double hom_bits = 48.0;

    void require_subsets(int nbits, const char* what) const {
        if (nbits > subset_bits)
            throw CapacityError(std::string(what) + ": 2^" + std::to_string(nbits) +
                                " subsets exceeds guard 2^" + std::to_string(subset_bits));
    }
    void require_family(int nbits, const char* what) const {
        if (nbits > family_bits)
            throw CapacityError(std::string(what) + ": 2^" + std::to_string(nbits) +
                                " families exceeds guard 2^" + std::to_string(family_bits));
    }

    /// DFRM_CAPACITY=<bits> raises or lowers both enumeration guards.
    static Capacity from_env() {
        Capacity c;
        if (const char* s = std::getenv("DFRM_CAPACITY")) {
            int bits = std::atoi(s);
            if (bits > 0) {
                if (bits > 30) bits = 30;  // 2^30 scans are already out of reach
                c.subset_bits = bits;
                c.family_bits = bits;
            }
        }
        return c;
    }
};

}  // namespace dfrm
