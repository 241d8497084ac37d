#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tqhp/skeleton.hpp"

namespace tqhp {

struct DistanceResult {
    bool exact = false;            // false when the budget ran out
    std::size_t weight = 0;        // exact minimum, or the best upper bound seen
    std::optional<BitVector> representative;
    bool no_logical = false;       // trivial homology: infinite distance marker
};

// Minimum Hamming weight over nontrivial classes spanned by `class_reps`
// modulo span(stabilizer_span). Exhaustive Gray-code coset enumeration while
// 2^(dim span + dim classes) stays within budget; otherwise the best upper
// bound is reported with exact=false.
DistanceResult min_weight_logical(const std::vector<BitVector>& class_reps,
                                  const std::vector<BitVector>& stabilizer_span,
                                  uint64_t budget = uint64_t(1) << 26);

struct CopyMetrics {
    std::size_t n = 0;                // qubits
    std::size_t k = 0;                // dim H_1
    DistanceResult d_z;               // over cycle classes mod boundaries
    DistanceResult d_x;               // over cocycle classes mod coboundaries
    std::vector<std::size_t> class_min_weights;   // cycle-side per basis class
    std::vector<uint8_t> spurious_flag;           // per basis class
};

struct CodeReport {
    CopyMetrics red, blue, green;
    std::size_t k_r = 0, k_b = 0;
    std::size_t gamma_count = 0;      // dim H^0(Xg), independent constraints
    long long k_twisted = 0;          // k_r + k_b - gamma_count
};

CodeReport rate_report(const TripleCode& tc);
CodeReport full_report(const TripleCode& tc, uint64_t budget = uint64_t(1) << 26,
                       std::size_t spurious_threshold = 4);

// min over the chosen class subsets of the minimal representative weight, on
// both the cycle and cocycle sides. Throws if the chosen subsets do not pair
// as an identity block.
std::size_t subsystem_distance(const ChainComplex& cx, const std::vector<BitVector>& cycles,
                               const std::vector<BitVector>& cocycles,
                               uint64_t budget = uint64_t(1) << 26);

// Exact twisted ground-space dimension on the full Hilbert space, computed by
// contracting the stabilizer projector trace combinatorially (no state
// vector). Not a power of two in general: the dressed code carries
// non-Abelian sectors, so one CZ-type constraint splits dimensions 3:1
// rather than in half. With fix_spurious the green spurious logical-Z
// operators are added to the projector, as in the protocol's stage groups.
long long twisted_ground_space_dim(const TripleCode& tc, bool fix_spurious = false);

}  // namespace tqhp
