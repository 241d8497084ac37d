#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tqhp/bitmat.hpp"
#include "tqhp/skeleton.hpp"

namespace tqhp {

// One bulk homology configuration: winding numbers per red/blue/green class
// plus the per-class measurement outcomes.
struct WindingConfig {
    BitVector n;    // over alpha classes
    BitVector m;    // over beta classes
    BitVector l;    // over gamma classes
    BitVector rho;  // outcomes, over gamma classes
};

// +1 / -1 weight of one configuration.
int weight(const WindingConfig& cfg, const IntersectionTensor& t);

// Diagonal of the (unnormalized) logical action, indexed by the (n, m) pair
// packed as n | m << |alpha|. Entries are exact integers in {0, 2^{|gamma|}}
// up to sign cancellation; the l-sum runs over all 2^{|gamma|} configurations.
struct LogicalAction {
    std::size_t na = 0, nb = 0, ng = 0;
    std::vector<long long> diag;  // size 2^(na+nb)

    long long entry(uint64_t n_bits, uint64_t m_bits) const {
        return diag[n_bits | (m_bits << na)];
    }
};

LogicalAction logical_action(const IntersectionTensor& t, const BitVector& rho);

struct ProjectorCheckReport {
    bool ok = true;
    std::vector<std::string> mismatches;
};

// Entrywise equality of the l-summed action with the explicit projector
// product evaluated on the logical computational basis; both sides exact.
// The projector side may be fed a different tensor (negative controls).
ProjectorCheckReport projector_identity_check(const IntersectionTensor& t, const BitVector& rho,
                                              const IntersectionTensor* projector_side = nullptr);

// Sum over all outcome vectors of (T^rho/2^|gamma|)^dag (T^rho/2^|gamma|)
// equals the identity on the logical diagonal.
bool outcome_family_is_projective(const IntersectionTensor& t);

}  // namespace tqhp
