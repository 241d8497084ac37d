#pragma once

#include <array>
#include <string>
#include <vector>

#include "tqhp/phasepoly.hpp"
#include "tqhp/skeleton.hpp"

namespace tqhp {

enum class StabRole { A, ATilde, B };

struct Generator {
    Copy copy = Copy::R;
    StabRole role = StabRole::A;
    std::size_t cell = 0;  // 0-cell for A/ATilde, 2-cell for B
    PhasePolyOp op;        // over all tc.total_qubits() qubits
};

struct StabilizerSet {
    std::vector<Generator> generators;

    std::vector<const Generator*> of(Copy c, StabRole r) const {
        std::vector<const Generator*> out;
        for (const Generator& g : generators)
            if (g.copy == c && g.role == r) out.push_back(&g);
        return out;
    }
};

StabilizerSet untwisted_stabilizers(const TripleCode& tc);
StabilizerSet twisted_stabilizers(const TripleCode& tc);

// X string of the bare A stabilizer at a 0-cell, over the full qubit register.
BitVector a_support(const TripleCode& tc, Copy copy, std::size_t cell0);
// Z string of the B stabilizer at a 2-cell.
BitVector b_support(const TripleCode& tc, Copy copy, std::size_t cell2);

struct ClosureFailure {
    Copy ci, cj;
    std::size_t cell_i, cell_j;
    std::string reason;
};

struct ClosureReport {
    std::size_t pairs_checked = 0;
    std::size_t nontrivial_commutators = 0;
    std::vector<ClosureFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Pairwise group commutators of all dressed X generators: each must be diagonal
// with no CZ part and decompose into flux (B) generators of the remaining copy.
// Membership is decided two ways: by solving on the boundary map and by the
// explicit 2-cochain coefficients read off the cup family.
ClosureReport commutation_closure(const TripleCode& tc, const StabilizerSet& twisted);

// Product of a copy's dressed generators over a 0-cocycle. X parts cancel
// exactly; the remainder is a transversal CZ layer between the other copies.
// Throws std::invalid_argument if eta is not closed.
PhasePolyOp charge_parity(const TripleCode& tc, Copy copy, const Cochain& eta);

struct MagneticDescriptor {
    Copy copy = Copy::R;
    BitVector bare_x;                    // cocycle-supported X string (full register)
    std::vector<std::string> projectors; // stabilizer projector factors, by name
};

struct LogicalOperators {
    std::vector<PhasePolyOp> zbar_r;  // per alpha class, Z on the cycle rep
    std::vector<PhasePolyOp> zbar_b;  // per beta class
    std::vector<PhasePolyOp> zbar_g_xi;  // per green spurious cycle class
    std::vector<MagneticDescriptor> xbars;
};

LogicalOperators logical_operators(const TripleCode& tc);

// CCZ entangler over matter qubits placed on the 0-cells of the three copies,
// plus the consistency checks tying it back to the dressed stabilizers.
struct EntanglerResult {
    std::vector<std::array<std::size_t, 3>> ccz;  // (r 0-cell, b 0-cell, g 0-cell)
    bool rotation_consistent = false;  // the three cup routes to the CCZ exponent agree
    bool conjugation_ok = false;       // CCZ-conjugated X terms match the cup-derived dressing
    bool gauss_commute_ok = false;     // Gauss ops commute with the coupled dressed terms
};

EntanglerResult entangler(const TripleCode& tc);

}  // namespace tqhp
