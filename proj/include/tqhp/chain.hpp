#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tqhp/bitmat.hpp"

namespace tqhp {

// One Kunneth block of a product complex: cells (i, j) with i an x-factor cell
// of degree xdeg and j a y-factor cell of degree ydeg, laid out row-major at
// `offset`. Blocks within a grade are ordered by descending xdeg.
struct KunnethBlock {
    int xdeg = 0, ydeg = 0;
    std::size_t nx = 0, ny = 0;
    std::size_t offset = 0;

    std::size_t flat(std::size_t i, std::size_t j) const { return offset + i * ny + j; }
};

struct ProductStructure {
    std::vector<std::vector<KunnethBlock>> blocks;  // per grade
};

// Graded GF(2) chain complex. boundary[k] maps C_k -> C_{k-1} (k = 1..grades);
// cells carry provenance labels so product cells stay traceable to factors.
struct ChainComplex {
    std::vector<std::size_t> cell_count;            // size grades+1
    std::vector<BitMatrix> boundary;                // boundary[k] for k>=1; boundary[0] unused
    std::vector<std::vector<std::string>> labels;   // per grade, per cell
    std::optional<ProductStructure> product;

    std::size_t grades() const { return cell_count.empty() ? 0 : cell_count.size() - 1; }
    std::size_t cells(std::size_t k) const { return k < cell_count.size() ? cell_count[k] : 0; }

    // Coboundary C^k -> C^{k+1} as a matrix, i.e. boundary[k+1] transposed.
    BitMatrix coboundary(std::size_t k) const;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> failures;  // one entry per failing grade/check
};

ValidationReport validate(const ChainComplex& c);

// Tensor product over GF(2): cells of grade k are pairs (i,j) with i+j=k and
// boundary d(x (x) y) = dx (x) y + x (x) dy.
ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b);

struct HomologyBasis {
    std::size_t degree = 0;
    std::vector<BitVector> cycle_reps;
    std::vector<BitVector> cocycle_reps;
    BitMatrix pairing;  // <cycle_i, cocycle_j>; identity after alignment
};

// Homology/cohomology representatives at degree k with the cocycle basis
// changed so that the cycle-cocycle pairing is the identity.
HomologyBasis homology_basis(const ChainComplex& c, std::size_t k);

std::size_t betti(const ChainComplex& c, std::size_t k);

BitMatrix pairing_matrix(const std::vector<BitVector>& cycles,
                         const std::vector<BitVector>& cocycles);

// 1-grade time complexes for spacetime products: a length-T interval
// (T+1 vertices) or a length-T circle (T vertices), T >= 1.
ChainComplex interval_complex(std::size_t t_steps);
ChainComplex circle_complex(std::size_t t_steps);

// Single 0-cell complex (tensor identity).
ChainComplex point_complex();

}  // namespace tqhp
