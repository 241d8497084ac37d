#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tqhp/chain.hpp"

namespace tqhp {

enum class Copy : int { R = 0, B = 1, G = 2 };

// How the type-B site rule picks the repetition-code 0-cell attached to a bit.
//   MinIndex:    lowest incident check, plus the downstream-edge rule that makes
//                the triple evaluation Leibniz-compatible at cochain level.
//   Symmetrized: sum over all incident checks; edge couplings dropped. Kept as
//                the configurable alternative; it fails commutation closure and
//                serves as the negative control in verification.
enum class Adjacency { MinIndex, Symmetrized };

std::string to_string(Adjacency a);
std::optional<Adjacency> adjacency_from_string(const std::string& s);

struct XrEdge {
    std::size_t bit = 0;   // owning bit
    std::size_t pos = 0;   // path position: connects checks[pos], checks[pos+1]
};

// The four 2-term complexes built from one parity-check matrix H (checks x bits):
// X (bits -> checks, boundary H), its transpose X*, the repetition complex XR on
// the check set (one path of f-1 edges per weight-f bit, ascending check index),
// and XR's transpose.
struct FactorFamily {
    BitMatrix H;
    ChainComplex X, Xdual, XR, XRdual;

    std::vector<std::vector<std::size_t>> bit_checks;  // sorted incident checks per bit
    std::vector<XrEdge> edges;                         // XR 1-cells
    std::vector<std::vector<std::size_t>> bit_edges;   // edge ids per bit, path order

    HomologyBasis X_h0, X_h1;    // delta-paired bases of X at degrees 0, 1
    HomologyBasis XR_h0, XR_h1;  // same for XR; XR_h1 classes are the spurious loops

    std::size_t checks() const { return H.rows(); }
    std::size_t bits() const { return H.cols(); }
    // Lowest incident check of a bit; nullopt for an isolated bit.
    std::optional<std::size_t> c_first(std::size_t bit) const {
        if (bit_checks[bit].empty()) return std::nullopt;
        return bit_checks[bit].front();
    }
};

// Throws std::invalid_argument for an empty or all-zero matrix.
FactorFamily factor_family(const BitMatrix& H);

struct Cochain {
    Copy copy = Copy::R;
    std::size_t degree = 0;
    BitVector coeffs;
};

// A grade-1 (co)homology class of one product complex with provenance.
struct ClassInfo {
    BitVector cocycle;
    BitVector cycle;           // conjugate representative, <cycle_i, cocycle_j> = delta
    bool decomposable = false; // pure tensor of a 0-class and a top-class factor
    bool spurious = false;     // involves a repetition-complex loop factor
    int xfactor = -1;          // factor basis indices when decomposable
    int yfactor = -1;
};

struct TripleCode {
    Adjacency conv = Adjacency::MinIndex;
    FactorFamily fx, fy;
    ChainComplex Xr, Xb, Xg;

    std::vector<ClassInfo> alpha;   // H_1(Xr); decomposable entries first
    std::vector<ClassInfo> beta;    // H_1(Xb); decomposable entries first
    std::vector<BitVector> gamma;   // H^0(Xg) cocycle basis (c0 (x) b'0 forms)
    std::vector<int> gamma_yfactor; // H^0(X_y) index per gamma (-1 if not that form)
    std::vector<BitVector> xi_cycles;  // H_1(Xg) cycle basis (green spurious logicals)

    std::size_t qubits(Copy c) const { return complex_of(c).cells(1); }
    std::size_t total_qubits() const { return qubits(Copy::R) + qubits(Copy::B) + qubits(Copy::G); }
    std::size_t qubit_offset(Copy c) const {
        switch (c) {
            case Copy::R: return 0;
            case Copy::B: return qubits(Copy::R);
            default: return qubits(Copy::R) + qubits(Copy::B);
        }
    }
    std::size_t qubit_id(Copy c, std::size_t cell) const { return qubit_offset(c) + cell; }

    const ChainComplex& complex_of(Copy c) const {
        switch (c) {
            case Copy::R: return Xr;
            case Copy::B: return Xb;
            default: return Xg;
        }
    }
};

TripleCode triple_code(const BitMatrix& Hx, const BitMatrix& Hy,
                       Adjacency conv = Adjacency::MinIndex);

// Triple cup-product sum for spatial degree tuples (1,1,0), (0,1,1), (1,0,1).
// Throws std::invalid_argument for unsupported degree tuples.
bool cup_eval_triple(const TripleCode& tc, const Cochain& u, const Cochain& v, const Cochain& w);

// Same trilinear family extended to the tuples (2,0,0), (0,2,0), (0,0,2) that
// arise when one argument is a coboundary; internal to the operator calculus.
bool cup_eval_any(const TripleCode& tc, const Cochain& u, const Cochain& v, const Cochain& w);

Cochain indicator_cochain(const TripleCode& tc, Copy copy, std::size_t degree, std::size_t cell);
Cochain zero_cochain(const TripleCode& tc, Copy copy, std::size_t degree);
Cochain coboundary(const TripleCode& tc, const Cochain& c);
bool is_cocycle(const TripleCode& tc, const Cochain& c);

// 3-index intersection tensor T[alpha][beta][gamma] on the chosen bases.
struct IntersectionTensor {
    std::size_t na = 0, nb = 0, ng = 0;
    std::vector<uint8_t> bits;  // na*nb*ng entries
    bool get(std::size_t a, std::size_t b, std::size_t g) const {
        return bits[(a * nb + b) * ng + g] != 0;
    }
    void set(std::size_t a, std::size_t b, std::size_t g, bool v) {
        bits[(a * nb + b) * ng + g] = v ? 1 : 0;
    }
};

IntersectionTensor intersection_tensor(const TripleCode& tc);

struct StokesReport {
    std::size_t trials = 0;
    std::size_t leibniz_failures = 0;
    std::size_t shift_failures = 0;
    std::vector<std::string> witnesses;
    bool ok() const { return leibniz_failures == 0 && shift_failures == 0; }
};

// Randomized check that the trilinear family satisfies the Leibniz/Stokes sum
// identity and that triple sums of closed arguments are coboundary-invariant.
StokesReport stokes_check(const TripleCode& tc, std::size_t trials, uint64_t seed = 1);

}  // namespace tqhp
