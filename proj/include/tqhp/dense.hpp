#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "tqhp/phasepoly.hpp"

namespace tqhp {

// Exact state-vector backend. Qubit i is bit i of the amplitude index.
class DenseState {
public:
    static constexpr std::size_t kMaxQubits = 26;

    DenseState() = default;
    explicit DenseState(std::size_t n);

    static DenseState computational_zero(std::size_t n) { return DenseState(n); }

    std::size_t num_qubits() const { return n_; }
    std::vector<std::complex<double>>& amps() { return amps_; }
    const std::vector<std::complex<double>>& amps() const { return amps_; }

    double norm2() const;
    void normalize();
    std::complex<double> inner(const DenseState& o) const;

    void apply(const PhasePolyOp& op);

    // <psi| op |psi> for an involution op; real up to rounding.
    double expectation(const PhasePolyOp& op) const;

    // Projective measurement of an involution, Born-sampled with the uniform
    // draw u in [0,1). Returns +1/-1 and collapses + renormalizes.
    int measure(const PhasePolyOp& op, double u);

    // Unnormalized branch map (1 + sign*op)/2.
    void project(const PhasePolyOp& op, int sign);

    int measure_qubit_z(std::size_t q, double u);
    // Keep only amplitudes with the given bit value on qubit q, unnormalized.
    void project_qubit_z(std::size_t q, int bitval);

    // Joint Z measurement of a commuting block of qubits: samples the exact
    // joint outcome distribution with one pass, collapses with a second.
    std::vector<int> measure_qubits_z(const std::vector<std::size_t>& qubits, double u);

    // Tensor: this (low bits) with other (high bits).
    static DenseState kron(const DenseState& low, const DenseState& high);

private:
    std::size_t n_ = 0;
    std::vector<std::complex<double>> amps_;

    struct CompiledPhase {
        uint64_t xmask = 0;
        uint64_t lmask = 0;
        bool c = false;
        std::vector<std::pair<int, int>> pairs;
        // Sign table over the contiguous bit window [shift, shift+bits) that
        // covers the whole diagonal support; empty when the window is too wide.
        std::vector<int8_t> table;
        int shift = 0;
        uint64_t tmask = 0;
        bool phase_slow(uint64_t s) const {
            bool acc = c ^ (__builtin_parityll(lmask & s) != 0);
            for (auto [i, j] : pairs) acc ^= ((s >> i) & (s >> j) & 1ULL) != 0;
            return acc;
        }
        double sign(uint64_t s) const {
            if (!table.empty()) return table[(s >> shift) & tmask];
            return phase_slow(s) ? -1.0 : 1.0;
        }
    };
    CompiledPhase compile(const PhasePolyOp& op) const;
};

}  // namespace tqhp
