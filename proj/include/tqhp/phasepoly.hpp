#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "tqhp/bitmat.hpp"

namespace tqhp {

// Operator of the form (-1)^c . CZ[Q] . Z[L] . X[v]  (X rightmost), where Q is
// a symmetric zero-diagonal coupling matrix over F2. Closed under products and
// group commutators, which keeps the whole dressed-stabilizer calculus exact.
class PhasePolyOp {
public:
    PhasePolyOp() = default;
    explicit PhasePolyOp(std::size_t n)
        : n_(n), x_(n), q_(n, BitVector(n)), l_(n), c_(false) {}

    static PhasePolyOp identity(std::size_t n) { return PhasePolyOp(n); }
    static PhasePolyOp pauli_x(std::size_t n, std::size_t i);
    static PhasePolyOp pauli_z(std::size_t n, std::size_t i);
    static PhasePolyOp cz(std::size_t n, std::size_t i, std::size_t j);
    static PhasePolyOp x_string(std::size_t n, const BitVector& support);
    static PhasePolyOp z_string(std::size_t n, const BitVector& support);

    std::size_t num_qubits() const { return n_; }
    const BitVector& x_support() const { return x_; }
    const BitVector& z_linear() const { return l_; }
    bool sign_bit() const { return c_; }
    const std::vector<BitVector>& couplings() const { return q_; }

    bool cz_coupled(std::size_t i, std::size_t j) const { return q_[i].get(j); }
    void toggle_cz(std::size_t i, std::size_t j);
    void toggle_z(std::size_t i) { l_.flip(i); }
    void toggle_sign() { c_ = !c_; }

    std::vector<std::pair<std::size_t, std::size_t>> cz_pairs() const;

    bool is_identity() const;
    bool is_diagonal() const { return x_.empty_support(); }
    bool q_is_zero() const;

    // Phase exponent of the diagonal part at assignment z: c + L.z + sum_{i<j} Q_ij z_i z_j.
    bool phase_at(const BitVector& z) const;

    PhasePolyOp inverse() const;
    friend PhasePolyOp multiply(const PhasePolyOp& p, const PhasePolyOp& q);
    // Group commutator p q p^-1 q^-1.
    friend PhasePolyOp commutator(const PhasePolyOp& p, const PhasePolyOp& q);

    bool operator==(const PhasePolyOp& o) const {
        return n_ == o.n_ && x_ == o.x_ && q_ == o.q_ && l_ == o.l_ && c_ == o.c_;
    }
    bool operator!=(const PhasePolyOp& o) const { return !(*this == o); }

    // Exact action on a 2^n state vector; n small (test oracle) or the dense
    // protocol backend.
    void apply(std::vector<std::complex<double>>& amps) const;

private:
    std::size_t n_ = 0;
    BitVector x_;
    std::vector<BitVector> q_;
    BitVector l_;
    bool c_ = false;

    // quadratic form value sum_{i<j} Q_ij v_i v_j
    bool quad_at(const BitVector& v) const;
    BitVector q_mul(const BitVector& v) const;
};

}  // namespace tqhp
