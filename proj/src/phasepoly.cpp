#include "tqhp/phasepoly.hpp"

#include <stdexcept>

namespace tqhp {

PhasePolyOp PhasePolyOp::pauli_x(std::size_t n, std::size_t i) {
    PhasePolyOp o(n);
    o.x_.set(i, true);
    return o;
}

PhasePolyOp PhasePolyOp::pauli_z(std::size_t n, std::size_t i) {
    PhasePolyOp o(n);
    o.l_.set(i, true);
    return o;
}

PhasePolyOp PhasePolyOp::cz(std::size_t n, std::size_t i, std::size_t j) {
    PhasePolyOp o(n);
    o.toggle_cz(i, j);
    return o;
}

PhasePolyOp PhasePolyOp::x_string(std::size_t n, const BitVector& support) {
    PhasePolyOp o(n);
    o.x_ = support;
    return o;
}

PhasePolyOp PhasePolyOp::z_string(std::size_t n, const BitVector& support) {
    PhasePolyOp o(n);
    o.l_ = support;
    return o;
}

void PhasePolyOp::toggle_cz(std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("toggle_cz: diagonal entry");
    q_[i].flip(j);
    q_[j].flip(i);
}

std::vector<std::pair<std::size_t, std::size_t>> PhasePolyOp::cz_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j : q_[i].support())
            if (j > i) out.emplace_back(i, j);
    return out;
}

bool PhasePolyOp::is_identity() const {
    return !c_ && x_.empty_support() && l_.empty_support() && q_is_zero();
}

bool PhasePolyOp::q_is_zero() const {
    for (const BitVector& row : q_)
        if (!row.empty_support()) return false;
    return true;
}

bool PhasePolyOp::quad_at(const BitVector& v) const {
    // sum over i<j of Q_ij v_i v_j; each unordered pair counted once
    bool acc = false;
    for (std::size_t i : v.support()) {
        const BitVector& row = q_[i];
        for (std::size_t j : row.support())
            if (j > i && v.get(j)) acc = !acc;
    }
    return acc;
}

BitVector PhasePolyOp::q_mul(const BitVector& v) const {
    BitVector out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        if (q_[i].dot(v)) out.set(i, true);
    return out;
}

bool PhasePolyOp::phase_at(const BitVector& z) const {
    return c_ ^ l_.dot(z) ^ quad_at(z);
}

PhasePolyOp PhasePolyOp::inverse() const {
    // O^-1 carries the same X string with the diagonal shifted by it.
    PhasePolyOp o = *this;
    o.l_ = l_ ^ q_mul(x_);
    o.c_ = c_ ^ l_.dot(x_) ^ quad_at(x_);
    return o;
}

PhasePolyOp multiply(const PhasePolyOp& p, const PhasePolyOp& q) {
    if (p.n_ != q.n_) throw std::invalid_argument("PhasePolyOp multiply: size mismatch");
    PhasePolyOp o(p.n_);
    // p.q: q's diagonal polynomial passes p's X string: f(z) -> f(z + v_p).
    o.x_ = p.x_ ^ q.x_;
    for (std::size_t i = 0; i < p.n_; ++i) o.q_[i] = p.q_[i] ^ q.q_[i];
    o.l_ = p.l_ ^ q.l_ ^ q.q_mul(p.x_);
    o.c_ = p.c_ ^ q.c_ ^ q.l_.dot(p.x_) ^ q.quad_at(p.x_);
    return o;
}

PhasePolyOp commutator(const PhasePolyOp& p, const PhasePolyOp& q) {
    return multiply(multiply(p, q), multiply(p.inverse(), q.inverse()));
}

void PhasePolyOp::apply(std::vector<std::complex<double>>& amps) const {
    const std::size_t dim = amps.size();
    if (dim != (std::size_t(1) << n_)) throw std::invalid_argument("apply: dimension mismatch");
    uint64_t xmask = 0;
    for (std::size_t i : x_.support()) xmask |= uint64_t(1) << i;

    std::vector<std::complex<double>> out(dim);
    BitVector z(n_);
    for (std::size_t s = 0; s < dim; ++s) {
        // O|z> = (-1)^{f(z+v)} |z+v>, so out[s] = (-1)^{f(s)} amps[s ^ xmask].
        for (std::size_t i = 0; i < n_; ++i) z.set(i, (s >> i) & 1);
        double sgn = phase_at(z) ? -1.0 : 1.0;
        out[s] = sgn * amps[s ^ xmask];
    }
    amps.swap(out);
}

}  // namespace tqhp
