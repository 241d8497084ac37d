#include "tqhp/dense.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace tqhp {

DenseState::DenseState(std::size_t n) : n_(n) {
    if (n > kMaxQubits) throw std::invalid_argument("DenseState: qubit budget exceeded");
    amps_.assign(std::size_t(1) << n, {0.0, 0.0});
    amps_[0] = 1.0;
}

double DenseState::norm2() const {
    double acc = 0;
    for (const auto& a : amps_) acc += std::norm(a);
    return acc;
}

void DenseState::normalize() {
    double s = std::sqrt(norm2());
    if (s <= 0) throw std::runtime_error("DenseState: normalizing a zero state");
    for (auto& a : amps_) a /= s;
}

std::complex<double> DenseState::inner(const DenseState& o) const {
    if (o.n_ != n_) throw std::invalid_argument("inner: size mismatch");
    std::complex<double> acc = 0;
    for (std::size_t s = 0; s < amps_.size(); ++s) acc += std::conj(amps_[s]) * o.amps_[s];
    return acc;
}

DenseState::CompiledPhase DenseState::compile(const PhasePolyOp& op) const {
    if (op.num_qubits() != n_) throw std::invalid_argument("DenseState: operator size mismatch");
    CompiledPhase cp;
    cp.c = op.sign_bit();
    for (std::size_t i : op.x_support().support()) cp.xmask |= uint64_t(1) << i;
    for (std::size_t i : op.z_linear().support()) cp.lmask |= uint64_t(1) << i;
    for (auto [i, j] : op.cz_pairs()) cp.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));

    // Tabulate the diagonal over its support window when that stays small.
    int lo = 64, hi = -1;
    auto stretch = [&](int b) {
        lo = std::min(lo, b);
        hi = std::max(hi, b);
    };
    for (std::size_t i = 0; i < n_; ++i)
        if ((cp.lmask >> i) & 1) stretch(static_cast<int>(i));
    for (auto [i, j] : cp.pairs) {
        stretch(i);
        stretch(j);
    }
    if (hi < 0) {
        cp.table.assign(1, cp.c ? -1 : 1);
        cp.shift = 0;
        cp.tmask = 0;
        return cp;
    }
    int bits = hi - lo + 1;
    if (bits <= 20) {
        cp.shift = lo;
        cp.tmask = (uint64_t(1) << bits) - 1;
        cp.table.resize(std::size_t(1) << bits);
        for (uint64_t w = 0; w < cp.table.size(); ++w)
            cp.table[w] = cp.phase_slow(w << lo) ? -1 : 1;
    }
    return cp;
}

namespace {

template <typename Fn>
void parallel_chunks(std::size_t total, Fn&& fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || total < (1u << 18)) {
        fn(0, std::size_t(0), total);
        return;
    }
    const unsigned nthreads = hw < 4 ? hw : 4;
    std::vector<std::thread> workers;
    std::size_t chunk = total / nthreads;
    for (unsigned t = 0; t < nthreads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = (t + 1 == nthreads) ? total : lo + chunk;
        workers.emplace_back([&, t, lo, hi] { fn(t, lo, hi); });
    }
    for (auto& w : workers) w.join();
}

constexpr int kMaxThreads = 8;

}  // namespace

void DenseState::apply(const PhasePolyOp& op) {
    CompiledPhase cp = compile(op);
    const std::size_t dim = amps_.size();
    if (cp.xmask == 0) {
        parallel_chunks(dim, [&](int, std::size_t lo, std::size_t hi) {
            for (std::size_t s = lo; s < hi; ++s) amps_[s] *= cp.sign(s);
        });
        return;
    }
    const uint64_t pbit = cp.xmask & (~cp.xmask + 1);
    parallel_chunks(dim / 2, [&](int, std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) {
            uint64_t s = ((k & ~(pbit - 1)) << 1) | (k & (pbit - 1));
            uint64_t t = s ^ cp.xmask;
            std::complex<double> as = amps_[s], at = amps_[t];
            amps_[s] = cp.sign(s) * at;
            amps_[t] = cp.sign(t) * as;
        }
    });
}

double DenseState::expectation(const PhasePolyOp& op) const {
    CompiledPhase cp = compile(op);
    const std::size_t dim = amps_.size();
    double partial[kMaxThreads] = {0};
    parallel_chunks(dim, [&](int tid, std::size_t lo, std::size_t hi) {
        double acc = 0;
        for (std::size_t s = lo; s < hi; ++s) {
            std::complex<double> v = std::conj(amps_[s]) * amps_[s ^ cp.xmask];
            acc += cp.sign(s) * v.real();
        }
        partial[tid] += acc;
    });
    double acc = 0;
    for (double p : partial) acc += p;
    return acc;
}

int DenseState::measure(const PhasePolyOp& op, double u) {
    CompiledPhase cp = compile(op);
    const std::size_t dim = amps_.size();

    double partial[kMaxThreads] = {0};
    parallel_chunks(dim, [&](int tid, std::size_t lo, std::size_t hi) {
        double acc = 0;
        for (std::size_t s = lo; s < hi; ++s) {
            std::complex<double> v = std::conj(amps_[s]) * amps_[s ^ cp.xmask];
            acc += cp.sign(s) * v.real();
        }
        partial[tid] += acc;
    });
    double e = 0;
    for (double p : partial) e += p;

    double p_plus = 0.5 * (1.0 + e);
    int outcome = (u < p_plus) ? +1 : -1;
    const double p = outcome > 0 ? p_plus : 1.0 - p_plus;
    if (p <= 1e-15) throw std::runtime_error("DenseState::measure: zero-probability branch");
    const double sg = outcome;
    const double scale = 0.5 / std::sqrt(p);

    if (cp.xmask == 0) {
        parallel_chunks(dim, [&](int, std::size_t lo, std::size_t hi) {
            for (std::size_t s = lo; s < hi; ++s)
                amps_[s] = scale * (1.0 + sg * cp.sign(s)) * amps_[s];
        });
        return outcome;
    }
    const uint64_t pbit = cp.xmask & (~cp.xmask + 1);
    parallel_chunks(dim / 2, [&](int, std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) {
            uint64_t s = ((k & ~(pbit - 1)) << 1) | (k & (pbit - 1));
            uint64_t t = s ^ cp.xmask;
            std::complex<double> as = amps_[s], at = amps_[t];
            amps_[s] = scale * (as + sg * cp.sign(s) * at);
            amps_[t] = scale * (at + sg * cp.sign(t) * as);
        }
    });
    return outcome;
}

void DenseState::project(const PhasePolyOp& op, int sign) {
    CompiledPhase cp = compile(op);
    const std::size_t dim = amps_.size();
    const double sg = sign >= 0 ? 1.0 : -1.0;
    if (cp.xmask == 0) {
        parallel_chunks(dim, [&](int, std::size_t lo, std::size_t hi) {
            for (std::size_t s = lo; s < hi; ++s)
                amps_[s] = 0.5 * (1.0 + sg * cp.sign(s)) * amps_[s];
        });
        return;
    }
    const uint64_t pbit = cp.xmask & (~cp.xmask + 1);
    parallel_chunks(dim / 2, [&](int, std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) {
            uint64_t s = ((k & ~(pbit - 1)) << 1) | (k & (pbit - 1));
            uint64_t t = s ^ cp.xmask;
            std::complex<double> as = amps_[s], at = amps_[t];
            amps_[s] = 0.5 * (as + sg * cp.sign(s) * at);
            amps_[t] = 0.5 * (at + sg * cp.sign(t) * as);
        }
    });
}

int DenseState::measure_qubit_z(std::size_t q, double u) {
    auto bits = measure_qubits_z({q}, u);
    return bits[0] == 0 ? +1 : -1;
}

void DenseState::project_qubit_z(std::size_t q, int bitval) {
    const uint64_t qb = uint64_t(1) << q;
    for (std::size_t s = 0; s < amps_.size(); ++s)
        if (static_cast<int>((s & qb) ? 1 : 0) != bitval) amps_[s] = 0.0;
}

std::vector<int> DenseState::measure_qubits_z(const std::vector<std::size_t>& qubits, double u) {
    const std::size_t nq = qubits.size();
    if (nq > 20) throw std::invalid_argument("measure_qubits_z: block too large");
    const std::size_t patterns = std::size_t(1) << nq;
    std::vector<double> probs(patterns * kMaxThreads, 0.0);
    const std::size_t dim = amps_.size();
    parallel_chunks(dim, [&](int tid, std::size_t lo, std::size_t hi) {
        double* row = &probs[std::size_t(tid) * patterns];
        for (std::size_t s = lo; s < hi; ++s) {
            std::size_t pat = 0;
            for (std::size_t i = 0; i < nq; ++i) pat |= ((s >> qubits[i]) & 1) << i;
            row[pat] += std::norm(amps_[s]);
        }
    });
    std::vector<double> total(patterns, 0.0);
    for (int t = 0; t < kMaxThreads; ++t)
        for (std::size_t p = 0; p < patterns; ++p) total[p] += probs[t * patterns + p];

    std::size_t pick = patterns - 1;
    double acc = 0;
    for (std::size_t p = 0; p < patterns; ++p) {
        acc += total[p];
        if (u < acc) {
            pick = p;
            break;
        }
    }
    if (total[pick] <= 1e-300) throw std::runtime_error("measure_qubits_z: zero-probability branch");
    const double scale = 1.0 / std::sqrt(total[pick]);
    parallel_chunks(dim, [&](int, std::size_t lo, std::size_t hi) {
        for (std::size_t s = lo; s < hi; ++s) {
            std::size_t pat = 0;
            for (std::size_t i = 0; i < nq; ++i) pat |= ((s >> qubits[i]) & 1) << i;
            amps_[s] = (pat == pick) ? scale * amps_[s] : 0.0;
        }
    });
    std::vector<int> bits(nq);
    for (std::size_t i = 0; i < nq; ++i) bits[i] = (pick >> i) & 1;
    return bits;
}

DenseState DenseState::kron(const DenseState& low, const DenseState& high) {
    DenseState out(low.n_ + high.n_);
    const std::size_t dl = low.amps_.size();
    for (std::size_t h = 0; h < high.amps_.size(); ++h)
        for (std::size_t l = 0; l < dl; ++l) out.amps_[(h << low.n_) | l] = high.amps_[h] * low.amps_[l];
    return out;
}

}  // namespace tqhp
