#include "tqhp/pathintegral.hpp"

#include <stdexcept>

namespace tqhp {

namespace {

// Parity of sum_{a,b} n_a m_b T[a][b][g].
bool class_coupling(const IntersectionTensor& t, const BitVector& n, const BitVector& m,
                    std::size_t g) {
    bool acc = false;
    for (std::size_t a : n.support())
        for (std::size_t b : m.support())
            if (t.get(a, b, g)) acc = !acc;
    return acc;
}

}  // namespace

int weight(const WindingConfig& cfg, const IntersectionTensor& t) {
    if (cfg.n.size() != t.na || cfg.m.size() != t.nb || cfg.l.size() != t.ng ||
        cfg.rho.size() != t.ng)
        throw std::invalid_argument("weight: configuration sizes do not match the tensor");
    bool exponent = cfg.rho.dot(cfg.l);
    for (std::size_t g : cfg.l.support())
        if (class_coupling(t, cfg.n, cfg.m, g)) exponent = !exponent;
    return exponent ? -1 : 1;
}

LogicalAction logical_action(const IntersectionTensor& t, const BitVector& rho) {
    if (rho.size() != t.ng) throw std::invalid_argument("logical_action: rho size mismatch");
    if (t.na + t.nb > 24)
        throw std::invalid_argument("logical_action: logical space too large to enumerate");
    LogicalAction la;
    la.na = t.na;
    la.nb = t.nb;
    la.ng = t.ng;
    la.diag.assign(std::size_t(1) << (t.na + t.nb), 0);

    WindingConfig cfg;
    cfg.n = BitVector(t.na);
    cfg.m = BitVector(t.nb);
    cfg.l = BitVector(t.ng);
    cfg.rho = rho;
    for (uint64_t nm = 0; nm < la.diag.size(); ++nm) {
        for (std::size_t a = 0; a < t.na; ++a) cfg.n.set(a, (nm >> a) & 1);
        for (std::size_t b = 0; b < t.nb; ++b) cfg.m.set(b, (nm >> (t.na + b)) & 1);
        long long acc = 0;
        for (uint64_t lbits = 0; lbits < (uint64_t(1) << t.ng); ++lbits) {
            for (std::size_t g = 0; g < t.ng; ++g) cfg.l.set(g, (lbits >> g) & 1);
            acc += weight(cfg, t);
        }
        la.diag[nm] = acc;
    }
    return la;
}

ProjectorCheckReport projector_identity_check(const IntersectionTensor& t, const BitVector& rho,
                                              const IntersectionTensor* projector_side) {
    ProjectorCheckReport rep;
    LogicalAction la = logical_action(t, rho);
    const IntersectionTensor& tp = projector_side ? *projector_side : t;

    BitVector n(t.na), m(t.nb);
    for (uint64_t nm = 0; nm < la.diag.size(); ++nm) {
        for (std::size_t a = 0; a < t.na; ++a) n.set(a, (nm >> a) & 1);
        for (std::size_t b = 0; b < t.nb; ++b) m.set(b, (nm >> (t.na + b)) & 1);
        // Product over gamma of (1 + (-1)^{rho_g} CZbar-product diagonal).
        long long prod = 1;
        for (std::size_t g = 0; g < t.ng; ++g) {
            int cz = class_coupling(tp, n, m, g) ? -1 : 1;
            int sgn = rho.get(g) ? -1 : 1;
            prod *= 1 + sgn * cz;
        }
        if (prod != la.diag[nm]) {
            rep.ok = false;
            if (rep.mismatches.size() < 8)
                rep.mismatches.push_back("entry " + std::to_string(nm) + ": summed " +
                                         std::to_string(la.diag[nm]) + " vs projector " +
                                         std::to_string(prod));
        }
    }
    return rep;
}

bool outcome_family_is_projective(const IntersectionTensor& t) {
    const uint64_t nm_count = uint64_t(1) << (t.na + t.nb);
    const uint64_t rho_count = uint64_t(1) << t.ng;
    for (uint64_t nm = 0; nm < nm_count; ++nm) {
        long long acc = 0;
        for (uint64_t r = 0; r < rho_count; ++r) {
            BitVector rho(t.ng);
            for (std::size_t g = 0; g < t.ng; ++g) rho.set(g, (r >> g) & 1);
            LogicalAction la = logical_action(t, rho);
            acc += la.diag[nm] * la.diag[nm];
        }
        // sum_rho (T/2^g)^2 = 1  <=>  sum_rho T^2 = 4^g
        if (acc != (1LL << (2 * t.ng))) return false;
    }
    return true;
}

}  // namespace tqhp
