#include "tqhp/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "tqhp/operators.hpp"

namespace tqhp {

namespace {

std::vector<BitVector> independent_subset(const std::vector<BitVector>& vecs) {
    std::vector<BitVector> out;
    if (vecs.empty()) return out;
    std::vector<BitVector> accum;
    std::size_t cur = 0;
    for (const BitVector& v : vecs) {
        accum.push_back(v);
        std::size_t r = rank(BitMatrix::from_rows(accum, v.size()));
        if (r > cur) {
            out.push_back(v);
            cur = r;
        } else {
            accum.pop_back();
        }
    }
    return out;
}

}  // namespace

DistanceResult min_weight_logical(const std::vector<BitVector>& class_reps,
                                  const std::vector<BitVector>& stabilizer_span,
                                  uint64_t budget) {
    DistanceResult res;
    if (class_reps.empty()) {
        res.no_logical = true;
        res.exact = true;
        return res;
    }
    const std::size_t nbits = class_reps.front().size();
    std::vector<BitVector> span = independent_subset(stabilizer_span);
    const std::size_t d = span.size();
    const std::size_t k = class_reps.size();
    if (k >= 63 || d >= 63) {
        res.exact = false;
        res.weight = 0;
        return res;
    }

    const uint64_t combos = (uint64_t(1) << k) - 1;
    const uint64_t coset = uint64_t(1) << d;
    bool within = combos <= budget && coset <= budget / std::max<uint64_t>(combos, 1);
    uint64_t spent = 0;

    std::size_t best = SIZE_MAX;
    BitVector best_vec(nbits);
    BitVector base(nbits);
    uint64_t prev_combo = 0;
    for (uint64_t cb = 1; cb <= combos; ++cb) {
        uint64_t gray = cb ^ (cb >> 1);
        uint64_t prev_gray = prev_combo ^ (prev_combo >> 1);
        uint64_t diff = gray ^ prev_gray;
        while (diff) {
            base ^= class_reps[__builtin_ctzll(diff)];
            diff &= diff - 1;
        }
        prev_combo = cb;

        BitVector cur = base;
        if (cur.popcount() < best) {
            best = cur.popcount();
            best_vec = cur;
        }
        for (uint64_t i = 1; i < coset; ++i) {
            cur ^= span[__builtin_ctzll(i)];
            std::size_t w = cur.popcount();
            if (w < best) {
                best = w;
                best_vec = cur;
            }
            if (++spent > budget && !within) {
                res.exact = false;
                res.weight = best;
                res.representative = best_vec;
                return res;
            }
        }
        spent += 1;
        if (spent > budget && !within) break;
    }
    res.exact = within;
    res.weight = best;
    res.representative = best_vec;
    return res;
}

namespace {

std::vector<BitVector> boundary_columns(const ChainComplex& cx, std::size_t k) {
    std::vector<BitVector> cols;
    if (k + 1 > cx.grades()) return cols;
    const BitMatrix& b = cx.boundary[k + 1];
    for (std::size_t j = 0; j < b.cols(); ++j) {
        BitVector v(b.rows());
        for (std::size_t r = 0; r < b.rows(); ++r)
            if (b.get(r, j)) v.set(r, true);
        cols.push_back(std::move(v));
    }
    return cols;
}

std::vector<BitVector> coboundary_columns(const ChainComplex& cx, std::size_t k) {
    std::vector<BitVector> cols;
    if (k == 0) return cols;
    BitMatrix d = cx.coboundary(k - 1);
    for (std::size_t j = 0; j < d.cols(); ++j) {
        BitVector v(d.rows());
        for (std::size_t r = 0; r < d.rows(); ++r)
            if (d.get(r, j)) v.set(r, true);
        cols.push_back(std::move(v));
    }
    return cols;
}

CopyMetrics copy_metrics(const ChainComplex& cx, uint64_t budget, std::size_t spurious_threshold) {
    CopyMetrics cm;
    cm.n = cx.cells(1);
    HomologyBasis hb = homology_basis(cx, 1);
    cm.k = hb.cycle_reps.size();
    std::vector<BitVector> bnd = boundary_columns(cx, 1);
    std::vector<BitVector> cob = coboundary_columns(cx, 1);
    cm.d_z = min_weight_logical(hb.cycle_reps, bnd, budget);
    cm.d_x = min_weight_logical(hb.cocycle_reps, cob, budget);
    for (const BitVector& rep : hb.cycle_reps) {
        DistanceResult one = min_weight_logical({rep}, bnd, budget);
        cm.class_min_weights.push_back(one.weight);
        cm.spurious_flag.push_back(one.weight <= spurious_threshold ? 1 : 0);
    }
    return cm;
}

}  // namespace

CodeReport rate_report(const TripleCode& tc) {
    CodeReport rep;
    rep.k_r = betti(tc.Xr, 1);
    rep.k_b = betti(tc.Xb, 1);
    rep.gamma_count = tc.gamma.size();
    rep.k_twisted = static_cast<long long>(rep.k_r) + static_cast<long long>(rep.k_b) -
                    static_cast<long long>(rep.gamma_count);
    rep.red.n = tc.Xr.cells(1);
    rep.red.k = rep.k_r;
    rep.blue.n = tc.Xb.cells(1);
    rep.blue.k = rep.k_b;
    rep.green.n = tc.Xg.cells(1);
    rep.green.k = betti(tc.Xg, 1);
    return rep;
}

CodeReport full_report(const TripleCode& tc, uint64_t budget, std::size_t spurious_threshold) {
    CodeReport rep = rate_report(tc);
    rep.red = copy_metrics(tc.Xr, budget, spurious_threshold);
    rep.blue = copy_metrics(tc.Xb, budget, spurious_threshold);
    rep.green = copy_metrics(tc.Xg, budget, spurious_threshold);
    return rep;
}

std::size_t subsystem_distance(const ChainComplex& cx, const std::vector<BitVector>& cycles,
                               const std::vector<BitVector>& cocycles, uint64_t budget) {
    BitMatrix p = pairing_matrix(cycles, cocycles);
    if (p.rows() != p.cols() || !(p == BitMatrix::identity(p.rows())))
        throw std::invalid_argument("subsystem_distance: chosen subsets are not delta-paired");
    std::vector<BitVector> bnd = boundary_columns(cx, 1);
    std::vector<BitVector> cob = coboundary_columns(cx, 1);
    std::size_t best = SIZE_MAX;
    for (const BitVector& rep : cycles)
        best = std::min(best, min_weight_logical({rep}, bnd, budget).weight);
    for (const BitVector& rep : cocycles)
        best = std::min(best, min_weight_logical({rep}, cob, budget).weight);
    return best;
}

long long twisted_ground_space_dim(const TripleCode& tc, bool fix_spurious) {
    // tr P = 2^{-NA} . sum over 0-cocycle triples S of sum over zero-flux z of
    // (-1)^{D_S(z)}; only the A-projector count survives after the B expansion.
    // Fixing the spurious sector restricts z_g to the span orthogonal to the
    // xi cycles.
    std::array<std::vector<BitVector>, 3> zbasis, sbasis;
    std::array<const ChainComplex*, 3> cxs = {&tc.Xr, &tc.Xb, &tc.Xg};
    std::size_t na = 0;
    for (int c = 0; c < 3; ++c) {
        zbasis[c] = kernel_basis(cxs[c]->coboundary(1));
        sbasis[c] = kernel_basis(cxs[c]->coboundary(0));
        na += cxs[c]->cells(0);
    }
    if (fix_spurious) {
        // replace the green cocycle basis by a basis of {z : <xi, z> = 0}
        std::vector<BitVector> keep;
        BitMatrix sys(tc.xi_cycles.size() + cxs[2]->cells(2), cxs[2]->cells(1));
        BitMatrix d1 = cxs[2]->coboundary(1);
        for (std::size_t r = 0; r < cxs[2]->cells(2); ++r)
            for (std::size_t ccol = 0; ccol < cxs[2]->cells(1); ++ccol)
                if (d1.get(r, ccol)) sys.set(r, ccol, true);
        for (std::size_t x = 0; x < tc.xi_cycles.size(); ++x)
            for (std::size_t i : tc.xi_cycles[x].support())
                sys.set(cxs[2]->cells(2) + x, i, true);
        zbasis[2] = kernel_basis(sys);
    }
    std::size_t zdim = zbasis[0].size() + zbasis[1].size() + zbasis[2].size();
    std::size_t sdim = sbasis[0].size() + sbasis[1].size() + sbasis[2].size();
    if (zdim > 40 || sdim > 20 || na > 60)
        throw std::invalid_argument("twisted_ground_space_dim: instance too large");

    // Flattened list of cocycle basis vectors with their copy tags.
    struct Tagged {
        int copy;
        const BitVector* v;
    };
    std::vector<Tagged> zs, ss;
    for (int c = 0; c < 3; ++c)
        for (const BitVector& v : zbasis[c]) zs.push_back({c, &v});
    for (int c = 0; c < 3; ++c)
        for (const BitVector& v : sbasis[c]) ss.push_back({c, &v});

    auto phase = [&](const std::array<BitVector, 3>& s, const std::array<BitVector, 3>& z) {
        Cochain ur{Copy::R, 0, s[0]}, ub{Copy::B, 0, s[1]}, ug{Copy::G, 0, s[2]};
        Cochain zr{Copy::R, 1, z[0]}, zb{Copy::B, 1, z[1]}, zg{Copy::G, 1, z[2]};
        bool acc = false;
        if (!s[0].empty_support()) acc ^= cup_eval_any(tc, ur, zb, zg);
        if (!s[1].empty_support()) acc ^= cup_eval_any(tc, zr, ub, zg);
        if (!s[2].empty_support()) acc ^= cup_eval_any(tc, zr, zb, ug);
        return acc;
    };

    long long total = 0;
    const uint64_t scount = uint64_t(1) << sdim;
    const uint64_t zcount = uint64_t(1) << zdim;
    for (uint64_t sm = 0; sm < scount; ++sm) {
        std::array<BitVector, 3> s = {BitVector(cxs[0]->cells(0)), BitVector(cxs[1]->cells(0)),
                                      BitVector(cxs[2]->cells(0))};
        for (std::size_t i = 0; i < sdim; ++i)
            if ((sm >> i) & 1) s[ss[i].copy] ^= *ss[i].v;

        // D_S as a quadratic form over the z-cocycle coordinates, enumerated in
        // Gray order with incremental flip costs.
        std::array<BitVector, 3> z0 = {BitVector(cxs[0]->cells(1)), BitVector(cxs[1]->cells(1)),
                                       BitVector(cxs[2]->cells(1))};
        auto with_basis = [&](uint64_t mask) {
            std::array<BitVector, 3> z = z0;
            for (std::size_t i = 0; i < zdim; ++i)
                if ((mask >> i) & 1) z[zs[i].copy] ^= *zs[i].v;
            return z;
        };
        std::vector<uint8_t> lin(zdim, 0);
        std::vector<std::vector<uint8_t>> bil(zdim, std::vector<uint8_t>(zdim, 0));
        bool d_empty = phase(s, z0);
        for (std::size_t i = 0; i < zdim; ++i)
            lin[i] = phase(s, with_basis(uint64_t(1) << i)) ^ d_empty;
        for (std::size_t i = 0; i < zdim; ++i)
            for (std::size_t j = i + 1; j < zdim; ++j)
                bil[i][j] = bil[j][i] =
                    phase(s, with_basis((uint64_t(1) << i) | (uint64_t(1) << j))) ^ d_empty ^
                    lin[i] ^ lin[j];

        std::vector<uint8_t> t(zdim, 0);
        std::vector<uint8_t> flip_cost(lin);  // cost of flipping coordinate i
        bool cur = d_empty;
        long long ssum = cur ? -1 : 1;
        for (uint64_t g = 1; g < zcount; ++g) {
            std::size_t i = static_cast<std::size_t>(__builtin_ctzll(g));
            cur ^= flip_cost[i] != 0;
            t[i] ^= 1;
            for (std::size_t j = 0; j < zdim; ++j) flip_cost[j] ^= bil[i][j];
            ssum += cur ? -1 : 1;
        }
        total += ssum;
    }

    // total = 2^{NA} tr P.
    if (total <= 0) throw std::logic_error("twisted_ground_space_dim: nonpositive trace");
    if (total % (1LL << na) != 0)
        throw std::logic_error("twisted_ground_space_dim: trace is not an integer");
    return total >> na;
}

}  // namespace tqhp
