#include "tqhp/chain.hpp"

#include <stdexcept>

namespace tqhp {

BitMatrix ChainComplex::coboundary(std::size_t k) const {
    if (k + 1 > grades()) return BitMatrix(0, cells(k));
    return boundary[k + 1].transposed();
}

ValidationReport validate(const ChainComplex& c) {
    ValidationReport rep;
    const std::size_t g = c.grades();
    for (std::size_t k = 1; k <= g; ++k) {
        const BitMatrix& bk = c.boundary[k];
        if (bk.cols() != c.cells(k) || bk.rows() != c.cells(k - 1)) {
            rep.ok = false;
            rep.failures.push_back("grade " + std::to_string(k) + ": boundary shape " +
                                   std::to_string(bk.rows()) + "x" + std::to_string(bk.cols()) +
                                   " does not match cell counts");
        }
    }
    if (!rep.ok) return rep;
    for (std::size_t k = 2; k <= g; ++k) {
        BitMatrix dd = c.boundary[k - 1].mul(c.boundary[k]);
        if (!dd.is_zero()) {
            rep.ok = false;
            rep.failures.push_back("grade " + std::to_string(k) + ": boundary.boundary != 0");
        }
    }
    for (std::size_t k = 0; k <= g; ++k) {
        if (!c.labels.empty() && c.labels.size() > k && !c.labels[k].empty() &&
            c.labels[k].size() != c.cells(k)) {
            rep.ok = false;
            rep.failures.push_back("grade " + std::to_string(k) + ": label count mismatch");
        }
    }
    return rep;
}

ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b) {
    ChainComplex p;
    const std::size_t ga = a.grades(), gb = b.grades();
    const std::size_t g = ga + gb;
    p.cell_count.assign(g + 1, 0);
    p.labels.assign(g + 1, {});
    ProductStructure ps;
    ps.blocks.assign(g + 1, {});

    for (std::size_t k = 0; k <= g; ++k) {
        std::size_t off = 0;
        for (int xd = static_cast<int>(std::min<std::size_t>(k, ga)); xd >= 0; --xd) {
            int yd = static_cast<int>(k) - xd;
            if (yd < 0 || yd > static_cast<int>(gb)) continue;
            KunnethBlock blk;
            blk.xdeg = xd;
            blk.ydeg = yd;
            blk.nx = a.cells(xd);
            blk.ny = b.cells(yd);
            blk.offset = off;
            off += blk.nx * blk.ny;
            ps.blocks[k].push_back(blk);
        }
        p.cell_count[k] = off;
        p.labels[k].reserve(off);
        for (const KunnethBlock& blk : ps.blocks[k])
            for (std::size_t i = 0; i < blk.nx; ++i)
                for (std::size_t j = 0; j < blk.ny; ++j) {
                    std::string la = (a.labels.size() > static_cast<std::size_t>(blk.xdeg) &&
                                      a.labels[blk.xdeg].size() > i)
                                         ? a.labels[blk.xdeg][i]
                                         : std::to_string(blk.xdeg) + ":" + std::to_string(i);
                    std::string lb = (b.labels.size() > static_cast<std::size_t>(blk.ydeg) &&
                                      b.labels[blk.ydeg].size() > j)
                                         ? b.labels[blk.ydeg][j]
                                         : std::to_string(blk.ydeg) + ":" + std::to_string(j);
                    p.labels[k].push_back(la + "(x)" + lb);
                }
    }

    p.boundary.assign(g + 1, BitMatrix());
    for (std::size_t k = 1; k <= g; ++k) {
        BitMatrix bk(p.cell_count[k - 1], p.cell_count[k]);
        for (const KunnethBlock& blk : ps.blocks[k]) {
            for (std::size_t i = 0; i < blk.nx; ++i)
                for (std::size_t j = 0; j < blk.ny; ++j) {
                    const std::size_t col = blk.flat(i, j);
                    if (blk.xdeg >= 1) {
                        // d_a (x) id lands in the (xdeg-1, ydeg) block.
                        for (const KunnethBlock& tb : ps.blocks[k - 1]) {
                            if (tb.xdeg != blk.xdeg - 1 || tb.ydeg != blk.ydeg) continue;
                            for (std::size_t r = 0; r < a.boundary[blk.xdeg].rows(); ++r)
                                if (a.boundary[blk.xdeg].get(r, i)) bk.set(tb.flat(r, j), col, true);
                        }
                    }
                    if (blk.ydeg >= 1) {
                        for (const KunnethBlock& tb : ps.blocks[k - 1]) {
                            if (tb.xdeg != blk.xdeg || tb.ydeg != blk.ydeg - 1) continue;
                            for (std::size_t r = 0; r < b.boundary[blk.ydeg].rows(); ++r)
                                if (b.boundary[blk.ydeg].get(r, j)) bk.set(tb.flat(i, r), col, true);
                        }
                    }
                }
        }
        p.boundary[k] = std::move(bk);
    }
    p.product = std::move(ps);
    return p;
}

std::size_t betti(const ChainComplex& c, std::size_t k) {
    const std::size_t nk = c.cells(k);
    std::size_t rank_dk = (k >= 1 && k <= c.grades()) ? rank(c.boundary[k]) : 0;
    std::size_t rank_dk1 = (k + 1 <= c.grades()) ? rank(c.boundary[k + 1]) : 0;
    return nk - rank_dk - rank_dk1;
}

HomologyBasis homology_basis(const ChainComplex& c, std::size_t k) {
    if (k > c.grades()) throw std::invalid_argument("homology_basis: degree out of range");
    HomologyBasis hb;
    hb.degree = k;

    const std::size_t nk = c.cells(k);
    // Chain side.
    std::vector<BitVector> cycles;
    if (k >= 1) {
        cycles = kernel_basis(c.boundary[k]);
    } else {
        for (std::size_t i = 0; i < nk; ++i) cycles.push_back(BitVector::from_indices(nk, {i}));
    }
    std::vector<BitVector> bdries;
    if (k + 1 <= c.grades()) {
        const BitMatrix& bk1 = c.boundary[k + 1];
        for (std::size_t j = 0; j < bk1.cols(); ++j) {
            BitVector col(nk);
            for (std::size_t r = 0; r < nk; ++r)
                if (bk1.get(r, j)) col.set(r, true);
            bdries.push_back(std::move(col));
        }
    }
    hb.cycle_reps = quotient_basis(cycles, bdries);

    // Cochain side.
    BitMatrix dk = c.coboundary(k);
    std::vector<BitVector> cocycles;
    if (dk.rows() > 0) {
        cocycles = kernel_basis(dk);
    } else {
        for (std::size_t i = 0; i < nk; ++i) cocycles.push_back(BitVector::from_indices(nk, {i}));
    }
    std::vector<BitVector> cobdries;
    if (k >= 1) {
        BitMatrix dkm1 = c.coboundary(k - 1);
        for (std::size_t j = 0; j < dkm1.cols(); ++j) {
            BitVector col(nk);
            for (std::size_t r = 0; r < nk; ++r)
                if (dkm1.get(r, j)) col.set(r, true);
            cobdries.push_back(std::move(col));
        }
    }
    hb.cocycle_reps = quotient_basis(cocycles, cobdries);

    if (hb.cycle_reps.size() != hb.cocycle_reps.size())
        throw std::logic_error("homology_basis: H_k and H^k dimensions differ");

    // Align the cocycle basis so that <cycle_i, cocycle_j> = delta_ij.
    const std::size_t dim = hb.cycle_reps.size();
    if (dim > 0) {
        BitMatrix raw = pairing_matrix(hb.cycle_reps, hb.cocycle_reps);
        BitMatrix inv = inverse(raw);  // invertible by nondegeneracy of the pairing
        std::vector<BitVector> aligned(dim, BitVector(nk));
        for (std::size_t j = 0; j < dim; ++j) {
            BitVector acc(nk);
            for (std::size_t m = 0; m < dim; ++m)
                if (inv.get(m, j)) acc ^= hb.cocycle_reps[m];
            aligned[j] = std::move(acc);
        }
        hb.cocycle_reps = std::move(aligned);
    }
    hb.pairing = pairing_matrix(hb.cycle_reps, hb.cocycle_reps);
    return hb;
}

BitMatrix pairing_matrix(const std::vector<BitVector>& cycles,
                         const std::vector<BitVector>& cocycles) {
    for (const auto& cy : cycles)
        for (const auto& co : cocycles)
            if (cy.size() != co.size())
                throw std::invalid_argument("pairing_matrix: degree/length mismatch");
    BitMatrix p(cycles.size(), cocycles.size());
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (std::size_t j = 0; j < cocycles.size(); ++j)
            if (cycles[i].dot(cocycles[j])) p.set(i, j, true);
    return p;
}

ChainComplex interval_complex(std::size_t t_steps) {
    if (t_steps < 1) throw std::invalid_argument("interval_complex: need at least one step");
    ChainComplex c;
    c.cell_count = {t_steps + 1, t_steps};
    c.boundary.assign(2, BitMatrix());
    BitMatrix b1(t_steps + 1, t_steps);
    for (std::size_t e = 0; e < t_steps; ++e) {
        b1.set(e, e, true);
        b1.set(e + 1, e, true);
    }
    c.boundary[1] = std::move(b1);
    c.labels.assign(2, {});
    for (std::size_t v = 0; v <= t_steps; ++v) c.labels[0].push_back("t" + std::to_string(v));
    for (std::size_t e = 0; e < t_steps; ++e) c.labels[1].push_back("dt" + std::to_string(e));
    return c;
}

ChainComplex circle_complex(std::size_t t_steps) {
    if (t_steps < 1) throw std::invalid_argument("circle_complex: need at least one step");
    ChainComplex c;
    c.cell_count = {t_steps, t_steps};
    c.boundary.assign(2, BitMatrix());
    BitMatrix b1(t_steps, t_steps);
    for (std::size_t e = 0; e < t_steps; ++e) {
        // xor semantics so the single-step circle gets the correct zero column
        b1.set(e, e, !b1.get(e, e));
        std::size_t h = (e + 1) % t_steps;
        b1.set(h, e, !b1.get(h, e));
    }
    c.boundary[1] = std::move(b1);
    c.labels.assign(2, {});
    for (std::size_t v = 0; v < t_steps; ++v) c.labels[0].push_back("t" + std::to_string(v));
    for (std::size_t e = 0; e < t_steps; ++e) c.labels[1].push_back("dt" + std::to_string(e));
    return c;
}

ChainComplex point_complex() {
    ChainComplex c;
    c.cell_count = {1};
    c.boundary.assign(1, BitMatrix());
    c.labels = {{"pt"}};
    return c;
}

}  // namespace tqhp
