#include "tqhp/skeleton.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace tqhp {

std::string to_string(Adjacency a) {
    return a == Adjacency::MinIndex ? "min-index" : "symmetrized";
}

std::optional<Adjacency> adjacency_from_string(const std::string& s) {
    if (s == "min-index") return Adjacency::MinIndex;
    if (s == "symmetrized") return Adjacency::Symmetrized;
    return std::nullopt;
}

FactorFamily factor_family(const BitMatrix& H) {
    if (H.rows() == 0 || H.cols() == 0 || H.is_zero())
        throw std::invalid_argument("factor_family: parity-check matrix is empty or zero");

    FactorFamily f;
    f.H = H;
    const std::size_t m = H.rows(), n = H.cols();

    // X: bits at grade 1, checks at grade 0, boundary = H.
    f.X.cell_count = {m, n};
    f.X.boundary.assign(2, BitMatrix());
    f.X.boundary[1] = H;
    f.X.labels.assign(2, {});
    for (std::size_t c = 0; c < m; ++c) f.X.labels[0].push_back("c" + std::to_string(c));
    for (std::size_t b = 0; b < n; ++b) f.X.labels[1].push_back("b" + std::to_string(b));

    // X*: roles swapped, boundary = H^T.
    f.Xdual.cell_count = {n, m};
    f.Xdual.boundary.assign(2, BitMatrix());
    f.Xdual.boundary[1] = H.transposed();
    f.Xdual.labels.assign(2, {});
    for (std::size_t b = 0; b < n; ++b) f.Xdual.labels[0].push_back("b*" + std::to_string(b));
    for (std::size_t c = 0; c < m; ++c) f.Xdual.labels[1].push_back("c*" + std::to_string(c));

    f.bit_checks.assign(n, {});
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < m; ++c)
            if (H.get(c, b)) f.bit_checks[b].push_back(c);

    // XR: a weight-f bit contributes f-1 edges joining its incident checks in
    // ascending check order.
    f.bit_edges.assign(n, {});
    for (std::size_t b = 0; b < n; ++b) {
        const auto& cs = f.bit_checks[b];
        for (std::size_t p = 0; p + 1 < cs.size(); ++p) {
            f.bit_edges[b].push_back(f.edges.size());
            f.edges.push_back(XrEdge{b, p});
        }
    }
    const std::size_t ne = f.edges.size();
    f.XR.cell_count = {m, ne};
    f.XR.boundary.assign(2, BitMatrix());
    BitMatrix bxr(m, ne);
    for (std::size_t e = 0; e < ne; ++e) {
        const auto& cs = f.bit_checks[f.edges[e].bit];
        bxr.set(cs[f.edges[e].pos], e, true);
        bxr.set(cs[f.edges[e].pos + 1], e, true);
    }
    f.XR.boundary[1] = std::move(bxr);
    f.XR.labels.assign(2, {});
    for (std::size_t c = 0; c < m; ++c) f.XR.labels[0].push_back("c" + std::to_string(c));
    for (std::size_t e = 0; e < ne; ++e)
        f.XR.labels[1].push_back("e" + std::to_string(f.edges[e].bit) + "." +
                                 std::to_string(f.edges[e].pos));

    f.XRdual.cell_count = {ne, m};
    f.XRdual.boundary.assign(2, BitMatrix());
    f.XRdual.boundary[1] = f.XR.boundary[1].transposed();
    f.XRdual.labels.assign(2, {});
    for (std::size_t e = 0; e < ne; ++e) f.XRdual.labels[0].push_back("e*" + std::to_string(e));
    for (std::size_t c = 0; c < m; ++c) f.XRdual.labels[1].push_back("c*" + std::to_string(c));

    f.X_h0 = homology_basis(f.X, 0);
    f.X_h1 = homology_basis(f.X, 1);
    f.XR_h0 = homology_basis(f.XR, 0);
    f.XR_h1 = homology_basis(f.XR, 1);
    return f;
}

namespace {

const KunnethBlock& find_block(const ChainComplex& c, std::size_t grade, int xd, int yd) {
    for (const KunnethBlock& b : c.product->blocks[grade])
        if (b.xdeg == xd && b.ydeg == yd) return b;
    throw std::logic_error("find_block: no such Kunneth block");
}

// Outer product of factor vectors into one Kunneth block of a product complex.
BitVector tensor_place(const ChainComplex& c, std::size_t grade, int xd, int yd,
                       const BitVector& xv, const BitVector& yv) {
    const KunnethBlock& blk = find_block(c, grade, xd, yd);
    BitVector out(c.cells(grade));
    for (std::size_t i : xv.support())
        for (std::size_t j : yv.support()) out.set(blk.flat(i, j), true);
    return out;
}

struct BlockView {
    const BitVector* v = nullptr;
    const KunnethBlock* blk = nullptr;
    bool get(std::size_t i, std::size_t j) const { return v->get(blk->flat(i, j)); }
};

BlockView view(const ChainComplex& c, const BitVector& v, std::size_t grade, int xd, int yd) {
    return BlockView{&v, &find_block(c, grade, xd, yd)};
}

}  // namespace

TripleCode triple_code(const BitMatrix& Hx, const BitMatrix& Hy, Adjacency conv) {
    TripleCode tc;
    tc.conv = conv;
    tc.fx = factor_family(Hx);
    tc.fy = factor_family(Hy);

    tc.Xr = tensor_product(tc.fx.X, tc.fy.Xdual);
    tc.Xb = tensor_product(tc.fx.Xdual, tc.fy.XR);
    tc.Xg = tensor_product(tc.fx.XR, tc.fy.X);
    for (const ChainComplex* c : {&tc.Xr, &tc.Xb, &tc.Xg}) {
        ValidationReport vr = validate(*c);
        if (!vr.ok) throw std::logic_error("triple_code: product complex failed validation");
    }

    // X* and XR* bases follow from the X / XR bases by the bit<->check cell
    // identification, which keeps all conjugate pairs delta-aligned.
    const HomologyBasis& x0 = tc.fx.X_h0;
    const HomologyBasis& x1 = tc.fx.X_h1;
    const HomologyBasis& y0 = tc.fy.X_h0;
    const HomologyBasis& y1 = tc.fy.X_h1;
    const HomologyBasis& rx0 = tc.fx.XR_h0;
    const HomologyBasis& rx1 = tc.fx.XR_h1;
    const HomologyBasis& ry0 = tc.fy.XR_h0;
    const HomologyBasis& ry1 = tc.fy.XR_h1;

    // alpha: H_1(Xr) = H_0(X_x) (x) H_1(X*_y)  (+)  H_1(X_x) (x) H_0(X*_y).
    // H_1(X*_y) carries the y-side b' labels: cycle rep = y0 cocycle, cocycle
    // rep = y0 cycle.
    for (std::size_t i = 0; i < x0.cycle_reps.size(); ++i)
        for (std::size_t j = 0; j < y0.cycle_reps.size(); ++j) {
            ClassInfo ci;
            ci.decomposable = true;
            ci.xfactor = static_cast<int>(i);
            ci.yfactor = static_cast<int>(j);
            ci.cocycle = tensor_place(tc.Xr, 1, 0, 1, x0.cocycle_reps[i], y0.cycle_reps[j]);
            ci.cycle = tensor_place(tc.Xr, 1, 0, 1, x0.cycle_reps[i], y0.cocycle_reps[j]);
            tc.alpha.push_back(std::move(ci));
        }
    for (std::size_t i = 0; i < x1.cycle_reps.size(); ++i)
        for (std::size_t j = 0; j < y1.cycle_reps.size(); ++j) {
            ClassInfo ci;
            ci.decomposable = false;
            ci.cocycle = tensor_place(tc.Xr, 1, 1, 0, x1.cocycle_reps[i], y1.cycle_reps[j]);
            ci.cycle = tensor_place(tc.Xr, 1, 1, 0, x1.cycle_reps[i], y1.cocycle_reps[j]);
            tc.alpha.push_back(std::move(ci));
        }

    // beta: H_1(Xb) = H_1(X*_x) (x) H_0(XR_y)  (+)  H_0(X*_x) (x) H_1(XR_y).
    for (std::size_t k = 0; k < x0.cycle_reps.size(); ++k)
        for (std::size_t l = 0; l < ry0.cycle_reps.size(); ++l) {
            ClassInfo ci;
            ci.decomposable = true;
            ci.xfactor = static_cast<int>(k);
            ci.yfactor = static_cast<int>(l);
            ci.cocycle = tensor_place(tc.Xb, 1, 1, 0, x0.cycle_reps[k], ry0.cocycle_reps[l]);
            ci.cycle = tensor_place(tc.Xb, 1, 1, 0, x0.cocycle_reps[k], ry0.cycle_reps[l]);
            tc.beta.push_back(std::move(ci));
        }
    for (std::size_t k = 0; k < x1.cycle_reps.size(); ++k)
        for (std::size_t l = 0; l < ry1.cycle_reps.size(); ++l) {
            ClassInfo ci;
            ci.decomposable = false;
            ci.spurious = true;  // repetition-complex loop factor
            ci.cocycle = tensor_place(tc.Xb, 1, 0, 1, x1.cycle_reps[k], ry1.cocycle_reps[l]);
            ci.cycle = tensor_place(tc.Xb, 1, 0, 1, x1.cocycle_reps[k], ry1.cycle_reps[l]);
            tc.beta.push_back(std::move(ci));
        }

    // gamma: H^0(Xg) = H^0(XR_x) (x) H^0(X_y).
    for (std::size_t l = 0; l < rx0.cocycle_reps.size(); ++l)
        for (std::size_t m = 0; m < y0.cocycle_reps.size(); ++m) {
            tc.gamma.push_back(tensor_place(tc.Xg, 0, 0, 0, rx0.cocycle_reps[l], y0.cocycle_reps[m]));
            tc.gamma_yfactor.push_back(static_cast<int>(m));
        }

    // xi: H_1(Xg) = H_1(XR_x) (x) H_0(X_y)  (+)  H_0(XR_x) (x) H_1(X_y).
    for (std::size_t l = 0; l < rx1.cycle_reps.size(); ++l)
        for (std::size_t m = 0; m < y0.cycle_reps.size(); ++m)
            tc.xi_cycles.push_back(tensor_place(tc.Xg, 1, 1, 0, rx1.cycle_reps[l], y0.cycle_reps[m]));
    for (std::size_t l = 0; l < rx0.cycle_reps.size(); ++l)
        for (std::size_t m = 0; m < y1.cycle_reps.size(); ++m)
            tc.xi_cycles.push_back(tensor_place(tc.Xg, 1, 0, 1, rx0.cycle_reps[l], y1.cycle_reps[m]));

    return tc;
}

Cochain indicator_cochain(const TripleCode& tc, Copy copy, std::size_t degree, std::size_t cell) {
    Cochain c;
    c.copy = copy;
    c.degree = degree;
    c.coeffs = BitVector(tc.complex_of(copy).cells(degree));
    c.coeffs.set(cell, true);
    return c;
}

Cochain zero_cochain(const TripleCode& tc, Copy copy, std::size_t degree) {
    Cochain c;
    c.copy = copy;
    c.degree = degree;
    c.coeffs = BitVector(tc.complex_of(copy).cells(degree));
    return c;
}

Cochain coboundary(const TripleCode& tc, const Cochain& c) {
    Cochain out;
    out.copy = c.copy;
    out.degree = c.degree + 1;
    out.coeffs = tc.complex_of(c.copy).coboundary(c.degree).mul(c.coeffs);
    return out;
}

bool is_cocycle(const TripleCode& tc, const Cochain& c) {
    if (c.degree >= tc.complex_of(c.copy).grades()) return true;
    return coboundary(tc, c).coeffs.empty_support();
}

namespace {

// Sum of an x-side 0-cochain over the checks downstream of edge e on its bit's
// path (the edge rule forced by the Leibniz identity for the min-index site).
bool sum_after(const FactorFamily& f, std::size_t e, const BlockView& bv, bool xside,
               std::size_t other) {
    const XrEdge& ed = f.edges[e];
    const auto& cs = f.bit_checks[ed.bit];
    bool acc = false;
    for (std::size_t p = ed.pos + 1; p < cs.size(); ++p)
        acc ^= xside ? bv.get(cs[p], other) : bv.get(other, cs[p]);
    return acc;
}

struct EvalCtx {
    const TripleCode* tc;
    bool min_index;
};

// Degree (1,1,0): dressing pattern of the green copy's X-stabilizers.
bool eval_110(const EvalCtx& cx, const BitVector& u, const BitVector& v, const BitVector& w) {
    const TripleCode& tc = *cx.tc;
    auto u01 = view(tc.Xr, u, 1, 0, 1);
    auto v10 = view(tc.Xb, v, 1, 1, 0);
    auto w00 = view(tc.Xg, w, 0, 0, 0);
    bool acc = false;
    const std::size_t mx = tc.fx.checks(), my = tc.fy.checks();
    for (std::size_t c = 0; c < mx; ++c)
        for (std::size_t cp = 0; cp < my; ++cp)
            acc ^= u01.get(c, cp) && v10.get(c, cp) && w00.get(c, cp);
    if (cx.min_index) {
        auto u10 = view(tc.Xr, u, 1, 1, 0);
        auto v01 = view(tc.Xb, v, 1, 0, 1);
        for (std::size_t b = 0; b < tc.fx.bits(); ++b) {
            auto cf = tc.fx.c_first(b);
            if (!cf) continue;
            for (std::size_t ep = 0; ep < tc.fy.edges.size(); ++ep) {
                const std::size_t bp = tc.fy.edges[ep].bit;
                acc ^= u10.get(b, bp) && v01.get(b, ep) && sum_after(tc.fy, ep, w00, false, *cf);
            }
        }
    }
    return acc;
}

// Degree (0,1,1): dressing pattern of the red copy's X-stabilizers.
bool eval_011(const EvalCtx& cx, const BitVector& u, const BitVector& v, const BitVector& w) {
    const TripleCode& tc = *cx.tc;
    auto u00 = view(tc.Xr, u, 0, 0, 0);
    auto v10 = view(tc.Xb, v, 1, 1, 0);
    auto w01 = view(tc.Xg, w, 1, 0, 1);
    bool acc = false;
    for (std::size_t c = 0; c < tc.fx.checks(); ++c)
        for (std::size_t bp = 0; bp < tc.fy.bits(); ++bp) {
            if (!u00.get(c, bp) || !w01.get(c, bp)) continue;
            if (cx.min_index) {
                auto cf = tc.fy.c_first(bp);
                if (cf) acc ^= v10.get(c, *cf);
            } else {
                for (std::size_t cp : tc.fy.bit_checks[bp]) acc ^= v10.get(c, cp);
            }
        }
    if (cx.min_index) {
        auto v01 = view(tc.Xb, v, 1, 0, 1);
        auto w10 = view(tc.Xg, w, 1, 1, 0);
        for (std::size_t e = 0; e < tc.fx.edges.size(); ++e)
            for (std::size_t ep = 0; ep < tc.fy.edges.size(); ++ep) {
                if (!v01.get(tc.fx.edges[e].bit, ep)) continue;
                bool ux = sum_after(tc.fx, e, u00, true, tc.fy.edges[ep].bit);
                bool wy = sum_after(tc.fy, ep, w10, false, e);
                acc ^= ux && v01.get(tc.fx.edges[e].bit, ep) && wy;
            }
    }
    return acc;
}

// Degree (1,0,1): dressing pattern of the blue copy's X-stabilizers.
bool eval_101(const EvalCtx& cx, const BitVector& u, const BitVector& v, const BitVector& w) {
    const TripleCode& tc = *cx.tc;
    auto u10 = view(tc.Xr, u, 1, 1, 0);
    auto v00 = view(tc.Xb, v, 0, 0, 0);
    auto w01 = view(tc.Xg, w, 1, 0, 1);
    bool acc = false;
    for (std::size_t b = 0; b < tc.fx.bits(); ++b)
        for (std::size_t bp = 0; bp < tc.fy.bits(); ++bp) {
            if (!u10.get(b, bp)) continue;
            bool vv = false, ww = false;
            if (cx.min_index) {
                auto cfy = tc.fy.c_first(bp);
                auto cfx = tc.fx.c_first(b);
                vv = cfy && v00.get(b, *cfy);
                ww = cfx && w01.get(*cfx, bp);
            } else {
                for (std::size_t cp : tc.fy.bit_checks[bp]) vv ^= v00.get(b, cp);
                for (std::size_t c : tc.fx.bit_checks[b]) ww ^= w01.get(c, bp);
            }
            acc ^= vv && ww;
        }
    if (cx.min_index) {
        auto u01 = view(tc.Xr, u, 1, 0, 1);
        auto w10 = view(tc.Xg, w, 1, 1, 0);
        for (std::size_t e = 0; e < tc.fx.edges.size(); ++e)
            for (std::size_t cp = 0; cp < tc.fy.checks(); ++cp) {
                if (!w10.get(e, cp)) continue;
                bool ux = sum_after(tc.fx, e, u01, true, cp);
                acc ^= ux && v00.get(tc.fx.edges[e].bit, cp);
            }
    }
    return acc;
}

// Degrees (2,0,0), (0,2,0), (0,0,2): one argument is a 2-cochain. These are the
// flux-decomposition targets of the stabilizer commutators.
bool eval_200(const EvalCtx& cx, const BitVector& u, const BitVector& v, const BitVector& w) {
    const TripleCode& tc = *cx.tc;
    auto u2 = view(tc.Xr, u, 2, 1, 1);
    auto v00 = view(tc.Xb, v, 0, 0, 0);
    auto w00 = view(tc.Xg, w, 0, 0, 0);
    bool acc = false;
    for (std::size_t b = 0; b < tc.fx.bits(); ++b)
        for (std::size_t cp = 0; cp < tc.fy.checks(); ++cp) {
            if (!u2.get(b, cp) || !v00.get(b, cp)) continue;
            if (cx.min_index) {
                auto cf = tc.fx.c_first(b);
                if (cf) acc ^= w00.get(*cf, cp);
            } else {
                for (std::size_t c : tc.fx.bit_checks[b]) acc ^= w00.get(c, cp);
            }
        }
    return acc;
}

bool eval_020(const EvalCtx& cx, const BitVector& u, const BitVector& v, const BitVector& w) {
    const TripleCode& tc = *cx.tc;
    if (!cx.min_index) return false;  // every term carries a repetition-edge factor
    auto u00 = view(tc.Xr, u, 0, 0, 0);
    auto v2 = view(tc.Xb, v, 2, 1, 1);
    auto w00 = view(tc.Xg, w, 0, 0, 0);
    bool acc = false;
    for (std::size_t c = 0; c < tc.fx.checks(); ++c)
        for (std::size_t ep = 0; ep < tc.fy.edges.size(); ++ep) {
            if (!v2.get(c, ep)) continue;
            acc ^= u00.get(c, tc.fy.edges[ep].bit) && sum_after(tc.fy, ep, w00, false, c);
        }
    return acc;
}

bool eval_002(const EvalCtx& cx, const BitVector& u, const BitVector& v, const BitVector& w) {
    const TripleCode& tc = *cx.tc;
    if (!cx.min_index) return false;
    auto u00 = view(tc.Xr, u, 0, 0, 0);
    auto v00 = view(tc.Xb, v, 0, 0, 0);
    auto w2 = view(tc.Xg, w, 2, 1, 1);
    bool acc = false;
    for (std::size_t e = 0; e < tc.fx.edges.size(); ++e)
        for (std::size_t bp = 0; bp < tc.fy.bits(); ++bp) {
            if (!w2.get(e, bp)) continue;
            auto cfy = tc.fy.c_first(bp);
            if (!cfy) continue;
            acc ^= sum_after(tc.fx, e, u00, true, bp) && v00.get(tc.fx.edges[e].bit, *cfy);
        }
    return acc;
}

void check_cochain_homes(const TripleCode& tc, const Cochain& u, const Cochain& v,
                         const Cochain& w) {
    if (u.copy != Copy::R || v.copy != Copy::B || w.copy != Copy::G)
        throw std::invalid_argument("cup_eval: cochains must live on (Xr, Xb, Xg) in that order");
    if (u.coeffs.size() != tc.Xr.cells(u.degree) || v.coeffs.size() != tc.Xb.cells(v.degree) ||
        w.coeffs.size() != tc.Xg.cells(w.degree))
        throw std::invalid_argument("cup_eval: cochain length does not match its complex");
}

}  // namespace

bool cup_eval_triple(const TripleCode& tc, const Cochain& u, const Cochain& v, const Cochain& w) {
    check_cochain_homes(tc, u, v, w);
    EvalCtx cx{&tc, tc.conv == Adjacency::MinIndex};
    if (u.degree == 1 && v.degree == 1 && w.degree == 0)
        return eval_110(cx, u.coeffs, v.coeffs, w.coeffs);
    if (u.degree == 0 && v.degree == 1 && w.degree == 1)
        return eval_011(cx, u.coeffs, v.coeffs, w.coeffs);
    if (u.degree == 1 && v.degree == 0 && w.degree == 1)
        return eval_101(cx, u.coeffs, v.coeffs, w.coeffs);
    throw std::invalid_argument("cup_eval_triple: unsupported degree tuple (" +
                                std::to_string(u.degree) + "," + std::to_string(v.degree) + "," +
                                std::to_string(w.degree) + ")");
}

bool cup_eval_any(const TripleCode& tc, const Cochain& u, const Cochain& v, const Cochain& w) {
    check_cochain_homes(tc, u, v, w);
    EvalCtx cx{&tc, tc.conv == Adjacency::MinIndex};
    const int du = static_cast<int>(u.degree), dv = static_cast<int>(v.degree),
              dw = static_cast<int>(w.degree);
    if (du + dv + dw != 2) throw std::invalid_argument("cup_eval_any: degrees must sum to 2");
    if (du == 1 && dv == 1) return eval_110(cx, u.coeffs, v.coeffs, w.coeffs);
    if (dv == 1 && dw == 1) return eval_011(cx, u.coeffs, v.coeffs, w.coeffs);
    if (du == 1 && dw == 1) return eval_101(cx, u.coeffs, v.coeffs, w.coeffs);
    if (du == 2) return eval_200(cx, u.coeffs, v.coeffs, w.coeffs);
    if (dv == 2) return eval_020(cx, u.coeffs, v.coeffs, w.coeffs);
    return eval_002(cx, u.coeffs, v.coeffs, w.coeffs);
}

IntersectionTensor intersection_tensor(const TripleCode& tc) {
    IntersectionTensor t;
    t.na = tc.alpha.size();
    t.nb = tc.beta.size();
    t.ng = tc.gamma.size();
    t.bits.assign(t.na * t.nb * t.ng, 0);
    Cochain u = zero_cochain(tc, Copy::R, 1);
    Cochain v = zero_cochain(tc, Copy::B, 1);
    Cochain w = zero_cochain(tc, Copy::G, 0);
    for (std::size_t a = 0; a < t.na; ++a) {
        u.coeffs = tc.alpha[a].cocycle;
        for (std::size_t b = 0; b < t.nb; ++b) {
            v.coeffs = tc.beta[b].cocycle;
            for (std::size_t g = 0; g < t.ng; ++g) {
                w.coeffs = tc.gamma[g];
                t.set(a, b, g, cup_eval_triple(tc, u, v, w));
            }
        }
    }
    return t;
}

namespace {

BitVector random_bits(std::mt19937_64& rng, std::size_t n) {
    BitVector v(n);
    for (std::size_t w = 0; w < v.words().size(); ++w) v.words()[w] = rng();
    // clear padding
    if (n % 64) v.words().back() &= (uint64_t(1) << (n % 64)) - 1;
    return v;
}

Cochain random_cochain(const TripleCode& tc, Copy copy, std::size_t degree, std::mt19937_64& rng) {
    Cochain c = zero_cochain(tc, copy, degree);
    c.coeffs = random_bits(rng, c.coeffs.size());
    return c;
}

Cochain random_cocycle(const TripleCode& tc, Copy copy, std::size_t degree,
                       const std::vector<BitVector>& kernel, std::mt19937_64& rng) {
    Cochain c = zero_cochain(tc, copy, degree);
    for (const BitVector& k : kernel)
        if (rng() & 1) c.coeffs ^= k;
    return c;
}

}  // namespace

StokesReport stokes_check(const TripleCode& tc, std::size_t trials, uint64_t seed) {
    StokesReport rep;
    rep.trials = trials;
    std::mt19937_64 rng(seed);

    // Kernel bases of the coboundaries, for sampling closed cochains.
    std::vector<std::vector<BitVector>> coker(3);
    coker[0] = kernel_basis(tc.Xr.coboundary(1));
    coker[1] = kernel_basis(tc.Xb.coboundary(1));
    coker[2] = kernel_basis(tc.Xg.coboundary(1));
    std::vector<BitVector> r0ker = kernel_basis(tc.Xr.coboundary(0));
    std::vector<BitVector> b0ker = kernel_basis(tc.Xb.coboundary(0));
    std::vector<BitVector> g0ker = kernel_basis(tc.Xg.coboundary(0));

    for (std::size_t t = 0; t < trials; ++t) {
        // Leibniz sum: d distributed over a random degree-(1,0,0)/(0,1,0)/(0,0,1) triple.
        for (int which = 0; which < 3; ++which) {
            Cochain u = random_cochain(tc, Copy::R, which == 0 ? 1 : 0, rng);
            Cochain v = random_cochain(tc, Copy::B, which == 1 ? 1 : 0, rng);
            Cochain w = random_cochain(tc, Copy::G, which == 2 ? 1 : 0, rng);
            bool s = false;
            s ^= cup_eval_any(tc, coboundary(tc, u), v, w);
            s ^= cup_eval_any(tc, u, coboundary(tc, v), w);
            s ^= cup_eval_any(tc, u, v, coboundary(tc, w));
            if (s) {
                ++rep.leibniz_failures;
                if (rep.witnesses.size() < 8)
                    rep.witnesses.push_back("leibniz trial " + std::to_string(t) + " variant " +
                                            std::to_string(which));
            }
        }

        // Coboundary-shift invariance of closed triples, all three public tuples.
        for (int tuple = 0; tuple < 3; ++tuple) {
            Cochain u = (tuple == 1) ? random_cocycle(tc, Copy::R, 0, r0ker, rng)
                                     : random_cocycle(tc, Copy::R, 1, coker[0], rng);
            Cochain v = (tuple == 2) ? random_cocycle(tc, Copy::B, 0, b0ker, rng)
                                     : random_cocycle(tc, Copy::B, 1, coker[1], rng);
            Cochain w = (tuple == 0) ? random_cocycle(tc, Copy::G, 0, g0ker, rng)
                                     : random_cocycle(tc, Copy::G, 1, coker[2], rng);
            bool base = cup_eval_triple(tc, u, v, w);

            Cochain us = u, vs = v, ws = w;
            if (u.degree == 1) {
                Cochain chi = random_cochain(tc, Copy::R, 0, rng);
                us.coeffs = u.coeffs ^ coboundary(tc, chi).coeffs;
            }
            if (v.degree == 1) {
                Cochain chi = random_cochain(tc, Copy::B, 0, rng);
                vs.coeffs = v.coeffs ^ coboundary(tc, chi).coeffs;
            }
            if (w.degree == 1) {
                Cochain chi = random_cochain(tc, Copy::G, 0, rng);
                ws.coeffs = w.coeffs ^ coboundary(tc, chi).coeffs;
            }
            if (cup_eval_triple(tc, us, vs, ws) != base) {
                ++rep.shift_failures;
                if (rep.witnesses.size() < 8)
                    rep.witnesses.push_back("shift trial " + std::to_string(t) + " tuple " +
                                            std::to_string(tuple));
            }
        }
    }
    return rep;
}

}  // namespace tqhp
