#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "tqhp/dense.hpp"
#include "tqhp/operators.hpp"

using namespace tqhp;

namespace {

BitMatrix rep_code(std::size_t l) {
    BitMatrix h(l, l);
    for (std::size_t b = 0; b < l; ++b) {
        h.set(b, b, true);
        h.set((b + 1) % l, b, true);
    }
    return h;
}

using CMat = std::vector<std::vector<std::complex<double>>>;

CMat dense_matrix(const PhasePolyOp& op) {
    const std::size_t dim = std::size_t(1) << op.num_qubits();
    CMat m(dim, std::vector<std::complex<double>>(dim, 0.0));
    for (std::size_t col = 0; col < dim; ++col) {
        std::vector<std::complex<double>> e(dim, 0.0);
        e[col] = 1.0;
        op.apply(e);
        for (std::size_t row = 0; row < dim; ++row) m[row][col] = e[row];
    }
    return m;
}

CMat matmul(const CMat& a, const CMat& b) {
    std::size_t dim = a.size();
    CMat out(dim, std::vector<std::complex<double>>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k)
            if (a[i][k] != std::complex<double>(0.0))
                for (std::size_t j = 0; j < dim; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

bool approx_equal(const CMat& a, const CMat& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (std::abs(a[i][j] - b[i][j]) > 1e-12) return false;
    return true;
}

PhasePolyOp random_op(std::size_t n, std::mt19937_64& rng) {
    PhasePolyOp op(n);
    BitVector x(n), l(n);
    for (std::size_t i = 0; i < n; ++i) {
        x.set(i, rng() & 1);
        l.set(i, rng() & 1);
    }
    op = multiply(PhasePolyOp::z_string(n, l), PhasePolyOp::x_string(n, x));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng() & 1) op.toggle_cz(i, j);
    if (rng() & 1) op.toggle_sign();
    return op;
}

}  // namespace

TEST_CASE("multiply matches 2x2 / 4x4 matrix oracles") {
    // X0 Z0 and the anticommutation X Z X Z = -I
    PhasePolyOp x0 = PhasePolyOp::pauli_x(1, 0);
    PhasePolyOp z0 = PhasePolyOp::pauli_z(1, 0);
    PhasePolyOp xz = multiply(x0, z0);
    CHECK(approx_equal(dense_matrix(xz), matmul(dense_matrix(x0), dense_matrix(z0))));
    PhasePolyOp sq = multiply(xz, xz);
    CHECK(sq.is_diagonal());
    CHECK(sq.sign_bit());  // (XZ)^2 = -I
    CHECK(sq.z_linear().empty_support());

    // p . identity = p
    PhasePolyOp p = multiply(PhasePolyOp::cz(3, 0, 2), PhasePolyOp::pauli_x(3, 1));
    CHECK(multiply(p, PhasePolyOp::identity(3)) == p);

    // CZ01 . X0 = X0 . CZ01 . Z1
    PhasePolyOp lhs = multiply(PhasePolyOp::cz(2, 0, 1), PhasePolyOp::pauli_x(2, 0));
    PhasePolyOp rhs = multiply(multiply(PhasePolyOp::pauli_x(2, 0), PhasePolyOp::cz(2, 0, 1)),
                               PhasePolyOp::pauli_z(2, 1));
    CHECK(lhs == rhs);
    CHECK(approx_equal(dense_matrix(lhs),
                       matmul(dense_matrix(PhasePolyOp::cz(2, 0, 1)),
                              dense_matrix(PhasePolyOp::pauli_x(2, 0)))));
}

TEST_CASE("multiply and inverse match the dense oracle on random ops") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 2 + rng() % 4;
        PhasePolyOp p = random_op(n, rng), q = random_op(n, rng);
        CHECK(approx_equal(dense_matrix(multiply(p, q)),
                           matmul(dense_matrix(p), dense_matrix(q))));
        CHECK(multiply(p, p.inverse()).is_identity());
    }
}

TEST_CASE("commutator basics") {
    std::mt19937_64 rng(5);
    PhasePolyOp p = random_op(4, rng);
    CHECK(commutator(p, p).is_identity());

    PhasePolyOp c = commutator(PhasePolyOp::pauli_x(1, 0), PhasePolyOp::pauli_z(1, 0));
    CHECK(c.is_diagonal());
    CHECK(c.sign_bit());  // [X, Z] = -I
    CHECK(c.z_linear().empty_support());
    CHECK(c.q_is_zero());
}

TEST_CASE("untwisted stabilizers: toric structure and CSS commutation") {
    TripleCode tc = triple_code(rep_code(3), rep_code(3));
    StabilizerSet s = untwisted_stabilizers(tc);

    // red copy A/B = standard toric vertex/plaquette weights
    for (const Generator& g : s.generators) {
        if (g.copy != Copy::R) continue;
        if (g.role == StabRole::A) CHECK(g.op.x_support().popcount() == 4);
        if (g.role == StabRole::B) CHECK(g.op.z_linear().popcount() == 4);
    }
    for (const Generator& a : s.generators)
        for (const Generator& b : s.generators)
            CHECK(commutator(a.op, b.op).is_identity());

    // generator weights bounded by the row/column weights of H
    StabilizerSet tw = twisted_stabilizers(tc);
    for (const Generator& g : tw.generators)
        if (g.role == StabRole::ATilde) CHECK(g.op.x_support().popcount() <= 4);
}

TEST_CASE("every dressed generator is an involution with CZ support off its copy") {
    TripleCode tc = triple_code(rep_code(2), rep_code(2));
    StabilizerSet tw = twisted_stabilizers(tc);
    std::size_t dressed_with_pairs = 0;
    for (const Generator& g : tw.generators) {
        if (g.role != StabRole::ATilde) continue;
        CHECK(multiply(g.op, g.op).is_identity());
        if (!g.op.cz_pairs().empty()) ++dressed_with_pairs;
        for (auto [i, j] : g.op.cz_pairs()) {
            CHECK(!g.op.x_support().get(i));
            CHECK(!g.op.x_support().get(j));
        }
        if (g.copy == Copy::G) CHECK(!g.op.cz_pairs().empty());
    }
    CHECK(dressed_with_pairs == 12);  // every dressed generator carries CZ here
}

TEST_CASE("commutation closure on rep-2 and rep-3") {
    for (std::size_t l = 2; l <= 3; ++l) {
        TripleCode tc = triple_code(rep_code(l), rep_code(l));
        StabilizerSet tw = twisted_stabilizers(tc);
        ClosureReport rep = commutation_closure(tc, tw);
        CHECK(rep.ok());
        CHECK(rep.nontrivial_commutators > 0);
        // dressed X vs B: exact commutation
        for (const Generator& a : tw.generators)
            for (const Generator& b : tw.generators)
                if (a.role == StabRole::ATilde && b.role == StabRole::B)
                    CHECK(commutator(a.op, b.op).is_identity());
    }
}

TEST_CASE("dressing stays LDPC-local") {
    for (std::size_t l = 2; l <= 4; ++l) {
        TripleCode tc = triple_code(rep_code(l), rep_code(l));
        StabilizerSet tw = twisted_stabilizers(tc);
        for (const Generator& g : tw.generators)
            if (g.role == StabRole::ATilde) {
                CHECK(g.op.x_support().popcount() <= 4);
                // constant bound across the family: row/column weights are 2
                CHECK(g.op.cz_pairs().size() <= 8);
            }
    }
}

TEST_CASE("dense zero-flux commutation of the dressed generators") {
    TripleCode tc = triple_code(rep_code(2), rep_code(2));
    StabilizerSet tw = twisted_stabilizers(tc);
    std::vector<const Generator*> dressed;
    for (const Generator& g : tw.generators)
        if (g.role == StabRole::ATilde) dressed.push_back(&g);

    // random state projected into the zero-flux subspace
    DenseState st(tc.total_qubits());
    std::mt19937_64 rng(90210);
    for (auto& a : st.amps())
        a = std::complex<double>(double(rng() % 1000) - 500.0, double(rng() % 1000) - 500.0);
    for (const Generator& g : tw.generators)
        if (g.role == StabRole::B) st.project(g.op, +1);
    st.normalize();

    for (int trial = 0; trial < 8; ++trial) {
        const Generator* a = dressed[rng() % dressed.size()];
        const Generator* b = dressed[rng() % dressed.size()];
        DenseState ab = st, ba = st;
        ab.apply(a->op);
        ab.apply(b->op);
        ba.apply(b->op);
        ba.apply(a->op);
        double dist2 = 0;
        for (std::size_t s = 0; s < ab.amps().size(); ++s)
            dist2 += std::norm(ab.amps()[s] - ba.amps()[s]);
        CHECK(dist2 < 1e-20);
    }
}

TEST_CASE("closure holds on an irregular code with multi-edge connector paths") {
    BitMatrix h(3, 7);
    const int rows[3][7] = {{1, 0, 1, 0, 1, 0, 1}, {0, 1, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 7; ++c)
            if (rows[r][c]) h.set(r, c, true);
    TripleCode tc = triple_code(h, h);
    // weight-3 bits produce two-edge paths in the repetition complex
    bool multi = false;
    for (const auto& edges : tc.fx.bit_edges) multi |= edges.size() >= 2;
    CHECK(multi);
    StabilizerSet tw = twisted_stabilizers(tc);
    ClosureReport rep = commutation_closure(tc, tw);
    CHECK(rep.ok());
    CHECK(stokes_check(tc, 25, 3).ok());
}

TEST_CASE("symmetrized convention breaks closure (negative control)") {
    TripleCode tc = triple_code(rep_code(2), rep_code(2), Adjacency::Symmetrized);
    StabilizerSet tw = twisted_stabilizers(tc);
    ClosureReport rep = commutation_closure(tc, tw);
    CHECK(!rep.ok());
}

TEST_CASE("charge parity reduces to a transversal CZ layer") {
    TripleCode tc = triple_code(rep_code(2), rep_code(2));

    // gamma basis cocycle on the green copy
    Cochain eta{Copy::G, 0, tc.gamma[0]};
    PhasePolyOp cp = charge_parity(tc, Copy::G, eta);
    CHECK(cp.is_diagonal());
    CHECK(cp.z_linear().empty_support());
    CHECK(!cp.sign_bit());
    CHECK(!cp.cz_pairs().empty());
    for (auto [i, j] : cp.cz_pairs()) {
        bool i_rb = i < tc.qubit_offset(Copy::G);
        bool j_rb = j < tc.qubit_offset(Copy::G);
        CHECK(i_rb);
        CHECK(j_rb);
    }

    // eta = 0 gives the identity
    PhasePolyOp id = charge_parity(tc, Copy::G, zero_cochain(tc, Copy::G, 0));
    CHECK(id.is_identity());

    // non-cocycle input is rejected
    Cochain bad = indicator_cochain(tc, Copy::G, 0, 0);
    bool closed = is_cocycle(tc, bad);
    if (!closed) CHECK_THROWS_AS(charge_parity(tc, Copy::G, bad), std::invalid_argument);

    // red and blue 0-cocycle bases cancel too
    HomologyBasis r0 = homology_basis(tc.Xr, 0);
    for (const BitVector& v : r0.cocycle_reps) {
        PhasePolyOp op = charge_parity(tc, Copy::R, Cochain{Copy::R, 0, v});
        CHECK(op.is_diagonal());
    }
    HomologyBasis b0 = homology_basis(tc.Xb, 0);
    for (const BitVector& v : b0.cocycle_reps) {
        PhasePolyOp op = charge_parity(tc, Copy::B, Cochain{Copy::B, 0, v});
        CHECK(op.is_diagonal());
    }
}

TEST_CASE("charge parity commutes with every twisted generator on zero flux") {
    TripleCode tc = triple_code(rep_code(2), rep_code(2));
    StabilizerSet tw = twisted_stabilizers(tc);
    PhasePolyOp cp = charge_parity(tc, Copy::G, Cochain{Copy::G, 0, tc.gamma[0]});

    std::array<BitMatrix, 3> bmap;
    for (Copy c : {Copy::R, Copy::B, Copy::G}) {
        const ChainComplex& cx = tc.complex_of(c);
        BitMatrix m(tc.total_qubits(), cx.cells(2));
        for (std::size_t f = 0; f < cx.cells(2); ++f)
            for (std::size_t i : b_support(tc, c, f).support()) m.set(i, f, true);
        bmap[static_cast<int>(c)] = std::move(m);
    }
    for (const Generator& g : tw.generators) {
        PhasePolyOp com = commutator(cp, g.op);
        if (com.is_identity()) continue;
        CHECK(com.is_diagonal());
        CHECK(com.q_is_zero());
        CHECK(!com.sign_bit());
        bool member = solve(bmap[0], com.z_linear()).has_value() ||
                      solve(bmap[1], com.z_linear()).has_value() ||
                      solve(bmap[2], com.z_linear()).has_value();
        CHECK(member);
    }
}

TEST_CASE("logical operators") {
    TripleCode tc = triple_code(rep_code(3), rep_code(3));
    LogicalOperators lo = logical_operators(tc);
    REQUIRE(lo.zbar_r.size() == 2);
    // weight-3 logical Z strings on the red copy (toric rep-3)
    for (const PhasePolyOp& z : lo.zbar_r) CHECK(z.z_linear().popcount() == 3);

    // a boundary cycle gives a product of B generators (logical identity)
    StabilizerSet s = untwisted_stabilizers(tc);
    BitVector bsup = b_support(tc, Copy::R, 0);
    bool is_b = false;
    for (const Generator& g : s.generators)
        if (g.copy == Copy::R && g.role == StabRole::B && g.cell == 0)
            is_b = g.op.z_linear() == bsup;
    CHECK(is_b);

    // Zbar anticommutes with exactly its conjugate bare X logical
    for (std::size_t i = 0; i < tc.alpha.size(); ++i)
        for (std::size_t j = 0; j < tc.alpha.size(); ++j) {
            bool anti = lo.xbars[j].bare_x.dot(lo.zbar_r[i].z_linear());
            CHECK(anti == (i == j));
        }
}

TEST_CASE("entangler round trip") {
    for (std::size_t l = 2; l <= 3; ++l) {
        TripleCode tc = triple_code(rep_code(l), rep_code(l));
        EntanglerResult res = entangler(tc);
        CHECK(!res.ccz.empty());
        CHECK(res.rotation_consistent);
        CHECK(res.conjugation_ok);
        CHECK(res.gauss_commute_ok);
    }
}
