#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tqhp/chain.hpp"
#include "tqhp/skeleton.hpp"

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

ChainComplex two_term(const BitMatrix& h) {
    ChainComplex c;
    c.cell_count = {h.rows(), h.cols()};
    c.boundary.assign(2, BitMatrix());
    c.boundary[1] = h;
    return c;
}

// Brute-force Betti number for tiny complexes by enumerating the full spaces.
std::size_t betti_oracle(const ChainComplex& c, std::size_t k) {
    std::size_t nk = c.cells(k);
    REQUIRE(nk <= 18);
    std::vector<BitVector> cycles;
    for (std::size_t bits = 0; bits < (std::size_t(1) << nk); ++bits) {
        BitVector v(nk);
        for (std::size_t i = 0; i < nk; ++i) v.set(i, (bits >> i) & 1);
        bool cyc = k == 0 || c.boundary[k].mul(v).empty_support();
        if (cyc) cycles.push_back(v);
    }
    std::size_t zdim = cycles.empty() ? 0 : rank(BitMatrix::from_rows(cycles, nk));
    std::size_t bdim = (k + 1 <= c.grades()) ? rank(c.boundary[k + 1]) : 0;
    return zdim - bdim;
}

}  // namespace

TEST_CASE("validate") {
    ChainComplex rep3 = two_term(rep_code(3));
    CHECK(validate(rep3).ok);

    // constructed dd != 0 counterexample
    ChainComplex bad;
    bad.cell_count = {1, 1, 1};
    bad.boundary.assign(3, BitMatrix());
    bad.boundary[1] = BitMatrix::identity(1);
    bad.boundary[2] = BitMatrix::identity(1);
    ValidationReport vr = validate(bad);
    CHECK(!vr.ok);
    REQUIRE(vr.failures.size() == 1);
    CHECK(vr.failures[0].find("grade 2") != std::string::npos);

    ChainComplex prod = tensor_product(rep3, two_term(rep_code(4)));
    CHECK(validate(prod).ok);
}

TEST_CASE("tensor with a point is the identity") {
    ChainComplex rep3 = two_term(rep_code(3));
    ChainComplex p = tensor_product(point_complex(), rep3);
    REQUIRE(p.grades() == 1);
    CHECK(p.cells(0) == rep3.cells(0));
    CHECK(p.cells(1) == rep3.cells(1));
    CHECK(p.boundary[1] == rep3.boundary[1]);
}

TEST_CASE("rep-2 x rep-2-dual cell counts") {
    FactorFamily f = factor_family(rep_code(2));
    ChainComplex prod = tensor_product(f.X, f.Xdual);
    CHECK(prod.cells(0) == 4);
    CHECK(prod.cells(1) == 8);
    CHECK(prod.cells(2) == 4);
}

TEST_CASE("homology of factor complexes") {
    for (std::size_t l = 2; l <= 4; ++l) {
        ChainComplex x = two_term(rep_code(l));
        HomologyBasis h1 = homology_basis(x, 1);
        CHECK(h1.cycle_reps.size() == 1);
        CHECK(h1.cycle_reps[0].popcount() == l);  // the all-ones cycle
        CHECK(betti(x, 1) == betti_oracle(x, 1));
        CHECK(betti(x, 0) == betti_oracle(x, 0));
    }
    // exact complex: identity boundary
    ChainComplex ex = two_term(BitMatrix::identity(4));
    CHECK(betti(ex, 0) == 0);
    CHECK(betti(ex, 1) == 0);
}

TEST_CASE("toric product has two grade-1 classes") {
    FactorFamily f = factor_family(rep_code(3));
    ChainComplex t = tensor_product(f.X, f.Xdual);
    CHECK(betti(t, 1) == 2);
    HomologyBasis hb = homology_basis(t, 1);
    CHECK(hb.cycle_reps.size() == 2);
    CHECK(hb.pairing == BitMatrix::identity(2));
}

TEST_CASE("Kunneth dimensions multiply") {
    FactorFamily f3 = factor_family(rep_code(3));
    FactorFamily f4 = factor_family(rep_code(4));
    for (const ChainComplex* a : {&f3.X, &f3.Xdual, &f3.XR})
        for (const ChainComplex* b : {&f4.X, &f4.Xdual}) {
            ChainComplex p = tensor_product(*a, *b);
            for (std::size_t k = 0; k <= 2; ++k) {
                std::size_t expect = 0;
                for (std::size_t i = 0; i <= k && i <= 1; ++i) {
                    std::size_t j = k - i;
                    if (j > 1) continue;
                    expect += betti(*a, i) * betti(*b, j);
                }
                CHECK(betti(p, k) == expect);
            }
        }
}

TEST_CASE("pairing matrix") {
    FactorFamily f = factor_family(rep_code(3));
    ChainComplex t = tensor_product(f.X, f.Xdual);
    HomologyBasis hb = homology_basis(t, 1);

    // aligned basis pairs as identity
    CHECK(pairing_matrix(hb.cycle_reps, hb.cocycle_reps) == BitMatrix::identity(2));

    // zero cochain pairs to zero
    BitVector zero(t.cells(1));
    BitMatrix p = pairing_matrix(hb.cycle_reps, {zero});
    CHECK(p.is_zero());

    // direct summation oracle on a random pair
    std::mt19937_64 rng(5);
    BitVector a(t.cells(1)), b(t.cells(1));
    for (std::size_t i = 0; i < t.cells(1); ++i) {
        a.set(i, rng() & 1);
        b.set(i, rng() & 1);
    }
    bool dot = false;
    for (std::size_t i = 0; i < t.cells(1); ++i) dot ^= a.get(i) && b.get(i);
    CHECK(pairing_matrix({a}, {b}).get(0, 0) == dot);

    CHECK_THROWS_AS(pairing_matrix({BitVector(3)}, {BitVector(4)}), std::invalid_argument);
}

TEST_CASE("cocycle shifts leave pairings unchanged") {
    FactorFamily f = factor_family(rep_code(3));
    ChainComplex t = tensor_product(f.X, f.Xdual);
    HomologyBasis hb = homology_basis(t, 1);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        BitVector chi(t.cells(0));
        for (std::size_t i = 0; i < chi.size(); ++i) chi.set(i, rng() & 1);
        BitVector shift = t.coboundary(0).mul(chi);
        for (std::size_t j = 0; j < hb.cocycle_reps.size(); ++j) {
            BitVector moved = hb.cocycle_reps[j] ^ shift;
            for (std::size_t i = 0; i < hb.cycle_reps.size(); ++i)
                CHECK(hb.cycle_reps[i].dot(moved) == hb.cycle_reps[i].dot(hb.cocycle_reps[j]));
        }
    }
}

TEST_CASE("homology_basis is deterministic") {
    FactorFamily f = factor_family(rep_code(3));
    ChainComplex t = tensor_product(f.X, f.XR);
    HomologyBasis a = homology_basis(t, 1);
    HomologyBasis b = homology_basis(t, 1);
    REQUIRE(a.cycle_reps.size() == b.cycle_reps.size());
    for (std::size_t i = 0; i < a.cycle_reps.size(); ++i) {
        CHECK(a.cycle_reps[i] == b.cycle_reps[i]);
        CHECK(a.cocycle_reps[i] == b.cocycle_reps[i]);
    }
}

TEST_CASE("time complexes") {
    ChainComplex circ = circle_complex(4);
    CHECK(validate(circ).ok);
    CHECK(betti(circ, 0) == 1);
    CHECK(betti(circ, 1) == 1);
    ChainComplex intv = interval_complex(4);
    CHECK(validate(intv).ok);
    CHECK(betti(intv, 0) == 1);
    CHECK(betti(intv, 1) == 0);

    // spacetime product with a circle doubles the grade-1 homology (Kunneth)
    FactorFamily f = factor_family(rep_code(3));
    ChainComplex spacetime = tensor_product(tensor_product(f.X, f.Xdual), circle_complex(3));
    CHECK(betti(spacetime, 1) == betti(tensor_product(f.X, f.Xdual), 1) +
                                     betti(tensor_product(f.X, f.Xdual), 0));
}
