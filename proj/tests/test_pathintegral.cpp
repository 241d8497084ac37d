#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tqhp/pathintegral.hpp"

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

IntersectionTensor single_triple_tensor() {
    IntersectionTensor t;
    t.na = t.nb = t.ng = 1;
    t.bits.assign(1, 1);
    return t;
}

}  // namespace

TEST_CASE("weight") {
    IntersectionTensor t = single_triple_tensor();
    WindingConfig cfg{BitVector(1), BitVector(1), BitVector(1), BitVector(1)};
    CHECK(weight(cfg, t) == +1);

    cfg.n.set(0, true);
    cfg.m.set(0, true);
    cfg.l.set(0, true);
    CHECK(weight(cfg, t) == -1);

    // pure outcome phase: rho=1, l=1, empty tensor
    IntersectionTensor z = single_triple_tensor();
    z.bits[0] = 0;
    WindingConfig cfg2{BitVector(1), BitVector(1), BitVector(1), BitVector(1)};
    cfg2.l.set(0, true);
    cfg2.rho.set(0, true);
    CHECK(weight(cfg2, z) == -1);

    CHECK_THROWS_AS(weight(WindingConfig{BitVector(2), BitVector(1), BitVector(1), BitVector(1)}, t),
                    std::invalid_argument);
}

TEST_CASE("logical action limits") {
    // trivial tensor: constant diagonal 2^{|gamma|}
    IntersectionTensor z;
    z.na = z.nb = 1;
    z.ng = 3;
    z.bits.assign(3, 0);
    LogicalAction la = logical_action(z, BitVector(3));
    for (long long e : la.diag) CHECK(e == 8);

    // matched delta tensor: even projector for rho=0, odd for rho=1
    IntersectionTensor t = single_triple_tensor();
    LogicalAction even = logical_action(t, BitVector(1));
    LogicalAction odd = logical_action(t, BitVector::from_string("1"));
    for (uint64_t n = 0; n < 2; ++n)
        for (uint64_t m = 0; m < 2; ++m) {
            long long expect_even = 1 + (n && m ? -1 : 1);
            long long expect_odd = 1 - (n && m ? -1 : 1);
            CHECK(even.entry(n, m) == expect_even);
            CHECK(odd.entry(n, m) == expect_odd);
        }

    // empty gamma basis: identity action
    IntersectionTensor e;
    e.na = e.nb = 2;
    e.ng = 0;
    e.bits.clear();
    LogicalAction id = logical_action(e, BitVector(0));
    for (long long v : id.diag) CHECK(v == 1);
}

TEST_CASE("projector identity on the rep-2 instance, both outcomes") {
    TripleCode tc = triple_code(rep_code(2), rep_code(2));
    IntersectionTensor t = intersection_tensor(tc);
    for (int r = 0; r < 2; ++r) {
        BitVector rho(t.ng);
        if (r)
            for (std::size_t g = 0; g < t.ng; ++g) rho.set(g, true);
        ProjectorCheckReport rep = projector_identity_check(t, rho);
        CHECK(rep.ok);
        CHECK(rep.mismatches.empty());
    }
}

TEST_CASE("corrupted tensor entry is reported with a witness") {
    TripleCode tc = triple_code(rep_code(2), rep_code(2));
    IntersectionTensor good = intersection_tensor(tc);
    IntersectionTensor bad = good;
    bad.bits[0] ^= 1;
    ProjectorCheckReport rep = projector_identity_check(bad, BitVector(bad.ng), &good);
    CHECK(!rep.ok);
    CHECK(!rep.mismatches.empty());
}

TEST_CASE("entries live in {0, ..., 2^{|gamma|}} and the outcome family is projective") {
    TripleCode tc = triple_code(rep_code(2), rep_code(2));
    IntersectionTensor t = intersection_tensor(tc);
    for (uint64_t r = 0; r < (uint64_t(1) << t.ng); ++r) {
        BitVector rho(t.ng);
        for (std::size_t g = 0; g < t.ng; ++g) rho.set(g, (r >> g) & 1);
        LogicalAction la = logical_action(t, rho);
        for (long long e : la.diag) {
            CHECK(e >= 0);
            CHECK(e <= (1LL << t.ng));
        }
    }
    CHECK(outcome_family_is_projective(t));
}
