#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tqhp/io.hpp"

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

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (rng() % 3 == 0) m.set(i, j, true);
    return m;
}

}  // namespace

TEST_CASE("alist and dense01 round trips") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        BitMatrix m = random_matrix(rng, 2 + rng() % 6, 2 + rng() % 8);
        CHECK(parse_alist(write_alist(m)) == m);
        CHECK(parse_dense01(write_dense01(m)) == m);
        // write->read->write fixpoint
        CHECK(write_alist(parse_alist(write_alist(m))) == write_alist(m));
        CHECK(write_dense01(parse_dense01(write_dense01(m))) == write_dense01(m));
    }
}

TEST_CASE("alist and dense01 of the same H agree") {
    BitMatrix h = rep_code(3);
    BitMatrix a = parse_alist(write_alist(h));
    BitMatrix d = parse_dense01(write_dense01(h));
    CHECK(a == d);
    TripleCode t1 = triple_code(a, a);
    TripleCode t2 = triple_code(d, d);
    CHECK(descriptor_json(t1) == descriptor_json(t2));
}

TEST_CASE("malformed alist diagnostics") {
    // degree 2 declared but only one index given for bit 0
    std::string bad = "2 2\n2 2\n2 1\n1 2\n1 0\n2 0\n1 2\n2 0\n";
    CHECK_THROWS_AS(parse_alist(bad), ParseError);
    try {
        parse_alist(bad);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_dense01("01\n0\n"), ParseError);
    CHECK_THROWS_AS(parse_dense01("01x\n"), ParseError);
}

TEST_CASE("descriptor round trip is a byte fixpoint") {
    TripleCode tc = triple_code(rep_code(2), rep_code(3));
    std::string once = descriptor_json(tc);
    TripleCode back = load_descriptor(once);
    CHECK(descriptor_json(back) == once);
    // determinism across calls
    CHECK(descriptor_json(tc) == once);
}

TEST_CASE("stabilizer and transcript emitters are deterministic") {
    TripleCode tc = triple_code(rep_code(2), rep_code(2));
    StabilizerSet tw = twisted_stabilizers(tc);
    std::string s1 = stabilizers_json(tc, tw);
    CHECK(s1 == stabilizers_json(tc, tw));
    CHECK(s1.find("\"A~^g\"") != std::string::npos);
    CHECK(s1.find("\"cz\"") != std::string::npos);

    InitPlan plan = plan_fountain(tc);
    LedgerRun run = run_ledger(tc, plan, std::nullopt, std::nullopt, 5);
    std::string t1 = transcript_json(run.transcript);
    LedgerRun run2 = run_ledger(tc, plan, std::nullopt, std::nullopt, 5);
    CHECK(transcript_json(run2.transcript) == t1);
    CHECK(t1.find("\"rho\"") != std::string::npos);
    CHECK(t1.find("\"logical_pairs\"") != std::string::npos);
}

TEST_CASE("report emitters") {
    TripleCode tc = triple_code(rep_code(2), rep_code(2));
    CodeReport rep = full_report(tc);
    std::string j = report_json(rep);
    CHECK(j.find("\"k_twisted\": 3") != std::string::npos);
    std::string table = report_table(rep);
    CHECK(table.find("k_twisted = 3") != std::string::npos);
}
