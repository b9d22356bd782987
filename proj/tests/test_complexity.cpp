#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sncvf/complexity.hpp"

using namespace snc;

TEST_CASE("encoding gate counts") {
    CodeParams p(50, 60, 8, 100);
    auto rep = encoding_complexity(p);
    CHECK(rep.n_mul == 50000);
    CHECK(rep.n_add == 49000);
    CHECK(rep.gates == 7592000);
    CHECK(rep.gates == rep.n_mul * mul_gates(8) + rep.n_add * add_gates(8));

    CHECK(encoding_complexity(CodeParams(50, 50, 8, 100)).gates == 0);

    auto tiny = encoding_complexity_ksq(1, 2, 1, 8);
    CHECK(tiny.n_mul == 1);
    CHECK(tiny.n_add == 0);
    CHECK(tiny.gates == 144);
}

TEST_CASE("decoding gate counts") {
    CHECK(decoding_complexity(CodeParams(50, 50, 8, 100)).gates == 0);
    auto rep = decoding_complexity(CodeParams(50, 60, 8, 100));
    CHECK(rep.n_mul == 10330);  // (10^3-10)/3 + 100*100
    CHECK(rep.n_add == 10330);
    CHECK(rep.gates == 1570160);
    CHECK(decoding_complexity_ksq(10, 11, 1, 8).n_mul == 1);  // single back-substitution
}

TEST_CASE("relay = decode + encode") {
    CodeParams p(50, 60, 8, 100);
    auto rel = relay_complexity(p);
    CHECK(rel.gates == 9162160);
    CHECK(rel.gates >= encoding_complexity(p).gates);
    CHECK(rel.gates >= decoding_complexity(p).gates);
    CHECK(relay_complexity(CodeParams(50, 50, 8, 100)).gates == 0);
}

TEST_CASE("strictly increasing in n past k") {
    for (int n = 51; n <= 100; ++n) {
        CHECK(encoding_complexity_ksq(50, n, 100, 8).gates >
              encoding_complexity_ksq(50, n - 1, 100, 8).gates);
        CHECK(decoding_complexity_ksq(50, n, 100, 8).gates >
              decoding_complexity_ksq(50, n - 1, 100, 8).gates);
    }
}

TEST_CASE("doubling s doubles encoder operation counts") {
    auto a = encoding_complexity_ksq(50, 60, 100, 8);
    auto b = encoding_complexity_ksq(50, 60, 200, 8);
    CHECK(b.n_mul == 2 * a.n_mul);
    CHECK(b.n_add == 2 * a.n_add);
}

TEST_CASE("max n under budget") {
    // Near-zero budget: only n = k fits.
    auto tight = max_n_under_budget(50, 100, 8, ComplexityBudget::uniform(1), true);
    CHECK(tight.n_overall == 50);

    // 8e6 gates: source-only bound is n = 60 (n = 61 costs 8,351,200).
    auto f = max_n_under_budget(50, 100, 8, ComplexityBudget::uniform(8000000), true);
    CHECK(f.n_source == 60);
    CHECK(encoding_complexity_ksq(50, 61, 100, 8).gates == 8351200);
    // Relay constraint caps the overall bound further.
    CHECK(f.n_relay == 58);
    CHECK(f.n_overall == 58);
    // Without relays, the destination bound is loose and the source binds.
    auto f1 = max_n_under_budget(50, 100, 8, ComplexityBudget::uniform(8000000), false);
    CHECK(f1.n_overall == 60);

    // Monotone in the budget.
    auto high = max_n_under_budget(50, 100, 8, ComplexityBudget::uniform(10000000), true);
    CHECK(high.n_overall >= f.n_overall);
    CHECK(high.n_source == 63);
}
