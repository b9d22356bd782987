#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "sncvf/codec.hpp"
#include "sncvf/rng.hpp"

using namespace snc;

namespace {

std::vector<Packet> subset(const std::vector<Packet>& all, const std::vector<int>& idx) {
    std::vector<Packet> out;
    for (int i : idx) out.push_back(all[i]);
    return out;
}

}  // namespace

TEST_CASE("zero redundancy: encode is the identity on the generation") {
    CodeParams p(4, 4, 8, 3);
    Generation gen = random_generation(p, 7);
    auto packets = encode(gen, p);
    REQUIRE(packets.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(packets[i].payload == gen.packets[i]);
        CHECK(packets[i].systematic_index == i);
    }
}

TEST_CASE("single-packet linearity") {
    CodeParams p(1, 2, 8, 1);
    Generation gen;
    gen.seed = 99;
    gen.packets = {{7}};
    auto packets = encode(gen, p);
    REQUIRE(packets.size() == 2);
    CHECK(packets[0].coeffs == std::vector<uint8_t>{1});
    CHECK(packets[0].payload == std::vector<uint8_t>{7});
    uint8_t c = packets[1].coeffs[0];
    CHECK(packets[1].payload[0] == gf_mul(c, 7, 8));
}

TEST_CASE("k=50 n=60 block shape") {
    CodeParams p(50, 60, 8, 100);
    Generation gen = random_generation(p, 3);
    auto packets = encode(gen, p);
    CHECK(packets.size() == 60);
    int systematic = 0;
    for (const auto& pk : packets)
        if (pk.is_systematic()) ++systematic;
    CHECK(systematic == 50);
}

TEST_CASE("payload length mismatch rejected") {
    CodeParams p(2, 3, 8, 4);
    Generation gen;
    gen.packets = {{1, 2, 3, 4}, {1, 2, 3}};  // second too short
    CHECK_THROWS_AS(encode(gen, p), std::invalid_argument);
}

TEST_CASE("decode: all packets received") {
    CodeParams p(5, 8, 8, 6);
    Generation gen = random_generation(p, 11);
    auto packets = encode(gen, p);
    auto res = decode(packets, p);
    CHECK(res.full_decode);
    for (int i = 0; i < 5; ++i) CHECK(*res.payloads[i] == gen.packets[i]);
}

TEST_CASE("decode: k-1 packets cannot decode") {
    CodeParams p(5, 8, 8, 2);
    Generation gen = random_generation(p, 12);
    auto packets = encode(gen, p);
    auto res = decode(subset(packets, {0, 1, 2, 5}), p);
    CHECK_FALSE(res.full_decode);
    // Systematic fallback keeps the three systematic packets present.
    CHECK(res.payloads[0].has_value());
    CHECK(res.payloads[1].has_value());
    CHECK(res.payloads[2].has_value());
    CHECK_FALSE(res.payloads[3].has_value());
}

TEST_CASE("2x2 elimination by hand") {
    CodeParams p(2, 3, 8, 1);
    Generation gen;
    gen.seed = 5;
    gen.packets = {{13}, {201}};
    auto packets = encode(gen, p);
    uint8_t a = packets[2].coeffs[0], b = packets[2].coeffs[1];
    REQUIRE(b != 0);
    auto res = decode(subset(packets, {0, 2}), p);
    REQUIRE(res.full_decode);
    uint8_t expected =
        gf_mul(gf_inv(b, 8), packets[2].payload[0] ^ gf_mul(a, 13, 8), 8);
    CHECK((*res.payloads[1])[0] == expected);
    CHECK((*res.payloads[1])[0] == 201);
}

TEST_CASE("round trip over random full-rank subsets") {
    CodeParams p(8, 12, 8, 5);
    SplitMix64 rng(2024);
    for (int iter = 0; iter < 50; ++iter) {
        Generation gen = random_generation(p, rng.next());
        auto packets = encode(gen, p);
        std::vector<int> idx(12);
        std::iota(idx.begin(), idx.end(), 0);
        // Fisher-Yates with the test RNG, keep first 9.
        for (int i = 11; i > 0; --i)
            std::swap(idx[i], idx[rng.next() % (i + 1)]);
        idx.resize(9);
        auto res = decode(subset(packets, idx), p);
        if (res.full_decode)
            for (int i = 0; i < 8; ++i) CHECK(*res.payloads[i] == gen.packets[i]);
    }
}

TEST_CASE("rank deficiency of k random coded packets is rare for q=8") {
    SplitMix64 rng(7);
    for (int k : {1, 10, 50, 100}) {
        CodeParams p(k, 2 * k, 8, 1);
        const int trials = 1500;
        int deficient = 0;
        for (int t = 0; t < trials; ++t) {
            Generation gen = random_generation(p, rng.next());
            auto packets = encode(gen, p);
            // k coded packets only (no systematic).
            std::vector<Packet> coded(packets.begin() + k, packets.begin() + 2 * k);
            if (!decode(coded, p).full_decode) ++deficient;
        }
        CHECK(static_cast<double>(deficient) / trials < 0.01);
    }
}

TEST_CASE("reencode after full decode is a fresh systematic encode") {
    CodeParams p(4, 7, 8, 3);
    Generation gen = random_generation(p, 21);
    auto packets = encode(gen, p);
    auto res = decode(packets, p);
    REQUIRE(res.full_decode);
    auto fresh = reencode(res, p, 77);
    REQUIRE(fresh.size() == 7);
    for (int i = 0; i < 4; ++i) {
        CHECK(fresh[i].systematic_index == i);
        CHECK(fresh[i].payload == gen.packets[i]);
    }
    Generation expect_gen;
    expect_gen.seed = 77;
    expect_gen.packets = gen.packets;
    auto expect = encode(expect_gen, p);
    for (int i = 4; i < 7; ++i) CHECK(fresh[i].coeffs == expect[i].coeffs);
}

TEST_CASE("partial reencode spans only the received span") {
    CodeParams p(5, 8, 8, 2);
    Generation gen = random_generation(p, 31);
    auto packets = encode(gen, p);
    // Only systematic packets 0, 2, 4 received.
    auto res = decode(subset(packets, {0, 2, 4}), p);
    REQUIRE_FALSE(res.full_decode);
    auto out = reencode(res, p, 5);
    REQUIRE(out.size() == 8);
    int systematic = 0;
    for (const auto& pk : out) {
        if (pk.is_systematic()) ++systematic;
        // Column support restricted to recovered indices {0, 2, 4}.
        CHECK(pk.coeffs[1] == 0);
        CHECK(pk.coeffs[3] == 0);
    }
    CHECK(systematic == 3);
}

TEST_CASE("empty reencode propagates outage") {
    CodeParams p(3, 5, 8, 2);
    DecodeResult empty;
    empty.payloads.assign(3, std::nullopt);
    CHECK(reencode(empty, p, 1).empty());
}

TEST_CASE("CodeParams invariants") {
    CHECK_THROWS_AS(CodeParams(5, 4, 8, 10), std::invalid_argument);   // k > n
    CHECK_THROWS_AS(CodeParams(2, 4, 3, 10), std::invalid_argument);   // bad q
    CHECK_THROWS_AS(CodeParams(2, 4, 8, 0), std::invalid_argument);    // bad L
    CodeParams p(50, 60, 8, 100);
    CHECK(p.s() == 100);
    CHECK(p.rate() == doctest::Approx(50.0 / 60.0));
}
