#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sncvf/gf.hpp"

namespace snc {

/// Coding configuration: k information packets, block length n, field
/// exponent q, packet length L bytes. Derived: rate r = k/n, s = 8L/q
/// symbols per packet.
struct CodeParams {
    int k = 0;
    int n = 0;
    int q = 8;
    int L = 0;

    CodeParams() = default;
    CodeParams(int k_, int n_, int q_, int L_) : k(k_), n(n_), q(q_), L(L_) {
        if (k <= 0 || n <= 0) throw std::invalid_argument("CodeParams: k and n must be positive");
        if (k > n) throw std::invalid_argument("CodeParams: k must not exceed n");
        if (q != 1 && q != 4 && q != 8)
            throw std::invalid_argument("CodeParams: q must be 1, 4 or 8");
        if (L <= 0 || (8 * L) % q != 0)
            throw std::invalid_argument("CodeParams: 8*L must be positive and divisible by q");
    }

    int s() const { return 8 * L / q; }
    double rate() const { return static_cast<double>(k) / n; }
};

struct Packet {
    std::vector<uint8_t> payload;           // s field symbols
    std::vector<uint8_t> coeffs;            // k field symbols over the generation
    std::optional<int> systematic_index;    // set iff coeffs is a unit vector

    bool is_systematic() const { return systematic_index.has_value(); }
};

struct Generation {
    std::vector<std::vector<uint8_t>> packets;  // k payloads of s symbols
    uint64_t seed = 0;
};

/// Recovered payloads plus the reduced row basis of everything received,
/// which reencode() uses to recombine when full decoding failed.
struct DecodeResult {
    std::vector<std::optional<std::vector<uint8_t>>> payloads;  // index -> payload
    bool full_decode = false;
    // Row-reduced received span: (coeffs, payload) pivot rows.
    std::vector<std::pair<std::vector<uint8_t>, std::vector<uint8_t>>> basis;
    int recovered_count() const {
        int c = 0;
        for (const auto& p : payloads)
            if (p) ++c;
        return c;
    }
    bool empty() const { return basis.empty(); }
};

Generation random_generation(const CodeParams& params, uint64_t seed);

/// Systematic encode: k source packets unchanged, then n-k random linear
/// combinations with coefficients drawn from gen.seed.
std::vector<Packet> encode(const Generation& gen, const CodeParams& params);

DecodeResult decode(std::span<const Packet> received, const CodeParams& params);

/// Relay re-encode. After a full decode this is a fresh systematic encode
/// of the recovered generation; otherwise it forwards the recovered
/// systematic packets plus random recombinations of the received span,
/// padded to n packets. An empty input yields an empty output.
std::vector<Packet> reencode(const DecodeResult& recovered, const CodeParams& params,
                             uint64_t seed);

}  // namespace snc
