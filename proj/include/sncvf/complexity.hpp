#pragma once

#include <cstdint>
#include <limits>

#include "sncvf/codec.hpp"

namespace snc {

constexpr uint64_t kUnlimitedGates = std::numeric_limits<uint64_t>::max();

/// Gate-count ceilings per node role.
struct ComplexityBudget {
    uint64_t beta0_source = kUnlimitedGates;
    uint64_t beta0_relay = kUnlimitedGates;
    uint64_t beta0_dest = kUnlimitedGates;

    static ComplexityBudget uniform(uint64_t beta0) { return {beta0, beta0, beta0}; }
    /// Source-constrained budget: relay and destination unlimited.
    static ComplexityBudget source_only(uint64_t beta0) {
        return {beta0, kUnlimitedGates, kUnlimitedGates};
    }
};

enum class NodeRole { Source, Relay, Dest };

struct ComplexityReport {
    uint64_t n_mul = 0;
    uint64_t n_add = 0;
    uint64_t gates = 0;  // n_mul*(2q^2+2q) + n_add*q
    NodeRole role = NodeRole::Source;
};

/// Gate cost of one GF(2^q) multiplication: 2q^2 + 2q.
constexpr uint64_t mul_gates(int q) { return 2ull * q * q + 2ull * q; }
/// Gate cost of one GF(2^q) addition: q.
constexpr uint64_t add_gates(int q) { return static_cast<uint64_t>(q); }

/// Encoder cost: (n-k)ks multiplications, (n-k)(k-1)s additions.
ComplexityReport encoding_complexity(const CodeParams& params);
ComplexityReport encoding_complexity_ksq(int k, int n, int s, int q);

/// Decoder cost, worst-case systematic Gaussian elimination over the
/// w = n-k erased-systematic unknowns: N_mul = (w^3-w)/3 + w^2*s, with
/// addition count equal to the multiplication count.
ComplexityReport decoding_complexity(const CodeParams& params);
ComplexityReport decoding_complexity_ksq(int k, int n, int s, int q);

/// Relay cost: decode + re-encode.
ComplexityReport relay_complexity(const CodeParams& params);
ComplexityReport relay_complexity_ksq(int k, int n, int s, int q);

struct FeasibleBlockLength {
    int n_source = 0;
    int n_relay = 0;
    int n_dest = 0;
    int n_overall = 0;  // min over roles present
};

/// Largest n per role whose gate cost fits the budget, and the overall
/// bound (min over roles present; relays only exist on paths of >= 2
/// hops). n = k costs zero gates, so the result is always >= k.
FeasibleBlockLength max_n_under_budget(int k, int s, int q, const ComplexityBudget& budget,
                                       bool has_relays);

}  // namespace snc
