#pragma once

#include <cstdint>

namespace snc {

/// SplitMix64 (Steele/Lea/Flood): seedable, platform-independent 64-bit PRNG.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Counter-based substream derivation: hashes (seed, index) so streams
    /// are independent of evaluation order and parallel partitioning.
    static uint64_t substream_seed(uint64_t seed, uint64_t index) {
        SplitMix64 h(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
        return h.next();
    }

private:
    uint64_t state_;
};

/// Draws uniform q-bit field symbols from a SplitMix64 stream.
/// q in {1,4,8} divides 64, so draws are rejection-free: each 64-bit
/// output is sliced into 64/q exact symbols.
class SymbolSource {
public:
    SymbolSource(uint64_t seed, int q) : rng_(seed), q_(q), mask_((1u << q) - 1) {}

    uint8_t next_symbol() {
        if (bits_left_ == 0) {
            buffer_ = rng_.next();
            bits_left_ = 64;
        }
        uint8_t s = static_cast<uint8_t>(buffer_ & mask_);
        buffer_ >>= q_;
        bits_left_ -= q_;
        return s;
    }

    /// Bernoulli(p) draw via 64-bit threshold comparison (no float rounding
    /// dependence on platform beyond the one product below).
    bool bernoulli(double p) {
        if (p <= 0.0) { rng_.next(); return false; }
        if (p >= 1.0) { rng_.next(); return true; }
        // Threshold in [0, 2^64); consistent across platforms for a given p.
        const double scaled = p * 18446744073709551616.0;  // p * 2^64
        const uint64_t threshold = static_cast<uint64_t>(scaled);
        return rng_.next() < threshold;
    }

private:
    SplitMix64 rng_;
    int q_;
    unsigned mask_;
    uint64_t buffer_ = 0;
    int bits_left_ = 0;
};

}  // namespace snc
