#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace snc {

/// Arithmetic over GF(2^q) for q in {1, 4, 8}.
///
/// Multiplication uses log/antilog tables built from a fixed primitive
/// polynomial per field: GF(256) uses x^8+x^4+x^3+x^2+1 (0x11D), GF(16)
/// uses x^4+x+1 (0x13), GF(2) is plain AND/XOR. Addition is XOR in all
/// three fields.
class GaloisField {
public:
    explicit GaloisField(int q);

    int q() const { return q_; }
    unsigned size() const { return size_; }

    uint8_t add(uint8_t a, uint8_t b) const { return a ^ b; }

    uint8_t mul(uint8_t a, uint8_t b) const {
        if (a == 0 || b == 0) return 0;
        unsigned l = log_[a] + log_[b];
        return exp_[l];
    }

    /// Multiplicative inverse; a must be nonzero.
    uint8_t inv(uint8_t a) const {
        if (a == 0) throw std::domain_error("gf: inverse of zero");
        if (a == 1) return 1;
        return exp_[size_ - 1 - log_[a]];
    }

    uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }

    /// Shared per-q instance.
    static const GaloisField& get(int q);

private:
    int q_;
    unsigned size_;
    std::array<uint16_t, 256> log_{};
    std::array<uint8_t, 512> exp_{};
};

inline uint8_t gf_mul(uint8_t a, uint8_t b, int q) { return GaloisField::get(q).mul(a, b); }
inline uint8_t gf_inv(uint8_t a, int q) { return GaloisField::get(q).inv(a); }

}  // namespace snc
