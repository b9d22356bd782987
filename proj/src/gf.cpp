#include "sncvf/gf.hpp"

namespace snc {

namespace {
// Primitive polynomials (including the x^q term).
constexpr unsigned kPoly16 = 0x13;   // x^4 + x + 1
constexpr unsigned kPoly256 = 0x11D; // x^8 + x^4 + x^3 + x^2 + 1
}  // namespace

GaloisField::GaloisField(int q) : q_(q) {
    if (q != 1 && q != 4 && q != 8)
        throw std::invalid_argument("gf: unsupported field exponent q (need 1, 4 or 8)");
    size_ = 1u << q;
    if (q == 1) {
        // GF(2): mul is AND; tables make log/exp degenerate but unused paths.
        exp_[0] = 1;
        exp_[1] = 1;
        log_[1] = 0;
        return;
    }
    const unsigned poly = (q == 4) ? kPoly16 : kPoly256;
    // alpha = 2 is primitive for both chosen polynomials.
    unsigned x = 1;
    for (unsigned i = 0; i < size_ - 1; ++i) {
        exp_[i] = static_cast<uint8_t>(x);
        log_[x] = static_cast<uint16_t>(i);
        x <<= 1;
        if (x & size_) x ^= poly;
    }
    // Mirror so mul can index log_[a]+log_[b] without a modulo.
    for (unsigned i = size_ - 1; i < 2 * (size_ - 1); ++i)
        exp_[i] = exp_[i - (size_ - 1)];
}

const GaloisField& GaloisField::get(int q) {
    static const GaloisField gf2(1);
    static const GaloisField gf16(4);
    static const GaloisField gf256(8);
    switch (q) {
        case 1: return gf2;
        case 4: return gf16;
        case 8: return gf256;
        default: throw std::invalid_argument("gf: unsupported field exponent q");
    }
}

}  // namespace snc
