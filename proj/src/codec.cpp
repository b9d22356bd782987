#include "sncvf/codec.hpp"

#include "sncvf/rng.hpp"

namespace snc {

namespace {

// Row with leading nonzero exactly at its pivot column (normalized to 1,
// zeros to the left).
struct Row {
    std::vector<uint8_t> coeffs;
    std::vector<uint8_t> payload;
};

void row_sub(Row& r, uint8_t factor, const Row& pivot, int from_col, const GaloisField& gf) {
    const int k = static_cast<int>(r.coeffs.size());
    for (int j = from_col; j < k; ++j) {
        uint8_t pj = pivot.coeffs[j];
        if (pj) r.coeffs[j] ^= gf.mul(factor, pj);
    }
    const size_t s = r.payload.size();
    for (size_t t = 0; t < s; ++t) {
        uint8_t pt = pivot.payload[t];
        if (pt) r.payload[t] ^= gf.mul(factor, pt);
    }
}

}  // namespace

Generation random_generation(const CodeParams& params, uint64_t seed) {
    Generation gen;
    gen.seed = seed;
    SymbolSource src(SplitMix64::substream_seed(seed, 0x67656eull), params.q);
    gen.packets.resize(params.k);
    for (auto& p : gen.packets) {
        p.resize(params.s());
        for (auto& sym : p) sym = src.next_symbol();
    }
    return gen;
}

std::vector<Packet> encode(const Generation& gen, const CodeParams& params) {
    const int k = params.k, n = params.n, s = params.s();
    if (static_cast<int>(gen.packets.size()) != k)
        throw std::invalid_argument("encode: generation must hold exactly k packets");
    for (const auto& p : gen.packets)
        if (static_cast<int>(p.size()) != s)
            throw std::invalid_argument("encode: payload length does not match s");

    const GaloisField& gf = GaloisField::get(params.q);
    std::vector<Packet> out;
    out.reserve(n);
    for (int i = 0; i < k; ++i) {
        Packet p;
        p.payload = gen.packets[i];
        p.coeffs.assign(k, 0);
        p.coeffs[i] = 1;
        p.systematic_index = i;
        out.push_back(std::move(p));
    }
    SymbolSource src(gen.seed, params.q);
    for (int i = k; i < n; ++i) {
        Packet p;
        p.coeffs.resize(k);
        for (auto& c : p.coeffs) c = src.next_symbol();
        p.payload.assign(s, 0);
        for (int j = 0; j < k; ++j) {
            uint8_t c = p.coeffs[j];
            if (!c) continue;
            const auto& pj = gen.packets[j];
            for (int t = 0; t < s; ++t)
                if (pj[t]) p.payload[t] ^= gf.mul(c, pj[t]);
        }
        out.push_back(std::move(p));
    }
    return out;
}

DecodeResult decode(std::span<const Packet> received, const CodeParams& params) {
    const int k = params.k, s = params.s();
    const GaloisField& gf = GaloisField::get(params.q);
    for (const auto& p : received)
        if (static_cast<int>(p.coeffs.size()) != k || static_cast<int>(p.payload.size()) != s)
            throw std::invalid_argument("decode: packet dimensions inconsistent with params");

    std::vector<std::optional<Row>> pivots(k);
    int rank = 0;
    Row work;
    for (const auto& p : received) {
        if (rank == k) break;
        work.coeffs = p.coeffs;
        work.payload = p.payload;
        int lead = -1;
        for (int c = 0; c < k; ++c) {
            uint8_t v = work.coeffs[c];
            if (!v) continue;
            if (pivots[c]) {
                row_sub(work, v, *pivots[c], c, gf);
            } else {
                lead = c;
                break;
            }
        }
        if (lead < 0) continue;  // linearly dependent
        if (work.coeffs[lead] != 1) {
            uint8_t invl = gf.inv(work.coeffs[lead]);
            for (int j = lead; j < k; ++j)
                if (work.coeffs[j]) work.coeffs[j] = gf.mul(invl, work.coeffs[j]);
            for (auto& t : work.payload)
                if (t) t = gf.mul(invl, t);
        }
        pivots[lead] = std::move(work);
        ++rank;
    }

    // Back-substitution to reduced echelon form.
    for (int c = k - 1; c >= 0; --c) {
        if (!pivots[c]) continue;
        Row& r = *pivots[c];
        for (int j = c + 1; j < k; ++j) {
            uint8_t v = r.coeffs[j];
            if (v && pivots[j]) row_sub(r, v, *pivots[j], j, gf);
        }
    }

    DecodeResult result;
    result.payloads.assign(k, std::nullopt);
    result.full_decode = (rank == k);
    for (int c = 0; c < k; ++c) {
        if (!pivots[c]) continue;
        const Row& r = *pivots[c];
        bool unit = true;
        for (int j = c + 1; j < k && unit; ++j)
            if (r.coeffs[j]) unit = false;
        if (unit) result.payloads[c] = r.payload;
        result.basis.emplace_back(r.coeffs, r.payload);
    }
    return result;
}

std::vector<Packet> reencode(const DecodeResult& recovered, const CodeParams& params,
                             uint64_t seed) {
    if (recovered.empty()) return {};
    const int k = params.k, n = params.n, s = params.s();
    const GaloisField& gf = GaloisField::get(params.q);

    if (recovered.full_decode) {
        Generation gen;
        gen.seed = seed;
        gen.packets.reserve(k);
        for (const auto& p : recovered.payloads) gen.packets.push_back(*p);
        return encode(gen, params);
    }

    std::vector<Packet> out;
    out.reserve(n);
    for (int i = 0; i < k; ++i) {
        if (!recovered.payloads[i]) continue;
        Packet p;
        p.payload = *recovered.payloads[i];
        p.coeffs.assign(k, 0);
        p.coeffs[i] = 1;
        p.systematic_index = i;
        out.push_back(std::move(p));
    }
    SymbolSource src(seed, params.q);
    const auto& basis = recovered.basis;
    while (static_cast<int>(out.size()) < n) {
        Packet p;
        p.coeffs.assign(k, 0);
        p.payload.assign(s, 0);
        for (const auto& [bc, bp] : basis) {
            uint8_t c = src.next_symbol();
            if (!c) continue;
            for (int j = 0; j < k; ++j)
                if (bc[j]) p.coeffs[j] ^= gf.mul(c, bc[j]);
            for (int t = 0; t < s; ++t)
                if (bp[t]) p.payload[t] ^= gf.mul(c, bp[t]);
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace snc
