#include "sncvf/complexity.hpp"

#include <algorithm>
#include <stdexcept>

namespace snc {

namespace {
uint64_t saturating(unsigned __int128 v) {
    return v > kUnlimitedGates ? kUnlimitedGates : static_cast<uint64_t>(v);
}

ComplexityReport make_report(unsigned __int128 n_mul, unsigned __int128 n_add, int q,
                             NodeRole role) {
    ComplexityReport r;
    r.n_mul = saturating(n_mul);
    r.n_add = saturating(n_add);
    r.gates = saturating(n_mul * mul_gates(q) + n_add * add_gates(q));
    r.role = role;
    return r;
}
}  // namespace

ComplexityReport encoding_complexity_ksq(int k, int n, int s, int q) {
    if (k <= 0 || n < k || s <= 0) throw std::invalid_argument("encoding_complexity: bad params");
    const unsigned __int128 w = static_cast<uint64_t>(n - k);
    return make_report(w * k * s, w * (k - 1) * s, q, NodeRole::Source);
}

ComplexityReport decoding_complexity_ksq(int k, int n, int s, int q) {
    if (k <= 0 || n < k || s <= 0) throw std::invalid_argument("decoding_complexity: bad params");
    const unsigned __int128 w = static_cast<uint64_t>(n - k);
    const unsigned __int128 n_mul = (w * w * w - w) / 3 + w * w * s;
    return make_report(n_mul, n_mul, q, NodeRole::Dest);
}

ComplexityReport relay_complexity_ksq(int k, int n, int s, int q) {
    ComplexityReport enc = encoding_complexity_ksq(k, n, s, q);
    ComplexityReport dec = decoding_complexity_ksq(k, n, s, q);
    ComplexityReport r;
    r.n_mul = saturating(static_cast<unsigned __int128>(enc.n_mul) + dec.n_mul);
    r.n_add = saturating(static_cast<unsigned __int128>(enc.n_add) + dec.n_add);
    r.gates = saturating(static_cast<unsigned __int128>(enc.gates) + dec.gates);
    r.role = NodeRole::Relay;
    return r;
}

ComplexityReport encoding_complexity(const CodeParams& p) {
    return encoding_complexity_ksq(p.k, p.n, p.s(), p.q);
}
ComplexityReport decoding_complexity(const CodeParams& p) {
    return decoding_complexity_ksq(p.k, p.n, p.s(), p.q);
}
ComplexityReport relay_complexity(const CodeParams& p) {
    return relay_complexity_ksq(p.k, p.n, p.s(), p.q);
}

namespace {
// Largest n >= k with cost(n) <= ceiling; cost is strictly increasing in n
// past k, so scan with exponential growth then binary search.
template <typename CostFn>
int max_n_for(int k, uint64_t ceiling, CostFn cost) {
    if (cost(k + 1) > ceiling) return k;
    int good = k + 1;  // cost(good) <= ceiling
    int bad = good;
    int step = 1;
    while (bad <= (1 << 28) && cost(bad) <= ceiling) {
        good = bad;
        bad += step;
        step *= 2;
    }
    if (bad > (1 << 28)) return good;  // budget effectively unbounded
    while (bad - good > 1) {
        int mid = good + (bad - good) / 2;
        (cost(mid) <= ceiling ? good : bad) = mid;
    }
    return good;
}
}  // namespace

FeasibleBlockLength max_n_under_budget(int k, int s, int q, const ComplexityBudget& budget,
                                       bool has_relays) {
    FeasibleBlockLength f;
    auto enc = [&](int n) { return encoding_complexity_ksq(k, n, s, q).gates; };
    auto dec = [&](int n) { return decoding_complexity_ksq(k, n, s, q).gates; };
    auto rel = [&](int n) { return relay_complexity_ksq(k, n, s, q).gates; };
    f.n_source = budget.beta0_source == kUnlimitedGates ? (1 << 28)
                                                        : max_n_for(k, budget.beta0_source, enc);
    f.n_dest =
        budget.beta0_dest == kUnlimitedGates ? (1 << 28) : max_n_for(k, budget.beta0_dest, dec);
    f.n_relay =
        budget.beta0_relay == kUnlimitedGates ? (1 << 28) : max_n_for(k, budget.beta0_relay, rel);
    f.n_overall = std::min(f.n_source, f.n_dest);
    if (has_relays) f.n_overall = std::min(f.n_overall, f.n_relay);
    return f;
}

}  // namespace snc
