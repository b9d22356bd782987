#include "sncvf/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace snc {

namespace {

// Search cap when a budget leaves n unbounded.
constexpr int kUnboundedExtraRedundancy = 1024;

double path_reliability(int k, int n, const PathProfile& path, int h) {
    double rho = 1.0;
    for (int i = 0; i < h; ++i) rho *= 1.0 - rper_single_hop_kn(k, n, path.deltas[i]);
    return rho;
}

}  // namespace

UtilityPoint utility_ksq(int k, int n, int s, int q, const PathProfile& path, double rho0,
                         const ComplexityBudget& budget) {
    if (!(rho0 > 0.0 && rho0 < 1.0))
        throw std::invalid_argument("utility: rho0 must lie in (0,1)");
    UtilityPoint pt;
    pt.n = n;
    pt.r = static_cast<double>(k) / n;
    pt.reliability = path_reliability(k, n, path, path.hops());
    pt.goodness = pt.reliability - rho0;
    pt.cost = static_cast<double>(encoding_complexity_ksq(k, n, s, q).gates);
    pt.meets_target = pt.reliability >= rho0;
    const bool relay_present = path.hops() >= 2;
    pt.within_budget = encoding_complexity_ksq(k, n, s, q).gates <= budget.beta0_source &&
                       decoding_complexity_ksq(k, n, s, q).gates <= budget.beta0_dest &&
                       (!relay_present ||
                        relay_complexity_ksq(k, n, s, q).gates <= budget.beta0_relay);
    if (n > k) pt.utility = pt.goodness / pt.cost;
    return pt;
}

UtilityPoint utility(const CodeParams& params, const PathProfile& path, double rho0,
                     const ComplexityBudget& budget) {
    return utility_ksq(params.k, params.n, params.s(), params.q, path, rho0, budget);
}

OptimizeResult optimize_rate(int k, int s, int q, const PathProfile& path, double rho0,
                             const ComplexityBudget& budget, const OptimizerConfig& cfg) {
    const bool relays = path.hops() >= 2;
    FeasibleBlockLength feas = max_n_under_budget(k, s, q, budget, relays);
    int n_max = std::min(feas.n_overall, k + kUnboundedExtraRedundancy);

    OptimizeResult res;
    if (n_max <= k) {
        // Only the zero-cost no-coding point fits the budget.
        res.best = utility_ksq(k, k, s, q, path, rho0, budget);
        res.target_met = res.best.meets_target;
        return res;
    }

    auto point_at = [&](int n) { return utility_ksq(k, n, s, q, path, rho0, budget); };
    auto u_at = [&](int n) { return point_at(n).utility.value(); };

    if (cfg.max_redundancy) {
        res.best = point_at(n_max);
        res.target_met = res.best.meets_target;
        res.used_exhaustive = true;
        return res;
    }

    // Reliability is nondecreasing in n, so the max-reliability point is
    // n_max; if even that misses rho0, report it as the best effort.
    UtilityPoint top = point_at(n_max);
    if (!top.meets_target) {
        res.best = top;
        res.target_met = false;
        return res;
    }

    const int lo0 = k + 1, hi0 = n_max;
    // Unimodality audit at coarse stride.
    const int range = hi0 - lo0 + 1;
    const int stride = std::max(1, range / 16);
    bool rising_done = false;
    bool unimodal = true;
    double prev = u_at(lo0);
    for (int n = lo0 + stride; n <= hi0; n += stride) {
        double u = u_at(n);
        if (u < prev) {
            rising_done = true;
        } else if (u > prev && rising_done) {
            unimodal = false;
            break;
        }
        prev = u;
    }
    res.unimodal = unimodal;

    int best_n;
    if (!unimodal || cfg.force_exhaustive || range <= 8) {
        res.used_exhaustive = true;
        best_n = lo0;
        double best_u = u_at(lo0);
        for (int n = lo0 + 1; n <= hi0; ++n) {
            double u = u_at(n);
            if (u > best_u) {
                best_u = u;
                best_n = n;
            }
        }
    } else {
        int lo = lo0, hi = hi0;
        while (hi - lo > 4) {
            int m1 = lo + (hi - lo) / 3;
            int m2 = hi - (hi - lo) / 3;
            if (u_at(m1) < u_at(m2))
                lo = m1 + 1;
            else
                hi = m2;
        }
        best_n = lo;
        double best_u = u_at(lo);
        for (int n = lo + 1; n <= hi; ++n) {
            double u = u_at(n);
            if (u > best_u) {
                best_u = u;
                best_n = n;
            }
        }
    }
    res.best = point_at(best_n);
    res.target_met = res.best.meets_target;
    return res;
}

OperativeRange operative_range(int k, int s, int q, const PathProfile& path, double rho0,
                               const ComplexityBudget& budget, const OptimizerConfig& cfg) {
    const bool relays = path.hops() >= 2;
    FeasibleBlockLength feas = max_n_under_budget(k, s, q, budget, relays);
    int n_max = std::min(feas.n_overall, k + kUnboundedExtraRedundancy);

    OperativeRange range;
    std::vector<UtilityPoint> qualifying;
    for (int n = k + 1; n <= n_max; ++n) {
        UtilityPoint pt = utility_ksq(k, n, s, q, path, rho0, budget);
        if (!pt.meets_target) continue;
        if (cfg.u_min_floor && pt.utility.value() < *cfg.u_min_floor) continue;
        qualifying.push_back(pt);
    }
    if (qualifying.empty()) {
        range.activation = false;
        OptimizeResult best = optimize_rate(k, s, q, path, rho0, budget, cfg);
        range.best_effort = best.best;
        return range;
    }
    auto cmp = [](const UtilityPoint& a, const UtilityPoint& b) {
        return a.utility.value() < b.utility.value();
    };
    auto [mn, mx] = std::minmax_element(qualifying.begin(), qualifying.end(), cmp);
    range.u_min = mn->utility.value();
    range.u_max = mx->utility.value();
    range.u_max_point = *mx;
    range.points = std::move(qualifying);
    range.activation = true;
    return range;
}

ConnectivityResult connectivity_gain(int k, int s, int q, double delta, double rho0,
                                     const ComplexityBudget& budget, const OptimizerConfig&) {
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::invalid_argument("connectivity_gain: delta outside [0,1]");
    if (!(rho0 > 0.0 && rho0 < 1.0))
        throw std::invalid_argument("connectivity_gain: rho0 must lie in (0,1)");

    ConnectivityResult res;
    // Uncoded: farthest h with (1-delta)^h >= rho0.
    if (delta == 0.0) {
        res.unbounded = true;
        return res;
    }
    double acc = 1.0;
    while (true) {
        acc *= 1.0 - delta;
        if (acc < rho0) break;
        ++res.h_unc;
    }

    FeasibleBlockLength f1 = max_n_under_budget(k, s, q, budget, /*has_relays=*/false);
    FeasibleBlockLength f2 = max_n_under_budget(k, s, q, budget, /*has_relays=*/true);
    res.n_single_hop = std::min(f1.n_overall, k + kUnboundedExtraRedundancy);
    res.n_multi_hop = std::min(f2.n_overall, k + kUnboundedExtraRedundancy);

    const double eta1 = rper_single_hop_kn(k, res.n_single_hop, delta);
    const double eta2 = rper_single_hop_kn(k, res.n_multi_hop, delta);
    auto feasible_h = [&](long long h) {
        double eta = (h == 1) ? eta1 : eta2;
        return h * std::log1p(-eta) >= std::log(rho0);
    };
    if (eta2 <= 0.0) {
        res.unbounded = true;
        return res;
    }
    if (!feasible_h(1)) {
        res.h_nc = 0;
    } else {
        // Exponential probe, then binary search on the monotone frontier.
        long long good = 1, bad = 2;
        const long long cap = 1ll << 40;
        while (bad < cap && feasible_h(bad)) {
            good = bad;
            bad *= 2;
        }
        while (bad - good > 1) {
            long long mid = good + (bad - good) / 2;
            (feasible_h(mid) ? good : bad) = mid;
        }
        res.h_nc = static_cast<int>(std::min<long long>(good, 1ll << 30));
    }
    if (res.h_unc > 0) res.gamma = static_cast<double>(res.h_nc) / res.h_unc;
    return res;
}

std::vector<GainRecord> reliability_gain_sweep(int k, int s, int q, double delta, double rho0,
                                               const ComplexityBudget& budget, int h_max,
                                               const OptimizerConfig& cfg) {
    std::vector<GainRecord> out;
    out.reserve(h_max);
    for (int h = 1; h <= h_max; ++h) {
        PathProfile path = PathProfile::uniform(delta, h);
        OptimizeResult opt = optimize_rate(k, s, q, path, rho0, budget, cfg);
        GainRecord rec;
        rec.h = h;
        rec.n_opt = opt.best.n;
        rec.r_opt = opt.best.r;
        rec.rho_nc = opt.best.reliability;
        rec.rho_unc = reliability_uncoded(path, h);
        rec.gain = rec.rho_nc - rec.rho_unc;
        rec.utility = opt.best.utility;
        rec.target_met = opt.target_met;
        out.push_back(rec);
    }
    return out;
}

}  // namespace snc
