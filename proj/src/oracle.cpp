#include "sncvf/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "sncvf/rng.hpp"

namespace snc {

namespace {

// Per-purpose substream tags inside one trial.
constexpr uint64_t kTagGeneration = 1;
constexpr uint64_t kTagErasureBase = 100;

// Coding-point mode: every relay regenerates a full redundancy block, so
// the hops decouple — a packet is delivered iff it survives every hop's
// independent erasure/decode round. Each round still runs the real codec.
void run_trials_decoupled(const SimConfig& cfg, uint64_t first, uint64_t count,
                          std::vector<uint64_t>& recovered_acc) {
    const int hops = cfg.path.hops();
    const int k = cfg.params.k;
    std::vector<Packet> survivors;
    std::vector<char> alive(k);
    for (uint64_t t = first; t < first + count; ++t) {
        const uint64_t base = SplitMix64::substream_seed(cfg.seed, t);
        std::fill(alive.begin(), alive.end(), 1);
        for (int hop = 0; hop < hops; ++hop) {
            Generation gen = random_generation(
                cfg.params, SplitMix64::substream_seed(base, kTagGeneration + hop));
            std::vector<Packet> sent = encode(gen, cfg.params);
            SymbolSource erasures(SplitMix64::substream_seed(base, kTagErasureBase + hop),
                                  cfg.params.q);
            const double delta = cfg.path.deltas[hop];
            survivors.clear();
            for (auto& p : sent)
                if (!erasures.bernoulli(delta)) survivors.push_back(std::move(p));
            DecodeResult res = decode(survivors, cfg.params);
            uint64_t alive_count = 0;
            for (int i = 0; i < k; ++i) {
                if (!res.payloads[i].has_value()) alive[i] = 0;
                alive_count += alive[i];
            }
            recovered_acc[hop] += alive_count;
        }
    }
}

// End-to-end mode: the source encodes once and relays forward survivors.
void run_trials_forward(const SimConfig& cfg, uint64_t first, uint64_t count,
                        std::vector<uint64_t>& recovered_acc) {
    const int hops = cfg.path.hops();
    std::vector<Packet> current, survivors;
    for (uint64_t t = first; t < first + count; ++t) {
        const uint64_t base = SplitMix64::substream_seed(cfg.seed, t);
        Generation gen =
            random_generation(cfg.params, SplitMix64::substream_seed(base, kTagGeneration));
        current = encode(gen, cfg.params);
        for (int hop = 0; hop < hops; ++hop) {
            SymbolSource erasures(SplitMix64::substream_seed(base, kTagErasureBase + hop),
                                  cfg.params.q);
            const double delta = cfg.path.deltas[hop];
            survivors.clear();
            for (auto& p : current)
                if (!erasures.bernoulli(delta)) survivors.push_back(std::move(p));
            DecodeResult res = decode(survivors, cfg.params);
            recovered_acc[hop] += static_cast<uint64_t>(res.recovered_count());
            current = std::move(survivors);
            if (current.empty()) break;  // link outage downstream
        }
    }
}

void run_trials(const SimConfig& cfg, uint64_t first, uint64_t count,
                std::vector<uint64_t>& recovered_acc) {
    if (cfg.relay_mode == RelayMode::DecodeAndReencode)
        run_trials_decoupled(cfg, first, count, recovered_acc);
    else
        run_trials_forward(cfg, first, count, recovered_acc);
}

}  // namespace

SimEstimate simulate(const SimConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
    const int hops = cfg.path.hops();
    const int threads = std::max(1, cfg.threads);

    std::vector<std::vector<uint64_t>> partial(threads, std::vector<uint64_t>(hops, 0));
    if (threads == 1) {
        run_trials(cfg, 0, cfg.trials, partial[0]);
    } else {
        std::vector<std::thread> pool;
        const uint64_t chunk = (cfg.trials + threads - 1) / threads;
        for (int i = 0; i < threads; ++i) {
            uint64_t first = i * chunk;
            if (first >= cfg.trials) break;
            uint64_t count = std::min<uint64_t>(chunk, cfg.trials - first);
            pool.emplace_back([&, i, first, count] { run_trials(cfg, first, count, partial[i]); });
        }
        for (auto& th : pool) th.join();
    }
    std::vector<uint64_t> recovered(hops, 0);
    for (const auto& p : partial)
        for (int h = 0; h < hops; ++h) recovered[h] += p[h];

    SimEstimate est;
    est.trials = cfg.trials;
    const double denom0 = static_cast<double>(cfg.params.k) * cfg.trials;
    double prev = denom0;
    for (int h = 0; h < hops; ++h) {
        double rho = recovered[h] / denom0;
        est.rho_hat.push_back(rho);
        est.rho_stderr.push_back(std::sqrt(rho * (1.0 - rho) / cfg.trials));
        double eta = prev > 0 ? 1.0 - recovered[h] / prev : 1.0;
        if (eta < 0) eta = 0;
        est.eta_hat.push_back(eta);
        est.eta_stderr.push_back(std::sqrt(eta * (1.0 - eta) / cfg.trials));
        prev = static_cast<double>(recovered[h]);
    }
    return est;
}

CompareReport compare(const HopReliability& analytic, const SimEstimate& estimate, double z) {
    CompareReport report;
    auto check = [&](const std::string& name, double a, double e, double se) {
        CompareLine line;
        line.quantity = name;
        line.analytic = a;
        line.estimate = e;
        // Floor the empirical stderr with the analytic-rate binomial one so
        // zero observed events (se = 0) cannot produce an infinite z.
        se = std::max(se, std::sqrt(a * (1.0 - a) / std::max<uint64_t>(estimate.trials, 1)));
        line.stderr_ = se;
        line.z = se > 0 ? std::abs(a - e) / se : (a == e ? 0.0 : INFINITY);
        line.pass = line.z <= z;
        report.all_pass = report.all_pass && line.pass;
        report.lines.push_back(line);
    };
    const size_t hops = std::min(analytic.cumulative_rho.size(), estimate.rho_hat.size());
    for (size_t h = 0; h < hops; ++h) {
        check("rho[h=" + std::to_string(h + 1) + "]", analytic.cumulative_rho[h],
              estimate.rho_hat[h], estimate.rho_stderr[h]);
        check("eta[h=" + std::to_string(h + 1) + "]", analytic.per_hop_eta[h],
              estimate.eta_hat[h], estimate.eta_stderr[h]);
    }
    return report;
}

}  // namespace snc
