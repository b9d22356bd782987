#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sncvf/analytics.hpp"
#include "sncvf/codec.hpp"

namespace snc {

enum class RelayMode {
    DecodeAndReencode,  // NC-case: every relay decodes then re-encodes
    ForwardOnly,        // end-to-end coding: relays forward survivors
};

struct SimConfig {
    CodeParams params;
    PathProfile path;
    uint64_t trials = 100000;
    uint64_t seed = 1;
    RelayMode relay_mode = RelayMode::DecodeAndReencode;
    int threads = 1;  // estimates are identical for any thread count
};

struct SimEstimate {
    std::vector<double> rho_hat;      // per-hop delivered-systematic fraction
    std::vector<double> rho_stderr;
    std::vector<double> eta_hat;      // per-hop conditional residual erasure
    std::vector<double> eta_stderr;
    uint64_t trials = 0;
};

SimEstimate simulate(const SimConfig& config);

struct CompareLine {
    std::string quantity;
    double analytic = 0;
    double estimate = 0;
    double stderr_ = 0;
    double z = 0;
    bool pass = true;
};

struct CompareReport {
    std::vector<CompareLine> lines;
    bool all_pass = true;
};

/// Flags every per-hop quantity where |analytic - estimate| > z * stderr.
CompareReport compare(const HopReliability& analytic, const SimEstimate& estimate,
                      double z = 3.0);

}  // namespace snc
