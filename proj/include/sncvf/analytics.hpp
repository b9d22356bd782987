#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sncvf/codec.hpp"

namespace snc {

/// Ordered per-link erasure rates of a line network. Hop index is 1-based.
struct PathProfile {
    std::vector<double> deltas;
    std::vector<std::string> labels;  // optional geo-tag keys, parallel to deltas

    PathProfile() = default;
    explicit PathProfile(std::vector<double> d) : deltas(std::move(d)) { validate(); }
    PathProfile(std::vector<double> d, std::vector<std::string> l)
        : deltas(std::move(d)), labels(std::move(l)) {
        validate();
    }
    /// Homogeneous path: h links, all with erasure rate delta.
    static PathProfile uniform(double delta, int h) {
        return PathProfile(std::vector<double>(static_cast<size_t>(h), delta));
    }
    int hops() const { return static_cast<int>(deltas.size()); }
    void validate() const;
};

struct HopReliability {
    std::vector<double> per_hop_eta;     // eta_i
    std::vector<double> cumulative_eta;  // eta^m
    std::vector<double> cumulative_rho;  // rho after decoding at hop h
    std::vector<double> rates;           // R^m = r * (1 - eta^m)
};

/// P[Binomial(n, p) < k], exact log-space summation.
double binomial_cdf_below(int n, double p, int k);

/// Residual packet erasure rate of one coded hop: a systematic packet
/// stays lost iff it is erased and fewer than k of the other n-1 packets
/// arrive (full rank assumed whenever >= k packets arrive).
double rper_single_hop(const CodeParams& params, double delta);

/// Same model with (k, n) given directly; rper_single_hop delegates here.
double rper_single_hop_kn(int k, int n, double delta);

double reliability_nc(const CodeParams& params, const PathProfile& path, int h);
double reliability_uncoded(const PathProfile& path, int h);
double achievable_rate(const CodeParams& params, const PathProfile& path, int m);
HopReliability hop_reliability(const CodeParams& params, const PathProfile& path);

/// Rate-region inequality ids for a receiver at hop m.
enum class RegionInequality {
    MinCut,       // R^m <= min_{i<m} (1 - delta_i)
    TargetRper,   // eta^m <= eta_0
    Monotone,     // R^m <= R^{m-1}
};

struct RegionCheck {
    bool satisfies = false;
    std::vector<RegionInequality> violated;
};

RegionCheck rate_region_check(const CodeParams& params, const PathProfile& path, int m,
                                  double candidate_rate, double eta0);

enum class RegionScheme { NcCase, EndToEnd };

struct RateRegionCell {
    double delta1 = 0, delta2 = 0;
    bool feasible = false;
    double best_r = 0;        // valid iff feasible
    double achieved_rate = 0; // valid iff feasible
};

struct RateRegionGrid {
    RegionScheme scheme;
    std::vector<double> delta1_axis, delta2_axis;
    std::vector<RateRegionCell> cells;  // row-major over (delta1, delta2)

    const RateRegionCell& at(size_t i, size_t j) const {
        return cells[i * delta2_axis.size() + j];
    }
    size_t feasible_count() const;
    std::string to_csv() const;
};

struct GridSpec {
    int k = 50;
    int q = 8;
    double eta0 = 0.05;
    double delta_min = 0.0, delta_max = 0.5, delta_step = 0.01;
    int n_min = 0, n_max = 0;  // defaults to [k, 2k] when 0 (rate window [0.5, 1])
};

/// Two-link region over an erasure-rate grid. For each (delta1, delta2) the largest
/// feasible rate (smallest n) is chosen. The NC case requires each link's
/// residual erasure to meet eta0 (per-link target; this is what makes the
/// region an exact product of per-link intervals); the end-to-end case
/// applies eta0 to a single hop at the path's total erasure. Achieved rate
/// is r*(1-eta) with the scheme's end-to-end residual erasure.
RateRegionGrid rate_region_grid(RegionScheme scheme, const GridSpec& spec);

}  // namespace snc
