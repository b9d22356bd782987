#pragma once

#include <optional>
#include <vector>

#include "sncvf/analytics.hpp"
#include "sncvf/complexity.hpp"

namespace snc {

/// One candidate operating point of the coding-rate search.
struct UtilityPoint {
    int n = 0;
    double r = 0;
    std::optional<double> utility;  // absent at n = k (zero cost)
    double goodness = 0;            // rho - rho0
    double cost = 0;                // source encoding gates
    double reliability = 0;         // rho at the sink hop
    bool meets_target = false;      // rho >= rho0
    bool within_budget = false;     // all role gate ceilings
};

struct OptimizeResult {
    UtilityPoint best;         // argmax of utility over feasible n > k,
                               // or the best-effort max-reliability point
    bool target_met = false;   // best.meets_target
    bool unimodal = true;      // coarse unimodality audit outcome
    bool used_exhaustive = false;
};

struct OperativeRange {
    std::vector<UtilityPoint> points;  // feasible points with u in [u_min, u_max]
    UtilityPoint u_max_point;
    double u_min = 0;
    double u_max = 0;
    bool activation = false;           // range nonempty
    std::optional<UtilityPoint> best_effort;  // set when no point meets rho0
};

struct ConnectivityResult {
    int h_nc = 0;
    int h_unc = 0;
    std::optional<double> gamma;  // absent when h_unc = 0
    int n_single_hop = 0;         // feasible n used at h = 1
    int n_multi_hop = 0;          // feasible n used at h >= 2
    bool unbounded = false;       // delta = 0: both schemes reach any hop
};

struct GainRecord {
    int h = 0;
    int n_opt = 0;
    double r_opt = 0;
    double rho_nc = 0;
    double rho_unc = 0;
    double gain = 0;
    std::optional<double> utility;
    bool target_met = false;
};

struct OptimizerConfig {
    bool force_exhaustive = false;
    /// Max-reliability mode: pick the max-redundancy feasible n
    /// instead of the utility argmax.
    bool max_redundancy = false;
    /// Alternative operative-range policy: fixed utility floor instead of
    /// "smallest utility still meeting rho0".
    std::optional<double> u_min_floor;
};

UtilityPoint utility(const CodeParams& params, const PathProfile& path, double rho0,
                     const ComplexityBudget& budget = {});

UtilityPoint utility_ksq(int k, int n, int s, int q, const PathProfile& path, double rho0,
                         const ComplexityBudget& budget = {});

/// Maximize utility over integer n in (k, n_max] under the gate budgets.
/// Quasi-concavity is audited with a coarse unimodality scan before the
/// ternary search is trusted; non-unimodal profiles fall back to the
/// exhaustive scan. When no feasible n meets rho0 the returned point is
/// the maximum-reliability feasible one (best effort).
OptimizeResult optimize_rate(int k, int s, int q, const PathProfile& path, double rho0,
                             const ComplexityBudget& budget, const OptimizerConfig& cfg = {});

/// Operative-range procedure: u_max from optimize_rate, u_min = smallest
/// utility among feasible points still meeting rho0.
OperativeRange operative_range(int k, int s, int q, const PathProfile& path, double rho0,
                               const ComplexityBudget& budget, const OptimizerConfig& cfg = {});

/// Connectivity over a homogeneous path: farthest hop at which the target
/// is reachable, with and without coding.
ConnectivityResult connectivity_gain(int k, int s, int q, double delta, double rho0,
                                     const ComplexityBudget& budget,
                                     const OptimizerConfig& cfg = {});

std::vector<GainRecord> reliability_gain_sweep(int k, int s, int q, double delta, double rho0,
                                               const ComplexityBudget& budget, int h_max = 20,
                                               const OptimizerConfig& cfg = {});

}  // namespace snc
