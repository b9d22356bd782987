#include "sncvf/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace snc {

void PathProfile::validate() const {
    if (deltas.empty()) throw std::invalid_argument("PathProfile: at least one link required");
    for (double d : deltas)
        if (!(d >= 0.0 && d <= 1.0))
            throw std::invalid_argument("PathProfile: erasure rates must lie in [0,1]");
    if (!labels.empty() && labels.size() != deltas.size())
        throw std::invalid_argument("PathProfile: labels must match link count");
}

double binomial_cdf_below(int n, double p, int k) {
    if (k <= 0) return 0.0;
    if (k > n) return 1.0;
    if (p <= 0.0) return 1.0;  // Bin(n,0) = 0 < k since k >= 1
    if (p >= 1.0) return (n < k) ? 1.0 : 0.0;
    const double lp = std::log(p), lq = std::log1p(-p);
    double sum = 0.0;
    for (int j = 0; j < k; ++j) {
        double lterm = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) +
                       j * lp + (n - j) * lq;
        sum += std::exp(lterm);
    }
    return std::min(sum, 1.0);
}

double rper_single_hop_kn(int k, int n, double delta) {
    if (k <= 0 || k > n) throw std::invalid_argument("rper: need 0 < k <= n");
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("rper: delta outside [0,1]");
    return delta * binomial_cdf_below(n - 1, 1.0 - delta, k);
}

double rper_single_hop(const CodeParams& params, double delta) {
    return rper_single_hop_kn(params.k, params.n, delta);
}

double reliability_nc(const CodeParams& params, const PathProfile& path, int h) {
    if (h < 1 || h > path.hops()) throw std::invalid_argument("reliability_nc: hop out of range");
    double rho = 1.0;
    for (int i = 0; i < h; ++i) rho *= 1.0 - rper_single_hop(params, path.deltas[i]);
    return rho;
}

double reliability_uncoded(const PathProfile& path, int h) {
    if (h < 1 || h > path.hops())
        throw std::invalid_argument("reliability_uncoded: hop out of range");
    double rho = 1.0;
    for (int i = 0; i < h; ++i) rho *= 1.0 - path.deltas[i];
    return rho;
}

double achievable_rate(const CodeParams& params, const PathProfile& path, int m) {
    return params.rate() * reliability_nc(params, path, m);
}

HopReliability hop_reliability(const CodeParams& params, const PathProfile& path) {
    HopReliability hr;
    double rho = 1.0;
    for (double d : path.deltas) {
        double eta = rper_single_hop(params, d);
        rho *= 1.0 - eta;
        hr.per_hop_eta.push_back(eta);
        hr.cumulative_rho.push_back(rho);
        hr.cumulative_eta.push_back(1.0 - rho);
        hr.rates.push_back(params.rate() * rho);
    }
    return hr;
}

RegionCheck rate_region_check(const CodeParams& params, const PathProfile& path, int m,
                                  double candidate_rate, double eta0) {
    if (m < 2 || m > path.hops())
        throw std::invalid_argument("rate_region_check: receiver hop m must lie in [2, hops]");
    RegionCheck check;
    HopReliability hr = hop_reliability(params, path);
    double min_cut = 1.0;
    for (int i = 0; i < m - 1; ++i) min_cut = std::min(min_cut, 1.0 - path.deltas[i]);
    double eta_m = hr.cumulative_eta[m - 1];
    double rate_prev = hr.rates[m - 2];
    if (candidate_rate > min_cut) check.violated.push_back(RegionInequality::MinCut);
    if (eta_m > eta0) check.violated.push_back(RegionInequality::TargetRper);
    if (candidate_rate > rate_prev) check.violated.push_back(RegionInequality::Monotone);
    check.satisfies = check.violated.empty();
    return check;
}

size_t RateRegionGrid::feasible_count() const {
    return static_cast<size_t>(
        std::count_if(cells.begin(), cells.end(), [](const auto& c) { return c.feasible; }));
}

std::string RateRegionGrid::to_csv() const {
    std::ostringstream os;
    os << "delta1,delta2,scheme,feasible,best_r,achieved_rate\n";
    const char* name = scheme == RegionScheme::NcCase ? "nc" : "e2e";
    os.precision(10);
    for (const auto& c : cells) {
        os << c.delta1 << ',' << c.delta2 << ',' << name << ',' << (c.feasible ? 1 : 0) << ',';
        if (c.feasible)
            os << c.best_r << ',' << c.achieved_rate;
        else
            os << ',';
        os << '\n';
    }
    return os.str();
}

RateRegionGrid rate_region_grid(RegionScheme scheme, const GridSpec& spec) {
    const int n_min = spec.n_min > 0 ? spec.n_min : spec.k;
    const int n_max = spec.n_max > 0 ? spec.n_max : 2 * spec.k;
    if (n_min > n_max || n_min < spec.k)
        throw std::invalid_argument("rate_region_grid: empty or invalid rate window");

    std::vector<double> axis;
    for (int i = 0;; ++i) {
        double d = spec.delta_min + i * spec.delta_step;
        if (d > spec.delta_max + 1e-12) break;
        axis.push_back(std::min(d, spec.delta_max));
    }

    RateRegionGrid grid;
    grid.scheme = scheme;
    grid.delta1_axis = axis;
    grid.delta2_axis = axis;
    grid.cells.resize(axis.size() * axis.size());

    if (scheme == RegionScheme::NcCase) {
        // eta(n, delta) cached per axis value; per-link feasibility is a
        // threshold in n, so the joint choice is just the max over links.
        const size_t A = axis.size();
        std::vector<std::vector<double>> eta(n_max - n_min + 1, std::vector<double>(A));
        for (int n = n_min; n <= n_max; ++n)
            for (size_t i = 0; i < A; ++i)
                eta[n - n_min][i] = rper_single_hop_kn(spec.k, n, axis[i]);
        // smallest n meeting eta0 per axis value (-1 if none)
        std::vector<int> n_need(A, -1);
        for (size_t i = 0; i < A; ++i)
            for (int n = n_min; n <= n_max; ++n)
                if (eta[n - n_min][i] <= spec.eta0) {
                    n_need[i] = n;
                    break;
                }
        for (size_t i = 0; i < A; ++i) {
            for (size_t j = 0; j < A; ++j) {
                RateRegionCell& c = grid.cells[i * A + j];
                c.delta1 = axis[i];
                c.delta2 = axis[j];
                if (n_need[i] < 0 || n_need[j] < 0) continue;
                int n = std::max(n_need[i], n_need[j]);
                c.feasible = true;
                c.best_r = static_cast<double>(spec.k) / n;
                double e1 = eta[n - n_min][i], e2 = eta[n - n_min][j];
                double eta_nc = 1.0 - (1.0 - e1) * (1.0 - e2);
                c.achieved_rate = c.best_r * (1.0 - eta_nc);
            }
        }
    } else {
        const size_t A = axis.size();
        for (size_t i = 0; i < A; ++i) {
            for (size_t j = 0; j < A; ++j) {
                RateRegionCell& c = grid.cells[i * A + j];
                c.delta1 = axis[i];
                c.delta2 = axis[j];
                double d_total = 1.0 - (1.0 - axis[i]) * (1.0 - axis[j]);
                for (int n = n_min; n <= n_max; ++n) {
                    double e = rper_single_hop_kn(spec.k, n, d_total);
                    if (e <= spec.eta0) {
                        c.feasible = true;
                        c.best_r = static_cast<double>(spec.k) / n;
                        c.achieved_rate = c.best_r * (1.0 - e);
                        break;
                    }
                }
            }
        }
    }
    return grid;
}

}  // namespace snc
