#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sncvf/analytics.hpp"
#include "sncvf/rng.hpp"

using namespace snc;

TEST_CASE("rper closed form") {
    CodeParams p(1, 2, 8, 1);
    CHECK(rper_single_hop(p, 0.0) == 0.0);
    CHECK(rper_single_hop(p, 1.0) == 1.0);
    CHECK(rper_single_hop(p, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("rper monotonicity") {
    // Nondecreasing in delta, nonincreasing in n for fixed k.
    for (int k : {1, 10, 50}) {
        double prev = 0.0;
        for (double d = 0.0; d <= 1.0; d += 0.05) {
            double eta = rper_single_hop_kn(k, k + 10, d);
            CHECK(eta >= prev - 1e-12);
            prev = eta;
        }
        double prev_n = 1.0;
        for (int n = k; n <= k + 30; ++n) {
            double eta = rper_single_hop_kn(k, n, 0.2);
            CHECK(eta <= prev_n + 1e-12);
            prev_n = eta;
        }
    }
}

TEST_CASE("binomial tail edge cases") {
    CHECK(binomial_cdf_below(10, 0.5, 0) == 0.0);
    CHECK(binomial_cdf_below(10, 0.5, 11) == 1.0);
    CHECK(binomial_cdf_below(1, 0.5, 1) == doctest::Approx(0.5));
    // Exact small case: P[Bin(3, 0.5) < 2] = 0.5
    CHECK(binomial_cdf_below(3, 0.5, 2) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("multi-hop reliability") {
    CodeParams p(1, 2, 8, 1);
    PathProfile path({0.5, 0.5});
    CHECK(reliability_nc(p, path, 1) == doctest::Approx(0.75));
    CHECK(reliability_nc(p, path, 2) == doctest::Approx(0.5625));
    CHECK(reliability_nc(p, PathProfile({0.0, 0.0}), 2) == 1.0);
    CHECK_THROWS_AS(reliability_nc(p, path, 3), std::invalid_argument);
}

TEST_CASE("uncoded reliability") {
    CHECK(reliability_uncoded(PathProfile({0.1, 0.1}), 2) == doctest::Approx(0.81));
    CHECK(reliability_uncoded(PathProfile({0.0, 0.0}), 2) == 1.0);
    CHECK(reliability_uncoded(PathProfile({0.1, 0.15}), 2) == doctest::Approx(0.765));
}

TEST_CASE("achievable rate") {
    CodeParams p(1, 2, 8, 1);
    PathProfile path({0.5, 0.5});
    CHECK(achievable_rate(p, path, 2) == doctest::Approx(0.5 * 0.5625));
    CodeParams rate_one(3, 3, 8, 1);
    CHECK(achievable_rate(rate_one, path, 2) ==
          doctest::Approx(reliability_nc(rate_one, path, 2)));
    CHECK(achievable_rate(p, PathProfile({0.0, 0.0}), 2) == doctest::Approx(p.rate()));
}

TEST_CASE("rate region point check") {
    CodeParams p(50, 60, 8, 100);
    PathProfile path({0.2, 0.1});
    // Candidate above the min-cut 1 - 0.2 violates the min-cut bound.
    auto check = rate_region_check(p, path, 2, 0.85, 0.5);
    CHECK_FALSE(check.satisfies);
    CHECK(std::count(check.violated.begin(), check.violated.end(),
                     RegionInequality::MinCut) == 1);
    // Feasible candidate.
    auto hr = hop_reliability(p, path);
    auto ok = rate_region_check(p, path, 2, hr.rates[1], 1.0);
    CHECK(ok.satisfies);
    CHECK_THROWS_AS(rate_region_check(p, path, 1, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("lossless path forces equal rates") {
    CodeParams p(50, 60, 8, 100);
    PathProfile path({0.0, 0.0, 0.0});
    auto hr = hop_reliability(p, path);
    for (double rate : hr.rates) CHECK(rate == doctest::Approx(p.rate()));
    // Any strictly positive residual makes rates strictly decrease.
    PathProfile lossy({0.2, 0.2, 0.2});
    auto hl = hop_reliability(p, lossy);
    CHECK(hl.rates[1] < hl.rates[0]);
    CHECK(hl.rates[2] < hl.rates[1]);
}

TEST_CASE("rate monotonicity across random configurations") {
    SplitMix64 rng(17);
    for (int iter = 0; iter < 200; ++iter) {
        int k = 1 + static_cast<int>(rng.next() % 60);
        int n = k + static_cast<int>(rng.next() % 30);
        CodeParams p(k, n, 8, k);  // L=k keeps 8L/q integral
        int hops = 2 + static_cast<int>(rng.next() % 5);
        std::vector<double> deltas;
        for (int i = 0; i < hops; ++i)
            deltas.push_back((rng.next() % 1000) / 1999.0);
        auto hr = hop_reliability(p, PathProfile(deltas));
        for (int m = 1; m < hops; ++m) CHECK(hr.rates[m] <= hr.rates[m - 1] + 1e-12);
        for (int m = 1; m < hops; ++m)
            CHECK(hr.cumulative_rho[m] <= hr.cumulative_rho[m - 1] + 1e-12);
    }
}

TEST_CASE("rate region grid: trivial lossless point") {
    GridSpec spec;
    spec.k = 50;
    spec.delta_max = 0.0;  // single cell at (0,0)
    for (auto scheme : {RegionScheme::NcCase, RegionScheme::EndToEnd}) {
        auto grid = rate_region_grid(scheme, spec);
        REQUIRE(grid.cells.size() == 1);
        CHECK(grid.cells[0].feasible);
        CHECK(grid.cells[0].best_r == 1.0);
        CHECK(grid.cells[0].achieved_rate == 1.0);
    }
}

TEST_CASE("rate region grid: symmetry and product structure") {
    GridSpec spec;
    spec.k = 20;
    spec.delta_step = 0.05;
    auto nc = rate_region_grid(RegionScheme::NcCase, spec);
    auto e2e = rate_region_grid(RegionScheme::EndToEnd, spec);
    const size_t A = nc.delta1_axis.size();
    for (size_t i = 0; i < A; ++i)
        for (size_t j = 0; j < A; ++j) {
            CHECK(nc.at(i, j).feasible == nc.at(j, i).feasible);
            CHECK(nc.at(i, j).best_r == nc.at(j, i).best_r);
            CHECK(e2e.at(i, j).feasible == e2e.at(j, i).feasible);
            // NC feasibility is the product of the per-link intervals.
            CHECK(nc.at(i, j).feasible == (nc.at(i, 0).feasible && nc.at(0, j).feasible));
            // End-to-end feasible cells are always NC feasible.
            if (e2e.at(i, j).feasible) CHECK(nc.at(i, j).feasible);
        }
}

TEST_CASE("rate region grid rejects an empty rate window") {
    GridSpec spec;
    spec.n_min = 30;
    spec.n_max = 20;
    CHECK_THROWS_AS(rate_region_grid(RegionScheme::NcCase, spec), std::invalid_argument);
}

TEST_CASE("grid CSV header") {
    GridSpec spec;
    spec.k = 5;
    spec.delta_max = 0.0;
    auto grid = rate_region_grid(RegionScheme::NcCase, spec);
    CHECK(grid.to_csv().rfind("delta1,delta2,scheme,feasible,best_r,achieved_rate\n", 0) == 0);
}
