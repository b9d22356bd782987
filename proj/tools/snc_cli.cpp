#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sncvf/lifecycle.hpp"
#include "sncvf/optimizer.hpp"
#include "sncvf/oracle.hpp"

namespace {

using nlohmann::json;
constexpr const char* kVersion = "0.1.0";

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void write_manifest(const std::string& out_base, const std::string& subcommand,
                    const json& parameters, const std::vector<std::string>& outputs,
                    const std::vector<std::string>& argv) {
    json m = {{"subcommand", subcommand},
              {"parameters", parameters},
              {"seed", parameters.value("seed", 0ull)},
              {"version", kVersion},
              {"outputs", outputs},
              {"argv", argv}};
    write_file(out_base + ".manifest.json", m.dump(2) + "\n");
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

struct CommonOpts {
    int k = 50;
    int L = 100;
    int q = 8;
    double rho0 = 0.8;
    double eta0 = 0.05;
    uint64_t seed = 1;
    std::string out = "out";
    std::string format = "csv";
};

int run_rate_region(const CommonOpts& c, double grid_step, double delta_max, bool check_symmetry,
                    const std::vector<std::string>& argv) {
    snc::GridSpec spec;
    spec.k = c.k;
    spec.q = c.q;
    spec.eta0 = c.eta0;
    spec.delta_step = grid_step;
    spec.delta_max = delta_max;
    auto nc = snc::rate_region_grid(snc::RegionScheme::NcCase, spec);
    auto e2e = snc::rate_region_grid(snc::RegionScheme::EndToEnd, spec);

    std::vector<std::string> outputs = {c.out + "_nc.csv", c.out + "_e2e.csv"};
    write_file(outputs[0], nc.to_csv());
    write_file(outputs[1], e2e.to_csv());

    const size_t nc_cells = nc.feasible_count(), e2e_cells = e2e.feasible_count();
    const double ratio = e2e_cells ? static_cast<double>(nc_cells) / e2e_cells : 0.0;
    std::cout << "nc_feasible=" << nc_cells << " e2e_feasible=" << e2e_cells
              << " area_ratio=" << format_double(ratio) << "\n";

    if (check_symmetry) {
        const size_t A = nc.delta1_axis.size();
        for (const auto* grid : {&nc, &e2e})
            for (size_t i = 0; i < A; ++i)
                for (size_t j = 0; j < A; ++j) {
                    const auto &a = grid->at(i, j), &b = grid->at(j, i);
                    if (a.feasible != b.feasible || a.best_r != b.best_r ||
                        a.achieved_rate != b.achieved_rate) {
                        std::cerr << "symmetry violation at (" << a.delta1 << "," << a.delta2
                                  << ")\n";
                        return 1;
                    }
                }
        std::cout << "symmetry=ok\n";
    }
    json params = {{"k", c.k},         {"q", c.q},           {"eta0", c.eta0},
                   {"grid_step", grid_step}, {"delta_max", delta_max}, {"seed", c.seed}};
    write_manifest(c.out, "rate-region", params, outputs, argv);
    return 0;
}

int run_reliability(const CommonOpts& c, std::optional<double> delta_opt,
                    std::optional<uint64_t> beta0_opt, uint64_t beta0_relay, uint64_t beta0_dest,
                    int h_max, bool max_redundancy, const std::vector<std::string>& argv) {
    std::vector<double> deltas = delta_opt ? std::vector<double>{*delta_opt}
                                           : std::vector<double>{0.1, 0.15};
    std::vector<uint64_t> betas = beta0_opt ? std::vector<uint64_t>{*beta0_opt}
                                            : std::vector<uint64_t>{8000000ull, 10000000ull};
    const int s = 8 * c.L / c.q;
    std::ostringstream os;
    os << "h,delta,beta0,n_opt,r_opt,rho_nc,rho_unc,gain,utility\n";
    snc::OptimizerConfig cfg;
    cfg.max_redundancy = max_redundancy;
    for (double delta : deltas) {
        for (uint64_t b0 : betas) {
            snc::ComplexityBudget budget = snc::ComplexityBudget::source_only(b0);
            budget.beta0_relay = beta0_relay;
            budget.beta0_dest = beta0_dest;
            auto records = snc::reliability_gain_sweep(c.k, s, c.q, delta, c.rho0, budget, h_max,
                                                       cfg);
            for (const auto& r : records) {
                os << r.h << ',' << format_double(delta) << ',' << b0 << ',' << r.n_opt << ','
                   << format_double(r.r_opt) << ',' << format_double(r.rho_nc) << ','
                   << format_double(r.rho_unc) << ',' << format_double(r.gain) << ','
                   << (r.utility ? format_double(*r.utility) : "") << '\n';
            }
        }
    }
    std::string path = c.out + ".csv";
    write_file(path, os.str());
    json params = {{"k", c.k},     {"L", c.L},   {"q", c.q},
                   {"rho0", c.rho0}, {"h_max", h_max}, {"seed", c.seed}};
    write_manifest(c.out, "reliability", params, {path}, argv);
    return 0;
}

int run_connectivity(const CommonOpts& c, std::optional<double> delta_opt,
                     std::optional<uint64_t> beta0_opt, uint64_t beta0_relay, uint64_t beta0_dest,
                     std::optional<double> rho0_opt, const std::vector<std::string>& argv) {
    std::vector<uint64_t> betas = beta0_opt
                                      ? std::vector<uint64_t>{*beta0_opt}
                                      : std::vector<uint64_t>{5000000ull, 8000000ull, 10000000ull};
    std::vector<double> deltas = delta_opt ? std::vector<double>{*delta_opt}
                                           : std::vector<double>{0.1, 0.15};
    std::vector<double> rho0s = rho0_opt ? std::vector<double>{*rho0_opt}
                                         : std::vector<double>{0.8, 0.85};
    const int s = 8 * c.L / c.q;

    json rows = json::array();
    std::ostringstream os;
    os << "beta0,delta,rho0,h_nc,h_unc,gamma,n\n";
    for (uint64_t b0 : betas)
        for (double delta : deltas)
            for (double rho0 : rho0s) {
                snc::ComplexityBudget budget = snc::ComplexityBudget::source_only(b0);
                budget.beta0_relay = beta0_relay;
                budget.beta0_dest = beta0_dest;
                auto res = snc::connectivity_gain(c.k, s, c.q, delta, rho0, budget);
                os << b0 << ',' << format_double(delta) << ',' << format_double(rho0) << ','
                   << res.h_nc << ',' << res.h_unc << ','
                   << (res.gamma ? format_double(*res.gamma) : "") << ',' << res.n_multi_hop
                   << '\n';
                rows.push_back({{"beta0", b0},
                                {"delta", delta},
                                {"rho0", rho0},
                                {"h_nc", res.h_nc},
                                {"h_unc", res.h_unc},
                                {"gamma", res.gamma ? json(*res.gamma) : json(nullptr)},
                                {"n", res.n_multi_hop}});
            }
    std::string path = c.out + (c.format == "json" ? ".json" : ".csv");
    write_file(path, c.format == "json" ? rows.dump(2) + "\n" : os.str());
    json params = {{"k", c.k}, {"L", c.L}, {"q", c.q}, {"seed", c.seed}, {"format", c.format}};
    write_manifest(c.out, "connectivity", params, {path}, argv);
    return 0;
}

int run_validate(const CommonOpts& c, uint64_t trials, int threads, double perturb, int hops,
                 const std::vector<std::string>& argv) {
    struct Config {
        int k, n;
    };
    std::vector<Config> kns = {{1, 2}, {10, 12}, {50, 60}, {50, 63}};
    std::vector<double> deltas = {0.05, 0.1, 0.15, 0.3};
    bool all_pass = true;
    std::ostringstream report;
    for (const auto& kn : kns) {
        for (double delta : deltas) {
            // Payload length does not affect the erasure statistics; one
            // symbol per packet keeps the oracle fast.
            snc::CodeParams params(kn.k, kn.n, c.q, c.q / 8 ? c.q / 8 : 1);
            snc::SimConfig cfg;
            cfg.params = params;
            cfg.path = snc::PathProfile::uniform(delta, hops);
            cfg.trials = trials;
            cfg.seed = c.seed;
            cfg.threads = threads;
            snc::SimEstimate est = snc::simulate(cfg);
            snc::HopReliability analytic = snc::hop_reliability(params, cfg.path);
            if (perturb != 0.0)
                for (auto& v : analytic.cumulative_rho) v += perturb;
            snc::CompareReport rep = snc::compare(analytic, est);
            for (const auto& line : rep.lines) {
                report << (line.pass ? "PASS" : "FAIL") << " k=" << kn.k << " n=" << kn.n
                       << " delta=" << format_double(delta) << ' ' << line.quantity
                       << " analytic=" << format_double(line.analytic)
                       << " estimate=" << format_double(line.estimate)
                       << " z=" << format_double(line.z) << "\n";
            }
            all_pass = all_pass && rep.all_pass;
        }
    }
    std::cout << report.str();
    std::string path = c.out + ".txt";
    write_file(path, report.str());
    json params = {{"q", c.q},         {"trials", trials}, {"hops", hops},
                   {"perturb", perturb}, {"threads", threads}, {"seed", c.seed}};
    write_manifest(c.out, "validate", params, {path}, argv);
    return all_pass ? 0 : 1;
}

int run_lifecycle_demo(const CommonOpts& c, const std::vector<std::string>& argv) {
    // Three-node line A -> B -> C with moderate initial losses.
    snc::LinkDb db = snc::LinkDb::ingest(R"({
      "nodes": [
        {"id": "A", "lat": 45.0, "lon": 7.0, "role": "source", "nc_capable": true},
        {"id": "B", "lat": 45.5, "lon": 7.5, "role": "relay", "nc_capable": true},
        {"id": "C", "lat": 46.0, "lon": 8.0, "role": "sink", "nc_capable": true}
      ],
      "links": [
        {"src": "A", "dst": "B", "delta": 0.05, "samples": 0, "updated_at": ""},
        {"src": "B", "dst": "C", "delta": 0.05, "samples": 0, "updated_at": ""}
      ]
    })");
    snc::Catalogues cat;
    cat.ns_catalog["geo-reliability"] = "line service A->C";
    cat.vnf_catalog["vgncf"] = "systematic network coding function";
    snc::VgncfServiceSpec spec;
    spec.source = "A";
    spec.sink = "C";
    spec.k = c.k;
    spec.L = c.L;
    spec.q = c.q;
    spec.rho0 = c.rho0;
    spec.budget = snc::ComplexityBudget::source_only(10000000ull);
    spec.initial_n = c.k + 5;
    snc::VgncfMachine machine("vgncf-1", spec, db, cat);

    using E = snc::LifecycleEventType;
    auto fire = [&](snc::LifecycleEvent ev) {
        auto r = machine.handle_event(ev);
        if (!r.accepted) throw std::runtime_error("demo event rejected: " + r.error);
    };
    fire({E::UserRequest});
    fire({E::OeDispatch});
    fire({E::VimAllocAck, 4});
    fire({E::VnfmConfigAck});
    // Steady monitoring, then a loss spike on B->C forcing a recode.
    fire({E::MonitoringReport, 0, {{"A", "B", 1000, 50, "2026-01-01T00:00:00Z"},
                                   {"B", "C", 1000, 50, "2026-01-01T00:00:00Z"}}});
    fire({E::MonitoringReport, 0, {{"A", "B", 1000, 60, "2026-01-01T00:05:00Z"},
                                   {"B", "C", 1000, 900, "2026-01-01T00:05:00Z"}}});
    fire({E::TerminationRequest});
    fire({E::VnfmTermAck});
    fire({E::VimTermAck});

    std::string path = c.out + ".jsonl";
    write_file(path, machine.event_log_json_lines());
    json params = {{"k", c.k}, {"L", c.L}, {"q", c.q}, {"rho0", c.rho0}, {"seed", c.seed}};
    write_manifest(c.out, "lifecycle-demo", params, {path}, argv);
    std::cout << "final_state=" << snc::to_string(machine.state())
              << " allocation=" << cat.allocation("vgncf-1") << " n=" << machine.coding_n()
              << "\n";
    return 0;
}

int dispatch(std::vector<std::string> args);

int run_rerun(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open manifest " + manifest_path);
    json m = json::parse(in);
    std::vector<std::string> argv = m.at("argv").get<std::vector<std::string>>();
    return dispatch(std::move(argv));
}

int dispatch(std::vector<std::string> args) {
    CLI::App app{"Systematic network coding over erasure line networks"};
    app.require_subcommand(1);
    CommonOpts c;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--k", c.k, "Information packets per generation");
        sub->add_option("--L", c.L, "Packet length in bytes");
        sub->add_option("--q", c.q, "Field exponent (1, 4 or 8)");
        sub->add_option("--rho0", c.rho0, "Target reliability");
        sub->add_option("--eta0", c.eta0, "Target residual erasure rate");
        sub->add_option("--seed", c.seed, "RNG seed");
        sub->add_option("--out", c.out, "Output path prefix");
        sub->add_option("--format", c.format, "Output format (csv or json)")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    double grid_step = 0.01, delta_max = 0.5;
    bool check_symmetry = false;
    auto* rr = app.add_subcommand("rate-region", "Per-link achievable rate region grids");
    add_common(rr);
    rr->add_option("--grid-step", grid_step, "Erasure-rate grid step");
    rr->add_option("--delta-max", delta_max, "Erasure-rate axis maximum");
    rr->add_flag("--check-symmetry", check_symmetry, "Verify transpose invariance");

    std::optional<double> delta_opt;
    std::optional<uint64_t> beta0_opt;
    std::optional<double> rho0_grid_opt;
    uint64_t beta0_relay = snc::kUnlimitedGates, beta0_dest = snc::kUnlimitedGates;
    int h_max = 20, hops = 3, threads = 1;
    uint64_t trials = 100000;
    double perturb = 0.0;
    bool max_redundancy = false;

    auto* rel = app.add_subcommand("reliability", "Reliability-gain sweep over path length");
    add_common(rel);
    rel->add_option("--delta", delta_opt, "Single per-link erasure rate (default sweep 0.1, 0.15)");
    rel->add_option("--beta0-source", beta0_opt,
                    "Single source gate budget (default sweep 8e6, 10e6)");
    rel->add_option("--beta0-relay", beta0_relay, "Relay gate budget (default unlimited)");
    rel->add_option("--beta0-dest", beta0_dest, "Destination gate budget (default unlimited)");
    rel->add_option("--hops", h_max, "Maximum path length");
    rel->add_flag("--max-redundancy", max_redundancy,
                  "Pick max-redundancy feasible n instead of the utility argmax");

    auto* conn = app.add_subcommand("connectivity", "Connectivity-gain table");
    add_common(conn);
    conn->add_option("--delta", delta_opt, "Single erasure rate (default sweep 0.1, 0.15)");
    conn->add_option("--beta0-source", beta0_opt,
                     "Single source gate budget (default sweep 5e6, 8e6, 10e6)");
    conn->add_option("--beta0-relay", beta0_relay, "Relay gate budget (default unlimited)");
    conn->add_option("--beta0-dest", beta0_dest, "Destination gate budget (default unlimited)");
    conn->add_option("--rho0-grid", rho0_grid_opt,
                     "Single target reliability (default sweep 0.8, 0.85)");

    auto* val = app.add_subcommand("validate", "Monte-Carlo vs analytic comparison");
    add_common(val);
    val->add_option("--trials", trials, "Trials per configuration");
    val->add_option("--hops", hops, "Path length of the validation runs");
    val->add_option("--threads", threads, "Worker threads (results thread-count independent)");
    val->add_option("--perturb", perturb, "Additive analytic perturbation (harness sanity)");

    auto* demo = app.add_subcommand("lifecycle-demo", "Scripted instantiate/monitor/terminate run");
    add_common(demo);

    auto* rerun = app.add_subcommand("rerun", "Re-execute a run from its manifest");
    std::string manifest_path;
    rerun->add_option("manifest", manifest_path, "Path to a .manifest.json file")->required();

    // CLI11 wants argv in reverse order for its vector-parse entry point.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (rr->parsed())
        return run_rate_region(c, grid_step, delta_max, check_symmetry, args);
    if (rel->parsed())
        return run_reliability(c, delta_opt, beta0_opt, beta0_relay, beta0_dest, h_max,
                               max_redundancy, args);
    if (conn->parsed())
        return run_connectivity(c, delta_opt, beta0_opt, beta0_relay, beta0_dest, rho0_grid_opt,
                                args);
    if (val->parsed()) return run_validate(c, trials, threads, perturb, hops, args);
    if (demo->parsed()) return run_lifecycle_demo(c, args);
    if (rerun->parsed()) return run_rerun(manifest_path);
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return dispatch(std::move(args));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
