#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sncvf/lifecycle.hpp"
#include "sncvf/optimizer.hpp"
#include "sncvf/oracle.hpp"

namespace py = pybind11;
using namespace snc;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Systematic network coding over erasure line networks";

    // --- codec ---
    py::class_<CodeParams>(m, "CodeParams")
        .def(py::init<int, int, int, int>(), py::arg("k"), py::arg("n"), py::arg("q"),
             py::arg("L"))
        .def_readonly("k", &CodeParams::k)
        .def_readonly("n", &CodeParams::n)
        .def_readonly("q", &CodeParams::q)
        .def_readonly("L", &CodeParams::L)
        .def("s", &CodeParams::s)
        .def("rate", &CodeParams::rate);

    py::class_<Packet>(m, "Packet")
        .def_readonly("payload", &Packet::payload)
        .def_readonly("coeffs", &Packet::coeffs)
        .def_readonly("systematic_index", &Packet::systematic_index)
        .def("is_systematic", &Packet::is_systematic);

    py::class_<Generation>(m, "Generation")
        .def_readonly("packets", &Generation::packets)
        .def_readonly("seed", &Generation::seed);

    py::class_<DecodeResult>(m, "DecodeResult")
        .def_readonly("payloads", &DecodeResult::payloads)
        .def_readonly("full_decode", &DecodeResult::full_decode)
        .def("recovered_count", &DecodeResult::recovered_count)
        .def("empty", &DecodeResult::empty);

    m.def("gf_mul", &gf_mul, py::arg("a"), py::arg("b"), py::arg("q"));
    m.def("gf_inv", &gf_inv, py::arg("a"), py::arg("q"));
    m.def("random_generation", &random_generation, py::arg("params"), py::arg("seed"));
    m.def("encode", &encode, py::arg("generation"), py::arg("params"));
    m.def(
        "decode",
        [](const std::vector<Packet>& received, const CodeParams& params) {
            return decode(received, params);
        },
        py::arg("received"), py::arg("params"));
    m.def("reencode", &reencode, py::arg("recovered"), py::arg("params"), py::arg("seed"));

    // --- analytics ---
    py::class_<PathProfile>(m, "PathProfile")
        .def(py::init<std::vector<double>>(), py::arg("deltas"))
        .def_static("uniform", &PathProfile::uniform, py::arg("delta"), py::arg("h"))
        .def_readonly("deltas", &PathProfile::deltas)
        .def("hops", &PathProfile::hops);

    py::class_<HopReliability>(m, "HopReliability")
        .def_readonly("per_hop_eta", &HopReliability::per_hop_eta)
        .def_readonly("cumulative_eta", &HopReliability::cumulative_eta)
        .def_readonly("cumulative_rho", &HopReliability::cumulative_rho)
        .def_readonly("rates", &HopReliability::rates);

    m.def("rper_single_hop", &rper_single_hop_kn, py::arg("k"), py::arg("n"), py::arg("delta"));
    m.def("reliability_nc", &reliability_nc, py::arg("params"), py::arg("path"), py::arg("h"));
    m.def("reliability_uncoded", &reliability_uncoded, py::arg("path"), py::arg("h"));
    m.def("achievable_rate", &achievable_rate, py::arg("params"), py::arg("path"), py::arg("m"));
    m.def("hop_reliability", &hop_reliability, py::arg("params"), py::arg("path"));

    // --- complexity ---
    py::class_<ComplexityBudget>(m, "ComplexityBudget")
        .def(py::init<>())
        .def_static("uniform", &ComplexityBudget::uniform, py::arg("gates"))
        .def_static("source_only", &ComplexityBudget::source_only, py::arg("gates"))
        .def_readwrite("beta0_source", &ComplexityBudget::beta0_source)
        .def_readwrite("beta0_relay", &ComplexityBudget::beta0_relay)
        .def_readwrite("beta0_dest", &ComplexityBudget::beta0_dest);

    py::class_<ComplexityReport>(m, "ComplexityReport")
        .def_readonly("n_mul", &ComplexityReport::n_mul)
        .def_readonly("n_add", &ComplexityReport::n_add)
        .def_readonly("gates", &ComplexityReport::gates);

    m.def("encoding_complexity", &encoding_complexity_ksq, py::arg("k"), py::arg("n"),
          py::arg("s"), py::arg("q"));
    m.def("decoding_complexity", &decoding_complexity_ksq, py::arg("k"), py::arg("n"),
          py::arg("s"), py::arg("q"));
    m.def("relay_complexity", &relay_complexity_ksq, py::arg("k"), py::arg("n"), py::arg("s"),
          py::arg("q"));

    // --- optimizer ---
    py::class_<UtilityPoint>(m, "UtilityPoint")
        .def_readonly("n", &UtilityPoint::n)
        .def_readonly("r", &UtilityPoint::r)
        .def_readonly("utility", &UtilityPoint::utility)
        .def_readonly("goodness", &UtilityPoint::goodness)
        .def_readonly("cost", &UtilityPoint::cost)
        .def_readonly("reliability", &UtilityPoint::reliability)
        .def_readonly("meets_target", &UtilityPoint::meets_target)
        .def_readonly("within_budget", &UtilityPoint::within_budget);

    py::class_<OptimizeResult>(m, "OptimizeResult")
        .def_readonly("best", &OptimizeResult::best)
        .def_readonly("target_met", &OptimizeResult::target_met)
        .def_readonly("unimodal", &OptimizeResult::unimodal)
        .def_readonly("used_exhaustive", &OptimizeResult::used_exhaustive);

    py::class_<ConnectivityResult>(m, "ConnectivityResult")
        .def_readonly("h_nc", &ConnectivityResult::h_nc)
        .def_readonly("h_unc", &ConnectivityResult::h_unc)
        .def_readonly("gamma", &ConnectivityResult::gamma)
        .def_readonly("n_multi_hop", &ConnectivityResult::n_multi_hop)
        .def_readonly("unbounded", &ConnectivityResult::unbounded);

    m.def(
        "optimize_rate",
        [](int k, int s, int q, const PathProfile& path, double rho0,
           const ComplexityBudget& budget) { return optimize_rate(k, s, q, path, rho0, budget); },
        py::arg("k"), py::arg("s"), py::arg("q"), py::arg("path"), py::arg("rho0"),
        py::arg("budget"));
    m.def(
        "connectivity_gain",
        [](int k, int s, int q, double delta, double rho0, const ComplexityBudget& budget) {
            return connectivity_gain(k, s, q, delta, rho0, budget);
        },
        py::arg("k"), py::arg("s"), py::arg("q"), py::arg("delta"), py::arg("rho0"),
        py::arg("budget"));

    // --- oracle ---
    py::class_<SimEstimate>(m, "SimEstimate")
        .def_readonly("rho_hat", &SimEstimate::rho_hat)
        .def_readonly("rho_stderr", &SimEstimate::rho_stderr)
        .def_readonly("eta_hat", &SimEstimate::eta_hat)
        .def_readonly("eta_stderr", &SimEstimate::eta_stderr)
        .def_readonly("trials", &SimEstimate::trials);

    m.def(
        "simulate",
        [](const CodeParams& params, const PathProfile& path, uint64_t trials, uint64_t seed,
           int threads) {
            SimConfig cfg;
            cfg.params = params;
            cfg.path = path;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.threads = threads;
            return simulate(cfg);
        },
        py::arg("params"), py::arg("path"), py::arg("trials") = 100000, py::arg("seed") = 1,
        py::arg("threads") = 1);

    // --- link db ---
    py::class_<PathExtract>(m, "PathExtract")
        .def_readonly("chain", &PathExtract::chain)
        .def_readonly("profile", &PathExtract::profile);

    py::class_<LinkDb>(m, "LinkDb")
        .def(py::init<>())
        .def_static("ingest", &LinkDb::ingest, py::arg("json_text"))
        .def_static("load_file", &LinkDb::load_file, py::arg("path"))
        .def("update_stats", &LinkDb::update_stats, py::arg("observation"),
             py::arg("alpha") = 0.2)
        .def("extract_path", &LinkDb::extract_path, py::arg("source"), py::arg("sink"))
        .def("to_json", &LinkDb::to_json)
        .def("persist", &LinkDb::persist, py::arg("path"));

    py::class_<LinkObservation>(m, "LinkObservation")
        .def(py::init([](std::string src, std::string dst, uint64_t sent, uint64_t lost,
                         std::string timestamp) {
                 return LinkObservation{std::move(src), std::move(dst), sent, lost,
                                        std::move(timestamp)};
             }),
             py::arg("src"), py::arg("dst"), py::arg("sent"), py::arg("lost"),
             py::arg("timestamp") = "");
}
