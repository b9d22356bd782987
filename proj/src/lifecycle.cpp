#include "sncvf/lifecycle.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace snc {

const char* to_string(LifecycleState s) {
    switch (s) {
        case LifecycleState::Idle: return "Idle";
        case LifecycleState::Requested: return "Requested";
        case LifecycleState::Instantiating: return "Instantiating";
        case LifecycleState::ResourcesAllocated: return "ResourcesAllocated";
        case LifecycleState::Configured: return "Configured";
        case LifecycleState::Active: return "Active";
        case LifecycleState::Terminating: return "Terminating";
        default: return "Terminated";
    }
}

const char* to_string(LifecycleEventType e) {
    switch (e) {
        case LifecycleEventType::UserRequest: return "UserRequest";
        case LifecycleEventType::OeDispatch: return "OeDispatch";
        case LifecycleEventType::VimAllocAck: return "VimAllocAck";
        case LifecycleEventType::VnfmConfigAck: return "VnfmConfigAck";
        case LifecycleEventType::MonitoringReport: return "MonitoringReport";
        case LifecycleEventType::TerminationRequest: return "TerminationRequest";
        case LifecycleEventType::VnfmTermAck: return "VnfmTermAck";
        default: return "VimTermAck";
    }
}

VgncfMachine::VgncfMachine(std::string instance_id, VgncfServiceSpec spec, LinkDb& db,
                           Catalogues& cat)
    : id_(std::move(instance_id)), spec_(std::move(spec)), db_(db), cat_(cat) {
    cat_.nfv_instances[id_] = {LifecycleState::Idle, 0};
}

HandleResult VgncfMachine::accept(const std::string& phase, const LifecycleEvent& event,
                                  LifecycleState next, std::vector<std::string> actions) {
    state_ = next;
    history_.push_back({phase, to_string(event.type), next, clock_++});
    cat_.nfv_instances[id_].state = next;
    cat_.nfv_instances[id_].coding_n = coding_n_;
    HandleResult r;
    r.accepted = true;
    r.state = next;
    r.actions = std::move(actions);
    return r;
}

HandleResult VgncfMachine::reject(const LifecycleEvent& event, const std::string& why) {
    HandleResult r;
    r.accepted = false;
    r.state = state_;
    r.error = std::string(to_string(event.type)) + " rejected in state " + to_string(state_) +
              ": " + why;
    return r;
}

HandleResult VgncfMachine::handle_event(const LifecycleEvent& event) {
    using E = LifecycleEventType;
    using S = LifecycleState;
    switch (event.type) {
        case E::UserRequest:
            if (state_ != S::Idle) return reject(event, "instantiation already requested");
            return accept("1.1", event, S::Requested, {"notify-oe"});
        case E::OeDispatch:
            if (state_ != S::Requested) return reject(event, "no pending user request");
            return accept("1.2", event, S::Instantiating,
                          {"request-vim-allocation", "request-vnfm-instantiation"});
        case E::VimAllocAck: {
            if (state_ != S::Instantiating && state_ != S::Configured)
                return reject(event, "no outstanding allocation request");
            const uint64_t units = event.allocation_units ? event.allocation_units : 1;
            cat_.nfvi_resources[id_] = units;
            if (state_ == S::Instantiating)
                return accept("1.3", event, S::ResourcesAllocated, {"nfvi-allocated"});
            HandleResult r = accept("1.3", event, S::Active, {"nfvi-allocated"});
            history_.push_back({"1.5", "InstantiationComplete", S::Active, clock_++});
            if (coding_n_ == 0) coding_n_ = spec_.initial_n ? spec_.initial_n : spec_.k;
            cat_.nfv_instances[id_].coding_n = coding_n_;
            r.actions.push_back("ack-user");
            return r;
        }
        case E::VnfmConfigAck: {
            if (state_ != S::Instantiating && state_ != S::ResourcesAllocated)
                return reject(event, "no outstanding configuration request");
            if (state_ == S::Instantiating)
                return accept("1.4", event, S::Configured, {"vgncf-configured"});
            HandleResult r = accept("1.4", event, S::Active, {"vgncf-configured"});
            history_.push_back({"1.5", "InstantiationComplete", S::Active, clock_++});
            if (coding_n_ == 0) coding_n_ = spec_.initial_n ? spec_.initial_n : spec_.k;
            cat_.nfv_instances[id_].coding_n = coding_n_;
            r.actions.push_back("ack-user");
            return r;
        }
        case E::MonitoringReport: {
            if (state_ != S::Active) return reject(event, "monitoring requires Active");
            for (const auto& obs : event.observations) {
                if (obs.sent == 0 || obs.lost > obs.sent)
                    return reject(event, "malformed loss observation for " + obs.src + "->" +
                                             obs.dst);
                if (!db_.find_link(obs.src, obs.dst))
                    return reject(event, "observation for unknown link " + obs.src + "->" +
                                             obs.dst);
            }
            history_.push_back({"2.1", "OeMonitoring", state_, clock_++});
            history_.push_back({"2.2", "VimResourceReport", state_, clock_++});
            history_.push_back({"2.3", "RoutingInfo", state_, clock_++});
            PolicyDecision d = monitoring_tick(event.observations);
            HandleResult r = accept("2.4", event, S::Active, {});
            history_.push_back({"2.5", "GeoInfoUpdated", state_, clock_++});
            switch (d.kind) {
                case PolicyDecision::Kind::Keep: r.actions.push_back("policy-keep"); break;
                case PolicyDecision::Kind::Recode:
                    r.actions.push_back("policy-recode:n=" + std::to_string(d.new_n));
                    break;
                case PolicyDecision::Kind::Escalate: r.actions.push_back("policy-escalate"); break;
            }
            return r;
        }
        case E::TerminationRequest:
            if (state_ != S::Active) return reject(event, "no active instance to terminate");
            {
                HandleResult r = accept("3.1", event, S::Terminating, {"notify-oe-termination"});
                history_.push_back({"3.2", "OeTerminationDispatch", S::Terminating, clock_++});
                r.actions.push_back("request-vnfm-termination");
                r.actions.push_back("request-vim-release");
                return r;
            }
        case E::VnfmTermAck:
            if (state_ != S::Terminating || vnfm_term_ack_)
                return reject(event, "no outstanding VNFM termination");
            vnfm_term_ack_ = true;
            if (vim_term_ack_) {
                HandleResult r = accept("3.3", event, S::Terminated, {"vgncf-deactivated"});
                history_.push_back({"3.5", "TerminationComplete", S::Terminated, clock_++});
                r.actions.push_back("ack-termination");
                return r;
            }
            return accept("3.3", event, S::Terminating, {"vgncf-deactivated"});
        case E::VimTermAck:
            if (state_ != S::Terminating || vim_term_ack_)
                return reject(event, "no outstanding VIM release");
            vim_term_ack_ = true;
            cat_.nfvi_resources[id_] = 0;
            if (vnfm_term_ack_) {
                HandleResult r = accept("3.4", event, S::Terminated, {"nfvi-released"});
                history_.push_back({"3.5", "TerminationComplete", S::Terminated, clock_++});
                r.actions.push_back("ack-termination");
                return r;
            }
            return accept("3.4", event, S::Terminating, {"nfvi-released"});
    }
    return reject(event, "unknown event");
}

PolicyDecision VgncfMachine::monitoring_tick(const std::vector<LinkObservation>& observations) {
    if (state_ != LifecycleState::Active)
        throw std::logic_error("monitoring_tick: instance not Active");
    for (const auto& obs : observations) db_.update_stats(obs);

    PolicyDecision d;
    d.instance = id_;
    auto path = db_.extract_path(spec_.source, spec_.sink);
    if (!path || path->profile.deltas.empty()) {
        d.kind = PolicyDecision::Kind::Escalate;
        return d;
    }
    const int s = 8 * spec_.L / spec_.q;
    const int n = coding_n_ > spec_.k ? coding_n_ : spec_.k;
    double rho = 1.0;
    for (double delta : path->profile.deltas)
        rho *= 1.0 - rper_single_hop_kn(spec_.k, n, delta);
    d.observed_reliability = rho;
    if (rho >= spec_.rho0) {
        d.kind = PolicyDecision::Kind::Keep;
        return d;
    }
    OptimizeResult opt =
        optimize_rate(spec_.k, s, spec_.q, path->profile, spec_.rho0, spec_.budget);
    if (opt.target_met) {
        d.kind = PolicyDecision::Kind::Recode;
        d.new_n = opt.best.n;
        coding_n_ = opt.best.n;
        cat_.nfv_instances[id_].coding_n = coding_n_;
    } else {
        d.kind = PolicyDecision::Kind::Escalate;
    }
    return d;
}

std::string VgncfMachine::event_log_json_lines() const {
    std::ostringstream os;
    for (const auto& e : history_) {
        nlohmann::json line = {{"instance", id_},
                               {"phase", e.phase},
                               {"event", e.event},
                               {"state_after", to_string(e.state_after)},
                               {"t", e.t}};
        os << line.dump() << "\n";
    }
    return os.str();
}

}  // namespace snc
