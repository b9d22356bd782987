#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sncvf/linkdb.hpp"
#include "sncvf/optimizer.hpp"

namespace snc {

enum class LifecycleState {
    Idle,
    Requested,
    Instantiating,
    ResourcesAllocated,  // VIM ack received, VNFM config pending
    Configured,          // VNFM ack received, VIM allocation pending
    Active,
    Terminating,
    Terminated,
};

const char* to_string(LifecycleState s);

enum class LifecycleEventType {
    UserRequest,       // phase 1.1
    OeDispatch,        // phase 1.2
    VimAllocAck,       // phase 1.3
    VnfmConfigAck,     // phase 1.4
    MonitoringReport,  // phase 2.x
    TerminationRequest,// phase 3.1 (3.2 dispatch folded into the same step)
    VnfmTermAck,       // phase 3.3
    VimTermAck,        // phase 3.4
};

const char* to_string(LifecycleEventType e);

struct LifecycleEvent {
    LifecycleEventType type;
    uint64_t allocation_units = 0;            // VimAllocAck payload
    std::vector<LinkObservation> observations; // MonitoringReport payload
};

/// Orchestration repositories shared by machines.
struct Catalogues {
    std::map<std::string, std::string> ns_catalog;   // service id -> descriptor
    std::map<std::string, std::string> vnf_catalog;  // vnf id -> descriptor
    struct InstanceRecord {
        LifecycleState state = LifecycleState::Idle;
        int coding_n = 0;
    };
    std::map<std::string, InstanceRecord> nfv_instances;
    std::map<std::string, uint64_t> nfvi_resources;  // instance -> allocated units

    uint64_t allocation(const std::string& instance) const {
        auto it = nfvi_resources.find(instance);
        return it == nfvi_resources.end() ? 0 : it->second;
    }
};

struct PolicyDecision {
    enum class Kind { Keep, Recode, Escalate } kind = Kind::Keep;
    std::string instance;
    double observed_reliability = 0;
    int new_n = 0;  // valid for Recode
};

struct HandleResult {
    bool accepted = false;
    LifecycleState state = LifecycleState::Idle;
    std::vector<std::string> actions;
    std::string error;  // set when rejected
};

struct PhaseEntry {
    std::string phase;   // "1.1" .. "3.5"
    std::string event;
    LifecycleState state_after;
    uint64_t t = 0;      // logical clock, deterministic
};

/// Coding-service parameters the machine optimizes over.
struct VgncfServiceSpec {
    std::string source, sink;
    int k = 50;
    int L = 100;
    int q = 8;
    double rho0 = 0.8;
    ComplexityBudget budget;
    int initial_n = 0;  // 0: pick via optimizer at activation
};

/// Deterministic event-driven lifecycle of one VGNCF instance. Events are
/// processed one at a time; rejected events leave state, catalogues and
/// history untouched.
class VgncfMachine {
public:
    VgncfMachine(std::string instance_id, VgncfServiceSpec spec, LinkDb& db, Catalogues& cat);

    HandleResult handle_event(const LifecycleEvent& event);

    /// Phase-2.4/2.5 loop: fold observations into the link store, compare
    /// achieved reliability at the refreshed path against rho0, and decide
    /// keep / recode(new n) / escalate.
    PolicyDecision monitoring_tick(const std::vector<LinkObservation>& observations);

    LifecycleState state() const { return state_; }
    const std::string& id() const { return id_; }
    int coding_n() const { return coding_n_; }
    const std::vector<PhaseEntry>& phase_history() const { return history_; }
    std::string event_log_json_lines() const;

private:
    HandleResult accept(const std::string& phase, const LifecycleEvent& event,
                        LifecycleState next, std::vector<std::string> actions);
    HandleResult reject(const LifecycleEvent& event, const std::string& why);

    std::string id_;
    VgncfServiceSpec spec_;
    LinkDb& db_;
    Catalogues& cat_;
    LifecycleState state_ = LifecycleState::Idle;
    bool vnfm_term_ack_ = false;
    bool vim_term_ack_ = false;
    int coding_n_ = 0;
    uint64_t clock_ = 0;
    std::vector<PhaseEntry> history_;
};

}  // namespace snc
