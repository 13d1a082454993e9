#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hedonica/config.hpp"
#include "hedonica/ledger.hpp"
#include "hedonica/metrics.hpp"
#include "hedonica/profile.hpp"
#include "hedonica/protocol.hpp"
#include "hedonica/rng.hpp"
#include "hedonica/strategy.hpp"
#include "hedonica/trace.hpp"
#include "hedonica/trust.hpp"
#include "hedonica/types.hpp"

namespace hedonica {

/// Thrown before any state is built when validate_config finds problems.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<ConfigViolation> violations);
    const std::vector<ConfigViolation>& violations() const noexcept { return violations_; }

private:
    std::vector<ConfigViolation> violations_;
};

struct CoalitionLifetime {
    CoalitionId id = 0;
    CoalitionSet founding_members;
    AgentId initiator;
    RiskAttitude initiator_attitude = RiskAttitude::Neutral;
    Step formed_at = 0;
    std::optional<Step> dissolved_at;
};

/// A proposal answer decided at delivery time but released on the
/// responder's schedule.
struct ScheduledResponse {
    ProposalId proposal = 0;
    AgentId responder;
    AgreementAnswer answer = AgreementAnswer::No;
    Step due = 0;
};

/// Counters the engine keeps for the structural audits.
struct RunAudit {
    int max_proposals_opened_in_step = 0;  // by any single agent
    int max_confirms_in_step = 0;          // by any single agent
    std::size_t proposals_opened = 0;
    std::size_t proposals_formed = 0;
    std::size_t proposals_cancelled = 0;
    std::size_t departures = 0;
    std::size_t penalised_departures = 0;
    std::size_t early_departures = 0;      // departures younger than the obligatory stay
    std::size_t ignored_responses = 0;
};

struct WorldState {
    Step step = 0;  // last completed step; steps are numbered from 1
    std::map<CoalitionId, Coalition> coalitions;
    std::vector<std::optional<CoalitionId>> membership;
    std::vector<AgentProfile> profiles;
    TrustMatrix trust;
    std::vector<ProposalHistory> histories;
    std::vector<Proposal> open_proposals;
    std::vector<ScheduledResponse> pending_responses;
    Ledger ledger;
    Rng rng{0};

    std::vector<CoalitionLifetime> lifetimes;
    TraceRecorder trace;
    AuditLog audit;
    bool keep_audit = false;
    RunAudit counters;
    CoalitionId next_coalition_id = 0;
    ProposalIdSource proposal_ids;

    std::size_t n_agents() const noexcept { return profiles.size(); }
    const Coalition* coalition_of(AgentId agent) const;
};

/// Partition check: coalitions disjoint with at least two members each,
/// membership consistent with member sets. Empty when the state is sound.
std::vector<std::string> check_partition(const WorldState& state);

struct SimOptions {
    bool record_trace = false;
    bool record_audit = false;
    bool check_invariants = true;
};

/// Fresh world: profiles drawn from the config's seed, trust at 0.5,
/// everyone alone.
WorldState make_world(const SimConfig& config, const SimOptions& options = {});

/// One step, in order: expire, deliver due agreements, confirm, arbitrate,
/// settle (departures, penalties, fees, trust), accrue utility, propose,
/// snapshot. Returns the step's frame.
StepFrame advance_step(WorldState& state, const SimConfig& config,
                       bool check_invariants = true);

struct ArbitrationResult {
    std::vector<ProposalId> formed;     // in the order they were granted
    std::vector<ProposalId> cancelled;
};

/// Visits eligible proposals in seeded random order; a proposal wins only if
/// none of its members (initiator included) was already bound this step.
ArbitrationResult arbitrate_formations(std::span<const Proposal* const> eligible, Rng& rng);

struct DepartureOutcome {
    bool penalised = false;
    bool dissolved = false;
};

/// Removes `agent` from its current coalition at step `state.step`:
/// penalty and equal shares when the coalition is younger than the
/// obligatory stay, Left/Stayed trust observations, dissolution when one
/// member remains.
DepartureOutcome apply_departure(WorldState& state, AgentId agent, const SimConfig& config);

struct RunResult {
    SimConfig config;
    std::uint64_t seed = 0;
    std::vector<AgentProfile> profiles;
    std::vector<StepFrame> frames;
    Ledger ledger;
    std::vector<CoalitionLifetime> lifetimes;
    TrustMatrix final_trust;
    std::vector<TraceEvent> trace;
    AuditLog audit;
    RunAudit counters;
};

/// Validates `config`, builds a world from config.seed and runs n_steps.
RunResult run_simulation(const SimConfig& config, const SimOptions& options = {});

}  // namespace hedonica
